#ifndef NUMRA_TRANSFORM_HPP_
#define NUMRA_TRANSFORM_HPP_

#include <functional>
#include <random>

#include "cascade.hpp"

namespace numra {

// Analysis/synthesis atom indices: channel 0 is the scaling atom, channels
// 1..2N-1 the wavelets; frequency form
//   psi_{l,j,lambda}(xi) = (2N)^{-j/2} psi_l((2N)^{-j} xi) e^{-2 pi i lambda (2N)^{-j} xi}
struct Atom {
  int channel = 0;
  int level = 0;
  TranslationIndex t;
};

// Channel spectrum evaluated on demand at exact rational points num/den.
using ChannelFn = std::function<cplx(std::int64_t num, std::int64_t den)>;

struct AtomSystem {
  Spectrum s;
  std::int64_t base_den = 256;
  std::vector<ChannelFn> psi;       // 2N channels
  std::vector<ChannelFn> psi_dual;
};

// Indicator channels of the band-selection system: channel 0 is 1_Gamma,
// channel l the l-th fiber cell of the refined tiling. Self-dual.
AtomSystem shannon_atom_system(const Spectrum& s, std::int64_t base_den);

// Channels synthesized from a mask bank: psi_l(u) = m_l(u/2N) phi(u/2N)
// with phi the J-term cascade product of the lowpass mask.
AtomSystem mask_atom_system(const FilterBank& bank, std::int64_t base_den,
                            int J);

SampledFunction atom_frequency(const AtomSystem& sys, const Atom& a,
                               double omega, bool dual = false);

cplx coefficient(const SampledFunction& f, const AtomSystem& sys,
                 const Atom& a, bool dual = false);

// Coefficients for every translation in lambda_window(s, window) at fixed
// channel and level, in window order.
std::vector<cplx> channel_coefficients(const SampledFunction& f,
                                       const AtomSystem& sys, int channel,
                                       int level, long window, bool dual);

// out += sum over the window of c_lambda * atom(channel, level, lambda).
void accumulate_atoms(SampledFunction& out, const AtomSystem& sys, int channel,
                      int level, long window, const std::vector<cplx>& coeffs,
                      bool dual = false);

// P_j f = sum_lambda <f, phi-dual_{j,lambda}> phi_{j,lambda}; swap_roles
// gives the dual projector.
SampledFunction project(const SampledFunction& f, const AtomSystem& sys,
                        int level, long window, bool swap_roles = false);

// || P_1 f - P_0 f - sum_{l>=1} sum_lambda <f, psi-dual_{l,0,lambda}> psi_{l,0,lambda} || / ||f||
double one_level_residual(const SampledFunction& f, const AtomSystem& sys,
                          long window, bool swap_roles = false);

struct Expansion {
  SampledFunction reconstruction;
  double residual = 0.0;
};

// Wavelet-only reconstruction over levels [j_lo, j_hi].
Expansion expand(const SampledFunction& f, const AtomSystem& sys, int j_lo,
                 int j_hi, long window);

struct CrossBiorthogonality {
  double max_deviation = 0.0;
  double max_diagonal_deviation = 0.0;
};

// max over atom pairs of |<psi_a, psi-dual_b> - delta_{ab}| for wavelet
// channels, levels in [j_lo, j_hi], |n| <= n_window, quadrature on
// [-omega, omega].
CrossBiorthogonality cross_biorthogonality(const AtomSystem& sys, int j_lo,
                                           int j_hi, long n_window,
                                           double omega);

struct FrameEstimate {
  double lower = 0.0;
  double upper = 0.0;
  double lower_dual = 0.0;
  double upper_dual = 0.0;
  std::size_t sample_count = 0;
  int j_lo = 0, j_hi = 0;
  long window = 0;
  std::vector<double> ratios;       // per signal, primal family
  std::vector<double> ratios_dual;
};

FrameEstimate empirical_frame_bounds(const AtomSystem& sys,
                                     const std::vector<SampledFunction>& signals,
                                     int j_lo, int j_hi, long window);

// Smoothed complex noise supported in [band_lo, band_hi): independent
// entries convolved `passes` times with a triangular kernel of half-width
// `kernel` samples.
SampledFunction random_band_signal(double omega, std::int64_t den,
                                   double band_lo, double band_hi, int kernel,
                                   int passes, std::mt19937_64& rng);

// Random combination of level-1 scaling atoms on the coarse sub-lattice
// 2N * Lambda; every analysis/synthesis expansion of such a signal is a
// finite sum, so truncated identities are exact on it.
SampledFunction random_refined_lattice_signal(const AtomSystem& sys,
                                              long n_window, double omega,
                                              std::mt19937_64& rng);

}  // namespace numra

#endif
