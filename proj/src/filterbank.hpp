#ifndef NUMRA_FILTERBANK_HPP_
#define NUMRA_FILTERBANK_HPP_

#include <variant>
#include <vector>

#include "freqfield.hpp"

namespace numra {

// m(xi) = sum_lambda a_lambda e^{-2 pi i lambda xi}
struct TrigPoly {
  std::vector<std::pair<TranslationIndex, cplx>> coeffs;
};

// Periodic samples on an aligned grid; off-grid queries are an error.
struct SampledPeriodic {
  double period = 2.0;
  std::int64_t den = 256;
  std::vector<cplx> v;  // period * den samples over [0, period)

  std::int64_t period_extent() const;  // period * den, exact
};

using PeriodicFunction = std::variant<TrigPoly, SampledPeriodic>;

struct FilterBank {
  Spectrum spectrum;
  std::vector<PeriodicFunction> synthesis;  // m_0 .. m_{2N-1}, 0 = lowpass
  std::vector<PeriodicFunction> analysis;   // dual masks
};

struct ModulationMatrix {
  double at = 0.0;
  std::size_t dim = 0;
  std::vector<cplx> entries;  // row-major, entry(l, s) = m_l(at/2N + s/4N)
};

cplx evaluate_mask(const PeriodicFunction& m, const Spectrum& s, double xi);

// Exact evaluation at a rational grid point num/den.
cplx evaluate_mask_exact(const PeriodicFunction& m, const Spectrum& s,
                         std::int64_t num, std::int64_t den);

ModulationMatrix modulation_matrix(const std::vector<PeriodicFunction>& side,
                                   const Spectrum& s, double xi);

// The 2N offsets lambda with gamma + lambda in 2N * Gamma, ascending.
// Exact rational input gamma = num/den.
std::vector<TranslationIndex> tiling_fiber(const Spectrum& s, std::int64_t num,
                                           std::int64_t den);

// Gamma-representative of num/den: the unique (k, n) with
// num/den - lambda(k, n) in Gamma.
TranslationIndex gamma_address(const Spectrum& s, std::int64_t num,
                               std::int64_t den);

// Reconstruction matrix at gamma = num/den: entry (l, t) =
// m_l((gamma + lambda_t)/2N) over the tiling fiber offsets lambda_t.
// The bank satisfies perfect reconstruction iff Q * conj(Q-dual)^T = I.
std::vector<cplx> fiber_matrix(const std::vector<PeriodicFunction>& side,
                               const Spectrum& s, std::int64_t num,
                               std::int64_t den);

// Max entrywise |Q(gamma) * conj(Q-dual(gamma))^T - I| over the aligned
// period grid with per-period spacing 1/den.
CheckResult check_pr(const FilterBank& bank, std::int64_t den, double tol);

double refinement_residual(const SampledFunction& phi_hat,
                           const PeriodicFunction& m0, const Spectrum& s);

struct ShannonSystem {
  FilterBank bank;
  SampledFunction phi_hat;
  SampledFunction phi_dual_hat;
};

// Self-dual band-selection bank: phi-hat = 1_Gamma, channel l keeps the l-th
// fiber cell of the refined tiling; masks sampled with per-period spacing
// 1/den on [0, 2).
ShannonSystem shannon_bank(const Spectrum& s, double omega, std::int64_t den);

}  // namespace numra

#endif
