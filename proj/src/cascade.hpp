#ifndef NUMRA_CASCADE_HPP_
#define NUMRA_CASCADE_HPP_

#include "filterbank.hpp"

namespace numra {

struct DecayFit {
  double C = 0.0;
  double epsilon = 0.0;
  bool pass = false;
};

// Truncated product phi-hat(xi) = prod_{j=1..J} m0(xi / (2N)^j) on the grid
// (omega, den). Requires |m0(0) - 1| <= 1e-12.
SampledFunction cascade_scaling(const PeriodicFunction& m0, const Spectrum& s,
                                int J, double omega, std::int64_t den);

// psi-hat(xi) = m_l(xi / 2N) * phi-hat(xi / 2N). Output lives on the grid
// (2N * phi.omega clipped to omega_out, phi.den / 2N); requires 2N | phi.den.
SampledFunction wavelet_from_masks(const PeriodicFunction& ml,
                                   const SampledFunction& phi_hat,
                                   const Spectrum& s, double omega_out);

// Fits |f(xi)| <= C (1 + |xi|)^{-1/2 - eps} over |xi| >= 1, then verifies the
// bound at every grid point with the fitted pair; pass iff eps > 0.
// Compactly supported inputs (zero tail) report eps at the declared cap 10.
DecayFit fit_decay(const SampledFunction& f);

struct OriginCheck {
  double ratio_max = 0.0;  // max over 0 < |xi| <= 1 of |psi(xi)| / |xi|
  double at_zero = 0.0;    // |psi(0)|
  bool pass = false;       // at_zero below tolerance
};

OriginCheck wavelet_origin_check(const SampledFunction& psi_hat, double tol);

}  // namespace numra

#endif
