#ifndef NUMRA_FREQFIELD_HPP_
#define NUMRA_FREQFIELD_HPP_

#include <complex>
#include <cstdint>
#include <vector>

#include "spectrum.hpp"

namespace numra {

using cplx = std::complex<double>;

// Uniform frequency grid over [-omega, omega] with spacing 1/den; values
// outside the band are 0 by convention. Sample i sits at xi = (i - i0) / den
// where i0 = omega * den.
struct SampledFunction {
  double omega = 8.0;
  std::int64_t den = 256;
  std::vector<cplx> v;

  std::int64_t half_extent() const;        // omega * den, exact
  std::size_t size_expected() const;       // 2 * omega * den + 1
  double xi_at(std::size_t i) const;
  // Value at grid coordinate g (xi = g / den); 0 outside the band.
  cplx at_scaled(std::int64_t g) const;
  cplx& mut_at_scaled(std::int64_t g);
};

SampledFunction make_grid(double omega, std::int64_t den);

struct PeriodizationProfile {
  std::int64_t den = 0;          // per-period grid spacing 1/den over [0, 2)
  std::vector<cplx> values;      // 2 * den samples
  long n_max = 0;
  double tail_bound = 0.0;
};

struct RieszBounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct CheckResult {
  double max_deviation = 0.0;
  double tail_bound = 0.0;
  bool pass = false;
};

// Trapezoid rule for integral f * conj(g) over the shared grid.
cplx inner_product(const SampledFunction& f, const SampledFunction& g);

double l2_norm(const SampledFunction& f);

// S(xi) = sum_{lambda} f(xi + lambda) * conj(g(xi + lambda)), truncated to
// |n| <= n_max, evaluated on the aligned period grid. Requires den % 4N == 0.
PeriodizationProfile periodize(const Spectrum& s, const SampledFunction& f,
                               const SampledFunction& g, long n_max);

CheckResult check_biorthogonal(const Spectrum& s, const SampledFunction& f,
                               const SampledFunction& g, long n_max,
                               double tol);

RieszBounds riesz_bounds(const Spectrum& s, const SampledFunction& f,
                         long n_max);

// g = f / S_ff on the period grid; requires riesz lower bound > 0.
SampledFunction dual_by_normalization(const Spectrum& s,
                                      const SampledFunction& f, long n_max);

struct SandwichResult {
  double lhs = 0.0;
  double mid = 0.0;
  double rhs = 0.0;
};

// For h-hat(xi) = sum_lambda c_lambda e^{-2 pi i lambda xi}:
//   lhs = A * integral_Gamma |h-hat|^2, rhs = B * (same),
//   mid = || sum_lambda c_lambda f(. - lambda) ||^2 via the frequency grid.
SandwichResult span_norm_sandwich(
    const Spectrum& s, const SampledFunction& f,
    const std::vector<std::pair<TranslationIndex, cplx>>& coeffs, long n_max);

// Default truncation: every lambda with |lambda| <= omega + 2 included.
long default_n_max(double omega);

}  // namespace numra

#endif
