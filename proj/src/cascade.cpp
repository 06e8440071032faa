#include "cascade.hpp"

#include <cmath>

namespace numra {

SampledFunction cascade_scaling(const PeriodicFunction& m0, const Spectrum& s,
                                int J, double omega, std::int64_t den) {
  if (J < 1) throw Error(Errc::bad_argument, "J must be >= 1");
  cplx at0 = std::holds_alternative<TrigPoly>(m0)
                 ? evaluate_mask(m0, s, 0.0)
                 : evaluate_mask_exact(m0, s, 0, 1);
  if (std::abs(at0 - cplx{1.0, 0.0}) > 1e-12)
    throw Error(Errc::not_normalized, "lowpass mask must satisfy m0(0) = 1");

  SampledFunction out = make_grid(omega, den);
  std::int64_t h = out.half_extent();
  double tn = 2.0 * static_cast<double>(s.N);
  const bool sampled = std::holds_alternative<SampledPeriodic>(m0);
  for (std::int64_t g = -h; g <= h; ++g) {
    cplx prod{1.0, 0.0};
    double scale = 1.0;
    std::int64_t dscaled = den;
    bool exact_ok = true;
    for (int j = 1; j <= J; ++j) {
      scale *= tn;
      if (sampled) {
        if (exact_ok && dscaled <= (std::int64_t{1} << 60) / (2 * s.N))
          dscaled *= 2 * s.N;
        else
          exact_ok = false;
        if (!exact_ok)
          throw Error(Errc::step_not_aligned,
                      "sampled mask grid is not closed under the cascade");
        prod *= evaluate_mask_exact(m0, s, g, dscaled);
      } else {
        prod *= evaluate_mask(m0, s, static_cast<double>(g) /
                                         (static_cast<double>(den) * scale));
      }
    }
    out.mut_at_scaled(g) = prod;
  }
  return out;
}

SampledFunction wavelet_from_masks(const PeriodicFunction& ml,
                                   const SampledFunction& phi_hat,
                                   const Spectrum& s, double omega_out) {
  std::int64_t tn = 2 * s.N;
  if (phi_hat.den % tn != 0)
    throw Error(Errc::step_not_aligned, "phi grid not divisible by 2N");
  double omega_max = phi_hat.omega * static_cast<double>(tn);
  if (omega_out > omega_max)
    throw Error(Errc::bad_argument, "requested band exceeds 2N * phi band");
  SampledFunction out = make_grid(omega_out, phi_hat.den / tn);
  std::int64_t h = out.half_extent();
  for (std::int64_t g = -h; g <= h; ++g) {
    // out grid point g is xi = g * 2N / phi.den, so xi / 2N = g / phi.den
    out.mut_at_scaled(g) = evaluate_mask_exact(ml, s, g, phi_hat.den) *
                           phi_hat.at_scaled(g);
  }
  return out;
}

DecayFit fit_decay(const SampledFunction& f) {
  constexpr double kEpsCap = 10.0;
  std::int64_t h = f.half_extent();
  bool any_nonzero = false, tail_nonzero = false, outer_nonzero = false;
  for (std::int64_t g = -h; g <= h; ++g) {
    double a = std::abs(f.at_scaled(g));
    if (a == 0.0) continue;
    double xi = std::abs(static_cast<double>(g) / static_cast<double>(f.den));
    any_nonzero = true;
    if (xi >= 1.0) tail_nonzero = true;
    if (xi >= f.omega - 1.0) outer_nonzero = true;
  }
  if (!any_nonzero)
    throw Error(Errc::degenerate_tail, "no signal on the fit range");

  DecayFit fit;
  if (!tail_nonzero || !outer_nonzero) {
    fit.epsilon = kEpsCap;  // compact support: any exponent works
  } else {
    // least squares of log|f| = log C - (1/2 + eps) log(1 + |xi|)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long cnt = 0;
    for (std::int64_t g = -h; g <= h; ++g) {
      double a = std::abs(f.at_scaled(g));
      double xi = std::abs(static_cast<double>(g) / static_cast<double>(f.den));
      if (a == 0.0 || xi < 1.0) continue;
      double x = std::log(1.0 + xi), y = std::log(a);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
      ++cnt;
    }
    double denom = cnt * sxx - sx * sx;
    double slope = denom != 0.0 ? (cnt * sxy - sx * sy) / denom : 0.0;
    fit.epsilon = std::min(-slope - 0.5, kEpsCap);
  }
  double c = 0.0;
  for (std::int64_t g = -h; g <= h; ++g) {
    double a = std::abs(f.at_scaled(g));
    if (a == 0.0) continue;
    double xi = std::abs(static_cast<double>(g) / static_cast<double>(f.den));
    c = std::max(c, a * std::pow(1.0 + xi, 0.5 + fit.epsilon));
  }
  fit.C = c * (1.0 + 1e-12);  // bound holds at every grid point by choice of C
  fit.pass = fit.epsilon > 0.0;
  return fit;
}

OriginCheck wavelet_origin_check(const SampledFunction& psi_hat, double tol) {
  OriginCheck oc;
  std::int64_t h = psi_hat.half_extent();
  oc.at_zero = std::abs(psi_hat.at_scaled(0));
  std::int64_t lim = std::min<std::int64_t>(h, psi_hat.den);
  for (std::int64_t g = -lim; g <= lim; ++g) {
    if (g == 0) continue;
    double xi = static_cast<double>(g) / static_cast<double>(psi_hat.den);
    oc.ratio_max =
        std::max(oc.ratio_max, std::abs(psi_hat.at_scaled(g)) / std::abs(xi));
  }
  oc.pass = oc.at_zero <= tol;
  return oc;
}

}  // namespace numra
