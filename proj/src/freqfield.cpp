#include "freqfield.hpp"

#include <cmath>
#include <numbers>

namespace numra {

std::int64_t SampledFunction::half_extent() const {
  double w = omega * static_cast<double>(den);
  auto h = static_cast<std::int64_t>(std::llround(w));
  if (std::abs(w - static_cast<double>(h)) > 1e-9)
    throw Error(Errc::step_not_aligned, "omega is not a multiple of the step");
  return h;
}

std::size_t SampledFunction::size_expected() const {
  return static_cast<std::size_t>(2 * half_extent() + 1);
}

double SampledFunction::xi_at(std::size_t i) const {
  return static_cast<double>(static_cast<std::int64_t>(i) - half_extent()) /
         static_cast<double>(den);
}

cplx SampledFunction::at_scaled(std::int64_t g) const {
  std::int64_t h = half_extent();
  if (g < -h || g > h) return {0.0, 0.0};
  return v[static_cast<std::size_t>(g + h)];
}

cplx& SampledFunction::mut_at_scaled(std::int64_t g) {
  return v[static_cast<std::size_t>(g + half_extent())];
}

SampledFunction make_grid(double omega, std::int64_t den) {
  if (omega <= 0 || den <= 0)
    throw Error(Errc::bad_argument, "omega and den must be positive");
  SampledFunction f{omega, den, {}};
  f.v.assign(f.size_expected(), {0.0, 0.0});
  return f;
}

static void require_same_grid(const SampledFunction& f,
                              const SampledFunction& g) {
  if (f.omega != g.omega || f.den != g.den || f.v.size() != g.v.size())
    throw Error(Errc::grid_mismatch, "operands live on different grids");
}

cplx inner_product(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g);
  cplx acc{0.0, 0.0};
  std::size_t n = f.v.size();
  for (std::size_t i = 0; i < n; ++i) acc += f.v[i] * std::conj(g.v[i]);
  acc -= 0.5 * (f.v.front() * std::conj(g.v.front()) +
                f.v.back() * std::conj(g.v.back()));
  return acc / static_cast<double>(f.den);
}

double l2_norm(const SampledFunction& f) {
  return std::sqrt(std::abs(inner_product(f, f).real()));
}

long default_n_max(double omega) {
  return static_cast<long>(std::ceil((omega + 2.0) / 2.0));
}

PeriodizationProfile periodize(const Spectrum& s, const SampledFunction& f,
                               const SampledFunction& g, long n_max) {
  require_same_grid(f, g);
  if (n_max < 1) throw Error(Errc::bad_argument, "n_max must be >= 1");
  if (f.den % (4 * s.N) != 0)
    throw Error(Errc::step_not_aligned, "step must divide 1/(4N)");
  auto idx = lambda_window(s, n_max);
  PeriodizationProfile p;
  p.den = f.den;
  p.n_max = n_max;
  p.values.assign(static_cast<std::size_t>(2 * f.den), {0.0, 0.0});
  for (std::int64_t i = 0; i < 2 * f.den; ++i) {
    cplx acc{0.0, 0.0};
    for (const auto& t : idx) {
      std::int64_t shift = i + lambda_scaled(s, t, f.den);
      acc += f.at_scaled(shift) * std::conj(g.at_scaled(shift));
    }
    p.values[static_cast<std::size_t>(i)] = acc;
  }
  // Terms beyond the window vanish once every lambda reaching the band is
  // included; otherwise bound the omitted mass directly from the samples.
  if (n_max >= default_n_max(f.omega)) {
    p.tail_bound = 0.0;
  } else {
    long full = default_n_max(f.omega);
    auto all = lambda_window(s, full);
    double worst = 0.0;
    for (std::int64_t i = 0; i < 2 * f.den; ++i) {
      double acc = 0.0;
      for (const auto& t : all) {
        if (std::labs(t.n) <= n_max) continue;
        std::int64_t shift = i + lambda_scaled(s, t, f.den);
        acc += std::abs(f.at_scaled(shift) * std::conj(g.at_scaled(shift)));
      }
      worst = std::max(worst, acc);
    }
    p.tail_bound = worst;
  }
  return p;
}

CheckResult check_biorthogonal(const Spectrum& s, const SampledFunction& f,
                               const SampledFunction& g, long n_max,
                               double tol) {
  auto p = periodize(s, f, g, n_max);
  double dev = 0.0;
  for (const auto& z : p.values) dev = std::max(dev, std::abs(z - cplx{1.0, 0.0}));
  return {dev, p.tail_bound, dev <= tol + p.tail_bound};
}

RieszBounds riesz_bounds(const Spectrum& s, const SampledFunction& f,
                         long n_max) {
  auto p = periodize(s, f, f, n_max);
  double lo = p.values.empty() ? 0.0 : p.values[0].real();
  double hi = lo;
  for (const auto& z : p.values) {
    lo = std::min(lo, z.real());
    hi = std::max(hi, z.real());
  }
  return {lo, hi};
}

SampledFunction dual_by_normalization(const Spectrum& s,
                                      const SampledFunction& f, long n_max) {
  auto p = periodize(s, f, f, n_max);
  auto b = riesz_bounds(s, f, n_max);
  if (b.lower <= 1e-12)
    throw Error(Errc::lower_bound_zero,
                "periodization has no positive lower bound");
  SampledFunction g = f;
  std::int64_t h = f.half_extent();
  for (std::size_t i = 0; i < g.v.size(); ++i) {
    std::int64_t gi = static_cast<std::int64_t>(i) - h;
    std::int64_t m = ((gi % (2 * f.den)) + 2 * f.den) % (2 * f.den);
    g.v[i] = f.v[i] / p.values[static_cast<std::size_t>(m)].real();
  }
  return g;
}

SandwichResult span_norm_sandwich(
    const Spectrum& s, const SampledFunction& f,
    const std::vector<std::pair<TranslationIndex, cplx>>& coeffs, long n_max) {
  auto b = riesz_bounds(s, f, n_max);
  // integral_Gamma |h-hat|^2 via the closed-form exponential inner products
  double hh = 0.0;
  for (const auto& [ti, ci] : coeffs)
    for (const auto& [tj, cj] : coeffs) {
      cplx e = exp_inner_product(s, lambda_value(s, tj), lambda_value(s, ti));
      hh += (ci * std::conj(cj) * e).real();
    }
  // mid: (sum_lambda c_lambda f(. - lambda))-hat = h-hat(xi) * f(xi)
  SampledFunction spread = make_grid(f.omega, f.den);
  std::int64_t h = f.half_extent();
  for (std::size_t i = 0; i < spread.v.size(); ++i) {
    double xi = static_cast<double>(static_cast<std::int64_t>(i) - h) /
                static_cast<double>(f.den);
    cplx hv{0.0, 0.0};
    for (const auto& [t, c] : coeffs) {
      double w = -2.0 * std::numbers::pi * lambda_value(s, t) * xi;
      hv += c * cplx{std::cos(w), std::sin(w)};
    }
    spread.v[i] = hv * f.v[i];
  }
  double mid = inner_product(spread, spread).real();
  return {b.lower * hh, mid, b.upper * hh};
}

}  // namespace numra
