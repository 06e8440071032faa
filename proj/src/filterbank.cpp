#include "filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace numra {

std::int64_t SampledPeriodic::period_extent() const {
  double p = period * static_cast<double>(den);
  auto e = static_cast<std::int64_t>(std::llround(p));
  if (std::abs(p - static_cast<double>(e)) > 1e-9)
    throw Error(Errc::step_not_aligned, "period is not a multiple of the step");
  return e;
}

static cplx trig_poly_eval(const TrigPoly& m, const Spectrum& s, double xi) {
  cplx acc{0.0, 0.0};
  for (const auto& [t, a] : m.coeffs) {
    double w = -2.0 * std::numbers::pi * lambda_value(s, t) * xi;
    acc += a * cplx{std::cos(w), std::sin(w)};
  }
  return acc;
}

cplx evaluate_mask(const PeriodicFunction& m, const Spectrum& s, double xi) {
  if (const auto* tp = std::get_if<TrigPoly>(&m)) return trig_poly_eval(*tp, s, xi);
  const auto& sp = std::get<SampledPeriodic>(m);
  double g = xi * static_cast<double>(sp.den);
  auto gi = static_cast<std::int64_t>(std::llround(g));
  if (std::abs(g - static_cast<double>(gi)) > 1e-9)
    throw Error(Errc::unaligned_query, "sampled mask queried off-grid");
  std::int64_t e = sp.period_extent();
  std::int64_t idx = ((gi % e) + e) % e;
  return sp.v[static_cast<std::size_t>(idx)];
}

cplx evaluate_mask_exact(const PeriodicFunction& m, const Spectrum& s,
                         std::int64_t num, std::int64_t den) {
  if (const auto* tp = std::get_if<TrigPoly>(&m))
    return trig_poly_eval(*tp, s,
                          static_cast<double>(num) / static_cast<double>(den));
  const auto& sp = std::get<SampledPeriodic>(m);
  __int128 scaled = static_cast<__int128>(num) * sp.den;
  if (scaled % den != 0)
    throw Error(Errc::unaligned_query, "sampled mask queried off-grid");
  auto gi = static_cast<std::int64_t>(scaled / den);
  std::int64_t e = sp.period_extent();
  std::int64_t idx = ((gi % e) + e) % e;
  return sp.v[static_cast<std::size_t>(idx)];
}

ModulationMatrix modulation_matrix(const std::vector<PeriodicFunction>& side,
                                   const Spectrum& s, double xi) {
  auto d = static_cast<std::size_t>(2 * s.N);
  if (side.size() != d)
    throw Error(Errc::wrong_channel_count, "bank side must have 2N masks");
  ModulationMatrix m;
  m.at = xi;
  m.dim = d;
  m.entries.resize(d * d);
  double tn = 2.0 * static_cast<double>(s.N);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t c = 0; c < d; ++c)
      m.entries[l * d + c] = evaluate_mask(
          side[l], s, xi / tn + static_cast<double>(c) / (2.0 * tn));
  return m;
}

TranslationIndex gamma_address(const Spectrum& s, std::int64_t num,
                               std::int64_t den) {
  // search n so that num/den - (r k / N + 2 n) lands in Gamma
  double xi = static_cast<double>(num) / static_cast<double>(den);
  long n_lo = static_cast<long>(std::floor((xi - s.N) / 2.0)) - 2;
  long n_hi = static_cast<long>(std::ceil(xi / 2.0)) + 2;
  for (long n = n_lo; n <= n_hi; ++n) {
    for (int k = 0; k <= 1; ++k) {
      std::int64_t rn = num * s.N - (s.r * k * den + 2 * n * s.N * den);
      if (gamma_indicator_exact(s, rn, s.N * den)) return {k, n};
    }
  }
  throw Error(Errc::bad_argument, "point has no Gamma representative");
}

std::vector<TranslationIndex> tiling_fiber(const Spectrum& s, std::int64_t num,
                                           std::int64_t den) {
  // lambdas with gamma + lambda in [0, N) u [N^2, N^2 + N)
  std::vector<TranslationIndex> out;
  long n_hi = (s.N * s.N + s.N) / 2 + 2;
  for (long n = -2; n <= n_hi; ++n) {
    for (int k = 0; k <= 1; ++k) {
      std::int64_t t = num * s.N + s.r * k * den + 2 * n * s.N * den;
      __int128 d = static_cast<__int128>(s.N) * den;
      bool inside = (t >= 0 && t < s.N * d) ||
                    (t >= static_cast<__int128>(s.N) * s.N * d &&
                     t < (static_cast<__int128>(s.N) * s.N + s.N) * d);
      if (inside) out.push_back({k, n});
    }
  }
  std::sort(out.begin(), out.end(),
            [&](const TranslationIndex& a, const TranslationIndex& b) {
              return s.r * a.k + 2 * a.n * s.N < s.r * b.k + 2 * b.n * s.N;
            });
  if (out.size() != static_cast<std::size_t>(2 * s.N))
    throw Error(Errc::bad_argument, "tiling fiber is not 2N-fold");
  return out;
}

std::vector<cplx> fiber_matrix(const std::vector<PeriodicFunction>& side,
                               const Spectrum& s, std::int64_t num,
                               std::int64_t den) {
  auto d = static_cast<std::size_t>(2 * s.N);
  if (side.size() != d)
    throw Error(Errc::wrong_channel_count, "bank side must have 2N masks");
  auto fiber = tiling_fiber(s, num, den);
  std::vector<cplx> q(d * d);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t t = 0; t < d; ++t)
      q[l * d + t] = evaluate_mask_exact(
          side[l], s, num + lambda_scaled(s, fiber[t], den),
          2 * s.N * den);
  return q;
}

CheckResult check_pr(const FilterBank& bank, std::int64_t den, double tol) {
  const Spectrum& s = bank.spectrum;
  auto d = static_cast<std::size_t>(2 * s.N);
  if (bank.synthesis.size() != d || bank.analysis.size() != d)
    throw Error(Errc::wrong_channel_count, "bank must have 2N masks per side");
  double dev = 0.0;
  for (std::int64_t i = 0; i < 2 * den; ++i) {
    auto addr = gamma_address(s, i, den);
    std::int64_t gnum = i - lambda_scaled(s, addr, den);
    auto q = fiber_matrix(bank.synthesis, s, gnum, den);
    auto qd = fiber_matrix(bank.analysis, s, gnum, den);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        cplx acc{0.0, 0.0};
        for (std::size_t t = 0; t < d; ++t)
          acc += q[a * d + t] * std::conj(qd[b * d + t]);
        if (a == b) acc -= 1.0;
        dev = std::max(dev, std::abs(acc));
      }
    }
  }
  return {dev, 0.0, dev <= tol};
}

double refinement_residual(const SampledFunction& phi_hat,
                           const PeriodicFunction& m0, const Spectrum& s) {
  // checked at the grid points closed under division by 2N
  std::int64_t h = phi_hat.half_extent();
  std::int64_t tn = 2 * s.N;
  double worst = 0.0;
  for (std::int64_t g = -(h / tn) * tn; g <= h; g += tn) {
    cplx lhs = phi_hat.at_scaled(g);
    cplx rhs = evaluate_mask_exact(m0, s, g, tn * phi_hat.den) *
               phi_hat.at_scaled(g / tn);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

ShannonSystem shannon_bank(const Spectrum& s, double omega,
                           std::int64_t den) {
  if (den % (4 * s.N) != 0)
    throw Error(Errc::step_not_aligned, "den must be divisible by 4N");
  ShannonSystem sys;
  sys.bank.spectrum = s;

  // masks sampled at spacing 1/(2N den) so every query point
  // (gamma + lambda)/2N with gamma on the 1/den grid is aligned
  std::int64_t mden = 2 * s.N * den;
  auto cell_selector = [&](std::size_t l, std::int64_t j) -> cplx {
    // m_l(eta) = 1 iff 2N * gamma(eta) lies in the l-th fiber cell
    auto addr = gamma_address(s, j, mden);
    std::int64_t gnum = j - lambda_scaled(s, addr, mden);
    std::int64_t xnum = 2 * s.N * gnum;  // 2N * gamma, over mden
    auto xaddr = gamma_address(s, xnum, mden);
    std::int64_t gpnum = xnum - lambda_scaled(s, xaddr, mden);
    auto fiber = tiling_fiber(s, gpnum, mden);
    return lambda_scaled(s, fiber[l], mden) == xnum - gpnum ? cplx{1.0, 0.0}
                                                            : cplx{0.0, 0.0};
  };
  for (std::size_t l = 0; l < static_cast<std::size_t>(2 * s.N); ++l) {
    SampledPeriodic m{2.0, mden, {}};
    m.v.resize(static_cast<std::size_t>(2 * mden));
    for (std::int64_t j = 0; j < 2 * mden; ++j)
      m.v[static_cast<std::size_t>(j)] = cell_selector(l, j);
    sys.bank.synthesis.emplace_back(m);
    sys.bank.analysis.emplace_back(std::move(m));
  }

  sys.phi_hat = make_grid(omega, den);
  std::int64_t h = sys.phi_hat.half_extent();
  for (std::int64_t g = -h; g <= h; ++g)
    sys.phi_hat.mut_at_scaled(g) =
        gamma_indicator_exact(s, g, den) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
  sys.phi_dual_hat = sys.phi_hat;
  return sys;
}

}  // namespace numra
