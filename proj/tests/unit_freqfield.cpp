#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "filterbank.hpp"
#include "freqfield.hpp"
#include "test_util.hpp"

using namespace numra;
using numra::testutil::thrown_code;

namespace {

// Indicator of the frequency cell on a grid.
SampledFunction cell_indicator(const Spectrum& s, double omega,
                               std::int64_t den) {
  SampledFunction f = make_grid(omega, den);
  std::int64_t h = f.half_extent();
  for (std::int64_t g = -h; g <= h; ++g)
    if (gamma_indicator_exact(s, g, den)) f.mut_at_scaled(g) = {1.0, 0.0};
  return f;
}

SampledFunction gaussian_bump(double omega, std::int64_t den, double center,
                              double width) {
  SampledFunction f = make_grid(omega, den);
  std::int64_t h = f.half_extent();
  for (std::int64_t g = -h; g <= h; ++g) {
    double xi = static_cast<double>(g) / static_cast<double>(den);
    double u = (xi - center) / width;
    f.mut_at_scaled(g) = cplx{std::exp(-u * u), 0.3 * std::exp(-u * u) * xi};
  }
  return f;
}

}  // namespace

TEST_CASE("grid geometry: extent, sample positions, out-of-band zeros") {
  SampledFunction f = make_grid(4.0, 8);
  CHECK(f.half_extent() == 32);
  CHECK(f.size_expected() == 65);
  REQUIRE(f.v.size() == 65);
  CHECK(f.xi_at(0) == -4.0);
  CHECK(f.xi_at(32) == 0.0);
  CHECK(f.xi_at(64) == 4.0);
  CHECK(f.at_scaled(33) == cplx{0.0, 0.0});   // past the band
  CHECK(f.at_scaled(-100) == cplx{0.0, 0.0});
  f.mut_at_scaled(5) = {2.0, -1.0};
  CHECK(f.at_scaled(5) == cplx{2.0, -1.0});
}

TEST_CASE("inner_product of the cell indicator with itself is its measure") {
  // |Gamma| = 1 for every valid spectrum; the trapezoid rule is exact on an
  // aligned indicator apart from the two half-weight jumps per piece.
  for (auto [N, r] : {std::pair<long, long>{1, 1}, {2, 1}, {3, 5}, {4, 3}}) {
    Spectrum s = validate_spectrum(N, r);
    std::int64_t den = 4 * N * 64;
    SampledFunction f = cell_indicator(s, static_cast<double>(N) + 2.0, den);
    double jumps = 2.0 / static_cast<double>(den);  // trapezoid edge weights
    CHECK(std::abs(inner_product(f, f).real() - 1.0) <= jumps);
    CHECK(inner_product(f, f).imag() == 0.0);
    CHECK(std::abs(l2_norm(f) - 1.0) <= jumps);
  }
}

TEST_CASE("inner_product is conjugate-symmetric and linear") {
  std::int64_t den = 32;
  SampledFunction f = gaussian_bump(4.0, den, 0.5, 0.7);
  SampledFunction g = gaussian_bump(4.0, den, -1.0, 1.3);
  cplx fg = inner_product(f, g);
  cplx gf = inner_product(g, f);
  CHECK(std::abs(fg - std::conj(gf)) <= 1e-14);

  SampledFunction h = f;
  cplx a{0.5, -2.0};
  std::int64_t he = h.half_extent();
  for (std::int64_t i = -he; i <= he; ++i)
    h.mut_at_scaled(i) = a * f.at_scaled(i) + g.at_scaled(i);
  cplx want = a * inner_product(f, g) + inner_product(g, g);
  CHECK(std::abs(inner_product(h, g) - want) <= 1e-12);
}

TEST_CASE("inner_product rejects mismatched grids") {
  SampledFunction f = make_grid(4.0, 8);
  SampledFunction g = make_grid(4.0, 16);
  SampledFunction k = make_grid(2.0, 8);
  CHECK(thrown_code([&] { inner_product(f, g); }) == Errc::grid_mismatch);
  CHECK(thrown_code([&] { inner_product(f, k); }) == Errc::grid_mismatch);
}

TEST_CASE("periodize of the cell indicator is identically one for N <= 2") {
  for (auto [N, r] : {std::pair<long, long>{1, 1}, {2, 1}, {2, 3}}) {
    Spectrum s = validate_spectrum(N, r);
    std::int64_t den = 4 * N * 16;
    double omega = static_cast<double>(N) + 3.0;
    SampledFunction f = cell_indicator(s, omega, den);
    auto prof = periodize(s, f, f, default_n_max(omega));
    REQUIRE(prof.values.size() == static_cast<std::size_t>(2 * den));
    for (const auto& v : prof.values) CHECK(std::abs(v - cplx{1.0, 0.0}) == 0.0);
    CHECK(prof.tail_bound == 0.0);  // compact support inside the band
  }
}

TEST_CASE("periodize requires a 4N-aligned grid") {
  Spectrum s = validate_spectrum(2, 1);
  SampledFunction f = make_grid(4.0, 10);  // 10 % 8 != 0
  CHECK(thrown_code([&] { periodize(s, f, f, 4); }) == Errc::step_not_aligned);
}

TEST_CASE("riesz_bounds: orthonormal generator gives (1, 1)") {
  Spectrum s = validate_spectrum(2, 1);
  std::int64_t den = 4 * 2 * 16;
  SampledFunction f = cell_indicator(s, 5.0, den);
  auto rb = riesz_bounds(s, f, default_n_max(5.0));
  CHECK(rb.lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rb.upper == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("riesz_bounds: a generator missing half the cell has lower bound 0") {
  Spectrum s = validate_spectrum(2, 1);
  std::int64_t den = 4 * 2 * 16;
  SampledFunction f = make_grid(5.0, den);
  std::int64_t h = f.half_extent();
  for (std::int64_t g = -h; g <= h; ++g) {
    double xi = static_cast<double>(g) / static_cast<double>(den);
    if (xi >= 0.0 && xi < 0.25) f.mut_at_scaled(g) = {1.0, 0.0};
  }
  auto rb = riesz_bounds(s, f, default_n_max(5.0));
  CHECK(rb.lower == 0.0);
  CHECK(rb.upper == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(thrown_code([&] { dual_by_normalization(s, f, default_n_max(5.0)); }) ==
        Errc::lower_bound_zero);
}

TEST_CASE("dual_by_normalization of an orthonormal generator is itself") {
  Spectrum s = validate_spectrum(2, 1);
  std::int64_t den = 4 * 2 * 16;
  SampledFunction f = cell_indicator(s, 5.0, den);
  SampledFunction d = dual_by_normalization(s, f, default_n_max(5.0));
  REQUIRE(d.v.size() == f.v.size());
  std::int64_t h = f.half_extent();
  double dev = 0.0;
  for (std::int64_t g = -h; g <= h; ++g)
    dev = std::max(dev, std::abs(d.at_scaled(g) - f.at_scaled(g)));
  CHECK(dev <= 1e-12);
}

TEST_CASE("check_biorthogonal accepts the self-dual cell indicator") {
  Spectrum s = validate_spectrum(2, 3);
  std::int64_t den = 4 * 2 * 16;
  SampledFunction f = cell_indicator(s, 5.0, den);
  auto res = check_biorthogonal(s, f, f, default_n_max(5.0), 1e-12);
  CHECK(res.pass);
  CHECK(res.max_deviation <= 1e-12);
}

TEST_CASE("check_biorthogonal flags a rescaled pair") {
  Spectrum s = validate_spectrum(2, 1);
  std::int64_t den = 4 * 2 * 16;
  SampledFunction f = cell_indicator(s, 5.0, den);
  SampledFunction g = f;
  for (auto& v : g.v) v *= 1.5;
  auto res = check_biorthogonal(s, f, g, default_n_max(5.0), 1e-12);
  CHECK_FALSE(res.pass);
  CHECK(res.max_deviation == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("span_norm_sandwich brackets the synthesized norm") {
  Spectrum s = validate_spectrum(2, 1);
  std::int64_t den = 4 * 2 * 32;
  SampledFunction f = cell_indicator(s, 5.0, den);
  std::vector<std::pair<TranslationIndex, cplx>> coeffs = {
      {{0, 0}, {1.0, 0.0}}, {{1, 0}, {0.0, -0.5}}, {{0, -1}, {0.25, 0.25}}};
  auto sw = span_norm_sandwich(s, f, coeffs, default_n_max(5.0));
  CHECK(sw.lhs <= sw.mid + 1e-9);
  CHECK(sw.mid <= sw.rhs + 1e-9);
  // Orthonormal generator: the sandwich is tight and mid is sum |c|^2.
  double want = 1.0 + 0.25 + 0.125;
  CHECK(sw.mid == doctest::Approx(want).epsilon(1e-6));
  CHECK(sw.lhs == doctest::Approx(want).epsilon(1e-6));
  CHECK(sw.rhs == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("default_n_max covers the requested band") {
  Spectrum s = validate_spectrum(4, 3);
  double omega = 8.0;
  long n_max = default_n_max(omega);
  // Every lambda with |lambda| <= omega + 2 must appear in the window.
  for (const auto& t : lambda_window(s, n_max)) (void)t;
  for (int k : {0, 1}) {
    double edge = lambda_value(s, {k, n_max});
    CHECK(edge >= omega + 2.0);
    CHECK(lambda_value(s, {k, -n_max}) <= -(omega + 2.0) + 2.0);
  }
}
