#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include "bankio.hpp"
#include "doctest.h"
#include "test_util.hpp"
#include "transform.hpp"

using namespace numra;
using numra::testutil::cdist;
using numra::testutil::thrown_code;

namespace {

AtomSystem shannon21(std::int64_t den = 4 * 2 * 16) {
  return shannon_atom_system(validate_spectrum(2, 1), den);
}

FilterBank haar_bank() {
  Spectrum s = validate_spectrum(1, 1);
  TrigPoly m0{{{{0, 0}, {0.5, 0.0}}, {{1, 0}, {0.5, 0.0}}}};
  TrigPoly m1{{{{0, 0}, {0.5, 0.0}}, {{1, 0}, {-0.5, 0.0}}}};
  return FilterBank{s, {m0, m1}, {m0, m1}};
}

double sup_dist(const SampledFunction& f, const SampledFunction& g) {
  std::int64_t h = std::max(f.half_extent(), g.half_extent());
  double dev = 0.0;
  for (std::int64_t i = -h; i <= h; ++i)
    dev = std::max(dev, std::abs(f.at_scaled(i) - g.at_scaled(i)));
  return dev;
}

}  // namespace

TEST_CASE("atom_frequency: translation is a pure phase, dilation rescales") {
  AtomSystem sys = shannon21();
  SampledFunction base = atom_frequency(sys, {0, 0, {0, 0}}, 8.0);
  SampledFunction trans = atom_frequency(sys, {0, 0, {0, 1}}, 8.0);
  std::int64_t h = base.half_extent();
  for (std::int64_t g = -h; g <= h; ++g) {
    CHECK(std::abs(std::abs(trans.at_scaled(g)) -
                   std::abs(base.at_scaled(g))) <= 1e-14);
    double xi = static_cast<double>(g) / static_cast<double>(base.den);
    cplx phase = std::exp(cplx{0.0, -2.0 * M_PI * 2.0 * xi});  // lambda = 2
    CHECK(cdist(trans.at_scaled(g), phase * base.at_scaled(g)) <= 1e-12);
  }
  // Dilation preserves the norm.
  SampledFunction up = atom_frequency(sys, {0, 1, {0, 0}}, 8.0);
  CHECK(l2_norm(up) == doctest::Approx(l2_norm(base)).epsilon(1e-3));
}

TEST_CASE("coefficient against the matching dual atom is one") {
  AtomSystem sys = shannon21();
  // level-1 channels reach up to 2N times the channel band, hence omega 32
  for (Atom a : {Atom{0, 0, {0, 0}}, Atom{1, 0, {1, 0}}, Atom{3, -1, {0, 2}},
                 Atom{2, 1, {1, -1}}}) {
    SampledFunction f = atom_frequency(sys, a, 32.0);
    CHECK(cdist(coefficient(f, sys, a), {1.0, 0.0}) <= 1e-6);
  }
}

TEST_CASE("coefficient against a disjoint channel vanishes") {
  AtomSystem sys = shannon21();
  SampledFunction f = atom_frequency(sys, {1, 0, {0, 0}}, 16.0);
  CHECK(std::abs(coefficient(f, sys, {2, 0, {0, 0}})) <= 1e-12);
  CHECK(std::abs(coefficient(f, sys, {3, 0, {0, 5}})) <= 1e-12);
}

TEST_CASE("coefficient is linear in the signal") {
  AtomSystem sys = shannon21();
  Atom a{1, 0, {0, 1}};
  SampledFunction f = atom_frequency(sys, a, 16.0);
  SampledFunction g = atom_frequency(sys, {2, 0, {1, 0}}, 16.0);
  SampledFunction h = f;
  cplx w{0.75, -1.25};
  std::int64_t he = h.half_extent();
  for (std::int64_t i = -he; i <= he; ++i)
    h.mut_at_scaled(i) = w * f.at_scaled(i) + g.at_scaled(i);
  cplx want = w * coefficient(f, sys, a) + coefficient(g, sys, a);
  CHECK(cdist(coefficient(h, sys, a), want) <= 1e-12);
}

TEST_CASE("project reproduces a signal inside the scaling space") {
  AtomSystem sys = shannon21();
  std::mt19937_64 rng(7);
  SampledFunction f = make_grid(8.0, sys.base_den);
  // combination of level-0 scaling atoms
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& t : lambda_window(sys.s, 3)) {
    SampledFunction a = atom_frequency(sys, {0, 0, t}, 8.0);
    cplx c{u(rng), u(rng)};
    std::int64_t h = f.half_extent();
    for (std::int64_t i = -h; i <= h; ++i)
      f.mut_at_scaled(i) += c * a.at_scaled(i);
  }
  SampledFunction p = project(f, sys, 0, 8);
  CHECK(sup_dist(p, f) <= 1e-6);
  // idempotence
  SampledFunction pp = project(p, sys, 0, 8);
  CHECK(sup_dist(pp, p) <= 2e-6);
  // detail coefficients of a scaling-space signal vanish
  for (int l = 1; l < 4; ++l)
    for (const auto& c : channel_coefficients(f, sys, l, 0, 6, true))
      CHECK(std::abs(c) <= 1e-10);
}

TEST_CASE("project of the zero signal is zero") {
  AtomSystem sys = shannon21();
  SampledFunction z = make_grid(8.0, sys.base_den);
  SampledFunction p = project(z, sys, 0, 8);
  for (const auto& v : p.v) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("one_level_residual vanishes on refined-lattice signals") {
  AtomSystem sys = shannon21();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5; ++i) {
    SampledFunction f = random_refined_lattice_signal(sys, 3, 8.0, rng);
    CHECK(one_level_residual(f, sys, 16) <= 1e-5);
    CHECK(one_level_residual(f, sys, 16, true) <= 1e-5);
  }
  SampledFunction z = make_grid(8.0, sys.base_den);
  CHECK(thrown_code([&] { one_level_residual(z, sys, 16); }) ==
        Errc::zero_signal);
}

TEST_CASE("expand reconstructs a detail-span signal") {
  AtomSystem sys = shannon21();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SampledFunction f = make_grid(8.0, sys.base_den);
  for (int l = 1; l < 4; ++l) {
    for (int j : {0, 1}) {
      for (const auto& t : lambda_window(sys.s, 2)) {
        SampledFunction a = atom_frequency(sys, {l, j, t}, 8.0);
        cplx c{u(rng), u(rng)};
        std::int64_t h = f.half_extent();
        for (std::int64_t i = -h; i <= h; ++i)
          f.mut_at_scaled(i) += c * a.at_scaled(i);
      }
    }
  }
  Expansion e = expand(f, sys, 0, 2, 8);
  CHECK(e.residual <= 1e-9);
  CHECK(sup_dist(e.reconstruction, f) <= 1e-6);

  // Narrowing the level range can only increase the residual.
  Expansion narrow = expand(f, sys, 0, 1, 8);
  CHECK(narrow.residual >= e.residual - 1e-12);

  CHECK(thrown_code([&] { expand(f, sys, 2, 1, 8); }) == Errc::bad_argument);
}

TEST_CASE("expand of the zero signal is zero") {
  AtomSystem sys = shannon21();
  SampledFunction z = make_grid(8.0, sys.base_den);
  Expansion e = expand(z, sys, 0, 1, 4);
  CHECK(e.residual == 0.0);
  for (const auto& v : e.reconstruction.v) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("cross_biorthogonality of the band-selection system") {
  // 4N * 17 keeps every pair of atom phases distinct on the grid.
  AtomSystem sys = shannon21(4 * 2 * 17);
  auto cb = cross_biorthogonality(sys, -1, 2, 3, 170.0);
  CHECK(cb.max_deviation <= 1e-5);
  CHECK(cb.max_diagonal_deviation <= 1e-5);
}

TEST_CASE("cross_biorthogonality of the averaging bank") {
  AtomSystem sys = mask_atom_system(haar_bank(), 16, 30);
  auto cb = cross_biorthogonality(sys, -1, 0, 1, 32768.0);
  CHECK(cb.max_deviation <= 1e-5);
  CHECK(cb.max_diagonal_deviation <= 1e-5);
}

TEST_CASE("empirical frame bounds: a single atom has ratio one") {
  AtomSystem sys = shannon21();
  std::vector<SampledFunction> sig;
  sig.push_back(atom_frequency(sys, {1, 0, {0, 0}}, 8.0));
  FrameEstimate fe = empirical_frame_bounds(sys, sig, -2, 3, 16);
  REQUIRE(fe.ratios.size() == 1);
  CHECK(fe.lower == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(fe.upper == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(fe.lower_dual == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(fe.sample_count == 1);
}

TEST_CASE("empirical frame bounds are scale invariant") {
  AtomSystem sys = shannon21();
  std::mt19937_64 rng(5);
  std::vector<SampledFunction> sig, sig2;
  for (int i = 0; i < 3; ++i) {
    sig.push_back(
        random_band_signal(8.0, sys.base_den, 0.6, 3.9, 16, 3, rng));
    sig2.push_back(sig.back());
    for (auto& v : sig2.back().v) v *= 7.0;
  }
  // window 15 keeps the level -1 atom phases alias-free on the 1/256 grid
  FrameEstimate a = empirical_frame_bounds(sys, sig, -1, 3, 15);
  FrameEstimate b = empirical_frame_bounds(sys, sig2, -1, 3, 15);
  CHECK(a.lower == doctest::Approx(b.lower).epsilon(1e-9));
  CHECK(a.upper == doctest::Approx(b.upper).epsilon(1e-9));
  CHECK(a.lower > 0.9);
  CHECK(a.upper < 1.1);
}
