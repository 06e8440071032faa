#include "transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <numbers>
#include <thread>
#include <unordered_map>
#include <utility>

namespace numra {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > (std::int64_t{1} << 62) / base)
      throw Error(Errc::step_not_aligned, "scale factor overflows the grid");
    out *= base;
  }
  return out;
}

cplx unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// rational representation of xi / (2N)^level for base-grid coordinate g
std::pair<std::int64_t, std::int64_t> scaled_point(const AtomSystem& sys,
                                                   std::int64_t g, int level) {
  if (level >= 0) return {g, sys.base_den * ipow(2 * sys.s.N, level)};
  return {g * ipow(2 * sys.s.N, -level), sys.base_den};
}

cplx psi_lookup(const AtomSystem& sys, int channel, std::int64_t g, int level,
                bool dual) {
  auto [num, den] = scaled_point(sys, g, level);
  const ChannelFn& fn = dual ? sys.psi_dual[static_cast<std::size_t>(channel)]
                             : sys.psi[static_cast<std::size_t>(channel)];
  return fn(num, den);
}

int env_threads() {
  const char* e = std::getenv("NUMRA_THREADS");
  if (!e) return 1;
  int n = std::atoi(e);
  return n >= 1 ? n : 1;
}

}  // namespace

AtomSystem shannon_atom_system(const Spectrum& s, std::int64_t base_den) {
  AtomSystem sys;
  sys.s = s;
  sys.base_den = base_den;
  for (long l = 0; l < 2 * s.N; ++l) {
    ChannelFn fn;
    if (l == 0) {
      fn = [s](std::int64_t num, std::int64_t den) -> cplx {
        return gamma_indicator_exact(s, num, den) ? cplx{1.0, 0.0}
                                                  : cplx{0.0, 0.0};
      };
    } else {
      fn = [s, l](std::int64_t num, std::int64_t den) -> cplx {
        if (num < 0) return {0.0, 0.0};
        if (num >= (s.N * s.N + s.N) * den) return {0.0, 0.0};
        auto addr = gamma_address(s, num, den);
        std::int64_t gnum = num - lambda_scaled(s, addr, den);
        auto fiber = tiling_fiber(s, gnum, den);
        bool inside =
            lambda_scaled(s, fiber[static_cast<std::size_t>(l)], den) ==
            num - gnum;
        return inside ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
      };
    }
    sys.psi.push_back(fn);
    sys.psi_dual.push_back(std::move(fn));
  }
  return sys;
}

AtomSystem mask_atom_system(const FilterBank& bank, std::int64_t base_den,
                            int J) {
  const Spectrum s = bank.spectrum;
  auto d = static_cast<std::size_t>(2 * s.N);
  if (bank.synthesis.size() != d || bank.analysis.size() != d)
    throw Error(Errc::wrong_channel_count, "bank must have 2N masks per side");
  AtomSystem sys;
  sys.s = s;
  sys.base_den = base_den;
  struct PointHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& p)
        const {
      return std::hash<std::int64_t>{}(p.first * 0x9e3779b97f4a7c15LL ^
                                       p.second);
    }
  };
  using Cache =
      std::unordered_map<std::pair<std::int64_t, std::int64_t>, cplx,
                         PointHash>;
  auto make = [&](const PeriodicFunction& ml, const PeriodicFunction& m0) {
    auto mlp = std::make_shared<PeriodicFunction>(ml);
    auto m0p = std::make_shared<PeriodicFunction>(m0);
    auto cache = std::make_shared<Cache>();
    auto lock = std::make_shared<std::mutex>();
    return ChannelFn([s, mlp, m0p, J, cache, lock](std::int64_t num,
                                                   std::int64_t den) -> cplx {
      {
        std::lock_guard<std::mutex> guard(*lock);
        auto it = cache->find({num, den});
        if (it != cache->end()) return it->second;
      }
      // psi(u) = m_l(u / 2N) * prod_{j=2..J+1} m0(u / (2N)^j)
      double u = static_cast<double>(num) / static_cast<double>(den);
      double tn = 2.0 * static_cast<double>(s.N);
      cplx prod = std::holds_alternative<TrigPoly>(*mlp)
                      ? evaluate_mask(*mlp, s, u / tn)
                      : evaluate_mask_exact(*mlp, s, num, den * 2 * s.N);
      double scale = tn;
      for (int j = 2; j <= J + 1; ++j) {
        scale *= tn;
        if (std::holds_alternative<TrigPoly>(*m0p)) {
          prod *= evaluate_mask(*m0p, s, u / scale);
        } else {
          std::int64_t dd = den;
          for (int t = 0; t < j; ++t) {
            if (dd > (std::int64_t{1} << 60) / (2 * s.N))
              throw Error(Errc::step_not_aligned,
                          "sampled mask grid not closed under the cascade");
            dd *= 2 * s.N;
          }
          prod *= evaluate_mask_exact(*m0p, s, num, dd);
        }
      }
      {
        std::lock_guard<std::mutex> guard(*lock);
        if (cache->size() < (std::size_t{1} << 23))
          cache->emplace(std::make_pair(num, den), prod);
      }
      return prod;
    });
  };
  for (std::size_t l = 0; l < d; ++l) {
    sys.psi.push_back(make(bank.synthesis[l], bank.synthesis[0]));
    sys.psi_dual.push_back(make(bank.analysis[l], bank.analysis[0]));
  }
  return sys;
}

SampledFunction atom_frequency(const AtomSystem& sys, const Atom& a,
                               double omega, bool dual) {
  SampledFunction out = make_grid(omega, sys.base_den);
  std::int64_t h = out.half_extent();
  double amp = std::pow(2.0 * static_cast<double>(sys.s.N),
                        -0.5 * static_cast<double>(a.level));
  double lam = lambda_value(sys.s, a.t);
  double scale = std::pow(2.0 * static_cast<double>(sys.s.N), a.level);
  for (std::int64_t g = -h; g <= h; ++g) {
    cplx base = psi_lookup(sys, a.channel, g, a.level, dual);
    if (base == cplx{0.0, 0.0}) continue;
    double u = static_cast<double>(g) /
               (static_cast<double>(sys.base_den) * scale);
    out.mut_at_scaled(g) = amp * base * unit(-2.0 * std::numbers::pi * lam * u);
  }
  return out;
}

cplx coefficient(const SampledFunction& f, const AtomSystem& sys,
                 const Atom& a, bool dual) {
  if (f.den != sys.base_den)
    throw Error(Errc::grid_mismatch, "signal must live on the base grid");
  return inner_product(f, atom_frequency(sys, a, f.omega, dual));
}

std::vector<cplx> channel_coefficients(const SampledFunction& f,
                                       const AtomSystem& sys, int channel,
                                       int level, long window, bool dual) {
  if (f.den != sys.base_den)
    throw Error(Errc::grid_mismatch, "signal must live on the base grid");
  const Spectrum& s = sys.s;
  std::int64_t h = f.half_extent();
  auto span = static_cast<std::size_t>(2 * window + 1);
  std::vector<cplx> acc(2 * span, cplx{0.0, 0.0});  // index (n + w) * 2 + k
  double amp = std::pow(2.0 * static_cast<double>(s.N),
                        -0.5 * static_cast<double>(level));
  double scale = std::pow(2.0 * static_cast<double>(s.N), level);
  double two_pi = 2.0 * std::numbers::pi;
  for (std::int64_t g = -h; g <= h; ++g) {
    cplx base = psi_lookup(sys, channel, g, level, dual);
    if (base == cplx{0.0, 0.0}) continue;
    cplx w = f.at_scaled(g) * std::conj(base) * amp /
             static_cast<double>(f.den);
    if (g == -h || g == h) w *= 0.5;
    if (w == cplx{0.0, 0.0}) continue;
    double u = static_cast<double>(g) /
               (static_cast<double>(sys.base_den) * scale);
    cplx step = unit(2.0 * two_pi * u);  // advance of e^{2 pi i lambda u} per n
    for (int k = 0; k <= 1; ++k) {
      double lam0 = static_cast<double>(s.r) * k / static_cast<double>(s.N) -
                    2.0 * static_cast<double>(window);
      cplx z = w * unit(two_pi * lam0 * u);
      for (std::size_t m = 0; m < span; ++m) {
        acc[m * 2 + static_cast<std::size_t>(k)] += z;
        z *= step;
      }
    }
  }
  // reorder to the sorted lambda_window layout
  auto idx = lambda_window(s, window);
  std::vector<cplx> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    out[i] = acc[static_cast<std::size_t>(idx[i].n + window) * 2 +
                 static_cast<std::size_t>(idx[i].k)];
  return out;
}

void accumulate_atoms(SampledFunction& out, const AtomSystem& sys, int channel,
                      int level, long window, const std::vector<cplx>& coeffs,
                      bool dual) {
  const Spectrum& s = sys.s;
  auto idx = lambda_window(s, window);
  if (coeffs.size() != idx.size())
    throw Error(Errc::bad_argument, "coefficient count mismatch");
  auto span = static_cast<std::size_t>(2 * window + 1);
  std::vector<cplx> c(2 * span, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < idx.size(); ++i)
    c[static_cast<std::size_t>(idx[i].n + window) * 2 +
      static_cast<std::size_t>(idx[i].k)] = coeffs[i];
  std::int64_t h = out.half_extent();
  double amp = std::pow(2.0 * static_cast<double>(s.N),
                        -0.5 * static_cast<double>(level));
  double scale = std::pow(2.0 * static_cast<double>(s.N), level);
  double two_pi = 2.0 * std::numbers::pi;
  for (std::int64_t g = -h; g <= h; ++g) {
    cplx base = psi_lookup(sys, channel, g, level, dual);
    if (base == cplx{0.0, 0.0}) continue;
    double u = static_cast<double>(g) /
               (static_cast<double>(sys.base_den) * scale);
    cplx step = unit(-2.0 * two_pi * u);
    cplx sum{0.0, 0.0};
    for (int k = 0; k <= 1; ++k) {
      double lam0 = static_cast<double>(s.r) * k / static_cast<double>(s.N) -
                    2.0 * static_cast<double>(window);
      cplx z = unit(-two_pi * lam0 * u);
      for (std::size_t m = 0; m < span; ++m) {
        sum += c[m * 2 + static_cast<std::size_t>(k)] * z;
        z *= step;
      }
    }
    out.mut_at_scaled(g) += amp * base * sum;
  }
}

SampledFunction project(const SampledFunction& f, const AtomSystem& sys,
                        int level, long window, bool swap_roles) {
  auto coeffs = channel_coefficients(f, sys, 0, level, window, !swap_roles);
  SampledFunction out = make_grid(f.omega, f.den);
  accumulate_atoms(out, sys, 0, level, window, coeffs, swap_roles);
  return out;
}

static SampledFunction detail_sum(const SampledFunction& f,
                                  const AtomSystem& sys, int level, long window,
                                  bool swap_roles) {
  SampledFunction out = make_grid(f.omega, f.den);
  for (int l = 1; l < 2 * sys.s.N; ++l) {
    auto coeffs = channel_coefficients(f, sys, l, level, window, !swap_roles);
    accumulate_atoms(out, sys, l, level, window, coeffs, swap_roles);
  }
  return out;
}

double one_level_residual(const SampledFunction& f, const AtomSystem& sys,
                          long window, bool swap_roles) {
  double nf = l2_norm(f);
  if (nf == 0.0) throw Error(Errc::zero_signal, "signal has zero norm");
  SampledFunction p1 = project(f, sys, 1, window, swap_roles);
  SampledFunction p0 = project(f, sys, 0, window, swap_roles);
  SampledFunction d = detail_sum(f, sys, 0, window, swap_roles);
  SampledFunction r = make_grid(f.omega, f.den);
  for (std::size_t i = 0; i < r.v.size(); ++i)
    r.v[i] = p1.v[i] - p0.v[i] - d.v[i];
  return l2_norm(r) / nf;
}

Expansion expand(const SampledFunction& f, const AtomSystem& sys, int j_lo,
                 int j_hi, long window) {
  if (j_lo >= j_hi) throw Error(Errc::bad_argument, "need j_lo < j_hi");
  Expansion e;
  e.reconstruction = make_grid(f.omega, f.den);
  double nf = l2_norm(f);
  if (nf == 0.0) return e;
  for (int l = 1; l < 2 * sys.s.N; ++l) {
    for (int j = j_lo; j <= j_hi; ++j) {
      auto coeffs = channel_coefficients(f, sys, l, j, window, true);
      accumulate_atoms(e.reconstruction, sys, l, j, window, coeffs, false);
    }
  }
  SampledFunction r = make_grid(f.omega, f.den);
  for (std::size_t i = 0; i < r.v.size(); ++i)
    r.v[i] = f.v[i] - e.reconstruction.v[i];
  e.residual = l2_norm(r) / nf;
  return e;
}

CrossBiorthogonality cross_biorthogonality(const AtomSystem& sys, int j_lo,
                                           int j_hi, long n_window,
                                           double omega) {
  auto idx = lambda_window(sys.s, n_window);
  std::vector<Atom> atoms;
  for (int l = 1; l < 2 * sys.s.N; ++l)
    for (int j = j_lo; j <= j_hi; ++j)
      for (const auto& t : idx) atoms.push_back({l, j, t});
  std::vector<SampledFunction> primal, dual;
  primal.reserve(atoms.size());
  dual.reserve(atoms.size());
  for (const auto& a : atoms) {
    primal.push_back(atom_frequency(sys, a, omega, false));
    dual.push_back(atom_frequency(sys, a, omega, true));
  }
  CrossBiorthogonality cb;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      cplx ip = inner_product(primal[i], dual[j]);
      double want = i == j ? 1.0 : 0.0;
      double dev = std::abs(ip - cplx{want, 0.0});
      cb.max_deviation = std::max(cb.max_deviation, dev);
      if (i == j)
        cb.max_diagonal_deviation = std::max(cb.max_diagonal_deviation, dev);
    }
  }
  return cb;
}

FrameEstimate empirical_frame_bounds(const AtomSystem& sys,
                                     const std::vector<SampledFunction>& signals,
                                     int j_lo, int j_hi, long window) {
  if (signals.empty()) throw Error(Errc::bad_argument, "no signals supplied");
  FrameEstimate fe;
  fe.sample_count = signals.size();
  fe.j_lo = j_lo;
  fe.j_hi = j_hi;
  fe.window = window;
  fe.ratios.assign(signals.size(), 0.0);
  fe.ratios_dual.assign(signals.size(), 0.0);

  auto ratio_of = [&](const SampledFunction& f, bool dual) {
    double nf2 = inner_product(f, f).real();
    if (nf2 == 0.0) throw Error(Errc::zero_signal, "signal has zero norm");
    double acc = 0.0;
    for (int l = 1; l < 2 * sys.s.N; ++l)
      for (int j = j_lo; j <= j_hi; ++j)
        for (const cplx& c : channel_coefficients(f, sys, l, j, window, dual))
          acc += std::norm(c);
    return acc / nf2;
  };

  int threads = std::min<int>(env_threads(), static_cast<int>(signals.size()));
  auto work = [&](int tid) {
    for (std::size_t i = static_cast<std::size_t>(tid); i < signals.size();
         i += static_cast<std::size_t>(threads)) {
      fe.ratios[i] = ratio_of(signals[i], false);
      fe.ratios_dual[i] = ratio_of(signals[i], true);
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  auto [lo, hi] = std::minmax_element(fe.ratios.begin(), fe.ratios.end());
  auto [lod, hid] =
      std::minmax_element(fe.ratios_dual.begin(), fe.ratios_dual.end());
  fe.lower = *lo;
  fe.upper = *hi;
  fe.lower_dual = *lod;
  fe.upper_dual = *hid;
  return fe;
}

SampledFunction random_band_signal(double omega, std::int64_t den,
                                   double band_lo, double band_hi, int kernel,
                                   int passes, std::mt19937_64& rng) {
  SampledFunction f = make_grid(omega, den);
  std::int64_t h = f.half_extent();
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::int64_t g = -h; g <= h; ++g) {
    double xi = static_cast<double>(g) / static_cast<double>(den);
    if (xi >= band_lo && xi < band_hi)
      f.mut_at_scaled(g) = cplx{gauss(rng), gauss(rng)};
  }
  std::vector<double> tri(static_cast<std::size_t>(2 * kernel + 1));
  double norm = 0.0;
  for (int m = -kernel; m <= kernel; ++m) {
    double w = 1.0 - std::abs(m) / static_cast<double>(kernel + 1);
    tri[static_cast<std::size_t>(m + kernel)] = w;
    norm += w;
  }
  for (auto& w : tri) w /= norm;
  std::vector<cplx> buf(f.v.size());
  for (int p = 0; p < passes; ++p) {
    std::fill(buf.begin(), buf.end(), cplx{0.0, 0.0});
    auto n = static_cast<std::int64_t>(f.v.size());
    for (std::int64_t i = 0; i < n; ++i) {
      cplx acc{0.0, 0.0};
      for (int m = -kernel; m <= kernel; ++m) {
        std::int64_t j = i + m;
        if (j < 0 || j >= n) continue;
        acc += tri[static_cast<std::size_t>(m + kernel)] *
               f.v[static_cast<std::size_t>(j)];
      }
      buf[static_cast<std::size_t>(i)] = acc;
    }
    f.v = buf;
  }
  return f;
}

SampledFunction random_refined_lattice_signal(const AtomSystem& sys,
                                              long n_window, double omega,
                                              std::mt19937_64& rng) {
  const Spectrum& s = sys.s;
  SampledFunction f = make_grid(omega, sys.base_den);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (long n = -n_window; n <= n_window; ++n) {
    for (int k = 0; k <= 1; ++k) {
      // 2N * (r k / N + 2 n) = 2 r k + 4 N n, a translation with index
      // (0, r k + 2 N n)
      Atom a{0, 1, {0, s.r * k + 2 * s.N * n}};
      cplx c{gauss(rng), gauss(rng)};
      SampledFunction atom = atom_frequency(sys, a, omega, false);
      for (std::size_t i = 0; i < f.v.size(); ++i) f.v[i] += c * atom.v[i];
    }
  }
  return f;
}

}  // namespace numra
