#include "spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace numra {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ok: return "Ok";
    case Errc::n_non_positive: return "NNonPositive";
    case Errc::r_not_odd: return "RNotOdd";
    case Errc::r_out_of_range: return "ROutOfRange";
    case Errc::not_coprime: return "NotCoprime";
    case Errc::grid_mismatch: return "GridMismatch";
    case Errc::step_not_aligned: return "StepNotAligned";
    case Errc::unaligned_query: return "UnalignedQuery";
    case Errc::wrong_channel_count: return "WrongChannelCount";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::lower_bound_zero: return "LowerBoundZero";
    case Errc::zero_signal: return "ZeroSignal";
    case Errc::degenerate_tail: return "DegenerateTail";
    case Errc::io_failure: return "IoFailure";
    case Errc::bad_argument: return "BadArgument";
  }
  return "Unknown";
}

Spectrum validate_spectrum(long N, long r) {
  if (N < 1) throw Error(Errc::n_non_positive, "N must be a positive integer");
  if (r % 2 == 0) throw Error(Errc::r_not_odd, "r must be odd");
  if (r < 1 || r > 2 * N - 1)
    throw Error(Errc::r_out_of_range, "r must lie in [1, 2N-1]");
  if (std::gcd(r, N) != 1)
    throw Error(Errc::not_coprime, "r and N must be coprime");
  return Spectrum{N, r};
}

double lambda_value(const Spectrum& s, TranslationIndex idx) {
  return static_cast<double>(s.r) * idx.k / static_cast<double>(s.N) +
         2.0 * static_cast<double>(idx.n);
}

std::int64_t lambda_scaled(const Spectrum& s, TranslationIndex idx,
                           std::int64_t den) {
  if (den % s.N != 0)
    throw Error(Errc::step_not_aligned, "grid denominator not divisible by N");
  return s.r * idx.k * (den / s.N) + 2 * idx.n * den;
}

std::vector<TranslationIndex> lambda_window(const Spectrum& s, long window) {
  std::vector<TranslationIndex> out;
  for (long n = -window; n <= window; ++n)
    for (int k = 0; k <= 1; ++k) out.push_back({k, n});
  std::sort(out.begin(), out.end(),
            [&](const TranslationIndex& a, const TranslationIndex& b) {
              // compare r*k/N + 2n exactly: r*k*1 + 2n*N over N
              return s.r * a.k + 2 * a.n * s.N < s.r * b.k + 2 * b.n * s.N;
            });
  // r*k/N + 2n is injective over (k, n) for coprime r, N: no dedup needed.
  return out;
}

std::vector<std::pair<TranslationIndex, double>> enumerate_lambda(
    const Spectrum& s, double lo, double hi) {
  std::vector<std::pair<TranslationIndex, double>> out;
  if (lo > hi) throw Error(Errc::bad_argument, "lo > hi");
  long n_lo = static_cast<long>(std::floor(lo / 2.0)) - 2;
  long n_hi = static_cast<long>(std::ceil(hi / 2.0)) + 2;
  for (long n = n_lo; n <= n_hi; ++n) {
    for (int k = 0; k <= 1; ++k) {
      TranslationIndex idx{k, n};
      double v = lambda_value(s, idx);
      if (v >= lo && v <= hi) out.emplace_back(idx, v);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

bool gamma_indicator(const Spectrum& s, double xi) {
  double half_n = static_cast<double>(s.N) / 2.0;
  return (xi >= 0.0 && xi < 0.5) || (xi >= half_n && xi < half_n + 0.5);
}

bool gamma_indicator_exact(const Spectrum& s, std::int64_t num,
                           std::int64_t den) {
  // num/den in [0,1/2) u [N/2,(N+1)/2)  <=>  2*num in [0,den) u [N*den,(N+1)*den)
  __int128 t = static_cast<__int128>(num) * 2;
  __int128 d = den;
  return (t >= 0 && t < d) || (t >= s.N * d && t < (s.N + 1) * d);
}

long tiling_sum(const Spectrum& s, std::int64_t num, std::int64_t den,
                long n_window) {
  // xi + lambda = (num*N + r*k*den + 2n*N*den) / (N*den), exact
  long count = 0;
  for (long n = -n_window; n <= n_window; ++n) {
    for (int k = 0; k <= 1; ++k) {
      std::int64_t nn = num * s.N + s.r * k * den + 2 * n * s.N * den;
      if (gamma_indicator_exact(s, nn, s.N * den)) ++count;
    }
  }
  return count;
}

std::complex<double> exp_inner_product(const Spectrum& s, double lambda,
                                       double lambda_prime) {
  double mu = lambda - lambda_prime;
  if (mu == 0.0) return {1.0, 0.0};
  // integral over [a,b) of e^{2 pi i mu xi} = (e^{2 pi i mu b} - e^{2 pi i mu a}) / (2 pi i mu)
  using namespace std::complex_literals;
  auto piece = [&](double a, double b) {
    double w = 2.0 * std::numbers::pi * mu;
    return (std::exp(1i * (w * b)) - std::exp(1i * (w * a))) / (1i * w);
  };
  double hn = static_cast<double>(s.N) / 2.0;
  return piece(0.0, 0.5) + piece(hn, hn + 0.5);
}

std::vector<std::complex<double>> gram_matrix(const Spectrum& s, long window) {
  if (window < 1) throw Error(Errc::bad_argument, "window must be >= 1");
  auto idx = lambda_window(s, window);
  std::size_t d = idx.size();
  std::vector<std::complex<double>> g(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      g[i * d + j] =
          exp_inner_product(s, lambda_value(s, idx[i]), lambda_value(s, idx[j]));
  return g;
}

}  // namespace numra
