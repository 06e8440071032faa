#ifndef NUMRA_SPECTRUM_HPP_
#define NUMRA_SPECTRUM_HPP_

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "error.hpp"

namespace numra {

// Translation set Lambda = {r*k/N + 2n : k in {0,1}, n in Z} with dilation
// factor 2N, and the associated frequency cell
// Gamma = [0, 1/2) u [N/2, (N+1)/2) of total measure 1.
struct Spectrum {
  long N = 1;
  long r = 1;
};

struct TranslationIndex {
  int k = 0;
  long n = 0;
  friend bool operator==(const TranslationIndex&,
                         const TranslationIndex&) = default;
};

// Checks N >= 1, r odd, 1 <= r <= 2N-1, gcd(r, N) = 1.
Spectrum validate_spectrum(long N, long r);

// r*k/N + 2n as a double (exact whenever N divides r*k).
double lambda_value(const Spectrum& s, TranslationIndex idx);

// lambda * den as an exact integer; requires N | den.
std::int64_t lambda_scaled(const Spectrum& s, TranslationIndex idx,
                           std::int64_t den);

// All lambda in [lo, hi], ascending, deduplicated.
std::vector<std::pair<TranslationIndex, double>> enumerate_lambda(
    const Spectrum& s, double lo, double hi);

// Translation indices with |n| <= window, both k, ordered by lambda.
std::vector<TranslationIndex> lambda_window(const Spectrum& s, long window);

bool gamma_indicator(const Spectrum& s, double xi);

// Membership of num/den in Gamma, exact integer arithmetic.
bool gamma_indicator_exact(const Spectrum& s, std::int64_t num,
                           std::int64_t den);

// sum_{|n| <= n_window, k} 1_Gamma(xi + lambda) for xi = num/den, exact.
long tiling_sum(const Spectrum& s, std::int64_t num, std::int64_t den,
                long n_window);

// Closed form of integral_Gamma e^{2 pi i (lambda - lambda') xi} d xi.
std::complex<double> exp_inner_product(const Spectrum& s, double lambda,
                                       double lambda_prime);

// Row-major matrix of exp_inner_product over lambda_window(s, window).
std::vector<std::complex<double>> gram_matrix(const Spectrum& s, long window);

}  // namespace numra

#endif
