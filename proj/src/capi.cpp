#include "numra/numra.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include "bankio.hpp"
#include "report.hpp"

using namespace numra;

struct numra_spectrum {
  Spectrum s;
};
struct numra_bank {
  std::optional<FilterBank> fb;  // empty = builtin band-selection
  Spectrum shannon_for;          // spectrum when builtin
};
struct numra_report {
  CertificationReport rep;
};

namespace {

thread_local std::string g_last_error;

int code_of(Errc c) {
  switch (c) {
    case Errc::ok: return NUMRA_OK;
    case Errc::n_non_positive: return NUMRA_E_N_NON_POSITIVE;
    case Errc::r_not_odd: return NUMRA_E_R_NOT_ODD;
    case Errc::r_out_of_range: return NUMRA_E_R_OUT_OF_RANGE;
    case Errc::not_coprime: return NUMRA_E_NOT_COPRIME;
    case Errc::grid_mismatch: return NUMRA_E_GRID_MISMATCH;
    case Errc::step_not_aligned: return NUMRA_E_STEP_NOT_ALIGNED;
    case Errc::unaligned_query: return NUMRA_E_UNALIGNED_QUERY;
    case Errc::wrong_channel_count: return NUMRA_E_WRONG_CHANNEL_COUNT;
    case Errc::not_normalized: return NUMRA_E_NOT_NORMALIZED;
    case Errc::lower_bound_zero: return NUMRA_E_LOWER_BOUND_ZERO;
    case Errc::zero_signal: return NUMRA_E_ZERO_SIGNAL;
    case Errc::degenerate_tail: return NUMRA_E_DEGENERATE_TAIL;
    case Errc::io_failure: return NUMRA_E_IO;
    case Errc::bad_argument: return NUMRA_E_BAD_ARGUMENT;
  }
  return NUMRA_E_INTERNAL;
}

template <typename F>
int guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return NUMRA_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return code_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NUMRA_E_INTERNAL;
  }
}

CertifyOptions to_options(const Spectrum& s,
                          const numra_certify_options* opts) {
  CertifyOptions o;
  if (opts == nullptr) return o;
  if (opts->omega > 0) o.omega = opts->omega;
  if (opts->step > 0) {
    double den = 1.0 / opts->step;
    auto d = static_cast<std::int64_t>(std::llround(den));
    if (d <= 0 || std::abs(den - static_cast<double>(d)) > 1e-6)
      throw Error(Errc::step_not_aligned, "step must be a unit fraction");
    o.den = d;
  }
  if (opts->nmax > 0) o.n_max = opts->nmax;
  if (opts->jlo != 0 || opts->jhi != 0) {
    o.j_lo = opts->jlo;
    o.j_hi = opts->jhi;
  }
  if (opts->lwindow > 0) o.lwindow = opts->lwindow;
  if (opts->seed != 0) o.seed = opts->seed;
  (void)s;
  return o;
}

}  // namespace

extern "C" {

const char* numra_error_name(int code) {
  switch (code) {
    case NUMRA_OK: return "Ok";
    case NUMRA_E_N_NON_POSITIVE: return errc_name(Errc::n_non_positive);
    case NUMRA_E_R_NOT_ODD: return errc_name(Errc::r_not_odd);
    case NUMRA_E_R_OUT_OF_RANGE: return errc_name(Errc::r_out_of_range);
    case NUMRA_E_NOT_COPRIME: return errc_name(Errc::not_coprime);
    case NUMRA_E_GRID_MISMATCH: return errc_name(Errc::grid_mismatch);
    case NUMRA_E_STEP_NOT_ALIGNED: return errc_name(Errc::step_not_aligned);
    case NUMRA_E_UNALIGNED_QUERY: return errc_name(Errc::unaligned_query);
    case NUMRA_E_WRONG_CHANNEL_COUNT:
      return errc_name(Errc::wrong_channel_count);
    case NUMRA_E_NOT_NORMALIZED: return errc_name(Errc::not_normalized);
    case NUMRA_E_LOWER_BOUND_ZERO: return errc_name(Errc::lower_bound_zero);
    case NUMRA_E_ZERO_SIGNAL: return errc_name(Errc::zero_signal);
    case NUMRA_E_DEGENERATE_TAIL: return errc_name(Errc::degenerate_tail);
    case NUMRA_E_IO: return errc_name(Errc::io_failure);
    case NUMRA_E_BAD_ARGUMENT: return errc_name(Errc::bad_argument);
    default: return "Internal";
  }
}

const char* numra_last_error_message(void) { return g_last_error.c_str(); }

int numra_spectrum_create(long N, long r, numra_spectrum** out) {
  if (out == nullptr) return NUMRA_E_BAD_ARGUMENT;
  *out = nullptr;
  return guarded([&] { *out = new numra_spectrum{validate_spectrum(N, r)}; });
}

void numra_spectrum_destroy(numra_spectrum* s) { delete s; }

int numra_bank_load(const char* path, numra_bank** out) {
  if (out == nullptr || path == nullptr) return NUMRA_E_BAD_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    FilterBank fb = load_bank(path);
    *out = new numra_bank{fb, fb.spectrum};
  });
}

int numra_bank_shannon(const numra_spectrum* s, numra_bank** out) {
  if (out == nullptr || s == nullptr) return NUMRA_E_BAD_ARGUMENT;
  *out = nullptr;
  return guarded([&] { *out = new numra_bank{std::nullopt, s->s}; });
}

void numra_bank_destroy(numra_bank* b) { delete b; }

void numra_certify_options_default(numra_certify_options* opts) {
  if (opts == nullptr) return;
  *opts = numra_certify_options{8.0, 0.0, 0, -2, 4, 16, 1};
}

int numra_certify(const numra_spectrum* s, const numra_bank* bank,
                  const numra_certify_options* opts, numra_report** out) {
  if (out == nullptr || s == nullptr) return NUMRA_E_BAD_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    std::optional<FilterBank> fb;
    if (bank != nullptr && bank->fb.has_value()) fb = bank->fb;
    Spectrum sp = fb.has_value() ? fb->spectrum : s->s;
    CertifyOptions o = to_options(sp, opts);
    *out = new numra_report{certify(sp, fb, o)};
  });
}

int numra_report_json(const numra_report* r, char** out) {
  if (out == nullptr || r == nullptr) return NUMRA_E_BAD_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    std::string text = r->rep.doc.dump(2);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

int numra_report_pass(const numra_report* r) {
  return (r != nullptr && r->rep.all_pass) ? 1 : 0;
}

void numra_report_destroy(numra_report* r) { delete r; }

void numra_string_free(char* s) { std::free(s); }

int numra_export(const numra_spectrum* s, const numra_bank* bank,
                 const numra_certify_options* opts, const char* what,
                 const char* out_path) {
  if (s == nullptr || what == nullptr || out_path == nullptr)
    return NUMRA_E_BAD_ARGUMENT;
  return guarded([&] {
    std::optional<FilterBank> fb;
    if (bank != nullptr && bank->fb.has_value()) fb = bank->fb;
    Spectrum sp = fb.has_value() ? fb->spectrum : s->s;
    CertifyOptions o = to_options(sp, opts);
    export_csv(sp, fb, o, what, out_path);
  });
}

}  // extern "C"
