#ifndef NUMRA_REPORT_HPP_
#define NUMRA_REPORT_HPP_

#include <optional>
#include <string>

#include "json.hpp"
#include "transform.hpp"

namespace numra {

inline constexpr const char* kToolName = "numra";
inline constexpr const char* kToolVersion = "0.1.0";

struct CertifyOptions {
  double omega = 8.0;
  std::int64_t den = 0;       // 0 -> 4N * 64
  long n_max = 0;             // 0 -> ceil((omega + 2) / 2)
  int j_lo = -2;
  int j_hi = 4;
  long lwindow = 16;          // translation window for identities
  long frame_window = 31;     // wider window for frame scans, alias-free
                              // on the default grid
  std::uint64_t seed = 1;
  int signals_identity = 20;
  int signals_frame = 100;
  int cascade_depth = 30;
  double chain_slack = 0.01;  // truncation slack for the frame chain check
};

struct CertificationReport {
  nlohmann::json doc;
  bool all_pass = false;
};

// Full pipeline over a mask bank; when `bank` is empty the builtin
// band-selection (Shannon) system for `s` is certified.
CertificationReport certify(const Spectrum& s,
                            const std::optional<FilterBank>& bank,
                            const CertifyOptions& opts);

// Writes CSV exports: what is one of periodization | scaling | wavelets |
// coefficients.
void export_csv(const Spectrum& s, const std::optional<FilterBank>& bank,
                const CertifyOptions& opts, const std::string& what,
                const std::string& out_path);

CertifyOptions options_from_report(const nlohmann::json& report);

}  // namespace numra

#endif
