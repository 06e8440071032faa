#ifndef NUMRA_BANKIO_HPP_
#define NUMRA_BANKIO_HPP_

#include <string>

#include "filterbank.hpp"

namespace numra {

// Bank file layout:
// {
//   "spectrum": {"N": 2, "r": 1},
//   "synthesis": [ {"type": "trigpoly", "coeffs": [{"k":0,"n":0,"re":"0.5","im":0}, ...]},
//                  {"type": "sampled", "period": 2, "step": 0.001953125, "samples": [[re,im], ...]} ],
//   "analysis":  [ ... ]
// }
// Numeric fields accept plain numbers or decimal strings.
FilterBank load_bank(const std::string& path);

FilterBank parse_bank(const std::string& text);

std::string bank_to_json(const FilterBank& bank);

}  // namespace numra

#endif
