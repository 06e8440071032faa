#ifndef NUMRA_ERROR_HPP_
#define NUMRA_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace numra {

enum class Errc {
  ok = 0,
  n_non_positive,
  r_not_odd,
  r_out_of_range,
  not_coprime,
  grid_mismatch,
  step_not_aligned,
  unaligned_query,
  wrong_channel_count,
  not_normalized,
  lower_bound_zero,
  zero_signal,
  degenerate_tail,
  io_failure,
  bad_argument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace numra

#endif
