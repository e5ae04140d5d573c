#pragma once

#include <stdexcept>
#include <string>

namespace zerocycle {

enum class errc {
  bad_input,
  dimension_mismatch,
  zero_direction,
  zero_polynomial,
  degree_zero,
  no_convergence,
  root_near_boundary,
  winding_not_integer,
  not_a_root,
  unstable_count,
  properness_violation,
  inconsistent_slice_degree,
  frame_search_failed,
  non_monic,
  empty_zero_set,
  improper_intersection,
  insufficient_shells,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::bad_input: return "bad_input";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::zero_direction: return "zero_direction";
    case errc::zero_polynomial: return "zero_polynomial";
    case errc::degree_zero: return "degree_zero";
    case errc::no_convergence: return "no_convergence";
    case errc::root_near_boundary: return "root_near_boundary";
    case errc::winding_not_integer: return "winding_not_integer";
    case errc::not_a_root: return "not_a_root";
    case errc::unstable_count: return "unstable_count";
    case errc::properness_violation: return "properness_violation";
    case errc::inconsistent_slice_degree: return "inconsistent_slice_degree";
    case errc::frame_search_failed: return "frame_search_failed";
    case errc::non_monic: return "non_monic";
    case errc::empty_zero_set: return "empty_zero_set";
    case errc::improper_intersection: return "improper_intersection";
    case errc::insufficient_shells: return "insufficient_shells";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

inline void require(bool cond, errc c, const std::string& msg) {
  if (!cond) fail(c, msg);
}

}  // namespace zerocycle
