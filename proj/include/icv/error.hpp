#pragma once

#include <stdexcept>
#include <string>

namespace icv {

enum class Errc {
  invalid_argument,
  insufficient_data,
  degenerate_kernel,
  degenerate_data,
  optimization_failure,
  profile_failure,
  parse_error,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// front ends can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace icv
