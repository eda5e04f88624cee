#ifndef GLSEG_COMMON_HPP
#define GLSEG_COMMON_HPP

#include <stdexcept>
#include <string>

namespace glseg {

enum class ErrorCode {
  invalid_argument,
  invalid_config,
  degenerate_scale,
  size_mismatch,
  invalid_label,
  format,
  io,
  diverged,
};

/// Library error carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace glseg

#endif
