#pragma once

#include <stdexcept>
#include <string>

namespace rpt {

enum class ErrorKind {
  InvalidArgument,
  Precision,         // rounding residual too large for an integer-valued quantity
  NotRepresentable,  // frequency does not fall on a bin of the chosen block length
  Format,            // malformed input data
  Io,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace rpt
