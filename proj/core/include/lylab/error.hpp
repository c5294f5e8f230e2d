#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lylab {

enum class ErrorCode {
  InvalidInput,
  Unsupported,
  SizeOverflow,
  QuadratureNonConvergence,
  QuadratureBudget,
  SingularAverage,
  EigenvalueCrossing,
  RootNonConvergence,
  ZeroEncountered,
};

// Stable token used on stderr and in reports, e.g. "E_INPUT".
std::string_view code_name(ErrorCode code);

// Numerical diagnostics map to exit code 4, everything else to 3.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Order-doubling failure; keeps both estimates so callers can report them.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& message, double coarse_abs, double fine_abs);
  double coarse() const noexcept { return coarse_; }
  double fine() const noexcept { return fine_; }

 private:
  double coarse_;
  double fine_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool ok, const std::string& message) {
  if (!ok) fail(ErrorCode::InvalidInput, message);
}

}  // namespace lylab
