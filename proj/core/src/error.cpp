#include "lylab/error.hpp"

namespace lylab {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "E_INPUT";
    case ErrorCode::Unsupported: return "E_UNSUPPORTED";
    case ErrorCode::SizeOverflow: return "E_SIZE";
    case ErrorCode::QuadratureNonConvergence: return "E_QUADRATURE";
    case ErrorCode::QuadratureBudget: return "E_QUAD_BUDGET";
    case ErrorCode::SingularAverage: return "E_SINGULAR_Z";
    case ErrorCode::EigenvalueCrossing: return "E_EIG_CROSSING";
    case ErrorCode::RootNonConvergence: return "E_ROOTS";
    case ErrorCode::ZeroEncountered: return "E_ZERO_FOUND";
  }
  return "E_UNKNOWN";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::Unsupported:
    case ErrorCode::SizeOverflow:
      return false;
    default:
      return true;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

QuadratureError::QuadratureError(const std::string& message, double coarse_abs, double fine_abs)
    : Error(ErrorCode::QuadratureNonConvergence, message), coarse_(coarse_abs), fine_(fine_abs) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace lylab
