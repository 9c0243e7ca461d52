#include "equidist/error.hpp"

namespace equidist {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::NotRepresentable: return "not-representable";
    case ErrorCode::IncompatibleCell: return "incompatible-cell";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Construction: return "construction";
    case ErrorCode::InvalidWeight: return "invalid-weight";
    case ErrorCode::Overflow: return "overflow";
  }
  return "unknown";
}

}  // namespace equidist
