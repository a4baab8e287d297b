#include "rddr/error.hpp"

namespace rddr {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InfeasibleOrthogonal: return "InfeasibleOrthogonal";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace rddr
