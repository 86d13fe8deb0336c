#include "ustats/errors.hpp"

namespace ustats {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidNotation: return "InvalidNotation";
        case ErrorCode::InvalidOutput: return "InvalidOutput";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::MemoryCapExceeded: return "MemoryCapExceeded";
        case ErrorCode::IndexAbsent: return "IndexAbsent";
        case ErrorCode::TooLargeForExhaustive: return "TooLargeForExhaustive";
        case ErrorCode::OrderTooLarge: return "OrderTooLarge";
        case ErrorCode::NotRefinement: return "NotRefinement";
        case ErrorCode::GroundSetMismatch: return "GroundSetMismatch";
        case ErrorCode::VertexAbsent: return "VertexAbsent";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::OutOfTable: return "OutOfTable";
        case ErrorCode::SampleTooSmall: return "SampleTooSmall";
        case ErrorCode::TooManyTerms: return "TooManyTerms";
        case ErrorCode::NonIntegerResult: return "NonIntegerResult";
        case ErrorCode::ComponentEvaluationError: return "ComponentEvaluationError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace ustats
