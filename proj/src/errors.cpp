#include "turan/errors.hpp"

namespace turan {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::BadArity: return "BadArity";
        case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
        case ErrorCode::TooManyEdges: return "TooManyEdges";
        case ErrorCode::BadShadowSize: return "BadShadowSize";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::Undefined: return "Undefined";
        case ErrorCode::PartitionRetryExhausted: return "PartitionRetryExhausted";
        case ErrorCode::UnknownEdgeId: return "UnknownEdgeId";
        case ErrorCode::TooFewVertices: return "TooFewVertices";
        case ErrorCode::CodegreeTooSmall: return "CodegreeTooSmall";
        case ErrorCode::DanglingShadow: return "DanglingShadow";
        case ErrorCode::TooSparse: return "TooSparse";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::TooManyCopies: return "TooManyCopies";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::BadParameter: return "BadParameter";
        case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    }
    return "Unknown";
}

}  // namespace turan
