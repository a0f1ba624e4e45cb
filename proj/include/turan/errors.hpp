#ifndef TURAN_ERRORS_HPP
#define TURAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace turan {

enum class ErrorCode {
    DuplicateEdge,
    BadArity,
    VertexOutOfRange,
    TooManyEdges,
    BadShadowSize,
    TooLarge,
    Undefined,
    PartitionRetryExhausted,
    UnknownEdgeId,
    TooFewVertices,
    CodegreeTooSmall,
    DanglingShadow,
    TooSparse,
    HypothesisViolated,
    TooManyCopies,
    EmptyInput,
    ParseError,
    BadParameter,
    BudgetExhausted,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace turan

#endif
