#pragma once

#include <stdexcept>
#include <string>

namespace ustats {

/// Machine-checkable failure categories for every throwing operation in the
/// library. Tests and the CLI dispatch on the code rather than on message text.
enum class ErrorCode {
    InvalidNotation,           ///< structurally bad einsum notation (no inputs, empty tuple, negative index)
    InvalidOutput,             ///< output tuple has duplicates or indices absent from the inputs
    ShapeMismatch,             ///< tensor orders/extents do not match the notation
    MemoryCapExceeded,         ///< a tensor or intermediate would exceed the configured entry cap
    IndexAbsent,               ///< an elimination step was given a tuple that lacks the index
    TooLargeForExhaustive,     ///< exhaustive order search beyond the configured index bound
    OrderTooLarge,             ///< partition enumeration beyond the supported ground-set size
    NotRefinement,             ///< Möbius pair requested for partitions not ordered by refinement
    GroundSetMismatch,         ///< partitions (or partition vs. graph) over different ground sets
    VertexAbsent,              ///< graph operation on a vertex that is not present
    TooLarge,                  ///< exact treewidth beyond the configured vertex bound
    OutOfTable,                ///< edge-count treewidth lookup outside the verified range
    SampleTooSmall,            ///< statistic of order m requested on fewer than m observations
    TooManyTerms,              ///< brute-force evaluation beyond the configured term cap
    NonIntegerResult,          ///< motif count failed the integrality check
    ComponentEvaluationError,  ///< a kernel component threw or produced a non-finite value in strict mode
    InvalidArgument,           ///< other precondition violations (bad arity, bad flag value, ...)
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Throws ustats::Error with the given code; central choke point for breakpoints.
[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace ustats
