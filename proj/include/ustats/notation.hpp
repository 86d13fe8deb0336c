#pragma once

#include <string>
#include <vector>

namespace ustats {

/// One tensor's axis labels inside an einsum notation. Repeats inside a tuple
/// are allowed and mean a diagonal read of that tensor.
using IndexTuple = std::vector<int>;

/// Validated einsum notation. Indices are canonical: they form {0..index_count-1}
/// numbered by first appearance across the input tuples. The output tuple is
/// duplicate-free and drawn from the input indices; an empty output requests a
/// full contraction to a scalar.
struct EinsumNotation {
    std::vector<IndexTuple> inputs;
    IndexTuple output;
    int index_count = 0;

    /// Convenience for `validate_notation(inputs, output)`.
    EinsumNotation() = default;
    EinsumNotation(std::vector<IndexTuple> raw_inputs, IndexTuple raw_output = {});

    bool index_in_output(int index) const;

    /// "((0,1),(1,2))->()" style rendering for logs and error messages.
    std::string to_string() const;
};

/// Checks structure and canonicalizes index names by first appearance.
/// Throws InvalidNotation for an empty input list, an empty tuple, or a
/// negative index; InvalidOutput when the output tuple repeats an index or
/// names one that no input carries.
EinsumNotation validate_notation(const std::vector<IndexTuple>& raw_inputs,
                                 const IndexTuple& raw_output = {});

}  // namespace ustats
