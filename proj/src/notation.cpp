#include "ustats/notation.hpp"

#include <algorithm>
#include <map>

#include "ustats/errors.hpp"

namespace ustats {

EinsumNotation validate_notation(const std::vector<IndexTuple>& raw_inputs,
                                 const IndexTuple& raw_output) {
    if (raw_inputs.empty())
        fail(ErrorCode::InvalidNotation, "a notation needs at least one input tuple");

    std::map<int, int> canonical;  // raw index -> 0-based id by first appearance
    EinsumNotation n;
    n.inputs.reserve(raw_inputs.size());
    for (const IndexTuple& tuple : raw_inputs) {
        if (tuple.empty()) fail(ErrorCode::InvalidNotation, "input tuples must be non-empty");
        IndexTuple mapped;
        mapped.reserve(tuple.size());
        for (int raw : tuple) {
            if (raw < 0) fail(ErrorCode::InvalidNotation, "indices must be non-negative");
            auto [it, inserted] = canonical.try_emplace(raw, static_cast<int>(canonical.size()));
            mapped.push_back(it->second);
        }
        n.inputs.push_back(std::move(mapped));
    }
    n.index_count = static_cast<int>(canonical.size());

    std::vector<bool> seen(n.index_count, false);
    n.output.reserve(raw_output.size());
    for (int raw : raw_output) {
        auto it = canonical.find(raw);
        if (it == canonical.end())
            fail(ErrorCode::InvalidOutput,
                 "output index " + std::to_string(raw) + " appears in no input tuple");
        if (seen[it->second])
            fail(ErrorCode::InvalidOutput,
                 "output index " + std::to_string(raw) + " is repeated");
        seen[it->second] = true;
        n.output.push_back(it->second);
    }
    return n;
}

EinsumNotation::EinsumNotation(std::vector<IndexTuple> raw_inputs, IndexTuple raw_output) {
    *this = validate_notation(raw_inputs, raw_output);
}

bool EinsumNotation::index_in_output(int index) const {
    return std::find(output.begin(), output.end(), index) != output.end();
}

std::string EinsumNotation::to_string() const {
    auto tuple_str = [](const IndexTuple& t) {
        std::string s = "(";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(t[i]);
        }
        return s + ")";
    };
    std::string s = "(";
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        if (k) s += ",";
        s += tuple_str(inputs[k]);
    }
    s += ")->" + tuple_str(output);
    return s;
}

}  // namespace ustats
