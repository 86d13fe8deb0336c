#include "ustats/kernel.hpp"

#include <string>
#include <vector>

#include "ustats/errors.hpp"

namespace ustats {

void MDKernel::validate() const {
    if (arity < 1) fail(ErrorCode::InvalidArgument, "kernel arity must be >= 1");
    if (signature.empty()) fail(ErrorCode::InvalidArgument, "kernel needs at least one component");
    if (signature.size() != components.size())
        fail(ErrorCode::InvalidArgument, "kernel needs one component per signature tuple");
    std::vector<bool> covered(static_cast<std::size_t>(arity), false);
    for (const IndexTuple& tuple : signature) {
        if (tuple.empty()) fail(ErrorCode::InvalidArgument, "signature tuples must be non-empty");
        std::vector<bool> in_tuple(static_cast<std::size_t>(arity), false);
        for (int slot : tuple) {
            if (slot < 1 || slot > arity)
                fail(ErrorCode::InvalidArgument,
                     "signature slot " + std::to_string(slot) + " outside 1.." +
                         std::to_string(arity));
            // A repeated slot would be a function of fewer arguments; fold it
            // into a lower-arity component instead of listing it twice.
            if (in_tuple[static_cast<std::size_t>(slot - 1)])
                fail(ErrorCode::InvalidArgument,
                     "signature slot " + std::to_string(slot) + " repeated within one tuple");
            in_tuple[static_cast<std::size_t>(slot - 1)] = true;
            covered[static_cast<std::size_t>(slot - 1)] = true;
        }
    }
    for (int slot = 1; slot <= arity; ++slot)
        if (!covered[static_cast<std::size_t>(slot - 1)])
            fail(ErrorCode::InvalidArgument,
                 "argument slot " + std::to_string(slot) + " appears in no signature tuple");
}

std::vector<IndexTuple> MDKernel::zero_based_signature() const {
    std::vector<IndexTuple> shifted;
    shifted.reserve(signature.size());
    for (const IndexTuple& tuple : signature) {
        IndexTuple t;
        t.reserve(tuple.size());
        for (int slot : tuple) t.push_back(slot - 1);
        shifted.push_back(std::move(t));
    }
    return shifted;
}

double MDKernel::evaluate(const Sample& sample, std::span<const int> indices) const {
    double prod = 1.0;
    std::vector<int> picks;
    for (std::size_t k = 0; k < signature.size(); ++k) {
        picks.clear();
        for (int slot : signature[k]) picks.push_back(indices[static_cast<std::size_t>(slot - 1)]);
        prod *= components[k](sample, picks);
    }
    return prod;
}

MDKernel prod2_kernel() {
    MDKernel k;
    k.arity = 2;
    k.signature = {{1}, {2}};
    auto first_coord = [](const Sample& sample, std::span<const int> idx) {
        const Observation& o = sample.points[static_cast<std::size_t>(idx[0])];
        if (o.empty()) fail(ErrorCode::InvalidArgument, "prod2 needs at least one coordinate");
        return o[0];
    };
    k.components = {first_coord, first_coord};
    k.name = "prod2";
    return k;
}

}  // namespace ustats
