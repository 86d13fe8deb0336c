#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ustats/notation.hpp"

namespace ustats {

/// One observation. The engine never interprets it; built-in kernels read the
/// coordinates they need.
using Observation = std::vector<double>;

/// An i.i.d. sample; observation i is points[i].
struct Sample {
    std::vector<Observation> points;

    Sample() = default;
    explicit Sample(std::vector<Observation> pts) : points(std::move(pts)) {}
    /// n observations with no coordinates (enough for kernels that only use
    /// indices, e.g. adjacency lookups).
    static Sample indices_only(int n) { return Sample(std::vector<Observation>(n)); }

    int size() const { return static_cast<int>(points.size()); }
};

/// A kernel component: reads the observations selected by `indices` (one index
/// per slot of the component's tuple) and returns a scalar.
using ComponentFn = std::function<double(const Sample&, std::span<const int>)>;

/// A kernel of arity m in multiplicatively decomposed form:
///   h(x_{a_1},...,x_{a_m}) = prod_k components[k](sample, tuple_k's picks)
/// where signature[k] lists which of the m argument slots component k reads.
/// Slots are 1-based in the signature for readability (matching the common
/// way such factorizations are written); every slot 1..m must appear in at
/// least one tuple.
struct MDKernel {
    int arity = 0;
    std::vector<IndexTuple> signature;   ///< 1-based argument slots per component
    std::vector<ComponentFn> components;
    std::string name;                    ///< diagnostic label ("prod2", "hoif:4", ...)

    /// Structural check: arity >= 1, tuples non-empty, slots in [1,arity],
    /// each slot covered, one component per tuple. Throws InvalidArgument.
    void validate() const;

    /// Signature shifted to 0-based canonical indices (slot i -> i-1).
    std::vector<IndexTuple> zero_based_signature() const;

    /// h evaluated directly at an index tuple (product of components).
    double evaluate(const Sample& sample, std::span<const int> indices) const;
};

/// The arity-2 product kernel h(x,y) = x[0] * y[0] with signature ((1),(2)).
MDKernel prod2_kernel();

}  // namespace ustats
