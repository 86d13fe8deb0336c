#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ustats/engine.hpp"
#include "ustats/kernel.hpp"

namespace ustats {

/// Dictionary / basis expansion applied to an observation's covariate block.
using PhiFn = std::function<std::vector<double>(std::span<const double> z)>;

/// phi(z) = first k coordinates of z (errors if z is shorter than k).
PhiFn truncation_phi(int k);

/// Observation layout expected by the sequential (chain) kernels:
///   obs[0] = A (treatment / weight), obs[1] = Y (outcome), obs[2..] = Z.
struct HoifObservation {
    static double a(const Observation& o) { return o[0]; }
    static double y(const Observation& o) { return o[1]; }
    static std::span<const double> z(const Observation& o) {
        return std::span<const double>(o).subspan(2);
    }
};

/// Order-j sequential kernel along the chain signature ((1,2),(2,3),...,(j-1,j)):
/// components 1..j-2 are (x,y) -> A_x phi(Z_x)' A_y phi(Z_y), and the final
/// component is (x,y) -> A_x phi(Z_x)' phi(Z_y) * Y_y. Requires j >= 2
/// (InvalidArgument otherwise). Every component touches only two observations,
/// so the whole kernel tensorizes into j-1 matrices.
MDKernel hoif_kernel(int j, PhiFn phi);

/// Statistic combining the chain orders 2..m with the alternating-sign
/// expansion weights: sum over j in [2,m] of (-1)^j times
/// sum over l in [0,j-2] of C(j-2,l) * (n-l)!/n! * u_statistic(order l+2).
/// A thin driver over u_statistic; stats, when given, accumulate across calls.
double hoif_tau(int m, const PhiFn& phi, const Sample& sample, const Config& config = {},
                RunStats* stats = nullptr);

}  // namespace ustats
