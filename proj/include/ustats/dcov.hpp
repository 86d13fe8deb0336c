#pragma once

#include "ustats/config.hpp"
#include "ustats/engine.hpp"
#include "ustats/kernel.hpp"

namespace ustats {

/// Unbiased squared distance covariance between paired samples x and y
/// (Euclidean distances), computed from the four-term ordered-tuple identity
///
///   dcov2 = (n-4)!/n! * sum over 4-tuples of distinct indices of
///           [ d1(i1,i2) d2(i3,i4) + d1(i1,i2) d2(i1,i2)
///             - d1(i1,i2) d2(i1,i3) - d1(i1,i2) d2(i2,i4) ]
///
/// where d1/d2 are the two samples' distance kernels. Terms 2-4 touch only
/// two or three of the four indices, so they reduce to lower-order
/// distinct-index sums times falling factorials; each of the four sums is an
/// exact u_statistic with signature ((1,2),(3,4)), ((1,2),(1,2)),
/// ((1,2),(1,3)) and ((1,2),(2,4)) (the last relabeled to ((1,2),(2,3))).
///
/// Requires equal sample sizes (InvalidArgument), n >= 4 so that the
/// four-index sum has distinct-index support (SampleTooSmall), and
/// equal-dimension observations within each sample (InvalidArgument).
double dcov_squared(const Sample& x, const Sample& y, const Config& config = {},
                    RunStats* stats = nullptr);

}  // namespace ustats
