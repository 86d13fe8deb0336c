#include "ustats/dcov.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ustats/errors.hpp"

namespace ustats {

namespace {

std::size_t common_dimension(const Sample& s, const char* label) {
    if (s.size() == 0) fail(ErrorCode::InvalidArgument, "sample is empty");
    std::size_t dim = s.points[0].size();
    for (const Observation& o : s.points)
        if (o.size() != dim)
            fail(ErrorCode::InvalidArgument,
                 std::string(label) + " observations disagree in dimension");
    return dim;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

}  // namespace

double dcov_squared(const Sample& x, const Sample& y, const Config& config, RunStats* stats) {
    if (x.size() != y.size())
        fail(ErrorCode::InvalidArgument, "paired samples must have equal sizes");
    const int n = x.size();
    if (n < 4)
        fail(ErrorCode::SampleTooSmall,
             "need at least 4 paired observations, have " + std::to_string(n));
    const std::size_t dx = common_dimension(x, "first sample");
    const std::size_t dy = common_dimension(y, "second sample");

    // One fused sample: observation i = x_i followed by y_i.
    std::vector<Observation> fused(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        fused[ui].reserve(dx + dy);
        fused[ui].insert(fused[ui].end(), x.points[ui].begin(), x.points[ui].end());
        fused[ui].insert(fused[ui].end(), y.points[ui].begin(), y.points[ui].end());
    }
    Sample sample(std::move(fused));

    auto d1 = [dx](const Sample& s, std::span<const int> idx) {
        std::span<const double> a(s.points[static_cast<std::size_t>(idx[0])]);
        std::span<const double> b(s.points[static_cast<std::size_t>(idx[1])]);
        return euclidean(a.first(dx), b.first(dx));
    };
    auto d2 = [dx, dy](const Sample& s, std::span<const int> idx) {
        std::span<const double> a(s.points[static_cast<std::size_t>(idx[0])]);
        std::span<const double> b(s.points[static_cast<std::size_t>(idx[1])]);
        return euclidean(a.subspan(dx, dy), b.subspan(dx, dy));
    };

    auto make = [&](int arity, std::vector<IndexTuple> signature) {
        MDKernel k;
        k.arity = arity;
        k.signature = std::move(signature);
        k.components = {d1, d2};
        k.name = "dcov";
        return k;
    };

    const double u_disjoint = u_statistic(make(4, {{1, 2}, {3, 4}}), sample, config, stats);
    const double u_same = u_statistic(make(2, {{1, 2}, {1, 2}}), sample, config, stats);
    const double u_share1 = u_statistic(make(3, {{1, 2}, {1, 3}}), sample, config, stats);
    const double u_share2 = u_statistic(make(3, {{1, 2}, {2, 3}}), sample, config, stats);

    const long double nn = static_cast<long double>(n);
    long double combined = static_cast<long double>(u_disjoint) +
                           (nn - 2) * (nn - 3) * static_cast<long double>(u_same) -
                           (nn - 3) * static_cast<long double>(u_share1) -
                           (nn - 3) * static_cast<long double>(u_share2);
    combined /= nn * (nn - 1) * (nn - 2) * (nn - 3);
    return static_cast<double>(combined);
}

}  // namespace ustats
