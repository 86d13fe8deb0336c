#include "ustats/hoif.hpp"

#include <string>
#include <utility>
#include <vector>

#include "ustats/errors.hpp"

namespace ustats {

namespace {

double dot_or_fail(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        fail(ErrorCode::InvalidArgument, "basis expansions disagree in length");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

const Observation& checked_obs(const Sample& sample, int index) {
    const Observation& o = sample.points[static_cast<std::size_t>(index)];
    if (o.size() < 2)
        fail(ErrorCode::InvalidArgument,
             "observation " + std::to_string(index) + " needs at least the A and Y coordinates");
    return o;
}

std::uint64_t binomial(int a, int b) {
    if (b < 0 || b > a) return 0;
    std::uint64_t v = 1;
    for (int i = 0; i < b; ++i) v = v * static_cast<std::uint64_t>(a - i) /
                                    static_cast<std::uint64_t>(i + 1);
    return v;
}

}  // namespace

PhiFn truncation_phi(int k) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "basis size must be >= 1");
    return [k](std::span<const double> z) {
        if (static_cast<int>(z.size()) < k)
            fail(ErrorCode::InvalidArgument,
                 "covariate block has " + std::to_string(z.size()) +
                     " coordinates, basis asks for " + std::to_string(k));
        return std::vector<double>(z.begin(), z.begin() + k);
    };
}

MDKernel hoif_kernel(int j, PhiFn phi) {
    if (j < 2) fail(ErrorCode::InvalidArgument, "sequential kernel needs order >= 2");
    MDKernel kernel;
    kernel.arity = j;
    kernel.name = "hoif:" + std::to_string(j);
    for (int i = 1; i < j; ++i) kernel.signature.push_back({i, i + 1});

    auto middle = [phi](const Sample& sample, std::span<const int> idx) {
        const Observation& ox = checked_obs(sample, idx[0]);
        const Observation& oy = checked_obs(sample, idx[1]);
        double dot = dot_or_fail(phi(HoifObservation::z(ox)), phi(HoifObservation::z(oy)));
        return HoifObservation::a(ox) * dot * HoifObservation::a(oy);
    };
    auto last = [phi](const Sample& sample, std::span<const int> idx) {
        const Observation& ox = checked_obs(sample, idx[0]);
        const Observation& oy = checked_obs(sample, idx[1]);
        double dot = dot_or_fail(phi(HoifObservation::z(ox)), phi(HoifObservation::z(oy)));
        return HoifObservation::a(ox) * dot * HoifObservation::y(oy);
    };
    for (int i = 0; i < j - 2; ++i) kernel.components.push_back(middle);
    kernel.components.push_back(last);
    return kernel;
}

double hoif_tau(int m, const PhiFn& phi, const Sample& sample, const Config& config,
                RunStats* stats) {
    if (m < 2) fail(ErrorCode::InvalidArgument, "statistic order must be >= 2");
    const int n = sample.size();
    if (n < m)
        fail(ErrorCode::SampleTooSmall, "need at least " + std::to_string(m) +
                                            " observations, have " + std::to_string(n));

    // Each chain order 2..m appears in several expansion terms; evaluate once.
    std::vector<double> u_by_order(static_cast<std::size_t>(m + 1), 0.0);
    for (int order = 2; order <= m; ++order)
        u_by_order[static_cast<std::size_t>(order)] =
            u_statistic(hoif_kernel(order, phi), sample, config, stats);

    long double tau = 0.0L;
    for (int j = 2; j <= m; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        for (int l = 0; l <= j - 2; ++l) {
            // (n-l)! / n! — the reciprocal falling factorial.
            long double weight = 1.0L;
            for (int i = 0; i < l; ++i) weight /= static_cast<long double>(n - i);
            tau += sign * static_cast<long double>(binomial(j - 2, l)) * weight *
                   static_cast<long double>(u_by_order[static_cast<std::size_t>(l + 2)]);
        }
    }
    return static_cast<double>(tau);
}

}  // namespace ustats
