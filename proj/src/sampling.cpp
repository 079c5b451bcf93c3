#include "trajscan/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "trajscan/rng.hpp"

namespace trajscan {

void SamplingParams::validate() const {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    if (k_bound < 1) throw std::invalid_argument("k_bound must be >= 1");
    if (!(c_net > 0.0) || !(c_sample > 0.0)) throw std::invalid_argument("sampling constants must be positive");
}

std::size_t net_size(const SamplingParams& p) {
    p.validate();
    if (p.net_override) return p.net_override;
    const double lk = std::log(static_cast<double>(p.k_bound));
    const double inner = std::max(std::numbers::e, lk / (p.eps * p.delta));
    return static_cast<std::size_t>(std::ceil(p.c_net * std::max(1.0, lk) / p.eps * std::log(inner)));
}

std::size_t sample_size(const SamplingParams& p) {
    p.validate();
    if (p.sample_override) return p.sample_override;
    const double bracket = std::log(static_cast<double>(p.k_bound) + 1.0) + std::log(1.0 / p.delta);
    return static_cast<std::size_t>(std::ceil(p.c_sample / (p.eps * p.eps) * bracket));
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Rng rng(seed);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

TwoLevelSample draw_two_level(const TrajectoryDataset& dataset, const SamplingParams& params,
                              const CoresetMethod& method) {
    params.validate();
    method.validate();
    if (dataset.size() == 0) throw std::invalid_argument("draw_two_level: empty dataset");
    const std::size_t total = dataset.size();
    // One permutation per level; growing a size only appends trajectories.
    const auto net_perm = seeded_permutation(total, mix_seed(params.seed, 11));
    const auto sample_perm = seeded_permutation(total, mix_seed(params.seed, 12));

    // Coreset sizes per trajectory, computed on demand.
    std::vector<std::vector<Point>> cache(total);
    std::vector<char> done(total, 0);
    auto coreset = [&](std::size_t i) -> const std::vector<Point>& {
        if (!done[i]) {
            cache[i] = simplify(dataset.trajectories[i], method);
            done[i] = 1;
        }
        return cache[i];
    };

    SamplingParams p = params;
    TwoLevelSample out;
    for (int iter = 0; iter < 64; ++iter) {
        const std::size_t n = std::min(net_size(p), total);
        const std::size_t s = std::min(sample_size(p), total);
        std::size_t k = 1;
        for (std::size_t j = 0; j < n; ++j) k = std::max(k, coreset(net_perm[j]).size());
        for (std::size_t j = 0; j < s; ++j) k = std::max(k, coreset(sample_perm[j]).size());
        out.net.assign(net_perm.begin(), net_perm.begin() + static_cast<std::ptrdiff_t>(n));
        out.sample.assign(sample_perm.begin(), sample_perm.begin() + static_cast<std::ptrdiff_t>(s));
        if (k <= p.k_bound) break;
        p.k_bound = k;
    }
    out.k_bound = p.k_bound;
    // Dataset order inside each level keeps downstream processing stable.
    std::sort(out.net.begin(), out.net.end());
    std::sort(out.sample.begin(), out.sample.end());
    for (std::size_t i : out.net) {
        const auto& t = dataset.trajectories[i];
        for (const Point& q : coreset(i)) out.net_points.add({q, t.id, t.recorded, t.baseline});
    }
    for (std::size_t i : out.sample) {
        const auto& t = dataset.trajectories[i];
        for (const Point& q : coreset(i)) out.sample_points.add({q, t.id, t.recorded, t.baseline});
    }
    return out;
}

}  // namespace trajscan
