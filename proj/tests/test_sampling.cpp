#include "doctest.h"

#include <cmath>
#include <numeric>

#include "trajscan/rng.hpp"
#include "trajscan/sampling.hpp"

using namespace trajscan;

TEST_CASE("net and sample size examples") {
    SamplingParams p;
    p.k_bound = 1;
    p.eps = 0.1;
    p.delta = 0.5;
    CHECK(net_size(p) == 10);
    // Bracket ln(k+1) + ln(1/delta) = 1 with k = 1.
    p.delta = std::exp(-(1.0 - std::log(2.0)));
    CHECK(sample_size(p) == 25);
}

TEST_CASE("reference table") {
    struct Row {
        double eps, delta;
        std::size_t k, n, s;
    };
    // Evaluated independently in double precision outside the library.
    const Row rows[] = {
        {0.02, 0.05, 5, 595, 2993},   {0.2, 0.5, 200, 106, 38},  {0.2, 0.01, 50, 149, 54},
        {0.01, 0.5, 5, 930, 6213},    {0.2, 0.05, 2, 22, 26},    {0.3, 0.5, 50, 43, 13},
        {0.2, 0.5, 10, 37, 20},       {0.3, 0.05, 2, 13, 12},    {0.3, 0.05, 1000, 142, 28},
        {0.01, 0.01, 2, 885, 14260},  {0.2, 0.01, 5, 54, 40},    {0.01, 0.1, 10, 1783, 11752},
        {0.1, 0.5, 200, 248, 150},    {0.2, 0.5, 2, 10, 12},     {0.05, 0.01, 1, 20, 530},
        {0.02, 0.5, 2, 212, 1120},    {0.05, 0.5, 1000, 777, 761}, {0.3, 0.1, 10, 34, 14},
        {0.1, 0.1, 1, 10, 75},        {0.05, 0.1, 100, 629, 692},
    };
    for (const auto& r : rows) {
        SamplingParams p{r.eps, r.delta, r.k};
        CHECK(net_size(p) == r.n);
        CHECK(sample_size(p) == r.s);
    }
}

TEST_CASE("size monotonicity") {
    for (std::size_t k : {1u, 3u, 30u, 300u}) {
        SamplingParams p{0.1, 0.1, k};
        SamplingParams h{0.05, 0.1, k};
        CHECK(net_size(h) + 1 >= 2 * net_size(p));
        CHECK(sample_size(h) + 3 >= 4 * sample_size(p));
        CHECK(sample_size(h) <= 4 * sample_size(p) + 3);
        SamplingParams bigger{0.1, 0.1, k * 2};
        CHECK(sample_size(bigger) >= sample_size(p));
        SamplingParams ld{0.1, 0.2, k};
        CHECK(net_size(ld) <= net_size(p));
    }
    CHECK_THROWS(SamplingParams{1.5, 0.1, 1}.validate());
    CHECK_THROWS(SamplingParams{0.1, 0.0, 1}.validate());
}

namespace {

TrajectoryDataset toy(std::size_t n, std::size_t recorded_every) {
    TrajectoryDataset ds;
    Rng rng(99);
    for (std::size_t i = 0; i < n; ++i) {
        Trajectory t{static_cast<TrajId>(i), {}, i % recorded_every == 0 ? 1.0 : 0.0, 1.0};
        const std::size_t m = 1 + rng.below(4);
        for (std::size_t j = 0; j < m; ++j) t.waypoints.push_back({rng.uniform(), rng.uniform()});
        ds.trajectories.push_back(t);
    }
    return ds;
}

}  // namespace

TEST_CASE("capping and determinism") {
    const auto ds = toy(40, 3);
    SamplingParams p{0.1, 0.1, 1};
    const auto a = draw_two_level(ds, p, {CoresetTag::AllWaypoints});
    CHECK(a.n() == std::min<std::size_t>(40, net_size(SamplingParams{0.1, 0.1, a.k_bound})));
    CHECK(a.s() == 40);  // sample size exceeds |T|
    std::vector<std::size_t> all(40);
    std::iota(all.begin(), all.end(), 0);
    CHECK(a.sample == all);
    const auto b = draw_two_level(ds, p, {CoresetTag::AllWaypoints});
    CHECK(a.net == b.net);
    CHECK(a.sample == b.sample);
    CHECK(a.net_points.size() == b.net_points.size());
    // k_bound covers every realized coreset
    CHECK(a.k_bound >= a.net_points.max_k());
    CHECK(a.k_bound >= a.sample_points.max_k());
    std::size_t nk = 0;
    for (const auto& [id, k] : a.net_points.per_traj_k) nk += k;
    CHECK(nk == a.net_points.size());
}

TEST_CASE("recorded fraction in S is unbiased") {
    const auto ds = toy(1000, 4);
    const double frac = 250.0 / 1000.0;
    SamplingParams p{0.2, 0.1, 1};
    double sum = 0;
    std::size_t s = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        p.seed = seed;
        const auto d = draw_two_level(ds, p, {CoresetTag::AllWaypoints});
        std::size_t rec = 0;
        for (std::size_t i : d.sample) rec += ds.trajectories[i].recorded > 0 ? 1 : 0;
        sum += static_cast<double>(rec) / d.s();
        s = d.s();
    }
    const double mean = sum / 100.0;
    // Hypergeometric sd of one draw, shrunk by sqrt(100) trials.
    const double sd = std::sqrt(frac * (1 - frac) / s * (1000.0 - s) / 999.0) / 10.0;
    CHECK(std::abs(mean - frac) <= 3 * sd);
}

TEST_CASE("inclusion counts pass chi-square at 1%") {
    const std::size_t n = 50;
    const std::size_t take = 10;
    std::vector<double> counts(n, 0.0);
    const std::size_t seeds = 1000;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        const auto perm = seeded_permutation(n, mix_seed(seed, 11));
        for (std::size_t j = 0; j < take; ++j) counts[perm[j]] += 1;
    }
    const double expected = static_cast<double>(seeds * take) / n;
    double chi = 0;
    for (double c : counts) chi += (c - expected) * (c - expected) / expected;
    // Wilson-Hilferty 99% quantile for n-1 degrees of freedom.
    const double df = n - 1;
    const double z = 2.3263478740408408;
    const double crit = df * std::pow(1 - 2 / (9 * df) + z * std::sqrt(2 / (9 * df)), 3);
    CHECK(chi < crit);
}

TEST_CASE("empty dataset is rejected") {
    CHECK_THROWS(draw_two_level(TrajectoryDataset{}, SamplingParams{}, {CoresetTag::AllWaypoints}));
}
