#include "doctest.h"

#include <cmath>

#include "trajscan/discrepancy.hpp"
#include "trajscan/rng.hpp"

using namespace trajscan;

TEST_CASE("kulldorff values") {
    CHECK(kulldorff(0.5, 0.5) == 0.0);
    CHECK(std::abs(kulldorff(0.8, 0.5) - 0.19274) <= 1e-5);
    CHECK(std::abs(kulldorff(0.0777, 0.05) - 0.00696) <= 1e-5);
    // Clamping keeps the endpoints finite.
    CHECK(std::isfinite(kulldorff(0.0, 1.0)));
    CHECK(std::isfinite(kulldorff(1.0, 0.0)));
    CHECK(kulldorff(1.0, 0.0) > 0.0);
}

TEST_CASE("linear values") {
    CHECK(linear(0.8, 0.5) == doctest::Approx(0.3));
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const double a = rng.uniform();
        const double b = rng.uniform();
        CHECK(linear(a, b) == linear(b, a));
        CHECK(linear(a, a) == 0.0);
    }
}

TEST_CASE("one-sided kulldorff") {
    DiscrepancyFn fn{DiscrepancyKind::Kulldorff, true};
    CHECK(fn(0.3, 0.5) == 0.0);
    CHECK(fn(0.8, 0.5) == doctest::Approx(kulldorff(0.8, 0.5)));
    DiscrepancyFn two{DiscrepancyKind::Kulldorff, false};
    CHECK(two(0.3, 0.5) > 0.0);
}

TEST_CASE("names") {
    CHECK(parse_model("flux") == Model::Flux);
    CHECK(parse_model(to_string(Model::Full)) == Model::Full);
    CHECK(parse_discrepancy("linear") == DiscrepancyKind::Linear);
    CHECK_THROWS(parse_model("x"));
    CHECK_THROWS(check_model_fn(Model::Flux, DiscrepancyFn{DiscrepancyKind::Kulldorff}));
    CHECK_NOTHROW(check_model_fn(Model::Flux, DiscrepancyFn{DiscrepancyKind::Linear}));
}

TEST_CASE("full model counts a trajectory once") {
    LabeledPointSet s;
    for (int i = 0; i < 5; ++i) s.add({{0.1 * i, 0}, 1, 1, 1});
    s.add({{0.9, 0.9}, 2, 0, 1});
    const Shape rect = Rect{-0.01, 0.21, -0.1, 0.1};  // 3 of trajectory 1's 5 points
    const auto st = evaluate_region(rect, s, Model::Full, DiscrepancyFn{DiscrepancyKind::Linear});
    CHECK(st.r_frac == doctest::Approx(1.0));
    CHECK(st.b_frac == doctest::Approx(0.5));
    CHECK(st.phi == doctest::Approx(0.5));
    // Duplicating a point of an already-inside trajectory changes nothing.
    s.add({{0.05, 0}, 1, 1, 1});
    CHECK(evaluate_region(rect, s, Model::Full, DiscrepancyFn{DiscrepancyKind::Linear}).phi == doctest::Approx(0.5));
}

TEST_CASE("flux endpoints cancel, partial covers all") {
    LabeledPointSet f;
    f.add({{0, 0}, 1, 1, -1});
    f.add({{1, 1}, 1, -1, 1});
    const auto both = evaluate_region(Rect{-1, 2, -1, 2}, f, Model::Flux, DiscrepancyFn{DiscrepancyKind::Linear});
    CHECK(both.r_frac == 0.0);
    CHECK(both.b_frac == 0.0);

    LabeledPointSet p;
    Rng rng(2);
    for (int i = 0; i < 30; ++i) p.add({{rng.uniform(), rng.uniform()}, i % 4, i % 2 ? 1.0 : 0.0, 1.0});
    const auto all = evaluate_region(Rect{0, 1, 0, 1}, p, Model::Partial, DiscrepancyFn{});
    CHECK(all.r_frac == doctest::Approx(1.0));
    CHECK(all.b_frac == doctest::Approx(1.0));
    CHECK(all.phi == doctest::Approx(0.0));
}
