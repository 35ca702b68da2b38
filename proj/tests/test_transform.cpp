#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ayla/rng.hpp"
#include "ayla/selftest.hpp"
#include "ayla/transform.hpp"

using namespace ayla;

TEST_CASE("select_power piecewise rule") {
    TransformConfig cfg{0.2, 1.5, 1e-12};
    CHECK(select_power(2.0, cfg) == 1.5);
    CHECK(select_power(-0.5, cfg) == 0.2);
    CHECK(select_power(0.0, cfg) == 1.0);
    CHECK(select_power(1.0, cfg) == 1.0);
    CHECK(select_power(-1.0, cfg) == 1.0);
    // zero guard is widened to |loss| <= zero_eps
    CHECK(select_power(1e-13, cfg) == 1.0);
    CHECK(select_power(-1e-13, cfg) == 1.0);
    CHECK(select_power(2e-12, cfg) == 0.2);
}

TEST_CASE("config validation") {
    CHECK_THROWS(TransformConfig{0.0, 1.0, 1e-12}.validate());
    CHECK_THROWS(TransformConfig{1.0, -2.0, 1e-12}.validate());
    CHECK_THROWS(TransformConfig{1.0, 1.0, -1e-9}.validate());
    CHECK_NOTHROW(TransformConfig{1e-7, 2.0, 0.0}.validate());
}

TEST_CASE("transform_loss oracle values") {
    // 1.4·6^0.4, high-precision reference 2.8667415155109070
    TransformedLoss t = transform_loss(6.0, {1.0, 1.4, 1e-12});
    CHECK(t.power == 1.4);
    CHECK(t.value == doctest::Approx(12.286035066475316).epsilon(1e-13));
    CHECK(t.grad_scale == doctest::Approx(2.8667415155109070).epsilon(1e-13));

    // the quartic minimum value, −6.54296875 = f(2.25) exactly
    TransformedLoss tm = transform_loss(-6.54296875, {1.0, 1.4, 1e-12});
    CHECK(tm.value == doctest::Approx(-13.870265826155790).epsilon(1e-13));
    CHECK(tm.value > -14.5);
    CHECK(tm.value < -13.5);
    CHECK(tm.grad_scale > 0.0);

    // exact powers of 1/4: 0.25^0.5 = 0.5 and 0.5·0.25^(−0.5) = 1
    TransformedLoss tq = transform_loss(0.25, {0.5, 2.0, 1e-12});
    CHECK(tq.value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(tq.grad_scale == doctest::Approx(1.0).epsilon(1e-15));

    // |loss| = 1 exactly keeps the raw scale
    TransformedLoss t1 = transform_loss(1.0, {0.2, 1.5, 1e-12});
    CHECK(t1.value == 1.0);
    CHECK(t1.grad_scale == 1.0);
}

TEST_CASE("zero-loss guard") {
    for (double l : {0.0, -0.0, 5e-13, -5e-13}) {
        TransformedLoss t = transform_loss(l, {0.3, 1.7, 1e-12});
        CHECK(t.power == 1.0);
        CHECK(t.value == l);
        CHECK(t.grad_scale == 1.0);
    }
}

TEST_CASE("identity at n=1 is bit-exact") {
    TransformConfig cfg{1.0, 1.0, 1e-12};
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        double l = rng.normal() * std::exp(rng.normal() * 4.0);
        TransformedLoss t = transform_loss(l, cfg);
        CHECK(t.value == l);
        CHECK(t.grad_scale == 1.0);
    }
}

TEST_CASE("effective_lr") {
    CHECK(effective_lr(0.03, -13.0, 1.0) == doctest::Approx(-0.39).epsilon(1e-15));
    CHECK(effective_lr(0.5, 0.0, 3.0) == 0.0);
    double gs = transform_loss(6.0, {1.0, 1.4, 1e-12}).grad_scale;
    CHECK(effective_lr(0.01, 2.0, gs) == doctest::Approx(0.057334830310218140).epsilon(1e-13));
}

TEST_CASE("sign preservation and monotonicity on sign regions") {
    Rng rng(21);
    for (int i = 0; i < 2000; ++i) {
        TransformConfig cfg{0.05 + 2.0 * rng.uniform(), 0.05 + 2.0 * rng.uniform(), 1e-12};
        double a = rng.normal() * std::exp(rng.normal() * 2.0);
        double b = a + std::fabs(rng.normal());
        double ta = transform_loss(a, cfg).value;
        double tb = transform_loss(b, cfg).value;
        CHECK(((a > 0) == (ta > 0)));
        CHECK(((a < 0) == (ta < 0)));
        if (b > a) CHECK(tb >= ta);  // strict monotonicity up to fp ties
    }
}

TEST_CASE("invariant suites") {
    CHECK(transform_fd_suite().passed);
    CHECK(curvature_suite().passed);
    CHECK(sign_preservation_suite().passed);
    CHECK(argmin_preservation_suite(200).passed);
    CHECK(grad_scale_positivity_suite().passed);
    CHECK(identity_suite().passed);
}
