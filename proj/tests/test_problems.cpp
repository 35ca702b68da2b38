#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ayla/problems.hpp"
#include "ayla/rng.hpp"

using namespace ayla;

TEST_CASE("quartic values and critical points") {
    ScalarProblem q = quartic();
    CHECK(q.f(-1.0) == 6.0);
    CHECK(q.f(0.0) == 2.0);
    CHECK(q.f(2.25) == -6.54296875);
    CHECK(q.f_prime(0.0) == 0.0);
    CHECK(q.f_prime(2.25) == 0.0);
    CHECK(q.f_prime(-1.0) == -13.0);
    CHECK(q.known_minimum == 2.25);
    CHECK(q.known_saddle == 0.0);
    CHECK(q.domain_lo < q.known_saddle);
    CHECK(q.domain_hi > q.known_minimum);
}

TEST_CASE("quartic curvature: saddle flat, minimum convex") {
    ScalarProblem q = quartic();
    double h = 1e-4;
    auto second = [&](double x) {
        return (q.f(x + h) - 2.0 * q.f(x) + q.f(x - h)) / (h * h);
    };
    CHECK(std::fabs(second(0.0)) < 1e-6);
    CHECK(second(2.25) > 1.0);
}

TEST_CASE("quartic derivative agrees with finite differences") {
    ScalarProblem q = quartic();
    Rng rng(5);
    double h = 1e-5;
    for (int i = 0; i < 1000; ++i) {
        double x = -2.0 + 6.0 * rng.uniform();
        double fd = (q.f(x + h) - q.f(x - h)) / (2.0 * h);
        double a = q.f_prime(x);
        double rel = std::fabs(a - fd) / std::max({1.0, std::fabs(a), std::fabs(fd)});
        CHECK(rel < 1e-7);
    }
}

TEST_CASE("curvefit polynomial point values") {
    CHECK(curvefit_poly(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(curvefit_poly(-1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(curvefit_poly(2.0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(curvefit_poly(0.0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("curvefit grid is exact linspace(-1, 3, 100)") {
    CurveFitDataset d = gen_curvefit(1);
    REQUIRE(d.x.size() == 100);
    REQUIRE(d.y.size() == 100);
    CHECK(d.x[0] == -1.0);
    CHECK(d.x[99] == 3.0);
    for (std::size_t i = 0; i + 1 < d.x.size(); ++i)
        CHECK(d.x[i + 1] - d.x[i] == doctest::Approx(4.0 / 99.0).epsilon(1e-13));
}

TEST_CASE("curvefit noise statistics") {
    double sum = 0.0, sumsq = 0.0;
    int n = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        CurveFitDataset d = gen_curvefit(seed);
        for (std::size_t i = 0; i < d.x.size(); ++i) {
            double r = d.y[i] - curvefit_poly(d.x[i]);
            sum += r;
            sumsq += r * r;
            ++n;
        }
    }
    double mean = sum / n;
    double sd = std::sqrt(sumsq / n - mean * mean);
    CHECK(std::fabs(mean) < 0.01);
    CHECK(std::fabs(sd - 0.2) < 0.01);
}

TEST_CASE("curvefit generation is deterministic per seed") {
    CurveFitDataset a = gen_curvefit(42);
    CurveFitDataset b = gen_curvefit(42);
    CurveFitDataset c = gen_curvefit(43);
    CHECK(a.y == b.y);
    CHECK(a.x == b.x);
    CHECK(a.y != c.y);
    CHECK(a.noise_sigma == 0.2);
    CHECK(a.seed == 42);
}
