#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace ayla {

struct ScalarProblem {
    std::function<double(double)> f;
    std::function<double(double)> f_prime;
    double domain_lo, domain_hi;
    double known_minimum;
    std::optional<double> known_saddle;
};

struct CurveFitDataset {
    std::vector<double> x, y;  // 100 points each
    double noise_sigma;
    std::int64_t seed;
};

// f(x) = x⁴ − 3x³ + 2; saddle at 0, absolute minimum at 2.25
ScalarProblem quartic();

// y = (1/3)x⁴ − (4/3)x³ + x² + (2/3)x − 2/3 + N(0, 0.2) on a 100-point
// uniform grid over [−1, 3]
CurveFitDataset gen_curvefit(std::int64_t seed);

double curvefit_poly(double x);

}  // namespace ayla
