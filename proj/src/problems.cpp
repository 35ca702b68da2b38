#include "ayla/problems.hpp"

#include "ayla/rng.hpp"

namespace ayla {

ScalarProblem quartic() {
    ScalarProblem p;
    p.f = [](double x) { return x * x * x * x - 3.0 * x * x * x + 2.0; };
    p.f_prime = [](double x) { return 4.0 * x * x * x - 9.0 * x * x; };
    p.domain_lo = -2.0;
    p.domain_hi = 4.0;
    p.known_minimum = 2.25;
    p.known_saddle = 0.0;
    return p;
}

double curvefit_poly(double x) {
    return (1.0 / 3.0) * x * x * x * x - (4.0 / 3.0) * x * x * x + x * x +
           (2.0 / 3.0) * x - 2.0 / 3.0;
}

CurveFitDataset gen_curvefit(std::int64_t seed) {
    CurveFitDataset d;
    d.noise_sigma = 0.2;
    d.seed = seed;
    d.x.resize(100);
    d.y.resize(100);
    Rng rng(static_cast<std::uint64_t>(seed));
    for (int i = 0; i < 100; ++i) {
        d.x[i] = -1.0 + 4.0 * static_cast<double>(i) / 99.0;
        d.y[i] = curvefit_poly(d.x[i]) + d.noise_sigma * rng.normal();
    }
    return d;
}

}  // namespace ayla
