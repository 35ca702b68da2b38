#pragma once
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace ayla {

// Deterministic RNG with hand-rolled distributions. std::normal_distribution
// and friends are implementation-defined, which would break byte-identical
// traces across standard libraries.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    // uniform in [0,1) with 53 random bits
    double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

    // standard normal, Marsaglia polar; one draw per call, partner discarded
    double normal() {
        for (;;) {
            double u = 2.0 * uniform() - 1.0;
            double v = 2.0 * uniform() - 1.0;
            double s = u * u + v * v;
            if (s >= 1.0 || s == 0.0) continue;
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    // unbiased integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do { r = gen(); } while (r >= lim);
        return r % n;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }
};

}  // namespace ayla
