#pragma once
#include <cmath>
#include <stdexcept>

namespace ayla {

struct TransformConfig {
    double n1 = 1.0;       // power when |loss| < 1
    double n2 = 1.0;       // power when |loss| > 1
    double zero_eps = 1e-12;  // |loss| at or below this counts as zero

    void validate() const {
        if (!(n1 > 0.0) || !(n2 > 0.0))
            throw std::invalid_argument("TransformConfig: n1 and n2 must be positive");
        if (!(zero_eps >= 0.0))
            throw std::invalid_argument("TransformConfig: zero_eps must be non-negative");
    }

    bool is_identity() const { return n1 == 1.0 && n2 == 1.0; }
};

struct TransformedLoss {
    double raw_loss;
    double power;
    double value;       // sign(l)·|l|^n
    double grad_scale;  // n·|l|^(n−1)
};

inline double select_power(double loss, const TransformConfig& cfg) {
    double a = std::fabs(loss);
    if (a <= cfg.zero_eps) return 1.0;
    if (a > 1.0) return cfg.n2;
    if (a < 1.0) return cfg.n1;
    return 1.0;  // |loss| == 1 exactly
}

inline TransformedLoss transform_loss(double loss, const TransformConfig& cfg) {
    double n = select_power(loss, cfg);
    // n == 1 must reproduce the raw loss bit-exactly (base equivalence), so
    // skip the exp/log path there; it also covers the zero-loss guard.
    if (n == 1.0) return {loss, 1.0, loss, 1.0};
    double a = std::fabs(loss);
    double value = std::copysign(std::exp(n * std::log(a)), loss);
    double scale = n * std::exp((n - 1.0) * std::log(a));
    return {loss, n, value, scale};
}

// Diagnostic only; never feeds back into updates.
inline double effective_lr(double lr, double raw_grad, double grad_scale) {
    return lr * raw_grad * grad_scale;
}

}  // namespace ayla
