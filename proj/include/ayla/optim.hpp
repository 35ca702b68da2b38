#pragma once
#include <cstddef>
#include <vector>

#include "ayla/nn.hpp"
#include "ayla/transform.hpp"

namespace ayla {

struct SgdConfig {
    double lr;
    void validate() const { require(lr > 0.0, "SgdConfig: lr must be positive"); }
};

struct AdamConfig {
    double lr;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    void validate() const {
        require(lr > 0.0, "AdamConfig: lr must be positive");
        require(beta1 >= 0.0 && beta1 < 1.0, "AdamConfig: beta1 out of [0,1)");
        require(beta2 >= 0.0 && beta2 < 1.0, "AdamConfig: beta2 out of [0,1)");
        require(eps > 0.0, "AdamConfig: eps must be positive");
    }
};

struct OptimizerState {
    std::size_t step_count = 0;
    std::vector<Matrix> m, v;  // ADAM moments, one buffer per parameter block

    void init_like(const std::vector<const Matrix*>& blocks) {
        step_count = 0;
        m.clear();
        v.clear();
        for (const Matrix* b : blocks) {
            m.emplace_back(b->rows, b->cols);
            v.emplace_back(b->rows, b->cols);
        }
    }
};

void sgd_step(std::vector<Matrix*> params, const std::vector<const Matrix*>& grads,
              const SgdConfig& cfg);

void adam_step(std::vector<Matrix*> params, const std::vector<const Matrix*>& grads,
               const AdamConfig& cfg, OptimizerState& state);

// Multiplies every gradient entry by grad_scale(raw_loss). Scaled grads feed
// the base optimizer unchanged; with n1=n2=1 the multiply is by exactly 1.0,
// which keeps base-equivalence bit-exact.
void ayla_wrap(double raw_loss, Gradients& grads, const TransformConfig& cfg);

}  // namespace ayla
