#include "ayla/optim.hpp"

#include <cmath>

namespace ayla {

static void check_pair(const std::vector<Matrix*>& params,
                       const std::vector<const Matrix*>& grads, const char* who) {
    require(params.size() == grads.size(), std::string(who) + ": block count mismatch");
    for (std::size_t i = 0; i < params.size(); ++i) {
        require(params[i]->same_shape(*grads[i]), std::string(who) + ": shape mismatch");
        grads[i]->check_finite(who);
    }
}

void sgd_step(std::vector<Matrix*> params, const std::vector<const Matrix*>& grads,
              const SgdConfig& cfg) {
    cfg.validate();
    check_pair(params, grads, "sgd_step");
    for (std::size_t i = 0; i < params.size(); ++i)
        for (std::size_t k = 0; k < params[i]->size(); ++k)
            params[i]->data[k] -= cfg.lr * grads[i]->data[k];
}

void adam_step(std::vector<Matrix*> params, const std::vector<const Matrix*>& grads,
               const AdamConfig& cfg, OptimizerState& state) {
    cfg.validate();
    check_pair(params, grads, "adam_step");
    require(state.m.size() == params.size() && state.v.size() == params.size(),
            "adam_step: state not initialized for these parameters");
    state.step_count += 1;
    double t = static_cast<double>(state.step_count);
    double bc1 = 1.0 - std::pow(cfg.beta1, t);
    double bc2 = 1.0 - std::pow(cfg.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        require(state.m[i].same_shape(*params[i]), "adam_step: moment shape mismatch");
        for (std::size_t k = 0; k < params[i]->size(); ++k) {
            double g = grads[i]->data[k];
            double& m = state.m[i].data[k];
            double& v = state.v[i].data[k];
            m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
            v = cfg.beta2 * v + (1.0 - cfg.beta2) * g * g;
            double mhat = m / bc1;
            double vhat = v / bc2;
            params[i]->data[k] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
        }
    }
}

void ayla_wrap(double raw_loss, Gradients& grads, const TransformConfig& cfg) {
    double scale = transform_loss(raw_loss, cfg).grad_scale;
    for (Matrix* b : grads.blocks())
        for (double& g : b->data) g *= scale;
}

}  // namespace ayla
