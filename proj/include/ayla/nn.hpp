#pragma once
#include <cstddef>
#include <vector>

#include "ayla/matrix.hpp"
#include "ayla/rng.hpp"

namespace ayla {

enum class Activation { ReLU };

// One hidden layer, linear output. Biases kept as 1×n matrices so optimizer
// state can treat all four blocks uniformly.
struct Mlp {
    Matrix w1, b1, w2, b2;
    Activation activation = Activation::ReLU;

    std::size_t input_dim() const { return w1.rows; }
    std::size_t hidden_dim() const { return w1.cols; }
    std::size_t output_dim() const { return w2.cols; }

    std::vector<Matrix*> blocks() { return {&w1, &b1, &w2, &b2}; }
    std::vector<const Matrix*> blocks() const { return {&w1, &b1, &w2, &b2}; }
};

struct Gradients {
    Matrix dw1, db1, dw2, db2;
    std::vector<Matrix*> blocks() { return {&dw1, &db1, &dw2, &db2}; }
    std::vector<const Matrix*> blocks() const { return {&dw1, &db1, &dw2, &db2}; }
};

struct ForwardCache {
    Matrix x, hidden_pre, hidden_post, output;
};

// Layer-scaled normal init: σ_w = 2.5/√(fan_in+fan_out), σ_b = σ_w/2.
// Nonzero biases spread the ReLU hinge positions; with zero biases every
// hinge sits at the origin and small nets fit badly.
Mlp init_mlp(std::size_t input_dim, std::size_t hidden_dim, std::size_t output_dim,
             std::uint64_t seed);

ForwardCache forward(const Mlp& mlp, const Matrix& x);
double mse_loss(const Matrix& output, const Matrix& target);
Gradients backward(const Mlp& mlp, const ForwardCache& cache, const Matrix& target);
double accuracy(const Matrix& output, const std::vector<std::size_t>& labels);

}  // namespace ayla
