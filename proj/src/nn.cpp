#include "ayla/nn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ayla {

Mlp init_mlp(std::size_t input_dim, std::size_t hidden_dim, std::size_t output_dim,
             std::uint64_t seed) {
    require(input_dim >= 1 && hidden_dim >= 1 && output_dim >= 1,
            "init_mlp: all dimensions must be >= 1");
    require(input_dim <= 1u << 20 && hidden_dim <= 1u << 20 && output_dim <= 1u << 20,
            "init_mlp: dimension too large");
    Rng rng(seed);
    Mlp mlp;
    mlp.w1 = Matrix(input_dim, hidden_dim);
    mlp.b1 = Matrix(1, hidden_dim);
    mlp.w2 = Matrix(hidden_dim, output_dim);
    mlp.b2 = Matrix(1, output_dim);

    auto fill = [&](Matrix& m, double sigma) {
        for (double& x : m.data) x = sigma * rng.normal();
    };
    double s1 = 2.5 / std::sqrt(static_cast<double>(input_dim + hidden_dim));
    double s2 = 2.5 / std::sqrt(static_cast<double>(hidden_dim + output_dim));
    fill(mlp.w1, s1);
    fill(mlp.b1, s1 / 2.0);
    fill(mlp.w2, s2);
    fill(mlp.b2, s2 / 2.0);
    return mlp;
}

ForwardCache forward(const Mlp& mlp, const Matrix& x) {
    require(x.cols == mlp.input_dim(), "forward: input width != input_dim");
    ForwardCache c;
    c.x = x;
    c.hidden_pre = matmul(x, mlp.w1);
    add_row_inplace(c.hidden_pre, mlp.b1);
    c.hidden_post = c.hidden_pre;
    for (double& v : c.hidden_post.data) v = std::max(v, 0.0);
    c.output = matmul(c.hidden_post, mlp.w2);
    add_row_inplace(c.output, mlp.b2);
    return c;
}

double mse_loss(const Matrix& output, const Matrix& target) {
    require(output.same_shape(target), "mse_loss: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < output.size(); ++i) {
        double d = output.data[i] - target.data[i];
        s += d * d;
    }
    return s / static_cast<double>(output.size());
}

Gradients backward(const Mlp& mlp, const ForwardCache& cache, const Matrix& target) {
    require(cache.output.same_shape(target), "backward: target shape mismatch");
    // dLoss/dOutput for mean-over-all-entries squared error
    Matrix dout(cache.output.rows, cache.output.cols);
    double inv = 2.0 / static_cast<double>(cache.output.size());
    for (std::size_t i = 0; i < dout.size(); ++i)
        dout.data[i] = inv * (cache.output.data[i] - target.data[i]);

    Gradients g;
    g.dw2 = matmul_tn(cache.hidden_post, dout);
    g.db2 = col_sums(dout);
    Matrix dh = matmul_nt(dout, mlp.w2);
    // ReLU subgradient: 0 at pre-activation exactly 0
    for (std::size_t i = 0; i < dh.size(); ++i)
        if (!(cache.hidden_pre.data[i] > 0.0)) dh.data[i] = 0.0;
    g.dw1 = matmul_tn(cache.x, dh);
    g.db1 = col_sums(dh);
    return g;
}

double accuracy(const Matrix& output, const std::vector<std::size_t>& labels) {
    require(output.rows == labels.size(), "accuracy: row/label count mismatch");
    require(output.rows > 0, "accuracy: empty batch");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < output.rows; ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < output.cols; ++j)
            if (output.at(i, j) > output.at(i, best)) best = j;  // ties keep lowest index
        if (best == labels[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(output.rows);
}

}  // namespace ayla
