#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ayla/nn.hpp"
#include "ayla/selftest.hpp"

using namespace ayla;

static Mlp tiny_net(double w1, double b1, double w2, double b2) {
    Mlp m;
    m.w1 = Matrix(1, 1);
    m.b1 = Matrix(1, 1);
    m.w2 = Matrix(1, 1);
    m.b2 = Matrix(1, 1);
    m.w1.at(0, 0) = w1;
    m.b1.at(0, 0) = b1;
    m.w2.at(0, 0) = w2;
    m.b2.at(0, 0) = b2;
    return m;
}

TEST_CASE("matrix primitives") {
    Matrix a(2, 3), b(3, 2);
    for (std::size_t i = 0; i < a.size(); ++i) a.data[i] = static_cast<double>(i + 1);
    for (std::size_t i = 0; i < b.size(); ++i) b.data[i] = static_cast<double>(i);
    Matrix c = matmul(a, b);
    CHECK(c.rows == 2);
    CHECK(c.cols == 2);
    CHECK(c.at(0, 0) == doctest::Approx(1 * 0 + 2 * 2 + 3 * 4));
    CHECK(c.at(1, 1) == doctest::Approx(4 * 1 + 5 * 3 + 6 * 5));
    CHECK_THROWS(matmul(a, a));

    Matrix s = col_sums(a);
    CHECK(s.at(0, 0) == 5.0);
    CHECK(s.at(0, 2) == 9.0);
}

TEST_CASE("init_mlp contract") {
    Mlp m = init_mlp(1, 128, 1, 42);
    CHECK(m.w1.rows == 1);
    CHECK(m.w1.cols == 128);
    CHECK(m.w2.rows == 128);
    CHECK(m.w2.cols == 1);
    CHECK(m.b1.cols == 128);
    CHECK(m.b2.cols == 1);

    Mlp again = init_mlp(1, 128, 1, 42);
    CHECK(m.w1.data == again.w1.data);
    CHECK(m.b1.data == again.b1.data);
    CHECK(m.w2.data == again.w2.data);
    CHECK(m.b2.data == again.b2.data);

    Mlp other = init_mlp(1, 128, 1, 43);
    CHECK(m.w1.data != other.w1.data);

    CHECK_THROWS(init_mlp(0, 8, 10, 1));
    CHECK_THROWS(init_mlp(784, 0, 10, 1));
}

TEST_CASE("init_mlp statistics") {
    // layer-scaled normal: σ_w = 2.5/√(fan_in+fan_out), σ_b = σ_w/2
    Mlp m = init_mlp(784, 8, 10, 0);
    double expect = 2.5 / std::sqrt(792.0);
    double ss = 0.0;
    for (double w : m.w1.data) {
        CHECK(std::isfinite(w));
        ss += w * w;
    }
    double std_emp = std::sqrt(ss / static_cast<double>(m.w1.size()));
    CHECK(std_emp > 0.8 * expect);
    CHECK(std_emp < 1.2 * expect);
    // biases are drawn, not zero
    double bmax = 0.0;
    for (double b : m.b1.data) bmax = std::max(bmax, std::fabs(b));
    CHECK(bmax > 0.0);
}

TEST_CASE("forward hand examples") {
    Mlp m = tiny_net(2.0, 0.0, 3.0, 1.0);
    Matrix x(1, 1);
    x.at(0, 0) = 1.0;
    CHECK(forward(m, x).output.at(0, 0) == doctest::Approx(7.0));  // 3·ReLU(2)+1
    x.at(0, 0) = -1.0;
    CHECK(forward(m, x).output.at(0, 0) == doctest::Approx(1.0));  // ReLU clamps −2

    Mlp zero = tiny_net(0.0, 0.0, 0.0, 0.0);
    x.at(0, 0) = 5.0;
    CHECK(forward(zero, x).output.at(0, 0) == 0.0);

    Matrix bad(1, 2);
    CHECK_THROWS(forward(m, bad));
}

TEST_CASE("relu region invariant") {
    Mlp m = init_mlp(3, 7, 2, 5);
    Matrix x(4, 3);
    for (std::size_t i = 0; i < x.size(); ++i) x.data[i] = std::sin(static_cast<double>(i));
    ForwardCache c = forward(m, x);
    for (double v : c.hidden_post.data) CHECK(v >= 0.0);
}

TEST_CASE("mse_loss examples") {
    Matrix o(1, 2), t(1, 2);
    o.at(0, 0) = 1.0;
    o.at(0, 1) = 0.0;
    t.at(0, 0) = 0.0;
    t.at(0, 1) = 1.0;
    CHECK(mse_loss(o, t) == doctest::Approx(1.0));
    CHECK(mse_loss(o, o) == 0.0);

    Matrix a(1, 1), b(1, 1);
    a.at(0, 0) = 3.0;
    b.at(0, 0) = 1.0;
    CHECK(mse_loss(a, b) == doctest::Approx(4.0));

    Matrix wrong(2, 1);
    CHECK_THROWS(mse_loss(a, wrong));
}

TEST_CASE("backward hand example") {
    // net: w1=2, b1=0, w2=3, b2=1, x=1 → hidden_post=2, output=7
    Mlp m = tiny_net(2.0, 0.0, 3.0, 1.0);
    Matrix x(1, 1), target(1, 1);
    x.at(0, 0) = 1.0;
    target.at(0, 0) = 0.0;
    ForwardCache c = forward(m, x);
    Gradients g = backward(m, c, target);
    CHECK(g.dw2.at(0, 0) == doctest::Approx(28.0));  // 2·7·hidden_post
    CHECK(g.db2.at(0, 0) == doctest::Approx(14.0));
    CHECK(g.dw1.at(0, 0) == doctest::Approx(2.0 * 7.0 * 3.0 * 1.0));
    CHECK(g.db1.at(0, 0) == doctest::Approx(42.0));

    Gradients zero = backward(m, c, c.output);
    for (const Matrix* b : zero.blocks())
        for (double v : b->data) CHECK(v == 0.0);
}

TEST_CASE("gradient check suite") {
    SuiteResult r = gradient_check_suite(25);
    INFO(r.detail);
    CHECK(r.passed);
}

TEST_CASE("linearity of the output layer") {
    Mlp m = init_mlp(4, 6, 3, 9);
    Matrix x(2, 4);
    for (std::size_t i = 0; i < x.size(); ++i) x.data[i] = std::cos(static_cast<double>(i));
    ForwardCache base = forward(m, x);
    for (double& v : m.w2.data) v *= 2.0;
    for (double& v : m.b2.data) v *= 2.0;
    ForwardCache doubled = forward(m, x);
    for (std::size_t i = 0; i < base.output.size(); ++i)
        CHECK(doubled.output.data[i] == doctest::Approx(2.0 * base.output.data[i]));
}

TEST_CASE("accuracy") {
    Matrix o(2, 2);
    o.at(0, 0) = 0.1;
    o.at(0, 1) = 0.9;
    o.at(1, 0) = 0.8;
    o.at(1, 1) = 0.2;
    CHECK(accuracy(o, {1, 1}) == doctest::Approx(0.5));
    CHECK(accuracy(o, {1, 0}) == doctest::Approx(1.0));

    Matrix uniform(3, 4);
    for (double& v : uniform.data) v = 0.25;
    CHECK(accuracy(uniform, {0, 0, 0}) == 1.0);  // ties break to lowest index
    CHECK(accuracy(uniform, {1, 1, 1}) == 0.0);

    Matrix empty(0, 4);
    CHECK_THROWS(accuracy(empty, {}));
}
