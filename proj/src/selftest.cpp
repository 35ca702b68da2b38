#include "ayla/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "ayla/data.hpp"
#include "ayla/nn.hpp"
#include "ayla/problems.hpp"
#include "ayla/rng.hpp"
#include "ayla/synth.hpp"
#include "ayla/transform.hpp"

namespace ayla {

static SuiteResult make_result(const std::string& name, bool passed, const std::string& detail) {
    return {name, passed, detail};
}

static double rel_err(double a, double b) {
    return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

SuiteResult gradient_check_suite(std::size_t nets) {
    Rng rng(20240915);
    double worst = 0.0;
    for (std::size_t n = 0; n < nets; ++n) {
        std::size_t in = 1 + rng.below(5), hid = 1 + rng.below(5), out = 1 + rng.below(5);
        std::size_t batch = 1 + rng.below(4);
        Mlp mlp = init_mlp(in, hid, out, 1000 + n);
        Matrix x(batch, in), target(batch, out);
        for (double& v : x.data) v = rng.normal();
        for (double& v : target.data) v = rng.normal();

        ForwardCache cache = forward(mlp, x);
        Gradients g = backward(mlp, cache, target);

        auto blocks = mlp.blocks();
        auto gblocks = g.blocks();
        const double h = 1e-6;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            for (std::size_t k = 0; k < blocks[b]->size(); ++k) {
                double saved = blocks[b]->data[k];
                blocks[b]->data[k] = saved + h;
                double lp = mse_loss(forward(mlp, x).output, target);
                blocks[b]->data[k] = saved - h;
                double lm = mse_loss(forward(mlp, x).output, target);
                blocks[b]->data[k] = saved;
                double fd = (lp - lm) / (2.0 * h);
                worst = std::max(worst, rel_err(gblocks[b]->data[k], fd));
            }
        }
    }
    std::ostringstream s;
    s << nets << " nets, worst rel err " << worst;
    return make_result("gradient_check", worst < 1e-5, s.str());
}

SuiteResult transform_fd_suite() {
    // d/dx sign(l)|l|^n at fixed n must equal grad_scale·l'(x) for smooth l
    // with |l| bounded away from 0 and 1.
    struct Case {
        double (*l)(double);
        double (*lp)(double);
        TransformConfig cfg;
    };
    static auto l_small = [](double x) { return 0.5 + 0.3 * std::sin(x); };
    static auto lp_small = [](double x) { return 0.3 * std::cos(x); };
    static auto l_big = [](double x) { return 2.0 + 0.5 * std::sin(x); };
    static auto lp_big = [](double x) { return 0.5 * std::cos(x); };
    Case cases[] = {
        {l_small, lp_small, {0.2, 1.5, 1e-12}},
        {l_small, lp_small, {0.7, 1.5, 1e-12}},
        {l_big, lp_big, {0.2, 1.4, 1e-12}},
        {l_big, lp_big, {0.5, 2.0, 1e-12}},
    };
    double worst = 0.0;
    const double h = 1e-6;
    for (const Case& c : cases) {
        for (int i = 0; i < 200; ++i) {
            double x = -3.0 + 6.0 * i / 199.0;
            TransformedLoss t = transform_loss(c.l(x), c.cfg);
            double analytic = t.grad_scale * c.lp(x);
            double fd = (transform_loss(c.l(x + h), c.cfg).value -
                         transform_loss(c.l(x - h), c.cfg).value) / (2.0 * h);
            worst = std::max(worst, rel_err(analytic, fd));
        }
    }
    std::ostringstream s;
    s << "worst rel err " << worst;
    return make_result("transform_fd", worst < 1e-6, s.str());
}

SuiteResult curvature_suite() {
    // second difference of the transformed quartic at the known minimum
    ScalarProblem p = quartic();
    TransformConfig cfg{1.0, 1.4, 1e-12};
    auto tf = [&](double x) { return transform_loss(p.f(x), cfg).value; };
    const double h = 1e-4;
    double d2 = (tf(2.25 + h) - 2.0 * tf(2.25) + tf(2.25 - h)) / (h * h);
    std::ostringstream s;
    s << "second difference at minimum = " << d2;
    return make_result("curvature_sign", d2 > 0.0, s.str());
}

SuiteResult sign_preservation_suite() {
    Rng rng(11);
    bool ok = true;
    for (int i = 0; i < 10000 && ok; ++i) {
        double mag = std::exp(rng.normal() * 5.0);
        double l = (rng.uniform() < 0.5 ? -1.0 : 1.0) * mag;
        TransformConfig cfg{0.05 + 2.0 * rng.uniform(), 0.05 + 2.0 * rng.uniform(), 1e-12};
        TransformedLoss t = transform_loss(l, cfg);
        ok = (l > 0 && t.value > 0) || (l < 0 && t.value < 0) || (l == 0 && t.value == 0);
    }
    if (transform_loss(0.0, {0.5, 1.5, 1e-12}).value != 0.0) ok = false;
    return make_result("sign_preservation", ok, "10000 random samples plus zero");
}

SuiteResult argmin_preservation_suite(std::size_t grids) {
    Rng rng(12);
    bool ok = true;
    for (std::size_t g = 0; g < grids && ok; ++g) {
        TransformConfig cfg{0.05 + 2.0 * rng.uniform(), 0.05 + 2.0 * rng.uniform(), 1e-12};
        std::size_t n = 8 + rng.below(57);
        std::size_t argmin_raw = 0, argmin_t = 0;
        double best_raw = 0.0, best_t = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double l = rng.normal() * std::exp(rng.normal());
            double tv = transform_loss(l, cfg).value;
            if (i == 0 || l < best_raw) { best_raw = l; argmin_raw = i; }
            if (i == 0 || tv < best_t) { best_t = tv; argmin_t = i; }
        }
        ok = (argmin_raw == argmin_t);
    }
    std::ostringstream s;
    s << grids << " random grids";
    return make_result("argmin_preservation", ok, s.str());
}

SuiteResult grad_scale_positivity_suite() {
    Rng rng(13);
    bool ok = true;
    for (int i = 0; i < 10000 && ok; ++i) {
        double l = rng.normal() * std::exp(rng.normal() * 3.0);
        TransformConfig cfg{0.01 + 2.0 * rng.uniform(), 0.01 + 2.0 * rng.uniform(), 1e-12};
        ok = transform_loss(l, cfg).grad_scale > 0.0;
    }
    for (double l : {0.0, 1.0, -1.0, 1e-300, -1e-300, 1e300, -1e300})
        ok = ok && transform_loss(l, {1e-7, 2.0, 1e-12}).grad_scale > 0.0;
    return make_result("grad_scale_positivity", ok, "randomized plus edge values");
}

SuiteResult identity_suite() {
    Rng rng(14);
    TransformConfig cfg{1.0, 1.0, 1e-12};
    bool ok = true;
    for (int i = 0; i < 10000 && ok; ++i) {
        double l = rng.normal() * std::exp(rng.normal() * 5.0);
        TransformedLoss t = transform_loss(l, cfg);
        ok = (t.value == l) && (t.grad_scale == 1.0);
    }
    for (double l : {0.0, -0.0, 1.0, -1.0, 1e300, 5e-324}) {
        TransformedLoss t = transform_loss(l, cfg);
        ok = ok && (t.value == l) && (t.grad_scale == 1.0);
    }
    return make_result("identity_at_n1", ok, "bit-exact value and unit scale");
}

SuiteResult parser_fuzz_suite(std::size_t files) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ayla_fuzz";
    fs::create_directories(dir);
    Rng rng(15);
    std::size_t typed = 0, accepted = 0;
    bool crashed = false;
    for (std::size_t i = 0; i < files; ++i) {
        std::size_t len = rng.below(6000);
        std::vector<std::uint8_t> junk(len);
        for (auto& b : junk) b = static_cast<std::uint8_t>(rng.below(256));
        // bias some files toward plausible prefixes so header paths get hit
        if (i % 5 == 1 && len >= 4) { junk[0] = 0; junk[1] = 0; junk[2] = 8; junk[3] = 3; }
        if (i % 5 == 2 && len >= 2) { junk[0] = 0x1f; junk[1] = 0x8b; }
        fs::path fa = dir / ("fuzz_a_" + std::to_string(i));
        fs::path fb = dir / ("fuzz_b_" + std::to_string(i));
        write_file_bytes(fa.string(), junk, false);
        write_file_bytes(fb.string(), junk, false);
        try {
            load_idx(fa.string(), fb.string());
            ++accepted;
        } catch (const DataError&) {
            ++typed;
        } catch (...) {
            crashed = true;
        }
        try {
            load_cifar100(fa.string());
            ++accepted;
        } catch (const DataError&) {
            ++typed;
        } catch (...) {
            crashed = true;
        }
    }
    fs::remove_all(dir);
    std::ostringstream s;
    s << files << " fuzzed files, " << typed << " typed rejections, " << accepted
      << " parsed cleanly";
    return make_result("parser_totality", !crashed, s.str());
}

SuiteResult shuffle_subset_determinism_suite() {
    bool ok = true;
    // batch plans: reproducible, full coverage, epoch-sensitive
    BatchPlan p1 = make_batch_plan(257, 64, 42, 3);
    BatchPlan p2 = make_batch_plan(257, 64, 42, 3);
    BatchPlan p3 = make_batch_plan(257, 64, 42, 4);
    ok = ok && (p1.order == p2.order) && (p1.order != p3.order);
    std::vector<bool> seen(257, false);
    for (std::size_t i : p1.order) seen[i] = true;
    for (bool b : seen) ok = ok && b;
    ok = ok && p1.batch_count() == 5 && p1.batch(4).size() == 1;

    // subset: deterministic and stratified
    LabeledImages data;
    data.class_count = 4;
    data.pixel_dim = 3;
    data.images = Matrix(40, 3);
    data.labels.resize(40);
    for (std::size_t i = 0; i < 40; ++i) {
        data.labels[i] = i % 4;
        data.images.at(i, 0) = static_cast<double>(i) / 40.0;
    }
    LabeledImages s1 = subset(data, 5, 99);
    LabeledImages s2 = subset(data, 5, 99);
    ok = ok && (s1.labels == s2.labels) && (s1.images.data == s2.images.data);
    std::vector<std::size_t> counts(4, 0);
    for (std::size_t lab : s1.labels) counts[lab]++;
    for (std::size_t c : counts) ok = ok && c == 5;
    return make_result("shuffle_subset_determinism", ok, "batch plans and stratified subsets");
}

std::vector<SuiteResult> run_all_selftests() {
    return {
        gradient_check_suite(), transform_fd_suite(),          curvature_suite(),
        sign_preservation_suite(), argmin_preservation_suite(), grad_scale_positivity_suite(),
        identity_suite(),       parser_fuzz_suite(),           shuffle_subset_determinism_suite(),
    };
}

}  // namespace ayla
