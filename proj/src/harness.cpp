#include "ayla/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ayla {

static TransformConfig active_transform(const RunConfig& cfg) {
    TransformConfig t;
    if (cfg.ayla) {
        t.n1 = cfg.n1;
        t.n2 = cfg.n2;
    }
    t.validate();
    return t;  // identity when not running AYLA, so traces share one code path
}

RunResult run_poly(const RunConfig& cfg) {
    require(cfg.epochs >= 1, "run_poly: epochs must be >= 1");
    require(cfg.lr > 0.0, "run_poly: lr must be positive");
    require(cfg.optimizer == BaseOptimizer::sgd, "run_poly: only sgd is supported");
    TransformConfig tc = active_transform(cfg);
    ScalarProblem prob = quartic();

    RunResult res;
    double x = cfg.start_x;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        double fx = prob.f(x);
        double g = prob.f_prime(x);
        TransformedLoss t = transform_loss(fx, tc);
        double eff = effective_lr(cfg.lr, g, t.grad_scale);
        double x_next = x - cfg.lr * (g * t.grad_scale);

        TraceRow row;
        row.epoch = epoch;
        row.raw_loss = fx;
        row.transformed_loss = t.value;
        row.grad_scale = t.grad_scale;
        row.effective_lr = eff;
        row.x = x_next;
        res.trace.push_back(row);

        if (!std::isfinite(x_next) || std::fabs(fx) > kDivergenceLimit) {
            res.diverged = true;
            res.summary = "diverged at epoch " + std::to_string(epoch);
            return res;
        }
        x = x_next;
    }
    std::ostringstream s;
    s << "final_x=" << x << " final_loss=" << prob.f(x);
    res.summary = s.str();
    return res;
}

struct TrainStepper {
    BaseOptimizer kind;
    SgdConfig sgd;
    AdamConfig adam;
    OptimizerState state;

    TrainStepper(const RunConfig& cfg, const Mlp& mlp)
        : kind(cfg.optimizer), sgd{cfg.lr}, adam{cfg.lr} {
        if (kind == BaseOptimizer::adam) {
            std::vector<Matrix*> blocks = const_cast<Mlp&>(mlp).blocks();
            state.init_like({blocks.begin(), blocks.end()});
        }
    }

    void step(Mlp& mlp, const Gradients& grads) {
        std::vector<const Matrix*> g{&grads.dw1, &grads.db1, &grads.dw2, &grads.db2};
        if (kind == BaseOptimizer::sgd)
            sgd_step(mlp.blocks(), g, sgd);
        else
            adam_step(mlp.blocks(), g, adam, state);
    }
};

RunResult run_curvefit(const RunConfig& cfg) {
    require(cfg.epochs >= 1, "run_curvefit: epochs must be >= 1");
    require(cfg.hidden_dim >= 1, "run_curvefit: hidden_dim must be >= 1");
    TransformConfig tc = active_transform(cfg);

    CurveFitDataset d = gen_curvefit(static_cast<std::int64_t>(cfg.seed));
    Matrix X(d.x.size(), 1), Y(d.y.size(), 1);
    for (std::size_t i = 0; i < d.x.size(); ++i) {
        X.at(i, 0) = d.x[i];
        Y.at(i, 0) = d.y[i];
    }

    Mlp mlp = init_mlp(1, cfg.hidden_dim, 1, cfg.seed);
    TrainStepper stepper(cfg, mlp);

    RunResult res;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        ForwardCache cache = forward(mlp, X);
        double loss = mse_loss(cache.output, Y);
        TransformedLoss t = transform_loss(loss, tc);

        TraceRow row;
        row.epoch = epoch;
        row.raw_loss = loss;
        row.transformed_loss = t.value;
        row.grad_scale = t.grad_scale;
        row.effective_lr = cfg.lr * t.grad_scale;
        res.trace.push_back(row);

        if (!std::isfinite(loss) || std::fabs(loss) > kDivergenceLimit) {
            res.diverged = true;
            res.summary = "diverged at epoch " + std::to_string(epoch);
            return res;
        }

        Gradients grads = backward(mlp, cache, Y);
        ayla_wrap(loss, grads, tc);
        stepper.step(mlp, grads);
    }

    ForwardCache fin = forward(mlp, X);
    for (std::size_t i = 0; i < d.x.size(); ++i)
        res.predictions.push_back({d.x[i], d.y[i], fin.output.at(i, 0)});
    std::ostringstream s;
    s << "final_loss=" << mse_loss(fin.output, Y);
    res.summary = s.str();
    return res;
}

static LabeledImages load_split(const RunConfig& cfg, bool train) {
    if (cfg.experiment == Experiment::mnist) {
        std::string img = train ? "train-images-idx3-ubyte" : "t10k-images-idx3-ubyte";
        std::string lab = train ? "train-labels-idx1-ubyte" : "t10k-labels-idx1-ubyte";
        return load_idx(resolve_data_file(cfg.data_dir, img),
                        resolve_data_file(cfg.data_dir, lab));
    }
    return load_cifar100(resolve_data_file(cfg.data_dir, train ? "train.bin" : "test.bin"));
}

static Matrix gather_rows(const Matrix& src, const std::vector<std::size_t>& idx) {
    Matrix out(idx.size(), src.cols);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < src.cols; ++j) out.at(i, j) = src.at(idx[i], j);
    return out;
}

RunResult run_classify(const RunConfig& cfg) {
    require(cfg.experiment == Experiment::mnist || cfg.experiment == Experiment::cifar100,
            "run_classify: experiment must be mnist or cifar100");
    require(cfg.epochs >= 1 && cfg.batch_size >= 1 && cfg.hidden_dim >= 1,
            "run_classify: invalid epochs/batch_size/hidden_dim");
    TransformConfig tc = active_transform(cfg);

    LabeledImages train = load_split(cfg, true);
    LabeledImages test = load_split(cfg, false);
    if (cfg.per_class > 0) train = subset(train, cfg.per_class, cfg.seed);

    Matrix train_targets = one_hot(train.labels, train.class_count);
    Matrix test_targets = one_hot(test.labels, test.class_count);

    Mlp mlp = init_mlp(train.pixel_dim, cfg.hidden_dim, train.class_count, cfg.seed);
    TrainStepper stepper(cfg, mlp);

    RunResult res;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        BatchPlan plan = make_batch_plan(train.labels.size(), cfg.batch_size, cfg.seed, epoch);
        double loss_sum = 0.0;
        std::size_t batches = plan.batch_count();
        for (std::size_t b = 0; b < batches; ++b) {
            std::vector<std::size_t> idx = plan.batch(b);
            Matrix xb = gather_rows(train.images, idx);
            Matrix tb = gather_rows(train_targets, idx);
            ForwardCache cache = forward(mlp, xb);
            double loss = mse_loss(cache.output, tb);

            if (!std::isfinite(loss) || std::fabs(loss) > kDivergenceLimit) {
                TraceRow row;
                row.epoch = epoch;
                row.raw_loss = loss;
                row.transformed_loss = loss;
                row.grad_scale = 1.0;
                row.effective_lr = cfg.lr;
                res.trace.push_back(row);
                res.diverged = true;
                res.summary = "diverged at epoch " + std::to_string(epoch);
                return res;
            }

            loss_sum += loss;
            Gradients grads = backward(mlp, cache, tb);
            ayla_wrap(loss, grads, tc);  // per-batch scale from that batch's mean loss
            stepper.step(mlp, grads);
        }
        double mean_loss = loss_sum / static_cast<double>(batches);
        TransformedLoss t = transform_loss(mean_loss, tc);

        ForwardCache train_eval = forward(mlp, train.images);
        ForwardCache test_eval = forward(mlp, test.images);

        TraceRow row;
        row.epoch = epoch;
        row.raw_loss = mean_loss;
        row.transformed_loss = t.value;
        row.grad_scale = t.grad_scale;
        row.effective_lr = cfg.lr * t.grad_scale;
        row.train_acc = accuracy(train_eval.output, train.labels);
        row.test_loss = mse_loss(test_eval.output, test_targets);
        row.test_acc = accuracy(test_eval.output, test.labels);
        res.trace.push_back(row);
    }

    const TraceRow& last = res.trace.back();
    std::ostringstream s;
    s << "final_train_loss=" << last.raw_loss << " train_acc=" << *last.train_acc
      << " test_acc=" << *last.test_acc;
    res.summary = s.str();
    return res;
}

RunResult run_experiment(const RunConfig& cfg) {
    switch (cfg.experiment) {
        case Experiment::poly: return run_poly(cfg);
        case Experiment::curvefit: return run_curvefit(cfg);
        default: return run_classify(cfg);
    }
}

static std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

static std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt17(*v) : std::string();
}

void emit_csv(const std::vector<TraceRow>& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
    out << "epoch,raw_loss,transformed_loss,grad_scale,effective_lr,x,train_acc,test_loss,test_acc\n";
    for (const TraceRow& r : trace) {
        out << r.epoch << ',' << fmt17(r.raw_loss) << ',' << fmt17(r.transformed_loss) << ','
            << fmt17(r.grad_scale) << ',' << fmt17(r.effective_lr) << ',' << fmt_opt(r.x) << ','
            << fmt_opt(r.train_acc) << ',' << fmt_opt(r.test_loss) << ',' << fmt_opt(r.test_acc)
            << '\n';
    }
    if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

void emit_predictions_csv(const std::vector<Prediction>& preds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_predictions_csv: cannot open " + path);
    out << "x,y,pred\n";
    for (const Prediction& p : preds)
        out << fmt17(p.x) << ',' << fmt17(p.y) << ',' << fmt17(p.pred) << '\n';
    if (!out) throw std::runtime_error("emit_predictions_csv: write failed for " + path);
}

std::string prediction_path(const std::string& trace_path) {
    std::filesystem::path p(trace_path);
    std::filesystem::path out = p.parent_path() / (p.stem().string() + "_pred" + p.extension().string());
    return out.string();
}

}  // namespace ayla
