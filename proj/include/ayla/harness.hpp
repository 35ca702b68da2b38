#pragma once
#include <optional>
#include <string>
#include <vector>

#include "ayla/data.hpp"
#include "ayla/nn.hpp"
#include "ayla/optim.hpp"
#include "ayla/problems.hpp"
#include "ayla/transform.hpp"

namespace ayla {

enum class Experiment { poly, curvefit, mnist, cifar100 };
enum class BaseOptimizer { sgd, adam };

struct RunConfig {
    Experiment experiment = Experiment::poly;
    BaseOptimizer optimizer = BaseOptimizer::sgd;
    bool ayla = false;
    double n1 = 1.0, n2 = 1.0;
    double lr = 0.03;
    std::size_t epochs = 50;
    std::size_t hidden_dim = 128;
    std::size_t batch_size = 256;
    std::uint64_t seed = 1;
    double start_x = -1.0;
    std::size_t per_class = 0;  // 0 = full dataset
    std::string data_dir = "data";
    std::string out = "trace.csv";
};

struct TraceRow {
    std::size_t epoch = 0;
    double raw_loss = 0.0;
    double transformed_loss = 0.0;
    double grad_scale = 1.0;
    double effective_lr = 0.0;
    std::optional<double> x;
    std::optional<double> train_acc;
    std::optional<double> test_loss;
    std::optional<double> test_acc;
};

struct Prediction {
    double x, y, pred;
};

struct RunResult {
    std::vector<TraceRow> trace;
    bool diverged = false;
    std::string summary;
    std::vector<Prediction> predictions;  // curvefit only
};

constexpr double kDivergenceLimit = 1e12;

RunResult run_poly(const RunConfig& cfg);
RunResult run_curvefit(const RunConfig& cfg);
RunResult run_classify(const RunConfig& cfg);
RunResult run_experiment(const RunConfig& cfg);

void emit_csv(const std::vector<TraceRow>& trace, const std::string& path);
void emit_predictions_csv(const std::vector<Prediction>& preds, const std::string& path);

// "<stem>_pred<ext>" next to the trace path
std::string prediction_path(const std::string& trace_path);

}  // namespace ayla
