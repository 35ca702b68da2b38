#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ayla/matrix.hpp"

namespace ayla {

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct LabeledImages {
    Matrix images;  // count × pixel_dim, values in [0,1]
    std::vector<std::size_t> labels;
    std::size_t class_count = 0;
    std::size_t pixel_dim = 0;
};

// IDX ubyte pair (big-endian magic 0x803 images / 0x801 labels); either file
// may be gzip-compressed (detected by the 0x1f 0x8b magic).
LabeledImages load_idx(const std::string& images_path, const std::string& labels_path);

// CIFAR-100 binary: 3074-byte records (coarse byte, fine byte, 3072 pixels);
// fine labels become the class, coarse is discarded.
LabeledImages load_cifar100(const std::string& bin_path);

// Stratified per-class sample (min(per_class, available) each), order
// shuffled; pure function of (data, per_class, seed).
LabeledImages subset(const LabeledImages& data, std::size_t per_class, std::uint64_t seed);

Matrix one_hot(const std::vector<std::size_t>& labels, std::size_t class_count);

struct BatchPlan {
    std::size_t batch_size = 0;
    std::vector<std::size_t> order;
    bool drop_last = false;

    std::size_t batch_count() const {
        if (batch_size == 0 || order.empty()) return 0;
        if (drop_last) return order.size() / batch_size;
        return (order.size() + batch_size - 1) / batch_size;
    }
    std::vector<std::size_t> batch(std::size_t i) const {
        std::size_t lo = i * batch_size;
        std::size_t hi = std::min(order.size(), lo + batch_size);
        return {order.begin() + lo, order.begin() + hi};
    }
};

BatchPlan make_batch_plan(std::size_t sample_count, std::size_t batch_size,
                          std::uint64_t seed, std::size_t epoch, bool drop_last = false);

// File-name resolution inside a data directory: returns `name` if present,
// otherwise `name.gz`, otherwise throws DataError naming both candidates.
std::string resolve_data_file(const std::string& dir, const std::string& name);

}  // namespace ayla
