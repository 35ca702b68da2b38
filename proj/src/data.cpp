#include "ayla/data.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "ayla/rng.hpp"

namespace ayla {

static std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
    return buf;
}

static std::vector<std::uint8_t> gunzip(const std::vector<std::uint8_t>& in,
                                        const std::string& path) {
    z_stream strm{};
    if (inflateInit2(&strm, 15 + 16) != Z_OK) throw DataError("zlib init failed for " + path);
    std::vector<std::uint8_t> out;
    out.reserve(in.size() * 4);
    std::uint8_t chunk[1 << 15];
    strm.next_in = const_cast<std::uint8_t*>(in.data());
    strm.avail_in = static_cast<uInt>(in.size());
    int rc = Z_OK;
    do {
        strm.next_out = chunk;
        strm.avail_out = sizeof(chunk);
        rc = inflate(&strm, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&strm);
            throw DataError("corrupt gzip stream in " + path);
        }
        out.insert(out.end(), chunk, chunk + (sizeof(chunk) - strm.avail_out));
    } while (rc != Z_STREAM_END && (strm.avail_in > 0 || strm.avail_out == 0));
    inflateEnd(&strm);
    if (rc != Z_STREAM_END) throw DataError("truncated gzip stream in " + path);
    return out;
}

static std::vector<std::uint8_t> read_maybe_gz(const std::string& path) {
    auto buf = read_file(path);
    if (buf.size() >= 2 && buf[0] == 0x1f && buf[1] == 0x8b) return gunzip(buf, path);
    return buf;
}

static std::uint32_t be32(const std::vector<std::uint8_t>& b, std::size_t off,
                          const std::string& path) {
    if (off + 4 > b.size()) throw DataError("truncated header in " + path);
    return (std::uint32_t(b[off]) << 24) | (std::uint32_t(b[off + 1]) << 16) |
           (std::uint32_t(b[off + 2]) << 8) | std::uint32_t(b[off + 3]);
}

LabeledImages load_idx(const std::string& images_path, const std::string& labels_path) {
    auto ib = read_maybe_gz(images_path);
    auto lb = read_maybe_gz(labels_path);

    if (be32(ib, 0, images_path) != 0x00000803u)
        throw DataError("bad image magic in " + images_path);
    if (be32(lb, 0, labels_path) != 0x00000801u)
        throw DataError("bad label magic in " + labels_path);

    std::uint32_t count = be32(ib, 4, images_path);
    std::uint32_t rows = be32(ib, 8, images_path);
    std::uint32_t cols = be32(ib, 12, images_path);
    std::uint32_t lcount = be32(lb, 4, labels_path);
    if (count != lcount)
        throw DataError("image count " + std::to_string(count) + " != label count " +
                        std::to_string(lcount) + " (" + images_path + ")");
    if (rows == 0 || cols == 0 || rows > 4096 || cols > 4096)
        throw DataError("implausible image dimensions in " + images_path);
    std::size_t pixel_dim = std::size_t(rows) * cols;
    if (ib.size() != 16 + std::size_t(count) * pixel_dim)
        throw DataError("truncated image payload in " + images_path);
    if (lb.size() != 8 + std::size_t(count))
        throw DataError("truncated label payload in " + labels_path);

    LabeledImages out;
    out.pixel_dim = pixel_dim;
    out.class_count = 10;
    out.images = Matrix(count, pixel_dim);
    out.labels.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint8_t lab = lb[8 + i];
        if (lab >= out.class_count)
            throw DataError("label " + std::to_string(lab) + " out of range in " + labels_path);
        out.labels[i] = lab;
        for (std::size_t j = 0; j < pixel_dim; ++j)
            out.images.at(i, j) = static_cast<double>(ib[16 + i * pixel_dim + j]) / 255.0;
    }
    return out;
}

LabeledImages load_cifar100(const std::string& bin_path) {
    auto b = read_maybe_gz(bin_path);
    constexpr std::size_t rec = 3074;  // coarse, fine, 3×32×32
    if (b.empty() || b.size() % rec != 0)
        throw DataError("file length " + std::to_string(b.size()) +
                        " is not a multiple of 3074 in " + bin_path);
    std::size_t count = b.size() / rec;
    LabeledImages out;
    out.pixel_dim = 3072;
    out.class_count = 100;
    out.images = Matrix(count, out.pixel_dim);
    out.labels.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint8_t fine = b[i * rec + 1];
        if (fine >= 100)
            throw DataError("fine label " + std::to_string(fine) + " out of range in " + bin_path);
        out.labels[i] = fine;
        for (std::size_t j = 0; j < out.pixel_dim; ++j)
            out.images.at(i, j) = static_cast<double>(b[i * rec + 2 + j]) / 255.0;
    }
    return out;
}

LabeledImages subset(const LabeledImages& data, std::size_t per_class, std::uint64_t seed) {
    require(per_class >= 1, "subset: per_class must be >= 1");
    std::vector<std::vector<std::size_t>> by_class(data.class_count);
    for (std::size_t i = 0; i < data.labels.size(); ++i)
        by_class[data.labels[i]].push_back(i);

    Rng rng(seed);
    std::vector<std::size_t> picked;
    for (auto& idxs : by_class) {
        rng.shuffle(idxs);
        std::size_t take = std::min(per_class, idxs.size());
        picked.insert(picked.end(), idxs.begin(), idxs.begin() + take);
    }
    rng.shuffle(picked);

    LabeledImages out;
    out.pixel_dim = data.pixel_dim;
    out.class_count = data.class_count;
    out.images = Matrix(picked.size(), data.pixel_dim);
    out.labels.resize(picked.size());
    for (std::size_t i = 0; i < picked.size(); ++i) {
        out.labels[i] = data.labels[picked[i]];
        for (std::size_t j = 0; j < data.pixel_dim; ++j)
            out.images.at(i, j) = data.images.at(picked[i], j);
    }
    return out;
}

Matrix one_hot(const std::vector<std::size_t>& labels, std::size_t class_count) {
    Matrix out(labels.size(), class_count);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        require(labels[i] < class_count, "one_hot: label out of range");
        out.at(i, labels[i]) = 1.0;
    }
    return out;
}

BatchPlan make_batch_plan(std::size_t sample_count, std::size_t batch_size,
                          std::uint64_t seed, std::size_t epoch, bool drop_last) {
    require(batch_size >= 1, "make_batch_plan: batch_size must be >= 1");
    BatchPlan plan;
    plan.batch_size = batch_size;
    plan.drop_last = drop_last;
    plan.order.resize(sample_count);
    std::iota(plan.order.begin(), plan.order.end(), std::size_t{0});
    Rng rng(seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(epoch + 1)));
    rng.shuffle(plan.order);
    return plan;
}

std::string resolve_data_file(const std::string& dir, const std::string& name) {
    namespace fs = std::filesystem;
    fs::path plain = fs::path(dir) / name;
    if (fs::exists(plain)) return plain.string();
    fs::path gz = fs::path(dir) / (name + ".gz");
    if (fs::exists(gz)) return gz.string();
    throw DataError("missing data file: tried " + plain.string() + " and " + gz.string());
}

}  // namespace ayla
