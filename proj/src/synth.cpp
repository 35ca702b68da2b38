#include "ayla/synth.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "ayla/rng.hpp"

namespace ayla {

std::vector<std::uint8_t> synth_images(const SynthSpec& spec, std::size_t per_class,
                                       std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint8_t> out(spec.classes * per_class * spec.pixel_dim);
    std::size_t stride = spec.pixel_dim / spec.classes;
    std::size_t k = 0;
    for (std::size_t c = 0; c < spec.classes; ++c) {
        std::size_t lo = c * stride;
        std::size_t hi = std::min(lo + spec.patch_len, spec.pixel_dim);
        for (std::size_t i = 0; i < per_class; ++i) {
            for (std::size_t j = 0; j < spec.pixel_dim; ++j) {
                double base = (j >= lo && j < hi) ? spec.fg : 0.0;
                double v = std::clamp(base + spec.noise * rng.normal(), 0.0, 1.0);
                out[k++] = static_cast<std::uint8_t>(std::lround(v * 255.0));
            }
        }
    }
    return out;
}

static std::vector<std::uint8_t> gzip_bytes(const std::vector<std::uint8_t>& in) {
    z_stream strm{};
    if (deflateInit2(&strm, Z_BEST_SPEED, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw std::runtime_error("deflateInit2 failed");
    std::vector<std::uint8_t> out;
    std::uint8_t chunk[1 << 15];
    strm.next_in = const_cast<std::uint8_t*>(in.data());
    strm.avail_in = static_cast<uInt>(in.size());
    int rc;
    do {
        strm.next_out = chunk;
        strm.avail_out = sizeof(chunk);
        rc = deflate(&strm, Z_FINISH);
        if (rc == Z_STREAM_ERROR) {
            deflateEnd(&strm);
            throw std::runtime_error("deflate failed");
        }
        out.insert(out.end(), chunk, chunk + (sizeof(chunk) - strm.avail_out));
    } while (rc != Z_STREAM_END);
    deflateEnd(&strm);
    return out;
}

void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes,
                      bool gzipped) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    if (gzipped) {
        auto gz = gzip_bytes(bytes);
        out.write(reinterpret_cast<const char*>(gz.data()), static_cast<std::streamsize>(gz.size()));
    } else {
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

static void push_be32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back(static_cast<std::uint8_t>(x >> 24));
    v.push_back(static_cast<std::uint8_t>(x >> 16));
    v.push_back(static_cast<std::uint8_t>(x >> 8));
    v.push_back(static_cast<std::uint8_t>(x));
}

void write_idx_images(const std::string& path, const std::vector<std::uint8_t>& pixels,
                      std::size_t count, std::size_t rows, std::size_t cols, bool gzipped) {
    if (pixels.size() != count * rows * cols)
        throw std::runtime_error("write_idx_images: pixel count mismatch");
    std::vector<std::uint8_t> bytes;
    bytes.reserve(16 + pixels.size());
    push_be32(bytes, 0x00000803u);
    push_be32(bytes, static_cast<std::uint32_t>(count));
    push_be32(bytes, static_cast<std::uint32_t>(rows));
    push_be32(bytes, static_cast<std::uint32_t>(cols));
    bytes.insert(bytes.end(), pixels.begin(), pixels.end());
    write_file_bytes(path, bytes, gzipped);
}

void write_idx_labels(const std::string& path, const std::vector<std::uint8_t>& labels,
                      bool gzipped) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(8 + labels.size());
    push_be32(bytes, 0x00000801u);
    push_be32(bytes, static_cast<std::uint32_t>(labels.size()));
    bytes.insert(bytes.end(), labels.begin(), labels.end());
    write_file_bytes(path, bytes, gzipped);
}

void write_cifar100_bin(const std::string& path, const std::vector<std::uint8_t>& pixels,
                        const std::vector<std::uint8_t>& fine_labels) {
    if (pixels.size() != fine_labels.size() * 3072)
        throw std::runtime_error("write_cifar100_bin: pixel count mismatch");
    std::vector<std::uint8_t> bytes;
    bytes.reserve(fine_labels.size() * 3074);
    for (std::size_t i = 0; i < fine_labels.size(); ++i) {
        bytes.push_back(static_cast<std::uint8_t>(fine_labels[i] / 5));  // coarse
        bytes.push_back(fine_labels[i]);
        bytes.insert(bytes.end(), pixels.begin() + static_cast<std::ptrdiff_t>(i * 3072),
                     pixels.begin() + static_cast<std::ptrdiff_t>((i + 1) * 3072));
    }
    write_file_bytes(path, bytes, false);
}

static std::vector<std::uint8_t> class_major_labels(std::size_t classes, std::size_t per_class) {
    std::vector<std::uint8_t> labels;
    labels.reserve(classes * per_class);
    for (std::size_t c = 0; c < classes; ++c)
        labels.insert(labels.end(), per_class, static_cast<std::uint8_t>(c));
    return labels;
}

void write_synth_datasets(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto at = [&](const std::string& name) { return (fs::path(dir) / name).string(); };

    SynthSpec mnist;  // defaults: 10 classes over 784 pixels
    write_idx_images(at("train-images-idx3-ubyte.gz"), synth_images(mnist, 200, 777),
                     2000, 28, 28, true);
    write_idx_labels(at("train-labels-idx1-ubyte.gz"), class_major_labels(10, 200), true);
    write_idx_images(at("t10k-images-idx3-ubyte"), synth_images(mnist, 50, 778),
                     500, 28, 28, false);
    write_idx_labels(at("t10k-labels-idx1-ubyte"), class_major_labels(10, 50), false);

    SynthSpec cifar;
    cifar.classes = 100;
    cifar.pixel_dim = 3072;
    cifar.patch_len = 12;
    write_cifar100_bin(at("train.bin"), synth_images(cifar, 20, 779),
                       class_major_labels(100, 20));
    write_cifar100_bin(at("test.bin"), synth_images(cifar, 5, 780),
                       class_major_labels(100, 5));
}

}  // namespace ayla
