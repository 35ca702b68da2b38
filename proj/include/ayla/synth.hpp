#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace ayla {

// Deterministic synthetic datasets in the real on-disk formats (IDX ubyte,
// optionally gzipped, and CIFAR-100 binary). Each class is a distinct bright
// pixel patch on a dark background plus Gaussian pixel noise; equal per-class
// pixel mass, so there is no brightness shortcut. Real datasets can be
// dropped into the same directory under the same file names.
struct SynthSpec {
    std::size_t classes = 10;
    std::size_t pixel_dim = 784;
    std::size_t patch_len = 10;
    double fg = 0.9;
    double noise = 0.05;
};

std::vector<std::uint8_t> synth_images(const SynthSpec& spec, std::size_t per_class,
                                       std::uint64_t seed);

void write_idx_images(const std::string& path, const std::vector<std::uint8_t>& pixels,
                      std::size_t count, std::size_t rows, std::size_t cols, bool gzipped);
void write_idx_labels(const std::string& path, const std::vector<std::uint8_t>& labels,
                      bool gzipped);
void write_cifar100_bin(const std::string& path, const std::vector<std::uint8_t>& pixels,
                        const std::vector<std::uint8_t>& fine_labels);

void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes,
                      bool gzipped);

// Writes the full fixture set used by the harness defaults into `dir`.
void write_synth_datasets(const std::string& dir);

}  // namespace ayla
