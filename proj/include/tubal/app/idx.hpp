#pragma once

#include "tubal/pca.hpp"
#include "tubal/tensor3.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace tubal::app {

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

/// Digit images as columns. Pixel (row, col) of each image sits at
/// col * rows + row, so a column equals vectorize_image of the image as a
/// rows x cols x 1 tensor. Values are bytes / 255.
struct IdxDataset {
    Matrix images;
    std::vector<Label> labels;
    Index rows = 0;
    Index cols = 0;

    Index count() const noexcept { return images.cols(); }
    /// Column i as a rows x cols x 1 tensor.
    Tensor3 image(Index i) const;
};

/// Reads an image file and a label file. Either may be gzip-compressed.
/// Throws FormatError for a bad magic, a truncated file or a count mismatch.
IdxDataset load_idx(const std::filesystem::path& images_path, const std::filesystem::path& labels_path);

/// Raw row-major bytes, count * rows * cols of them.
void write_idx_images(const std::filesystem::path& path, const std::vector<std::uint8_t>& pixels,
                      std::uint32_t count, std::uint32_t rows, std::uint32_t cols);

void write_idx_labels(const std::filesystem::path& path, const std::vector<std::uint8_t>& labels);

/// File contents, transparently gunzipped when the gzip signature is present.
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

}  // namespace tubal::app
