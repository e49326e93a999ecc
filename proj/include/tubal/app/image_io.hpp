#pragma once

#include "tubal/tensor3.hpp"

#include <filesystem>
#include <optional>

namespace tubal::app {

struct ImageSize {
    Index rows = 0;
    Index cols = 0;
};

/// Parses "n1xn2".
ImageSize parse_size(const std::string& text);

/// Decodes an image (PNG, JPEG, BMP, ...) into rows x cols x channels with
/// values in [0, 1]. Colour images become R, G, B frontal slices; channels = 1
/// converts to grayscale. With `size` set the image is resized bilinearly.
Tensor3 load_image(const std::filesystem::path& path, Index channels, std::optional<ImageSize> size = std::nullopt);

/// Writes a 1- or 3-slice tensor as an 8-bit image, clamping to [0, 1].
void save_image(const std::filesystem::path& path, const Tensor3& image);

}  // namespace tubal::app
