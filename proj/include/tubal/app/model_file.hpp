#pragma once

#include "tubal/pca.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace tubal::app {

inline constexpr std::uint16_t kModelFormatVersion = 1;

/// Layout, all little-endian:
///   "TTPCA\0", u16 version,
///   u32 L, r, N, n3, k, flags,
///   f64 mean (L x 1 x n3), projector (L x r x n3), projected training (r x N x n3), slice-major,
///   N labels as u32 byte length + UTF-8 bytes,
///   u32 CRC-32 of every preceding byte.
/// flags: bit 0 transform (0 cosine, 1 orthonormal DCT), bit 1 pixels scaled to [0, 1],
/// bits 2-3 projection method.
struct StoredModel {
    TtpcaModel model;
    bool unit_pixels = true;
};

std::vector<std::uint8_t> serialize_model(const TtpcaModel& model, bool unit_pixels = true);
StoredModel deserialize_model(const std::vector<std::uint8_t>& bytes);

void save_model(const TtpcaModel& model, const std::filesystem::path& path, bool unit_pixels = true);

/// Throws IntegrityError on CRC or version mismatch, FormatError on malformed content.
StoredModel load_model(const std::filesystem::path& path);

}  // namespace tubal::app
