#pragma once

#include "tubal/app/image_io.hpp"
#include "tubal/pca.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tubal::app {

enum class Split { kTrain, kTest };

struct ManifestEntry {
    std::filesystem::path path;
    Label label;
    Split split = Split::kTrain;
};

/// Line format: path<TAB>label<TAB>split, with '#' header lines carrying
/// size, channels, seed and the resize filter. Relative paths resolve against root.
struct DatasetManifest {
    std::filesystem::path root;
    std::vector<ManifestEntry> entries;
    ImageSize image_size;
    Index channels = 3;
    std::uint64_t split_seed = 0;
};

/// One sub-directory per label under `root`. Files in each label directory are
/// sorted by name, shuffled with a generator seeded from (seed, label), and the
/// first `test_per_label` go to the test split. Every label must keep at least
/// one training image.
DatasetManifest scan_image_dir(const std::filesystem::path& root, Index test_per_label, ImageSize size,
                               Index channels, std::uint64_t seed);

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

/// Header values override the defaults passed in.
DatasetManifest read_manifest(const std::filesystem::path& path, ImageSize size, Index channels);

/// Decodes and resizes every entry (in parallel), keeping manifest order within each split.
LabeledImages load_image_dir(const DatasetManifest& manifest);

}  // namespace tubal::app
