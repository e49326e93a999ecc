#include "tubal/app/manifest.hpp"

#include "tubal/errors.hpp"
#include "tubal/parallel.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace tubal::app {

namespace {

bool is_image_file(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp" || ext == ".pgm" || ext == ".ppm" ||
           ext == ".tif" || ext == ".tiff";
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Plain Fisher-Yates so the permutation does not depend on the standard library.
template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

void validate(const DatasetManifest& m) {
    std::map<Label, Index> train;
    for (const ManifestEntry& e : m.entries) {
        train[e.label] += e.split == Split::kTrain ? 1 : 0;
    }
    for (const auto& [label, count] : train) {
        if (count == 0) throw FormatError("manifest: label '" + label + "' has no training image");
    }
}

}  // namespace

DatasetManifest scan_image_dir(const std::filesystem::path& root, Index test_per_label, ImageSize size,
                               Index channels, std::uint64_t seed) {
    if (!std::filesystem::is_directory(root)) throw IoError(root.string() + ": not a directory");
    if (test_per_label < 0) throw InvalidArgument("test count must be nonnegative");
    DatasetManifest m{root, {}, size, channels, seed};

    std::vector<std::filesystem::path> dirs;
    for (const auto& d : std::filesystem::directory_iterator(root)) {
        if (d.is_directory()) dirs.push_back(d.path());
    }
    std::sort(dirs.begin(), dirs.end());
    for (const auto& dir : dirs) {
        const Label label = dir.filename().string();
        std::vector<std::filesystem::path> files;
        for (const auto& f : std::filesystem::directory_iterator(dir)) {
            if (f.is_regular_file() && is_image_file(f.path())) files.push_back(f.path());
        }
        if (files.empty()) continue;
        std::sort(files.begin(), files.end());
        if (static_cast<Index>(files.size()) <= test_per_label) {
            throw FormatError(dir.string() + ": label '" + label + "' has " + std::to_string(files.size()) +
                              " images, need more than the test count " + std::to_string(test_per_label));
        }
        std::mt19937_64 rng(seed ^ fnv1a(label));
        shuffle(files, rng);
        for (std::size_t i = 0; i < files.size(); ++i) {
            const Split split = static_cast<Index>(i) < test_per_label ? Split::kTest : Split::kTrain;
            m.entries.push_back({std::filesystem::relative(files[i], root), label, split});
        }
    }
    if (m.entries.empty()) throw FormatError(root.string() + ": no images found in label sub-directories");
    return m;
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& m) {
    std::ofstream out(path);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out << "# size " << m.image_size.rows << 'x' << m.image_size.cols << '\n';
    out << "# channels " << m.channels << '\n';
    out << "# seed " << m.split_seed << '\n';
    out << "# resize bilinear\n";
    // Entries are rewritten relative to the manifest's own directory, which is
    // what read_manifest resolves against.
    const std::filesystem::path base = std::filesystem::absolute(path).parent_path();
    for (const ManifestEntry& e : m.entries) {
        const std::filesystem::path full = std::filesystem::absolute(e.path.is_absolute() ? e.path : m.root / e.path);
        out << std::filesystem::relative(full, base).generic_string() << '\t' << e.label << '\t' << (e.split == Split::kTrain ? "train" : "test")
            << '\n';
    }
    if (!out) throw IoError(path.string() + ": write failed");
}

DatasetManifest read_manifest(const std::filesystem::path& path, ImageSize size, Index channels) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string() + ": cannot open");
    DatasetManifest m{path.parent_path(), {}, size, channels, 0};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream h(line.substr(1));
            std::string key, value;
            h >> key >> value;
            if (key == "size") m.image_size = parse_size(value);
            if (key == "channels") m.channels = std::stol(value);
            if (key == "seed") m.split_seed = std::stoull(value);
            continue;
        }
        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": expected path<TAB>label<TAB>split");
        }
        const std::string split = line.substr(t2 + 1);
        if (split != "train" && split != "test") {
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": split must be train or test");
        }
        m.entries.push_back({line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1),
                             split == "train" ? Split::kTrain : Split::kTest});
    }
    if (m.image_size.rows < 1 || m.image_size.cols < 1) throw FormatError(path.string() + ": no image size");
    validate(m);
    return m;
}

LabeledImages load_image_dir(const DatasetManifest& m) {
    validate(m);
    std::vector<Tensor3> decoded(m.entries.size(), Tensor3(1, 1, 1));
    parallel_for(m.entries.size(), [&](std::size_t i) {
        const std::filesystem::path& p = m.entries[i].path;
        decoded[i] = load_image(p.is_absolute() ? p : m.root / p, m.channels, m.image_size);
    });
    LabeledImages out;
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        const ManifestEntry& e = m.entries[i];
        if (e.split == Split::kTrain) {
            out.train.push_back(std::move(decoded[i]));
            out.train_labels.push_back(e.label);
        } else {
            out.test.push_back(std::move(decoded[i]));
            out.test_labels.push_back(e.label);
        }
    }
    return out;
}

}  // namespace tubal::app
