#include "tubal/app/idx.hpp"

#include "tubal/errors.hpp"

#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>

namespace tubal::app {

namespace {

std::string hex32(std::uint32_t v) {
    char buf[11];
    std::snprintf(buf, sizeof buf, "0x%08X", v);
    return buf;
}

std::uint32_t read_be32(const std::vector<std::uint8_t>& bytes, std::size_t at) {
    return (std::uint32_t{bytes[at]} << 24) | (std::uint32_t{bytes[at + 1]} << 16) |
           (std::uint32_t{bytes[at + 2]} << 8) | std::uint32_t{bytes[at + 3]};
}

void put_be32(std::ofstream& out, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16), static_cast<char>(v >> 8),
                       static_cast<char>(v)};
    out.write(b, 4);
}

void check_magic(const std::vector<std::uint8_t>& bytes, std::uint32_t expected,
                 const std::filesystem::path& path) {
    if (bytes.size() < 4) throw FormatError(path.string() + ": truncated IDX header");
    const std::uint32_t magic = read_be32(bytes, 0);
    if (magic != expected) {
        throw FormatError(path.string() + ": bad IDX magic " + hex32(magic) + ", expected " + hex32(expected));
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    return out;
}

}  // namespace

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string() + ": cannot open");
    std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (raw.size() < 2 || raw[0] != 0x1f || raw[1] != 0x8b) return raw;

    std::unique_ptr<gzFile_s, int (*)(gzFile)> gz(gzopen(path.c_str(), "rb"), gzclose);
    if (!gz) throw IoError(path.string() + ": cannot open gzip stream");
    std::vector<std::uint8_t> out;
    std::uint8_t buf[1 << 16];
    for (;;) {
        const int n = gzread(gz.get(), buf, sizeof buf);
        if (n < 0) throw FormatError(path.string() + ": corrupt gzip stream");
        if (n == 0) break;
        out.insert(out.end(), buf, buf + n);
    }
    return out;
}

Tensor3 IdxDataset::image(Index i) const {
    Tensor3 out(rows, cols, 1);
    out.slice(0) = MatrixMap(const_cast<double*>(images.col(i).data()), rows, cols);
    return out;
}

IdxDataset load_idx(const std::filesystem::path& images_path, const std::filesystem::path& labels_path) {
    const std::vector<std::uint8_t> img = read_file_bytes(images_path);
    check_magic(img, kIdxImagesMagic, images_path);
    if (img.size() < 16) throw FormatError(images_path.string() + ": truncated IDX header");
    const std::uint32_t count = read_be32(img, 4);
    const std::uint32_t rows = read_be32(img, 8);
    const std::uint32_t cols = read_be32(img, 12);
    const std::size_t pixels = std::size_t{rows} * cols;
    if (img.size() < 16 + std::size_t{count} * pixels) {
        throw FormatError(images_path.string() + ": truncated, header declares " + std::to_string(count) +
                          " images of " + std::to_string(rows) + "x" + std::to_string(cols));
    }

    const std::vector<std::uint8_t> lab = read_file_bytes(labels_path);
    check_magic(lab, kIdxLabelsMagic, labels_path);
    if (lab.size() < 8) throw FormatError(labels_path.string() + ": truncated IDX header");
    const std::uint32_t label_count = read_be32(lab, 4);
    if (lab.size() < 8 + std::size_t{label_count}) throw FormatError(labels_path.string() + ": truncated");
    if (label_count != count) {
        throw FormatError("IDX count mismatch: " + std::to_string(count) + " images, " +
                          std::to_string(label_count) + " labels");
    }

    IdxDataset out;
    out.rows = rows;
    out.cols = cols;
    out.images.resize(static_cast<Index>(pixels), count);
    for (std::uint32_t n = 0; n < count; ++n) {
        const std::uint8_t* src = img.data() + 16 + std::size_t{n} * pixels;
        for (std::uint32_t r = 0; r < rows; ++r) {
            for (std::uint32_t c = 0; c < cols; ++c) {
                out.images(static_cast<Index>(std::size_t{c} * rows + r), n) = src[std::size_t{r} * cols + c] / 255.0;
            }
        }
        out.labels.push_back(std::to_string(lab[8 + n]));
    }
    return out;
}

void write_idx_images(const std::filesystem::path& path, const std::vector<std::uint8_t>& pixels,
                      std::uint32_t count, std::uint32_t rows, std::uint32_t cols) {
    if (pixels.size() != std::size_t{count} * rows * cols) {
        throw InvalidArgument("write_idx_images: pixel count does not match the header");
    }
    std::ofstream out = open_out(path);
    put_be32(out, kIdxImagesMagic);
    put_be32(out, count);
    put_be32(out, rows);
    put_be32(out, cols);
    out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    if (!out) throw IoError(path.string() + ": write failed");
}

void write_idx_labels(const std::filesystem::path& path, const std::vector<std::uint8_t>& labels) {
    std::ofstream out = open_out(path);
    put_be32(out, kIdxLabelsMagic);
    put_be32(out, static_cast<std::uint32_t>(labels.size()));
    out.write(reinterpret_cast<const char*>(labels.data()), static_cast<std::streamsize>(labels.size()));
    if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace tubal::app
