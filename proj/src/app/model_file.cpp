#include "tubal/app/model_file.hpp"

#include "tubal/errors.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

namespace tubal::app {

namespace {

constexpr std::array<char, 6> kMagic = {'T', 'T', 'P', 'C', 'A', '\0'};
constexpr std::size_t kHeaderBytes = kMagic.size() + 2 + 6 * 4;

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
T to_le(T v) {
    if constexpr (std::endian::native == std::endian::big) {
        auto bytes = std::bit_cast<std::array<std::uint8_t, sizeof(T)>>(v);
        std::reverse(bytes.begin(), bytes.end());
        return std::bit_cast<T>(bytes);
    }
    return v;
}

class Writer {
public:
    template <class T>
    void put(T v) {
        const T le = to_le(v);
        const auto* p = reinterpret_cast<const std::uint8_t*>(&le);
        bytes_.insert(bytes_.end(), p, p + sizeof(T));
    }
    void put_tensor(const Tensor3& t) {
        for (const double x : t.data()) put(x);
    }
    void put_raw(const void* data, std::size_t n) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        bytes_.insert(bytes_.end(), p, p + n);
    }
    std::vector<std::uint8_t>& bytes() { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
};

class Reader {
public:
    Reader(const std::vector<std::uint8_t>& bytes, std::size_t end) : bytes_(bytes), end_(end) {}

    template <class T>
    T get() {
        need(sizeof(T));
        T v;
        std::memcpy(&v, bytes_.data() + at_, sizeof(T));
        at_ += sizeof(T);
        return to_le(v);
    }
    Tensor3 get_tensor(Index n1, Index n2, Index n3) {
        need(static_cast<std::size_t>(n1 * n2 * n3) * sizeof(double));
        std::vector<double> data(static_cast<std::size_t>(n1 * n2 * n3));
        for (double& x : data) x = get<double>();
        return {n1, n2, n3, std::move(data)};
    }
    std::string get_string(std::size_t n) {
        need(n);
        std::string s(reinterpret_cast<const char*>(bytes_.data() + at_), n);
        at_ += n;
        return s;
    }
    std::size_t position() const noexcept { return at_; }
    void skip(std::size_t n) {
        need(n);
        at_ += n;
    }

private:
    void need(std::size_t n) const {
        if (n > end_ - at_) throw FormatError("model file: payload shorter than its header declares");
    }
    const std::vector<std::uint8_t>& bytes_;
    std::size_t end_;
    std::size_t at_ = 0;
};

std::uint32_t crc_of(const std::uint8_t* data, std::size_t n) {
    uLong crc = crc32(0L, Z_NULL, 0);
    while (n > 0) {
        const auto chunk = static_cast<uInt>(std::min<std::size_t>(n, std::numeric_limits<uInt>::max()));
        crc = crc32(crc, data, chunk);
        data += chunk;
        n -= chunk;
    }
    return static_cast<std::uint32_t>(crc);
}

std::uint32_t checked_u32(Index v, const char* what) {
    if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) {
        throw InvalidArgument(std::string("model file: ") + what + " does not fit in 32 bits");
    }
    return static_cast<std::uint32_t>(v);
}

}  // namespace

std::vector<std::uint8_t> serialize_model(const TtpcaModel& model, bool unit_pixels) {
    Writer w;
    w.put_raw(kMagic.data(), kMagic.size());
    w.put(kModelFormatVersion);
    w.put(checked_u32(model.length(), "L"));
    w.put(checked_u32(model.r(), "r"));
    w.put(checked_u32(model.train_count(), "N"));
    w.put(checked_u32(model.n3(), "n3"));
    w.put(checked_u32(model.k(), "k"));
    const std::uint32_t flags = static_cast<std::uint32_t>(model.transform()) |
                                (unit_pixels ? 2U : 0U) | (static_cast<std::uint32_t>(model.method()) << 2);
    w.put(flags);
    w.put_tensor(model.mean());
    w.put_tensor(model.projector());
    w.put_tensor(model.projected_train());
    for (const Label& label : model.labels()) {
        w.put(checked_u32(static_cast<Index>(label.size()), "label length"));
        w.put_raw(label.data(), label.size());
    }
    const std::uint32_t crc = crc_of(w.bytes().data(), w.bytes().size());
    w.put(crc);
    return std::move(w.bytes());
}

StoredModel deserialize_model(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < kMagic.size() || std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
        throw FormatError("model file: missing TTPCA magic");
    }
    if (bytes.size() < kHeaderBytes + 4) throw IntegrityError("model file: truncated (CRC check failed)");
    const std::size_t body = bytes.size() - 4;
    std::uint32_t stored = 0;
    std::memcpy(&stored, bytes.data() + body, 4);
    stored = to_le(stored);
    const std::uint32_t actual = crc_of(bytes.data(), body);
    if (stored != actual) {
        throw IntegrityError("model file: CRC mismatch (stored " + std::to_string(stored) + ", computed " +
                             std::to_string(actual) + "); file is corrupt or truncated");
    }

    Reader r(bytes, body);
    r.skip(kMagic.size());
    const auto version = r.get<std::uint16_t>();
    if (version != kModelFormatVersion) {
        throw IntegrityError("model file: format version " + std::to_string(version) + " is not supported (expected " +
                             std::to_string(kModelFormatVersion) + ")");
    }
    const Index length = r.get<std::uint32_t>();
    const Index rank = r.get<std::uint32_t>();
    const Index count = r.get<std::uint32_t>();
    const Index n3 = r.get<std::uint32_t>();
    const Index k = r.get<std::uint32_t>();
    const auto flags = r.get<std::uint32_t>();
    if (length == 0 || rank == 0 || count == 0 || n3 == 0) throw FormatError("model file: zero dimension in header");
    if ((flags >> 4) != 0 || ((flags >> 2) & 3U) > 2) throw FormatError("model file: unknown flag bits");

    Tensor3 mean = r.get_tensor(length, 1, n3);
    Tensor3 projector = r.get_tensor(length, rank, n3);
    Tensor3 projected = r.get_tensor(rank, count, n3);
    std::vector<Label> labels;
    for (Index i = 0; i < count; ++i) labels.push_back(r.get_string(r.get<std::uint32_t>()));
    if (r.position() != body) throw FormatError("model file: trailing bytes after the label table");

    return {TtpcaModel(std::move(mean), std::move(projector), std::move(projected), std::move(labels), k,
                       static_cast<TransformKind>(flags & 1U), static_cast<ProjectionMethod>((flags >> 2) & 3U)),
            (flags & 2U) != 0};
}

void save_model(const TtpcaModel& model, const std::filesystem::path& path, bool unit_pixels) {
    const std::vector<std::uint8_t> bytes = serialize_model(model, unit_pixels);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError(path.string() + ": write failed");
}

StoredModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string() + ": cannot open model");
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_model(bytes);
}

}  // namespace tubal::app
