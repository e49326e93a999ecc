#include "tubal/app/commands.hpp"
#include "tubal/app/idx.hpp"
#include "tubal/app/image_io.hpp"
#include "tubal/app/manifest.hpp"
#include "tubal/app/model_file.hpp"
#include "tubal/errors.hpp"
#include "tubal/synthetic.hpp"

#include <gtest/gtest.h>
#include <opencv2/imgcodecs.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace tubal;
using namespace tubal::app;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("tubal_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

// Big-endian IDX writer kept apart from the library one.
void put_be32(std::ofstream& out, std::uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
                                static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

void write_raw_idx(const fs::path& images, const fs::path& labels, std::uint32_t count, std::uint32_t rows,
                   std::uint32_t cols, const std::vector<unsigned char>& pixels, const std::vector<unsigned char>& digits,
                   std::uint32_t image_magic = 0x803) {
    std::ofstream im(images, std::ios::binary);
    put_be32(im, image_magic);
    put_be32(im, count);
    put_be32(im, rows);
    put_be32(im, cols);
    im.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    std::ofstream lb(labels, std::ios::binary);
    put_be32(lb, 0x801);
    put_be32(lb, static_cast<std::uint32_t>(digits.size()));
    lb.write(reinterpret_cast<const char*>(digits.data()), static_cast<std::streamsize>(digits.size()));
}

// Image directory with `per_label` noisy copies of a distinct pattern per label.
void write_image_dir(const fs::path& root, int labels, int per_label, int rows, int cols, bool color,
                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> noise(-12, 12);
    for (int l = 0; l < labels; ++l) {
        const fs::path dir = root / ("person" + std::to_string(l));
        fs::create_directories(dir);
        for (int i = 0; i < per_label; ++i) {
            cv::Mat img(rows, cols, color ? CV_8UC3 : CV_8UC1);
            for (int r = 0; r < rows; ++r) {
                for (int c = 0; c < cols; ++c) {
                    const int base = ((r * (l + 1) + c * (l + 2)) * 37) % 200 + 20;
                    if (color) {
                        img.at<cv::Vec3b>(r, c) = cv::Vec3b(static_cast<unsigned char>(base + noise(rng)),
                                                            static_cast<unsigned char>(255 - base + noise(rng)),
                                                            static_cast<unsigned char>((base * 3) % 200 + 20));
                    } else {
                        img.at<unsigned char>(r, c) = static_cast<unsigned char>(base + noise(rng));
                    }
                }
            }
            cv::imwrite((dir / ("img" + std::to_string(i) + ".png")).string(), img);
        }
    }
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(TUBALPCA_EXE) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

// ---------------------------------------------------------------------------
// IDX

TEST(Idx, ReadsIndependentlyWrittenFiles) {
    TempDir tmp;
    std::vector<unsigned char> pixels(3 * 2 * 4);
    for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = static_cast<unsigned char>(i * 10);
    write_raw_idx(tmp / "img", tmp / "lab", 3, 2, 4, pixels, {7, 0, 9});
    const IdxDataset d = load_idx(tmp / "img", tmp / "lab");
    ASSERT_EQ(d.count(), 3);
    EXPECT_EQ(d.rows, 2);
    EXPECT_EQ(d.cols, 4);
    EXPECT_EQ(d.labels, (std::vector<Label>{"7", "0", "9"}));
    // Image 1, row 1, col 2: byte 8 + 1 * 4 + 2 = 14.
    EXPECT_DOUBLE_EQ(d.image(1)(1, 2, 0), 140.0 / 255.0);
    EXPECT_DOUBLE_EQ(d.images(2 * 2 + 1, 1), 140.0 / 255.0);
}

TEST(Idx, LibraryWriterRoundTrips) {
    TempDir tmp;
    std::vector<std::uint8_t> pixels = {0, 255, 128, 1, 2, 3};
    write_idx_images(tmp / "i", pixels, 1, 2, 3);
    write_idx_labels(tmp / "l", {4});
    const IdxDataset d = load_idx(tmp / "i", tmp / "l");
    EXPECT_DOUBLE_EQ(d.image(0)(0, 1, 0), 1.0);
    EXPECT_DOUBLE_EQ(d.image(0)(1, 2, 0), 3.0 / 255.0);
    EXPECT_THROW(write_idx_images(tmp / "x", pixels, 2, 2, 3), InvalidArgument);
}

TEST(Idx, RejectsBadMagicTruncationAndMismatch) {
    TempDir tmp;
    std::vector<unsigned char> pixels(2 * 3 * 3, 5);
    write_raw_idx(tmp / "img", tmp / "lab", 2, 3, 3, pixels, {1, 2}, 0x801);
    try {
        load_idx(tmp / "img", tmp / "lab");
        FAIL() << "expected FormatError";
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("0x00000803"), std::string::npos) << e.what();
    }
    write_raw_idx(tmp / "img", tmp / "lab", 3, 3, 3, pixels, {1, 2, 3});
    EXPECT_THROW(load_idx(tmp / "img", tmp / "lab"), FormatError);
    write_raw_idx(tmp / "img", tmp / "lab", 2, 3, 3, pixels, {1, 2, 3});
    EXPECT_THROW(load_idx(tmp / "img", tmp / "lab"), FormatError);
    EXPECT_THROW(load_idx(tmp / "none", tmp / "lab"), IoError);
}

// ---------------------------------------------------------------------------
// Images and manifests

TEST(ImageIo, ParseSize) {
    const ImageSize s = parse_size("112x92");
    EXPECT_EQ(s.rows, 112);
    EXPECT_EQ(s.cols, 92);
    EXPECT_THROW(parse_size("112"), InvalidArgument);
    EXPECT_THROW(parse_size("0x4"), InvalidArgument);
}

TEST(ImageIo, LoadsRgbSlicesAndResizes) {
    TempDir tmp;
    cv::Mat img(4, 6, CV_8UC3, cv::Scalar(10, 20, 30));  // B, G, R
    cv::imwrite((tmp / "a.png").string(), img);
    const Tensor3 t = load_image(tmp / "a.png", 3);
    ASSERT_EQ(t.n1(), 4);
    ASSERT_EQ(t.n2(), 6);
    ASSERT_EQ(t.n3(), 3);
    EXPECT_DOUBLE_EQ(t(2, 3, 0), 30.0 / 255.0);
    EXPECT_DOUBLE_EQ(t(2, 3, 2), 10.0 / 255.0);
    const Tensor3 small = load_image(tmp / "a.png", 1, ImageSize{2, 3});
    EXPECT_EQ(small.n1(), 2);
    EXPECT_EQ(small.n3(), 1);
    EXPECT_THROW(load_image(tmp / "missing.png", 3), IoError);
    std::ofstream(tmp / "junk.png") << "not an image";
    EXPECT_THROW(load_image(tmp / "junk.png", 3), FormatError);
}

TEST(ImageIo, SaveClampsAndRoundTrips) {
    TempDir tmp;
    Tensor3 t(2, 2, 1);
    t(0, 0, 0) = -1.0;
    t(1, 1, 0) = 2.0;
    t(0, 1, 0) = 100.0 / 255.0;
    save_image(tmp / "o.png", t);
    const Tensor3 back = load_image(tmp / "o.png", 1);
    EXPECT_DOUBLE_EQ(back(0, 0, 0), 0.0);
    EXPECT_DOUBLE_EQ(back(1, 1, 0), 1.0);
    EXPECT_DOUBLE_EQ(back(0, 1, 0), 100.0 / 255.0);
}

TEST(Manifest, SplitIsDeterministicAndSized) {
    TempDir tmp;
    write_image_dir(tmp / "faces", 3, 15, 8, 6, true, 1);
    const DatasetManifest a = scan_image_dir(tmp / "faces", 5, {8, 6}, 3, 42);
    const DatasetManifest b = scan_image_dir(tmp / "faces", 5, {8, 6}, 3, 42);
    const DatasetManifest c = scan_image_dir(tmp / "faces", 5, {8, 6}, 3, 43);
    ASSERT_EQ(a.entries.size(), 45u);
    int tests = 0;
    bool differs = false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        EXPECT_EQ(a.entries[i].path, b.entries[i].path);
        EXPECT_EQ(a.entries[i].split, b.entries[i].split);
        tests += a.entries[i].split == Split::kTest;
        differs = differs || a.entries[i].path != c.entries[i].path || a.entries[i].split != c.entries[i].split;
    }
    EXPECT_EQ(tests, 15);
    EXPECT_TRUE(differs);
    const LabeledImages data = load_image_dir(a);
    EXPECT_EQ(data.train.size(), 30u);
    EXPECT_EQ(data.test.size(), 15u);
    EXPECT_EQ(data.train.front().n3(), 3);
    EXPECT_THROW(scan_image_dir(tmp / "faces", 15, {8, 6}, 3, 1), FormatError);
}

TEST(Manifest, WriteReadRoundTripAndGrayscale) {
    TempDir tmp;
    write_image_dir(tmp / "faces", 2, 4, 6, 6, false, 2);
    const DatasetManifest m = scan_image_dir(tmp / "faces", 1, {6, 6}, 1, 7);
    write_manifest(tmp / "split.tsv", m);
    const DatasetManifest r = read_manifest(tmp / "split.tsv", {}, 3);
    EXPECT_EQ(r.channels, 1);
    EXPECT_EQ(r.image_size.rows, 6);
    EXPECT_EQ(r.split_seed, 7u);
    ASSERT_EQ(r.entries.size(), m.entries.size());
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        EXPECT_EQ(fs::weakly_canonical(r.root / r.entries[i].path), fs::weakly_canonical(m.root / m.entries[i].path));
        EXPECT_EQ(r.entries[i].label, m.entries[i].label);
        EXPECT_EQ(r.entries[i].split, m.entries[i].split);
    }
    const LabeledImages data = load_image_dir(r);
    EXPECT_EQ(data.train.size(), 6u);
    EXPECT_EQ(data.train.front().n3(), 1);
    std::ofstream(tmp / "bad.tsv") << "# size 6x6\nonly_one_field\n";
    EXPECT_THROW(read_manifest(tmp / "bad.tsv", {}, 1), FormatError);
}

// ---------------------------------------------------------------------------
// Model files

TEST(ModelFile, RoundTripIsBitExact) {
    const LabeledImages data = synthetic_classes(3, 4, 2, 5, 4, 3, 2.0, 5);
    for (TransformKind kind : {TransformKind::kCosine, TransformKind::kOrthonormalDct}) {
        TtpcaOptions o;
        o.gk.transform = kind;
        const TtpcaModel model = build_ttpca_model(build_training_tensor(data.train), data.train_labels, 3, 6, o);
        const std::vector<std::uint8_t> bytes = serialize_model(model, false);
        const StoredModel back = deserialize_model(bytes);
        EXPECT_FALSE(back.unit_pixels);
        EXPECT_EQ(back.model.mean(), model.mean());
        EXPECT_EQ(back.model.projector(), model.projector());
        EXPECT_EQ(back.model.projected_train(), model.projected_train());
        EXPECT_EQ(back.model.labels(), model.labels());
        EXPECT_EQ(back.model.k(), model.k());
        EXPECT_EQ(back.model.transform(), kind);
        EXPECT_EQ(back.model.method(), ProjectionMethod::kTtpca);
        for (const Tensor3& q : data.test) {
            const Match a = classify_ttpca(model, q);
            const Match b = classify_ttpca(back.model, q);
            EXPECT_EQ(a.index, b.index);
            EXPECT_EQ(a.distance, b.distance);
        }
        EXPECT_EQ(serialize_model(back.model, false), bytes);
    }
}

TEST(ModelFile, DetectsCorruptionAndTruncation) {
    TempDir tmp;
    const LabeledImages data = synthetic_classes(2, 3, 0, 4, 4, 2, 2.0, 6);
    const TtpcaModel model = build_csvd_model(build_training_tensor(data.train), data.train_labels, 2);
    save_model(model, tmp / "m.ttpca");
    const StoredModel loaded = load_model(tmp / "m.ttpca");
    EXPECT_EQ(loaded.model.method(), ProjectionMethod::kCsvd);
    const std::vector<std::uint8_t> bytes = serialize_model(model);
    for (std::size_t at : {std::size_t{8}, std::size_t{40}, bytes.size() / 2, bytes.size() - 6}) {
        std::vector<std::uint8_t> bad = bytes;
        bad[at] ^= 0x10;
        EXPECT_THROW(deserialize_model(bad), IntegrityError) << "byte " << at;
    }
    for (std::size_t keep : {bytes.size() - 1, bytes.size() - 9, std::size_t{20}}) {
        EXPECT_THROW(deserialize_model(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + keep)),
                     IntegrityError)
            << "kept " << keep;
    }
    std::vector<std::uint8_t> foreign = bytes;
    foreign[0] = 'X';
    EXPECT_THROW(deserialize_model(foreign), FormatError);
    EXPECT_THROW(load_model(tmp / "nope"), IoError);
}

// ---------------------------------------------------------------------------
// Commands

TEST(Commands, CompressErrorFallsWithRank) {
    TempDir tmp;
    cv::Mat img(16, 12, CV_8UC3);
    cv::randu(img, 0, 255);
    cv::imwrite((tmp / "in.png").string(), img);
    double previous = 2.0;
    for (Index r : {1, 3, 6, 12}) {
        CompressOptions o;
        o.input = (tmp / "in.png").string();
        o.output = (tmp / "out.png").string();
        o.rank = r;
        o.out_csv = (tmp / "sv.csv").string();
        std::ostringstream out;
        ASSERT_EQ(cmd_compress(o, out), kExitOk);
        double rel = 0.0;
        std::string word;
        Index rank = 0;
        std::istringstream(out.str()) >> word >> rank >> word >> rel;
        EXPECT_LT(rel, previous);
        previous = rel;
    }
    EXPECT_LT(previous, 1e-12);
    EXPECT_TRUE(fs::exists(tmp / "out.png"));
    // CSV rows come in index order with nonincreasing tube norms.
    std::istringstream csv(slurp(tmp / "sv.csv"));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "index,tube_norm,slice0,slice1,slice2");
    int index = 0;
    double last = std::numeric_limits<double>::infinity();
    while (std::getline(csv, line)) {
        std::istringstream row(line);
        std::string a, b;
        std::getline(row, a, ',');
        std::getline(row, b, ',');
        EXPECT_EQ(std::stoi(a), ++index);
        EXPECT_LE(std::stod(b), last * (1 + 1e-12));
        last = std::stod(b);
    }
    EXPECT_EQ(index, 12);
}

TEST(Commands, TrainEvaluateClassifyOnImageDirectory) {
    TempDir tmp;
    write_image_dir(tmp / "faces", 4, 8, 10, 8, true, 3);
    TrainOptions t;
    t.data.data = (tmp / "faces").string();
    t.data.size = "10x8";
    t.data.test_count = 2;
    t.data.manifest_out = (tmp / "split.tsv").string();
    t.rank = 6;
    t.model = (tmp / "m.ttpca").string();
    std::ostringstream out;
    ASSERT_EQ(cmd_train(t, out), kExitOk);
    ASSERT_TRUE(fs::exists(tmp / "split.tsv"));

    EvaluateOptions e;
    e.model = t.model;
    e.data.data = (tmp / "split.tsv").string();
    e.out_csv = (tmp / "rates.csv").string();
    std::ostringstream eval_out;
    ASSERT_EQ(cmd_evaluate(e, eval_out), kExitOk);
    EXPECT_NE(eval_out.str().find("r=6 rate=1 "), std::string::npos) << eval_out.str();

    const DatasetManifest m = read_manifest(tmp / "split.tsv", {}, 3);
    ClassifyOptions c;
    c.model = t.model;
    c.size = "10x8";
    c.top = 2;
    for (const ManifestEntry& entry : m.entries) {
        if (entry.split == Split::kTest) c.images.push_back((m.root / entry.path).string());
    }
    std::ostringstream cls;
    ASSERT_EQ(cmd_classify(c, cls), kExitOk);
    for (const ManifestEntry& entry : m.entries) {
        if (entry.split == Split::kTest) {
            EXPECT_NE(cls.str().find((m.root / entry.path).string() + "\t" + entry.label + "\t"), std::string::npos)
                << cls.str();
        }
    }
}

TEST(Commands, TrainOnIdxWithEachMethod) {
    TempDir tmp;
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> noise(0, 40);
    std::vector<unsigned char> pixels;
    std::vector<unsigned char> digits;
    for (int i = 0; i < 40; ++i) {
        const int d = i % 4;
        digits.push_back(static_cast<unsigned char>(d));
        for (int p = 0; p < 36; ++p) pixels.push_back(static_cast<unsigned char>((p % 4 == d ? 200 : 0) + noise(rng)));
    }
    write_raw_idx(tmp / "img", tmp / "lab", 40, 6, 6, pixels, digits);
    for (const std::string method : {"ttpca", "csvd", "eigenface"}) {
        TrainOptions t;
        t.data.idx_images = (tmp / "img").string();
        t.data.idx_labels = (tmp / "lab").string();
        t.data.idx_test_images = t.data.idx_images;
        t.data.idx_test_labels = t.data.idx_labels;
        t.method = method;
        t.rank = 4;
        t.model = (tmp / (method + ".ttpca")).string();
        std::ostringstream out;
        ASSERT_EQ(cmd_train(t, out), kExitOk) << method;
        EvaluateOptions e;
        e.model = t.model;
        e.data = t.data;
        std::ostringstream eval;
        ASSERT_EQ(cmd_evaluate(e, eval), kExitOk);
        EXPECT_NE(eval.str().find("r=4 rate=1 "), std::string::npos) << method << ": " << eval.str();
    }
}

TEST(Commands, GuardMapsErrorsToExitCodes) {
    std::ostringstream err;
    EXPECT_EQ(run_guarded([] { return kExitOk; }, err), 0);
    EXPECT_EQ(run_guarded([]() -> int { throw InvalidArgument("x"); }, err), 1);
    EXPECT_EQ(run_guarded([]() -> int { throw IntegrityError("x"); }, err), 2);
    EXPECT_EQ(run_guarded([]() -> int { throw IoError("x"); }, err), 2);
    EXPECT_EQ(run_guarded([]() -> int { throw DegenerateDataError("x"); }, err), 3);
    std::ostringstream one;
    run_guarded([]() -> int { throw FormatError("bad \"magic\""); }, one);
    EXPECT_EQ(one.str(), "error code=2 kind=format message=\"bad \\\"magic\\\"\"\n");
    EXPECT_THROW(parse_transform("fourier"), InvalidArgument);
    EXPECT_EQ(parse_transform("dct"), TransformKind::kOrthonormalDct);
}

TEST(Commands, BenchReportsBothTimings) {
    const BenchReport r = run_bench({random_tensor(300, 40, 3, 1), Tensor3(300, 1, 3)}, 5, 10, 1,
                                    TransformKind::kCosine);
    EXPECT_EQ(r.length, 300);
    EXPECT_EQ(r.count, 40);
    EXPECT_GT(r.ttpca_seconds, 0.0);
    EXPECT_GT(r.csvd_seconds, 0.0);
}

TEST(DigitSubset, TtpcaMatchesCsvdProjection) {
    const fs::path dir = fs::path(TUBAL_TEST_DATA) / "mnist";
    const IdxDataset train = load_idx(dir / "train-images-idx3-ubyte.gz", dir / "train-labels-idx1-ubyte.gz");
    const IdxDataset test = load_idx(dir / "test-images-idx3-ubyte.gz", dir / "test-labels-idx1-ubyte.gz");
    std::vector<Tensor3> images;
    for (Index i = 0; i < train.count(); ++i) images.push_back(train.image(i));
    const TrainingTensor t = build_training_tensor(images);
    const TtpcaModel ttpca = build_ttpca_model(t, train.labels, 20, 40);
    const TtpcaModel reference = build_csvd_model(t, train.labels, 20);
    int agree = 0;
    for (Index i = 0; i < test.count(); ++i) {
        agree += classify_ttpca(ttpca, test.image(i)).label == classify_ttpca(reference, test.image(i)).label;
    }
    EXPECT_GE(agree, 0.95 * static_cast<double>(test.count()));
    RecordProperty("agreement", std::to_string(agree) + "/" + std::to_string(test.count()));
}

// ---------------------------------------------------------------------------
// Executable

TEST(Cli, ExitCodes) {
    TempDir tmp;
    EXPECT_EQ(run_cli("", tmp / "log"), 1);
    EXPECT_EQ(run_cli("train --model", tmp / "log"), 1);
    EXPECT_EQ(run_cli("classify --model " + (tmp / "none").string() + " x.png", tmp / "log"), 2);
    EXPECT_NE(slurp(tmp / "log").find("error code=2 kind=io"), std::string::npos) << slurp(tmp / "log");

    write_image_dir(tmp / "faces", 2, 4, 6, 6, false, 4);
    const std::string data = "--data " + (tmp / "faces").string() + " --size 6x6 --channels 1 --test-count 1";
    EXPECT_EQ(run_cli("train " + data + " -r 5 -k 3 --model " + (tmp / "m").string(), tmp / "log"), 1);
    ASSERT_EQ(run_cli("train " + data + " -r 2 --model " + (tmp / "m").string(), tmp / "log"), 0)
        << slurp(tmp / "log");
    {
        std::fstream f(tmp / "m", std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(60);
        f.put('\x7f');
    }
    EXPECT_EQ(run_cli("evaluate --model " + (tmp / "m").string() + " " + data, tmp / "log"), 2);
    EXPECT_NE(slurp(tmp / "log").find("kind=integrity"), std::string::npos) << slurp(tmp / "log");
}

TEST(Cli, SyntheticEvaluation) {
    TempDir tmp;
    const LabeledImages data = synthetic_classes(5, 10, 4, 8, 8, 3, 3.0, 77);
    // Scale into [0, 1] pixels around mid-gray.
    for (std::size_t set = 0; set < 2; ++set) {
        const auto& images = set == 0 ? data.train : data.test;
        const auto& labels = set == 0 ? data.train_labels : data.test_labels;
        for (std::size_t i = 0; i < images.size(); ++i) {
            const fs::path dir = tmp / "faces" / labels[i];
            fs::create_directories(dir);
            Tensor3 img = images[i];
            for (double& v : img.data()) v = 0.5 + 0.04 * v;
            save_image(dir / ((set == 0 ? "a" : "b") + std::to_string(i) + ".png"), img);
        }
    }
    const std::string data_flags = "--data " + (tmp / "faces").string() + " --size 8x8 --test-count 4";
    ASSERT_EQ(run_cli("train " + data_flags + " -r 8 --model " + (tmp / "m").string(), tmp / "log"), 0)
        << slurp(tmp / "log");
    ASSERT_EQ(run_cli("evaluate --model " + (tmp / "m").string() + " " + data_flags + " --ranks 8", tmp / "log"), 0)
        << slurp(tmp / "log");
    const std::string log = slurp(tmp / "log");
    const auto at = log.find("r=8 rate=");
    ASSERT_NE(at, std::string::npos) << log;
    EXPECT_GE(std::stod(log.substr(at + 9)), 0.95) << log;
}
