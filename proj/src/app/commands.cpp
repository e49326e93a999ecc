#include "tubal/app/commands.hpp"

#include "tubal/algebra.hpp"
#include "tubal/app/idx.hpp"
#include "tubal/app/image_io.hpp"
#include "tubal/app/manifest.hpp"
#include "tubal/app/model_file.hpp"
#include "tubal/errors.hpp"
#include "tubal/factorizations.hpp"
#include "tubal/synthetic.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <regex>
#include <set>

namespace tubal::app {

namespace {

namespace fs = std::filesystem;

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << std::setprecision(17);
    return out;
}

void append_idx(const std::string& images, const std::string& labels, std::vector<Tensor3>& out_images,
                std::vector<Label>& out_labels) {
    const IdxDataset d = load_idx(images, labels);
    for (Index i = 0; i < d.count(); ++i) out_images.push_back(d.image(i));
    out_labels.insert(out_labels.end(), d.labels.begin(), d.labels.end());
}

/// Square root of L when it is a perfect square.
ImageSize square_size(Index length) {
    const auto side = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(length))));
    if (side * side != length) {
        throw InvalidArgument("model length " + std::to_string(length) + " is not square; pass --size");
    }
    return {side, side};
}

Matrix stack_columns(const std::vector<Tensor3>& images) {
    Matrix out(flatten_channels(images.front()).size(), static_cast<Index>(images.size()));
    for (std::size_t i = 0; i < images.size(); ++i) {
        const Tensor3 col = flatten_channels(images[i]);
        if (col.size() != out.rows()) throw DimensionError("training images differ in size");
        out.col(static_cast<Index>(i)) = col.slice(0).col(0);
    }
    return out;
}

/// Image or column in the layout the model expects.
Tensor3 model_input(const TtpcaModel& model, const Tensor3& image) {
    return model.method() == ProjectionMethod::kEigenface ? flatten_channels(image) : image;
}

std::vector<Index> default_sweep(Index r) {
    std::set<Index> ranks;
    for (Index v : {1, 5, 10, 20, 40}) {
        if (v <= r) ranks.insert(v);
    }
    for (Index v = 80; v <= r; v *= 2) ranks.insert(v);
    ranks.insert(r);
    return {ranks.begin(), ranks.end()};
}

void write_singular_csv(const std::string& path, const CsvdFactors& f) {
    std::ofstream csv = open_csv(path);
    const Matrix sv = f.transformed_singular_values();
    csv << "index,tube_norm";
    for (Index k = 0; k < sv.cols(); ++k) csv << ",slice" << k;
    csv << '\n';
    for (Index i = 0; i < f.rank_bound(); ++i) {
        csv << i + 1 << ',' << f.singular_tube(i).norm();
        for (Index k = 0; k < sv.cols(); ++k) csv << ',' << sv(i, k);
        csv << '\n';
    }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

TransformKind parse_transform(const std::string& name) {
    if (name == "cosine") return TransformKind::kCosine;
    if (name == "dct") return TransformKind::kOrthonormalDct;
    throw InvalidArgument("unknown transform '" + name + "' (expected cosine or dct)");
}

EigenfaceMethod parse_eigen_solver(const std::string& name) {
    if (name == "golub_kahan") return EigenfaceMethod::kGolubKahan;
    if (name == "covariance") return EigenfaceMethod::kCovariance;
    if (name == "full_svd") return EigenfaceMethod::kFullSvd;
    throw InvalidArgument("unknown eigen solver '" + name + "' (expected golub_kahan, covariance or full_svd)");
}

LabeledImages load_dataset(const DataOptions& o) {
    LabeledImages out;
    if (!o.idx_images.empty() || !o.idx_test_images.empty()) {
        if (!o.idx_images.empty()) append_idx(o.idx_images, o.idx_labels, out.train, out.train_labels);
        if (!o.idx_test_images.empty()) append_idx(o.idx_test_images, o.idx_test_labels, out.test, out.test_labels);
        return out;
    }
    if (o.data.empty()) throw InvalidArgument("no data given (use --data or --idx-images)");
    const std::optional<ImageSize> size = o.size.empty() ? std::nullopt : std::optional(parse_size(o.size));
    DatasetManifest manifest;
    if (fs::is_directory(o.data)) {
        if (!size) throw InvalidArgument("--size is required for an image directory");
        manifest = scan_image_dir(o.data, o.test_count, *size, o.channels, o.seed);
    } else {
        manifest = read_manifest(o.data, size.value_or(ImageSize{}), o.channels);
    }
    if (!o.manifest_out.empty()) write_manifest(o.manifest_out, manifest);
    return load_image_dir(manifest);
}

BenchReport run_bench(const TrainingTensor& training, Index r, Index k, std::uint64_t seed, TransformKind kind) {
    std::vector<Label> labels(static_cast<std::size_t>(training.data.n2()));
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = std::to_string(i);
    BenchReport report{training.data.n1(), training.data.n2(), training.data.n3(), r, k, 0.0, 0.0};

    TtpcaOptions options;
    options.gk.seed = seed;
    options.gk.transform = kind;
    auto start = std::chrono::steady_clock::now();
    const TtpcaModel fast = build_ttpca_model(training, labels, r, k, options);
    report.ttpca_seconds = seconds_since(start);

    start = std::chrono::steady_clock::now();
    const TtpcaModel full = build_csvd_model(training, labels, r, kind);
    report.csvd_seconds = seconds_since(start);
    return report;
}

int cmd_train(const TrainOptions& o, std::ostream& out) {
    if (o.model.empty()) throw InvalidArgument("--model is required");
    const LabeledImages data = load_dataset(o.data);
    if (data.train.empty()) throw FormatError("no training images");
    const TransformKind kind = parse_transform(o.transform);

    std::optional<TtpcaModel> model;
    if (o.method == "eigenface") {
        EigenfaceOptions eo;
        eo.method = parse_eigen_solver(o.eigen_solver);
        eo.seed = o.data.seed;
        eo.gk_steps = o.steps;
        model = to_ttpca_model(build_eigenface_model(stack_columns(data.train), data.train_labels, o.rank, eo));
    } else {
        const TrainingTensor training = build_training_tensor(data.train);
        if (o.method == "ttpca") {
            const Index cap = std::min(training.data.n1(), training.data.n2());
            TtpcaOptions to;
            to.gk.seed = o.data.seed;
            to.gk.transform = kind;
            const Index k = o.steps.value_or(std::min(2 * o.rank, cap));
            model = build_ttpca_model(training, data.train_labels, o.rank, k, to);
        } else if (o.method == "csvd") {
            model = build_csvd_model(training, data.train_labels, o.rank, kind);
        } else {
            throw InvalidArgument("unknown method '" + o.method + "' (expected ttpca, csvd or eigenface)");
        }
    }
    save_model(*model, o.model);
    out << "model " << o.model << " method=" << o.method << " L=" << model->length() << " N=" << model->train_count()
        << " n3=" << model->n3() << " r=" << model->r() << " k=" << model->k() << '\n';
    return kExitOk;
}

int cmd_classify(const ClassifyOptions& o, std::ostream& out) {
    if (o.images.empty()) throw InvalidArgument("no image to classify");
    const StoredModel stored = load_model(o.model);
    const TtpcaModel& model = stored.model;
    const bool eigen = model.method() == ProjectionMethod::kEigenface;
    const Index channels = o.channels.value_or(eigen ? 1 : model.n3());
    const Index plane = eigen ? model.length() / channels : model.length();
    const ImageSize size = o.size.empty() ? square_size(plane) : parse_size(o.size);
    out << std::setprecision(10);
    for (const std::string& path : o.images) {
        Tensor3 image = load_image(path, channels, size);
        if (!stored.unit_pixels) image *= 255.0;
        const std::vector<Match> matches = model.nearest(model_input(model, image), std::max<Index>(o.top, 1));
        out << path << '\t' << matches.front().label << '\t' << matches.front().distance << '\n';
        for (std::size_t i = 1; i < matches.size(); ++i) {
            out << "  " << i + 1 << '\t' << matches[i].label << '\t' << matches[i].index << '\t'
                << matches[i].distance << '\n';
        }
    }
    return kExitOk;
}

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out) {
    const StoredModel stored = load_model(o.model);
    const LabeledImages data = load_dataset(o.data);
    std::vector<Tensor3> probes;
    for (const Tensor3& img : data.test) {
        probes.push_back(model_input(stored.model, stored.unit_pixels ? img : 255.0 * img));
    }
    const std::vector<Index> ranks = o.ranks.empty() ? default_sweep(stored.model.r()) : o.ranks;
    std::optional<std::ofstream> csv;
    if (!o.out_csv.empty()) {
        csv = open_csv(o.out_csv);
        *csv << "r,rate,correct,total\n";
    }
    out << std::setprecision(6);
    for (const Index r : ranks) {
        const TtpcaModel m = r == stored.model.r() ? stored.model : stored.model.truncated(r);
        const RecognitionReport rep = evaluate(m, probes, data.test_labels);
        out << "r=" << r << " rate=" << rep.rate << " (" << rep.correct << '/' << rep.total << ")\n";
        if (csv) *csv << r << ',' << rep.rate << ',' << rep.correct << ',' << rep.total << '\n';
    }
    return kExitOk;
}

int cmd_compress(const CompressOptions& o, std::ostream& out) {
    const Tensor3 image = load_image(o.input, o.channels);
    const TransformKind kind = parse_transform(o.transform);
    const TruncatedCsvd t = truncated_csvd(image, o.rank, kind);
    if (!o.output.empty()) save_image(o.output, t.approximation);
    if (!o.out_csv.empty()) write_singular_csv(o.out_csv, csvd_economy(image, kind));
    const double norm = fro_norm(image);
    const double rel = norm > 0.0 ? fro_norm(image - t.approximation) / norm : 0.0;
    out << std::setprecision(10) << "rank " << o.rank << " relative_error " << rel << '\n';
    return kExitOk;
}

int cmd_svd(const SvdOptions& o, std::ostream& out) {
    const Tensor3 image = load_image(o.input, o.channels);
    const TransformKind kind = parse_transform(o.transform);
    const CsvdFactors f = csvd_economy(image, kind);
    out << "size " << image.n1() << 'x' << image.n2() << 'x' << image.n3() << '\n';
    out << "tubal_rank " << tubal_rank(image, kDefaultRankTolerance, kind) << '\n';
    out << "multi_rank";
    for (const Index r : multi_rank(image, kDefaultRankTolerance, kind)) out << ' ' << r;
    out << '\n' << std::setprecision(10);
    for (Index i = 0; i < std::min<Index>(f.rank_bound(), 10); ++i) {
        out << "sigma" << i + 1 << ' ' << f.singular_tube(i).norm() << '\n';
    }
    if (!o.out_csv.empty()) write_singular_csv(o.out_csv, f);
    return kExitOk;
}

int cmd_bench(const BenchOptions& o, std::ostream& out) {
    const TransformKind kind = parse_transform(o.transform);
    const bool from_data = !o.data.data.empty() || !o.data.idx_images.empty();
    TrainingTensor training{Tensor3(1, 1, 1), Tensor3(1, 1, 1)};
    if (from_data) {
        training = build_training_tensor(load_dataset(o.data).train);
    } else {
        static const std::regex pattern(R"((\d+)x(\d+)x(\d+))");
        std::smatch m;
        if (!std::regex_match(o.synthetic, m, pattern)) {
            throw InvalidArgument("--synthetic must look like LxNxn3, got '" + o.synthetic + "'");
        }
        training.data = random_tensor(std::stol(m[1]), std::stol(m[2]), std::stol(m[3]), o.seed);
        training.mean = Tensor3(training.data.n1(), 1, training.data.n3());
    }
    const BenchReport rep = run_bench(training, o.rank, o.steps, o.seed, kind);
    out << std::setprecision(6) << "L=" << rep.length << " N=" << rep.count << " n3=" << rep.n3 << " r=" << rep.r
        << " k=" << rep.k << '\n'
        << "ttpca_seconds " << rep.ttpca_seconds << '\n'
        << "csvd_seconds " << rep.csvd_seconds << '\n'
        << "speedup " << rep.speedup() << '\n';
    if (!o.out_csv.empty()) {
        std::ofstream csv = open_csv(o.out_csv);
        csv << "L,N,n3,r,k,ttpca_seconds,csvd_seconds,speedup\n"
            << rep.length << ',' << rep.count << ',' << rep.n3 << ',' << rep.r << ',' << rep.k << ','
            << rep.ttpca_seconds << ',' << rep.csvd_seconds << ',' << rep.speedup() << '\n';
    }
    return kExitOk;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
    auto report = [&](int code, const char* kind, const std::string& message) {
        std::string quoted;
        for (const char c : message) {
            if (c == '"' || c == '\\') quoted += '\\';
            quoted += c == '\n' ? ' ' : c;
        }
        err << "error code=" << code << " kind=" << kind << " message=\"" << quoted << "\"\n";
        return code;
    };
    try {
        return body();
    } catch (const InvalidArgument& e) {
        return report(kExitUsage, "usage", e.what());
    } catch (const IntegrityError& e) {
        return report(kExitData, "integrity", e.what());
    } catch (const FormatError& e) {
        return report(kExitData, "format", e.what());
    } catch (const IoError& e) {
        return report(kExitData, "io", e.what());
    } catch (const DimensionError& e) {
        return report(kExitData, "dimension", e.what());
    } catch (const InvalidInput& e) {
        return report(kExitData, "input", e.what());
    } catch (const DegenerateDataError& e) {
        return report(kExitNumerical, "degenerate", e.what());
    } catch (const SingularTensorError& e) {
        return report(kExitNumerical, "singular", e.what());
    } catch (const std::exception& e) {
        return report(kExitNumerical, "internal", e.what());
    }
}

}  // namespace tubal::app
