#pragma once

#include "tubal/pca.hpp"
#include "tubal/transform.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tubal::app {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitNumerical = 3 };

/// Where labelled images come from: an image directory (one sub-directory per
/// label), a manifest file, or IDX digit files.
struct DataOptions {
    std::string data;
    std::string idx_images;
    std::string idx_labels;
    std::string idx_test_images;
    std::string idx_test_labels;
    std::string size;  ///< "n1xn2"; required for image directories without a manifest header
    Index channels = 3;
    Index test_count = 5;
    std::uint64_t seed = 0;
    std::string manifest_out;  ///< optional: write the split used
};

LabeledImages load_dataset(const DataOptions& options);

TransformKind parse_transform(const std::string& name);
EigenfaceMethod parse_eigen_solver(const std::string& name);

struct TrainOptions {
    DataOptions data;
    std::string method = "ttpca";  ///< ttpca | csvd | eigenface
    std::string eigen_solver = "golub_kahan";
    Index rank = 10;
    std::optional<Index> steps;  ///< defaults to min(2 r, L, N)
    std::string transform = "cosine";
    std::string model;
};

struct ClassifyOptions {
    std::string model;
    std::vector<std::string> images;
    std::string size;
    std::optional<Index> channels;
    Index top = 1;
};

struct EvaluateOptions {
    std::string model;
    DataOptions data;
    std::vector<Index> ranks;  ///< sweep; defaults to {1, 5, 10, 20, 40, ...} up to the model rank
    std::string out_csv;
};

struct CompressOptions {
    std::string input;
    std::string output;
    Index rank = 10;
    Index channels = 3;
    std::string transform = "cosine";
    std::string out_csv;
};

struct SvdOptions {
    std::string input;
    Index channels = 3;
    std::string transform = "cosine";
    std::string out_csv;
};

struct BenchOptions {
    DataOptions data;              ///< used when data or IDX paths are set
    std::string synthetic = "10000x500x3";
    Index rank = 20;
    Index steps = 30;
    std::uint64_t seed = 0;
    std::string transform = "cosine";
    std::string out_csv;
};

struct BenchReport {
    Index length = 0;
    Index count = 0;
    Index n3 = 0;
    Index r = 0;
    Index k = 0;
    double ttpca_seconds = 0.0;
    double csvd_seconds = 0.0;

    double speedup() const noexcept { return ttpca_seconds > 0.0 ? csvd_seconds / ttpca_seconds : 0.0; }
};

/// Times build_ttpca_model against build_csvd_model on the same training tensor.
BenchReport run_bench(const TrainingTensor& training, Index r, Index k, std::uint64_t seed, TransformKind kind);

int cmd_train(const TrainOptions& options, std::ostream& out);
int cmd_classify(const ClassifyOptions& options, std::ostream& out);
int cmd_evaluate(const EvaluateOptions& options, std::ostream& out);
int cmd_compress(const CompressOptions& options, std::ostream& out);
int cmd_svd(const SvdOptions& options, std::ostream& out);
int cmd_bench(const BenchOptions& options, std::ostream& out);

/// Runs `body`, mapping library errors to exit codes and printing one line
/// `error code=<n> kind=<kind> message="<text>"` to `err`.
int run_guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace tubal::app
