#include "tubal/app/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace tubal::app;

void add_data_flags(CLI::App* cmd, DataOptions& d) {
    cmd->add_option("--data", d.data, "Image directory (one sub-directory per label) or manifest file");
    cmd->add_option("--idx-images", d.idx_images, "IDX training images");
    cmd->add_option("--idx-labels", d.idx_labels, "IDX training labels");
    cmd->add_option("--idx-test-images", d.idx_test_images, "IDX test images");
    cmd->add_option("--idx-test-labels", d.idx_test_labels, "IDX test labels");
    cmd->add_option("--size", d.size, "Resize images to n1xn2");
    cmd->add_option("--channels", d.channels, "1 (grayscale) or 3 (RGB)")->check(CLI::IsMember({1, 3}));
    cmd->add_option("--test-count", d.test_count, "Test images per label for directory splits");
    cmd->add_option("--seed", d.seed, "Seed for splits and start vectors");
    cmd->add_option("--manifest-out", d.manifest_out, "Write the split used as a manifest");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensor tubal PCA: train, classify, evaluate, compress, svd, bench"};
    app.require_subcommand(1);

    TrainOptions train;
    auto* c_train = app.add_subcommand("train", "Build and save a projection model");
    add_data_flags(c_train, train.data);
    c_train->add_option("--method", train.method, "ttpca | csvd | eigenface")
        ->check(CLI::IsMember({"ttpca", "csvd", "eigenface"}));
    c_train->add_option("--eigen-solver", train.eigen_solver, "golub_kahan | covariance | full_svd");
    c_train->add_option("--rank,-r", train.rank, "Truncation index r");
    c_train->add_option("--steps,-k", train.steps, "Golub-Kahan steps k (k >= r)");
    c_train->add_option("--transform", train.transform, "cosine | dct");
    c_train->add_option("--model", train.model, "Output model file")->required();

    ClassifyOptions classify;
    auto* c_classify = app.add_subcommand("classify", "Nearest training image for each input");
    c_classify->add_option("--model", classify.model, "Model file")->required();
    c_classify->add_option("images", classify.images, "Image files")->required();
    c_classify->add_option("--size", classify.size, "n1xn2 used at training time");
    c_classify->add_option("--channels", classify.channels, "Image channels");
    c_classify->add_option("--top", classify.top, "List the m nearest training images");

    EvaluateOptions evaluate;
    auto* c_evaluate = app.add_subcommand("evaluate", "Recognition rate on the test split, swept over r");
    c_evaluate->add_option("--model", evaluate.model, "Model file")->required();
    add_data_flags(c_evaluate, evaluate.data);
    c_evaluate->add_option("--ranks", evaluate.ranks, "Truncation indices to sweep");
    c_evaluate->add_option("--out-csv", evaluate.out_csv, "Sweep CSV");

    CompressOptions compress;
    auto* c_compress = app.add_subcommand("compress", "Rank-r c-SVD approximation of an image");
    c_compress->add_option("input", compress.input, "Input image")->required();
    c_compress->add_option("output", compress.output, "Output image");
    c_compress->add_option("--rank,-r", compress.rank, "Truncation index r");
    c_compress->add_option("--channels", compress.channels, "1 or 3");
    c_compress->add_option("--transform", compress.transform, "cosine | dct");
    c_compress->add_option("--out-csv", compress.out_csv, "Singular tube norms CSV");

    SvdOptions svd;
    auto* c_svd = app.add_subcommand("svd", "c-SVD summary of an image");
    c_svd->add_option("input", svd.input, "Input image")->required();
    c_svd->add_option("--channels", svd.channels, "1 or 3");
    c_svd->add_option("--transform", svd.transform, "cosine | dct");
    c_svd->add_option("--out-csv", svd.out_csv, "Singular tube norms CSV");

    BenchOptions bench;
    auto* c_bench = app.add_subcommand("bench", "Time TTPCA training against full c-SVD training");
    add_data_flags(c_bench, bench.data);
    c_bench->add_option("--synthetic", bench.synthetic, "Random training tensor LxNxn3 when no data is given");
    c_bench->add_option("--rank,-r", bench.rank, "Truncation index r");
    c_bench->add_option("--steps,-k", bench.steps, "Golub-Kahan steps k");
    c_bench->add_option("--transform", bench.transform, "cosine | dct");
    c_bench->add_option("--out-csv", bench.out_csv, "Timing CSV");
    c_bench->callback([&] { bench.seed = bench.data.seed; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error code=" << kExitUsage << " kind=usage message=\"" << e.what() << "\"\n";
        return kExitUsage;
    }

    return run_guarded(
        [&] {
            if (*c_train) return cmd_train(train, std::cout);
            if (*c_classify) return cmd_classify(classify, std::cout);
            if (*c_evaluate) return cmd_evaluate(evaluate, std::cout);
            if (*c_compress) return cmd_compress(compress, std::cout);
            if (*c_svd) return cmd_svd(svd, std::cout);
            return cmd_bench(bench, std::cout);
        },
        std::cerr);
}
