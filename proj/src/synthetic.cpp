#include "tubal/synthetic.hpp"

#include "tubal/errors.hpp"

#include <random>

namespace tubal {

namespace {

Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
    }
    return m;
}

Matrix orthonormal_from(const Matrix& g) {
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
    const Matrix r = qr.matrixQR().topRows(g.cols()).triangularView<Eigen::Upper>();
    for (Index i = 0; i < g.cols(); ++i) {
        if (r(i, i) < 0.0) q.col(i) *= -1.0;
    }
    return q;
}

}  // namespace

Tensor3 random_tensor(Index n1, Index n2, Index n3, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Tensor3 out(n1, n2, n3);
    for (double& x : out.data()) x = normal(rng);
    return out;
}

Matrix random_orthonormal(Index n, Index m, std::uint64_t seed) {
    if (m > n) throw InvalidArgument("random_orthonormal: more columns than rows");
    std::mt19937_64 rng(seed);
    return orthonormal_from(gaussian_matrix(n, m, rng));
}

Tensor3 geometric_spectrum_tensor(Index n1, Index n2, Index n3, double ratio, std::uint64_t seed,
                                  TransformKind kind) {
    const Index p = std::min(n1, n2);
    std::mt19937_64 rng(seed);
    std::vector<Matrix> slices;
    for (Index k = 0; k < n3; ++k) {
        const Matrix u = orthonormal_from(gaussian_matrix(n1, p, rng));
        const Matrix v = orthonormal_from(gaussian_matrix(n2, p, rng));
        Vector s(p);
        const double scale = 1.0 + static_cast<double>(k) / static_cast<double>(n3);
        for (Index i = 0; i < p; ++i) s[i] = scale * std::pow(ratio, static_cast<double>(i));
        slices.push_back(u * s.asDiagonal() * v.transpose());
    }
    return from_transform_domain(Tensor3::from_slices(slices), kind);
}

LabeledImages synthetic_classes(Index classes, Index train_per_class, Index test_per_class, Index n1, Index n2,
                                Index n3, double separation, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    LabeledImages out;
    for (Index c = 0; c < classes; ++c) {
        Tensor3 mean(n1, n2, n3);
        for (double& x : mean.data()) x = separation * normal(rng);
        const std::string label = "class" + std::to_string(c);
        auto draw = [&]() {
            Tensor3 img = mean;
            for (double& x : img.data()) x += normal(rng);
            return img;
        };
        for (Index i = 0; i < train_per_class; ++i) {
            out.train.push_back(draw());
            out.train_labels.push_back(label);
        }
        for (Index i = 0; i < test_per_class; ++i) {
            out.test.push_back(draw());
            out.test_labels.push_back(label);
        }
    }
    return out;
}

}  // namespace tubal
