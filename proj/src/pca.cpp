#include "tubal/pca.hpp"

#include "tubal/algebra.hpp"
#include "tubal/errors.hpp"
#include "tubal/factorizations.hpp"
#include "tubal/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tubal {

namespace {

constexpr double kDropRelative = 1e-12;

void fix_signs(Matrix& basis) {
    for (Index j = 0; j < basis.cols(); ++j) {
        Index at = 0;
        basis.col(j).cwiseAbs().maxCoeff(&at);
        if (basis(at, j) < 0.0) basis.col(j) *= -1.0;
    }
}

/// Leading directions of the centered data, at most k, zero-variance ones dropped.
Matrix eigenface_basis(const Matrix& xc, Index k, const EigenfaceOptions& options) {
    const Index nm = xc.rows();
    const Index p = xc.cols();
    switch (options.method) {
        case EigenfaceMethod::kCovariance: {
            const Matrix gram = xc.transpose() * xc;
            Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
            const Vector lambda = eig.eigenvalues().reverse();
            const Matrix v = eig.eigenvectors().rowwise().reverse();
            const double smax = std::sqrt(std::max(lambda[0], 0.0));
            Index keep = 0;
            while (keep < k && keep < p && std::sqrt(std::max(lambda[keep], 0.0)) >= kDropRelative * smax) ++keep;
            Matrix basis(nm, keep);
            for (Index i = 0; i < keep; ++i) basis.col(i) = xc * v.col(i) / std::sqrt(lambda[i]);
            return basis;
        }
        case EigenfaceMethod::kFullSvd: {
            Eigen::BDCSVD<Matrix> svd(xc, Eigen::ComputeThinU);
            const Vector& s = svd.singularValues();
            Index keep = 0;
            while (keep < k && keep < s.size() && s[keep] >= kDropRelative * s[0]) ++keep;
            return svd.matrixU().leftCols(keep);
        }
        case EigenfaceMethod::kGolubKahan: {
            const Index cap = std::min(nm, p);
            const Index steps = std::clamp(options.gk_steps.value_or(std::min(p, 2 * k + 20)), k, cap);
            GkOptions gk;
            gk.reorthogonalize = true;
            gk.seed = options.seed;
            const Tensor3 a = Tensor3::from_matrix(xc);
            const GkMatrixResult r = tggka(a, random_start_block(p, 1, 1, options.seed), steps, gk);
            const Index done = r.steps();
            Matrix u(nm, done);
            for (Index i = 0; i < done; ++i) u.col(i) = r.U_blocks[static_cast<std::size_t>(i)].slice(0);
            // Left singular vectors of [C_k, beta_k e_k] are the right ones of its transpose.
            Eigen::JacobiSVD<Matrix> svd(r.extended_bidiagonal_transpose(), Eigen::ComputeThinV);
            const Vector& s = svd.singularValues();
            Index keep = 0;
            while (keep < k && keep < s.size() && s[keep] >= kDropRelative * s[0]) ++keep;
            return u * svd.matrixV().leftCols(keep);
        }
    }
    throw InvalidArgument("build_eigenface_model: unknown method");
}

Index argmin_column_distance(const Matrix& cols, const Vector& y, double& best) {
    Index at = 0;
    best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < cols.cols(); ++i) {
        const double d = (cols.col(i) - y).squaredNorm();
        if (d < best) {
            best = d;
            at = i;
        }
    }
    best = std::sqrt(best);
    return at;
}

void require_labels(std::size_t labels, Index count, const char* who) {
    if (static_cast<Index>(labels) != count) {
        throw InvalidArgument(std::string(who) + ": " + std::to_string(labels) + " labels for " +
                              std::to_string(count) + " items");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix eigenfaces

Vector EigenfaceModel::project(const Vector& x) const {
    if (x.size() != mean.size()) {
        throw DimensionError("eigenface project: expected length " + std::to_string(mean.size()) + ", got " +
                             std::to_string(x.size()));
    }
    return basis.transpose() * (x - mean);
}

EigenfaceModel build_eigenface_model(const Matrix& images, std::vector<Label> labels, Index k,
                                     const EigenfaceOptions& options) {
    const Index p = images.cols();
    if (p < 2) throw InvalidArgument("build_eigenface_model: need at least two training images");
    if (k < 1 || k > p) {
        throw InvalidArgument("build_eigenface_model: k=" + std::to_string(k) + " outside [1, " +
                              std::to_string(p) + "]");
    }
    require_labels(labels.size(), p, "build_eigenface_model");
    if (!images.allFinite()) throw InvalidInput("build_eigenface_model: non-finite pixel");

    EigenfaceModel model;
    model.mean = images.rowwise().mean();
    const Matrix xc = images.colwise() - model.mean;
    if (xc.norm() <= std::numeric_limits<double>::min()) {
        throw DegenerateDataError("build_eigenface_model: training images are all identical");
    }
    model.basis = eigenface_basis(xc, k, options);
    if (model.basis.cols() == 0) throw DegenerateDataError("build_eigenface_model: no direction with variance");
    fix_signs(model.basis);
    model.projected_train = model.basis.transpose() * xc;
    model.labels = std::move(labels);

    double widest = 0.0;
    for (Index i = 0; i < p; ++i) {
        for (Index j = i + 1; j < p; ++j) {
            widest = std::max(widest, (model.projected_train.col(i) - model.projected_train.col(j)).squaredNorm());
        }
    }
    model.theta = 0.5 * std::sqrt(widest);
    return model;
}

Match nearest(const EigenfaceModel& model, const Vector& x) {
    const Vector y = model.project(x);
    Match m;
    m.index = argmin_column_distance(model.projected_train, y, m.distance);
    m.label = model.labels[static_cast<std::size_t>(m.index)];
    return m;
}

EigenfaceDecision classify_eigenface(const EigenfaceModel& model, const Vector& x) {
    const Vector y = model.project(x);
    EigenfaceDecision d;
    d.reconstruction_error = ((x - model.mean) - model.basis * y).norm();
    d.match.index = argmin_column_distance(model.projected_train, y, d.match.distance);
    d.match.label = model.labels[static_cast<std::size_t>(d.match.index)];
    if (d.reconstruction_error >= model.theta) {
        d.kind = EigenfaceDecision::Kind::kNotAFace;
    } else if (d.match.distance >= model.theta) {
        d.kind = EigenfaceDecision::Kind::kUnknownFace;
    } else {
        d.kind = EigenfaceDecision::Kind::kIdentified;
    }
    return d;
}

// ---------------------------------------------------------------------------
// Tensor tubal PCA

Tensor3 vectorize_image(const Tensor3& image) { return tvect(image); }

TrainingTensor build_training_tensor(const std::vector<Tensor3>& images) {
    if (images.empty()) throw InvalidArgument("build_training_tensor: no images");
    const Tensor3& first = images.front();
    const Index length = first.n1() * first.n2();
    const Index n3 = first.n3();
    Tensor3 data(length, static_cast<Index>(images.size()), n3);
    for (std::size_t i = 0; i < images.size(); ++i) {
        const Tensor3& img = images[i];
        if (img.n1() != first.n1() || img.n2() != first.n2() || img.n3() != n3) {
            throw DimensionError("build_training_tensor: image " + std::to_string(i) + " has a different shape");
        }
        data.set_lateral(static_cast<Index>(i), vectorize_image(img));
    }
    Tensor3 mean(length, 1, n3);
    for (Index k = 0; k < n3; ++k) mean.slice(k) = data.slice(k).rowwise().mean();
    for (Index k = 0; k < n3; ++k) data.slice(k).colwise() -= Vector(mean.slice(k).col(0));
    return {std::move(data), std::move(mean)};
}

TtpcaModel::TtpcaModel(Tensor3 mean, Tensor3 projector, Tensor3 projected_train, std::vector<Label> labels, Index k,
                       TransformKind transform, ProjectionMethod method)
    : mean_(std::move(mean)),
      projector_(std::move(projector)),
      projected_train_(std::move(projected_train)),
      labels_(std::move(labels)),
      k_(k),
      transform_(transform),
      method_(method) {
    if (mean_.n2() != 1) throw DimensionError("TtpcaModel: mean must be L x 1 x n3");
    if (projector_.n1() != mean_.n1() || projector_.n3() != mean_.n3()) {
        throw DimensionError("TtpcaModel: projector shape does not match the mean");
    }
    if (projected_train_.n1() != projector_.n2() || projected_train_.n3() != mean_.n3()) {
        throw DimensionError("TtpcaModel: projected training tensor shape does not match the projector");
    }
    require_labels(labels_.size(), projected_train_.n2(), "TtpcaModel");
    if (k_ < 0 || (k_ > 0 && k_ < projector_.n2())) throw InvalidArgument("TtpcaModel: k must be 0 or >= r");
    projector_hat_ = std::make_shared<const Tensor3>(to_transform_domain(projector_, transform_));
}

Tensor3 TtpcaModel::project_column(const Tensor3& column) const {
    if (column.n1() != length() || column.n2() != 1 || column.n3() != n3()) {
        throw DimensionError("TtpcaModel: expected an image column of " + std::to_string(length()) + " x 1 x " +
                             std::to_string(n3()));
    }
    const auto t = TubeTransform::get(transform_, n3());
    const Tensor3 x_hat = t->forward(column - mean_);
    Tensor3 y_hat(r(), 1, n3());
    for (Index k = 0; k < n3(); ++k) y_hat.slice(k).noalias() = projector_hat_->slice(k).transpose() * x_hat.slice(k);
    return t->inverse(y_hat);
}

TtpcaModel TtpcaModel::truncated(Index r_new) const {
    if (r_new < 1 || r_new > r()) {
        throw InvalidArgument("TtpcaModel::truncated: r=" + std::to_string(r_new) + " outside [1, " +
                              std::to_string(r()) + "]");
    }
    Tensor3 projected(r_new, train_count(), n3());
    for (Index k = 0; k < n3(); ++k) projected.slice(k) = projected_train_.slice(k).topRows(r_new);
    return {mean_, projector_.lateral(0, r_new), std::move(projected), labels_, k_, transform_, method_};
}

std::vector<Match> TtpcaModel::nearest(const Tensor3& image, Index m) const {
    Tensor3 column = image;
    if (!(image.n2() == 1 && image.n1() == length())) {
        if (image.n1() * image.n2() != length() || image.n3() != n3()) {
            throw DimensionError("TtpcaModel: image of " + std::to_string(image.n1()) + " x " +
                                 std::to_string(image.n2()) + " x " + std::to_string(image.n3()) +
                                 " does not match the model (L=" + std::to_string(length()) +
                                 ", n3=" + std::to_string(n3()) + ")");
        }
        column = vectorize_image(image);
    }
    const Tensor3 y = project_column(column);
    const Index n = train_count();
    Vector dist = Vector::Zero(n);
    for (Index k = 0; k < n3(); ++k) {
        dist += (projected_train_.slice(k).colwise() - Vector(y.slice(k).col(0))).colwise().squaredNorm().transpose();
    }
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    const auto count = static_cast<std::size_t>(std::clamp<Index>(m, 1, n));
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                      [&](Index a, Index b) { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); });
    std::vector<Match> out;
    for (std::size_t i = 0; i < count; ++i) {
        const Index at = order[i];
        out.push_back({labels_[static_cast<std::size_t>(at)], at, std::sqrt(dist[at])});
    }
    return out;
}

TtpcaModel build_ttpca_model(const TrainingTensor& training, std::vector<Label> labels, Index r, Index k,
                             const TtpcaOptions& options) {
    const Tensor3& x = training.data;
    require_labels(labels.size(), x.n2(), "build_ttpca_model");
    if (r < 1 || r > k || k > std::min(x.n1(), x.n2())) {
        throw InvalidArgument("build_ttpca_model: need 1 <= r <= k <= min(L, N), got r=" + std::to_string(r) +
                              ", k=" + std::to_string(k) + ", L=" + std::to_string(x.n1()) +
                              ", N=" + std::to_string(x.n2()));
    }
    if (fro_norm(x) <= std::numeric_limits<double>::min()) {
        throw DegenerateDataError("build_ttpca_model: training images are all identical");
    }
    const LeadingSingularElements lead = leading_singular_elements(x, k, r, options.gk);
    const TransformKind kind = options.gk.transform;
    Tensor3 projected = cproduct(transpose(lead.left), x, kind);
    return {training.mean, lead.left, std::move(projected), std::move(labels), k, kind, ProjectionMethod::kTtpca};
}

TtpcaModel build_csvd_model(const TrainingTensor& training, std::vector<Label> labels, Index r,
                            TransformKind transform) {
    const Tensor3& x = training.data;
    require_labels(labels.size(), x.n2(), "build_csvd_model");
    if (r < 1 || r > std::min(x.n1(), x.n2())) {
        throw InvalidArgument("build_csvd_model: r=" + std::to_string(r) + " outside [1, min(L, N)]");
    }
    const CsvdFactors f = csvd_economy(x, transform);
    Tensor3 projector = f.U.lateral(0, r);
    Tensor3 projected = cproduct(transpose(projector), x, transform);
    return {training.mean, std::move(projector), std::move(projected), std::move(labels), 0, transform,
            ProjectionMethod::kCsvd};
}

TtpcaModel to_ttpca_model(const EigenfaceModel& model) {
    const Index length = model.mean.size();
    Tensor3 mean(length, 1, 1);
    mean.slice(0) = model.mean;
    return {std::move(mean),
            Tensor3::from_matrix(model.basis),
            Tensor3::from_matrix(model.projected_train),
            model.labels,
            model.k(),
            TransformKind::kCosine,
            ProjectionMethod::kEigenface};
}

Tensor3 flatten_channels(const Tensor3& image) {
    const Tensor3 column = vectorize_image(image);
    return {column.size(), 1, 1, std::vector<double>(column.data().begin(), column.data().end())};
}

Match classify_ttpca(const TtpcaModel& model, const Tensor3& image) { return model.nearest(image, 1).front(); }

// ---------------------------------------------------------------------------
// Evaluation

RecognitionReport evaluate(const std::function<Label(std::size_t)>& predict, const std::vector<Label>& truth) {
    if (truth.empty()) throw InvalidArgument("evaluate: empty test set");
    std::vector<Label> predicted(truth.size());
    parallel_for(truth.size(), [&](std::size_t i) { predicted[i] = predict(i); });

    RecognitionReport report;
    report.total = static_cast<Index>(truth.size());
    std::map<Label, Index> seen;
    std::map<Label, Index> hits;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++report.confusion[truth[i]][predicted[i]];
        ++seen[truth[i]];
        if (predicted[i] == truth[i]) {
            ++report.correct;
            ++hits[truth[i]];
        }
    }
    report.rate = static_cast<double>(report.correct) / static_cast<double>(report.total);
    for (const auto& [label, count] : seen) {
        report.per_class_rates[label] = static_cast<double>(hits[label]) / static_cast<double>(count);
    }
    return report;
}

RecognitionReport evaluate(const TtpcaModel& model, const std::vector<Tensor3>& images,
                           const std::vector<Label>& labels) {
    if (images.size() != labels.size()) throw InvalidArgument("evaluate: image and label counts differ");
    return evaluate([&](std::size_t i) { return classify_ttpca(model, images[i]).label; }, labels);
}

RecognitionReport evaluate(const EigenfaceModel& model, const Matrix& images, const std::vector<Label>& labels) {
    require_labels(labels.size(), images.cols(), "evaluate");
    return evaluate([&](std::size_t i) { return nearest(model, images.col(static_cast<Index>(i))).label; }, labels);
}

}  // namespace tubal
