#pragma once

#include "tubal/golub_kahan.hpp"
#include "tubal/tensor3.hpp"
#include "tubal/transform.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tubal {

using Label = std::string;

/// Nearest training item in the projected space.
struct Match {
    Label label;
    Index index = 0;
    double distance = 0.0;
};

// ---------------------------------------------------------------------------
// Matrix eigenfaces

enum class EigenfaceMethod {
    kGolubKahan,  ///< global Golub-Kahan with n3 = 1, then SVD of the small bidiagonal
    kCovariance,  ///< eigenvectors of the p x p matrix Xc^T Xc lifted through Xc
    kFullSvd,     ///< dense thin SVD of Xc
};

struct EigenfaceOptions {
    EigenfaceMethod method = EigenfaceMethod::kGolubKahan;
    /// Golub-Kahan steps; defaults to min(p, 2k + 20).
    std::optional<Index> gk_steps;
    std::uint64_t seed = 0x6b1d5eedULL;
};

struct EigenfaceModel {
    Vector mean;              ///< nm
    Matrix basis;             ///< nm x k, orthonormal columns
    Matrix projected_train;   ///< k x p
    std::vector<Label> labels;
    double theta = 0.0;       ///< half the largest distance between projected training items

    Index k() const noexcept { return basis.cols(); }
    Vector project(const Vector& x) const;
};

/// Columns of `images` are vectorized training images. Throws InvalidArgument
/// for p < 2 or k > p, DegenerateDataError when the centered data is zero.
EigenfaceModel build_eigenface_model(const Matrix& images, std::vector<Label> labels, Index k,
                                     const EigenfaceOptions& options = {});

struct EigenfaceDecision {
    enum class Kind { kNotAFace, kUnknownFace, kIdentified };
    Kind kind = Kind::kNotAFace;
    Match match;                        ///< nearest training item (always filled)
    double reconstruction_error = 0.0;  ///< ||x - x_r||
};

/// Threshold rule: not a face when the reconstruction error reaches theta,
/// unknown when no projected training item is closer than theta, otherwise
/// identified with the nearest item.
EigenfaceDecision classify_eigenface(const EigenfaceModel& model, const Vector& x);

/// Plain nearest-neighbour identification (no thresholds). Ties go to the lowest index.
Match nearest(const EigenfaceModel& model, const Vector& x);

// ---------------------------------------------------------------------------
// Tensor tubal PCA

struct TrainingTensor {
    Tensor3 data;  ///< L x N x n3, centered lateral slices
    Tensor3 mean;  ///< L x 1 x n3
};

/// n1 x n2 x n3 image to its L x 1 x n3 column (frontal slices vectorized).
Tensor3 vectorize_image(const Tensor3& image);

TrainingTensor build_training_tensor(const std::vector<Tensor3>& images);

enum class ProjectionMethod : std::uint8_t {
    kTtpca = 0,      ///< tube Golub-Kahan + c-SVD of the small bidiagonal tensor
    kCsvd = 1,       ///< truncated economy c-SVD of the training tensor
    kEigenface = 2,  ///< n3 = 1 data, global Golub-Kahan (matrix eigenfaces)
};

/// Trained tubal PCA state. Immutable; safe to share across threads.
class TtpcaModel {
public:
    TtpcaModel(Tensor3 mean, Tensor3 projector, Tensor3 projected_train, std::vector<Label> labels, Index k,
               TransformKind transform = TransformKind::kCosine,
               ProjectionMethod method = ProjectionMethod::kTtpca);

    const Tensor3& mean() const noexcept { return mean_; }
    const Tensor3& projector() const noexcept { return projector_; }
    const Tensor3& projected_train() const noexcept { return projected_train_; }
    const std::vector<Label>& labels() const noexcept { return labels_; }
    Index length() const noexcept { return mean_.n1(); }
    Index n3() const noexcept { return mean_.n3(); }
    Index r() const noexcept { return projector_.n2(); }
    Index k() const noexcept { return k_; }
    Index train_count() const noexcept { return projected_train_.n2(); }
    TransformKind transform() const noexcept { return transform_; }
    ProjectionMethod method() const noexcept { return method_; }

    /// P_r^T *c (x - mean) for an L x 1 x n3 column.
    Tensor3 project_column(const Tensor3& column) const;

    /// Model restricted to the leading `r` projection slices.
    TtpcaModel truncated(Index r) const;

    /// The `m` nearest training items, closest first.
    std::vector<Match> nearest(const Tensor3& image, Index m = 1) const;

private:
    Tensor3 mean_;
    Tensor3 projector_;
    Tensor3 projected_train_;
    std::vector<Label> labels_;
    Index k_;
    TransformKind transform_;
    ProjectionMethod method_;
    std::shared_ptr<const Tensor3> projector_hat_;
};

struct TtpcaOptions {
    GkOptions gk;

    TtpcaOptions() { gk.reorthogonalize = true; }
};

/// Algorithm: k tube Golub-Kahan steps on X, c-SVD of the k x (k+1) bidiagonal
/// tensor, P_r from the leading r left singular slices lifted through U_k,
/// projected training tensor P_r^T *c X. Requires 1 <= r <= k <= min(L, N).
TtpcaModel build_ttpca_model(const TrainingTensor& training, std::vector<Label> labels, Index r, Index k,
                             const TtpcaOptions& options = {});

/// Eigenface model in TtpcaModel form (n3 = 1, method kEigenface); the threshold is dropped.
TtpcaModel to_ttpca_model(const EigenfaceModel& model);

/// All channels of an image stacked into one (n1 n2 n3) x 1 x 1 column.
Tensor3 flatten_channels(const Tensor3& image);

/// Same model shape with P_r taken from the truncated economy c-SVD of X.
TtpcaModel build_csvd_model(const TrainingTensor& training, std::vector<Label> labels, Index r,
                            TransformKind transform = TransformKind::kCosine);

/// Nearest training item for an n1 x n2 x n3 image with n1 * n2 = L (or an L x 1 x n3 column).
Match classify_ttpca(const TtpcaModel& model, const Tensor3& image);

// ---------------------------------------------------------------------------
// Evaluation

/// Images with labels, split into training and test sets.
struct LabeledImages {
    std::vector<Tensor3> train;
    std::vector<Label> train_labels;
    std::vector<Tensor3> test;
    std::vector<Label> test_labels;
};

struct RecognitionReport {
    double rate = 0.0;
    Index correct = 0;
    Index total = 0;
    std::map<Label, std::map<Label, Index>> confusion;  ///< truth -> predicted -> count
    std::map<Label, double> per_class_rates;
};

/// predict(i) returns the predicted label of test item i.
RecognitionReport evaluate(const std::function<Label(std::size_t)>& predict, const std::vector<Label>& truth);

RecognitionReport evaluate(const TtpcaModel& model, const std::vector<Tensor3>& images,
                           const std::vector<Label>& labels);

/// Identification rate with plain nearest-neighbour decisions; columns of `images` are test items.
RecognitionReport evaluate(const EigenfaceModel& model, const Matrix& images, const std::vector<Label>& labels);

}  // namespace tubal
