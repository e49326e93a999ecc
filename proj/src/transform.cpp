#include "tubal/transform.hpp"

#include "tubal/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace tubal {

namespace {

void require_positive(Index n, const char* what) {
    if (n < 1) throw DimensionError(std::string(what) + ": length must be positive");
}

}  // namespace

Matrix build_dct_matrix(Index n) {
    require_positive(n, "build_dct_matrix");
    Matrix c(n, n);
    const double nd = static_cast<double>(n);
    for (Index i = 0; i < n; ++i) {
        const double scale = std::sqrt((i == 0 ? 1.0 : 2.0) / nd);
        for (Index j = 0; j < n; ++j) {
            c(i, j) = scale * std::cos(static_cast<double>(i * (2 * j + 1)) * std::numbers::pi / (2.0 * nd));
        }
    }
    return c;
}

Matrix toeplitz_plus_hankel(const Vector& v) {
    const Index n = v.size();
    require_positive(n, "toeplitz_plus_hankel");
    Matrix th(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            double h = 0.0;
            const Index s = i + j;
            if (s <= n - 2) {
                h = v[s + 1];
            } else if (s >= n) {
                h = v[2 * n - 1 - s];
            }
            th(i, j) = v[std::abs(i - j)] + h;
        }
    }
    return th;
}

Matrix build_upshift_matrix(Index n) {
    require_positive(n, "build_upshift_matrix");
    Matrix z = Matrix::Zero(n, n);
    for (Index i = 0; i + 1 < n; ++i) z(i, i + 1) = 1.0;
    return z;
}

Matrix build_m_matrix(Index n) {
    const Matrix c = build_dct_matrix(n);
    const Vector w_inv = c.col(0).cwiseInverse();
    return w_inv.asDiagonal() * c * (Matrix::Identity(n, n) + build_upshift_matrix(n));
}

Matrix build_m_matrix_inverse(Index n) {
    const Matrix c = build_dct_matrix(n);
    // (I + Z)^{-1} is upper triangular with entries (-1)^(j-i) for j >= i.
    Matrix shift_inv = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i; j < n; ++j) shift_inv(i, j) = ((j - i) % 2 == 0) ? 1.0 : -1.0;
    }
    return shift_inv * c.transpose() * c.col(0).asDiagonal();
}

DctPlan::DctPlan(Index n) : matrix_(build_dct_matrix(n)) {}

Vector DctPlan::forward(const Vector& v) const {
    if (v.size() != n()) throw DimensionError("DctPlan::forward: length mismatch");
    return matrix_ * v;
}

Vector DctPlan::inverse(const Vector& v) const {
    if (v.size() != n()) throw DimensionError("DctPlan::inverse: length mismatch");
    return matrix_.transpose() * v;
}

Tensor3 mode3_product(const Tensor3& t, const Matrix& m) {
    if (m.cols() != t.n3()) throw DimensionError("mode3_product: matrix/tube length mismatch");
    Tensor3 out(t.n1(), t.n2(), m.rows());
    if (m.rows() == 1 && m.cols() == 1) {
        out.tubes() = t.tubes() * m(0, 0);
    } else {
        out.tubes().noalias() = t.tubes() * m.transpose();
    }
    return out;
}

Tensor3 dct_mode3(const Tensor3& t) {
    return TubeTransform::get(TransformKind::kOrthonormalDct, t.n3())->forward(t);
}

Tensor3 idct_mode3(const Tensor3& t) {
    return TubeTransform::get(TransformKind::kOrthonormalDct, t.n3())->inverse(t);
}

std::string_view to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::kCosine: return "cosine";
        case TransformKind::kOrthonormalDct: return "orthonormal-dct";
    }
    return "unknown";
}

TubeTransform::TubeTransform(TransformKind kind, Index n3) : kind_(kind) {
    switch (kind) {
        case TransformKind::kCosine:
            forward_ = build_m_matrix(n3);
            inverse_ = build_m_matrix_inverse(n3);
            break;
        case TransformKind::kOrthonormalDct:
            forward_ = build_dct_matrix(n3);
            inverse_ = forward_.transpose();
            break;
        default:
            throw InvalidArgument("unknown transform kind");
    }
}

std::shared_ptr<const TubeTransform> TubeTransform::get(TransformKind kind, Index n3) {
    static std::mutex mutex;
    static std::map<std::pair<int, Index>, std::shared_ptr<const TubeTransform>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{static_cast<int>(kind), n3}];
    if (!slot) slot = std::make_shared<const TubeTransform>(kind, n3);
    return slot;
}

Tensor3 TubeTransform::forward(const Tensor3& t) const {
    if (t.n3() != n3()) throw DimensionError("TubeTransform::forward: tube length mismatch");
    return mode3_product(t, forward_);
}

Tensor3 TubeTransform::inverse(const Tensor3& t) const {
    if (t.n3() != n3()) throw DimensionError("TubeTransform::inverse: tube length mismatch");
    return mode3_product(t, inverse_);
}

Tensor3 to_transform_domain(const Tensor3& t, TransformKind kind) {
    return TubeTransform::get(kind, t.n3())->forward(t);
}

Tensor3 from_transform_domain(const Tensor3& t, TransformKind kind) {
    return TubeTransform::get(kind, t.n3())->inverse(t);
}

}  // namespace tubal
