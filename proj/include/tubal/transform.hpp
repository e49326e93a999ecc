#pragma once

#include "tubal/tensor3.hpp"

#include <cstdint>
#include <memory>
#include <string_view>

namespace tubal {

/// n x n orthonormal DCT-II matrix,
/// C(i,j) = sqrt((2 - delta_{i0}) / n) * cos(i (2j + 1) pi / (2n)) with 0-based i, j.
Matrix build_dct_matrix(Index n);

/// Symmetric Toeplitz matrix with first column v plus the Hankel matrix whose
/// first row is (v_2, ..., v_n, 0) and whose last row is (0, v_n, ..., v_2).
/// Every such matrix is diagonalized by the DCT matrix.
Matrix toeplitz_plus_hankel(const Vector& v);

/// Circulant upshift Z: ones on the first superdiagonal.
Matrix build_upshift_matrix(Index n);

/// M = W^{-1} C (I + Z), W = diag(first column of C). M maps a tube to the
/// eigenvalues of its Toeplitz-plus-Hankel matrix: C th(v) C^T = diag(M v).
Matrix build_m_matrix(Index n);

/// Closed-form inverse of build_m_matrix(n): (I + Z)^{-1} C^T W.
Matrix build_m_matrix_inverse(Index n);

/// Orthonormal DCT of a fixed length. Immutable, shareable across threads.
class DctPlan {
public:
    explicit DctPlan(Index n);

    Index n() const noexcept { return matrix_.rows(); }
    const Matrix& matrix() const noexcept { return matrix_; }

    Vector forward(const Vector& v) const;
    Vector inverse(const Vector& v) const;

private:
    Matrix matrix_;
};

/// Every tube T(i,j,:) replaced by C T(i,j,:).
Tensor3 dct_mode3(const Tensor3& t);
/// Every tube T(i,j,:) replaced by C^T T(i,j,:).
Tensor3 idct_mode3(const Tensor3& t);

/// Which mode-3 transform defines the c-product algebra.
///
/// kCosine uses M = W^{-1} C (I + Z). Products computed slice-wise under M
/// coincide with ten(mat(A) mat(B)) for the block Toeplitz-plus-Hankel mat,
/// and the identity tube is (1, 0, ..., 0). This is the library default.
///
/// kOrthonormalDct uses C itself. The transform is orthogonal, so Frobenius
/// norms are preserved between domains and the truncated c-SVD is optimal in
/// the entrywise Frobenius norm, but products do not match ten(mat mat).
enum class TransformKind : std::uint8_t { kCosine = 0, kOrthonormalDct = 1 };

std::string_view to_string(TransformKind kind);

/// Forward/inverse mode-3 transform pair for one tube length.
class TubeTransform {
public:
    /// Cached, thread-safe lookup.
    static std::shared_ptr<const TubeTransform> get(TransformKind kind, Index n3);

    TubeTransform(TransformKind kind, Index n3);

    TransformKind kind() const noexcept { return kind_; }
    Index n3() const noexcept { return forward_.rows(); }
    const Matrix& forward_matrix() const noexcept { return forward_; }
    const Matrix& inverse_matrix() const noexcept { return inverse_; }

    Tensor3 forward(const Tensor3& t) const;
    Tensor3 inverse(const Tensor3& t) const;
    Vector forward(const Vector& tube) const { return forward_ * tube; }
    Vector inverse(const Vector& tube) const { return inverse_ * tube; }

private:
    TransformKind kind_;
    Matrix forward_;
    Matrix inverse_;
};

/// Applies `m` along mode 3: out(i,j,:) = m * t(i,j,:).
Tensor3 mode3_product(const Tensor3& t, const Matrix& m);

Tensor3 to_transform_domain(const Tensor3& t, TransformKind kind = TransformKind::kCosine);
Tensor3 from_transform_domain(const Tensor3& t, TransformKind kind = TransformKind::kCosine);

}  // namespace tubal
