#pragma once

#include "tubal/tensor3.hpp"
#include "tubal/transform.hpp"

#include <vector>

namespace tubal {

/// Frontal slices of a tensor in the transform domain.
struct BlockDiagonalForm {
    std::vector<Matrix> slices;

    Index n3() const noexcept { return static_cast<Index>(slices.size()); }
    /// blockdiag(slices) as one (n3*n1) x (n3*n2) matrix.
    Matrix assemble() const;
};

BlockDiagonalForm block_diagonal(const Tensor3& a, TransformKind kind = TransformKind::kCosine);
Tensor3 from_block_diagonal(const BlockDiagonalForm& form, TransformKind kind = TransformKind::kCosine);

/// Block Toeplitz-plus-block-Hankel unfolding, (n1*n3) x (n2*n3).
Matrix mat(const Tensor3& a);

/// Inverse of mat. Reads the first block column only; structure is not validated.
Tensor3 ten(const Matrix& m, Index n1, Index n2, Index n3);

/// c-product A *c B: slice-wise products in the transform domain.
Tensor3 cproduct(const Tensor3& a, const Tensor3& b, TransformKind kind = TransformKind::kCosine);

/// Frontal-slice-wise transpose, n2 x n1 x n3.
Tensor3 transpose(const Tensor3& a);

/// Tensor whose transform-domain slices are all I_{n1}.
Tensor3 identity_tensor(Index n1, Index n3, TransformKind kind = TransformKind::kCosine);

/// Tube whose transform is all ones; (1, 0, ..., 0) under the cosine transform.
Tube identity_tube(Index n3, TransformKind kind = TransformKind::kCosine);

/// Throws SingularTensorError when a transform-domain slice has condition
/// estimate above 1 / (100 eps).
Tensor3 inverse(const Tensor3& a, TransformKind kind = TransformKind::kCosine);

double inner_product(const Tensor3& a, const Tensor3& b);
double fro_norm(const Tensor3& a);

/// Tube whose transform has entries <A~(j), B~(j)>_F.
Tube tube_dot(const Tensor3& a, const Tensor3& b, TransformKind kind = TransformKind::kCosine);

/// a (tube-fiber product) B: every tube of B multiplied by a under the c-product.
Tensor3 tube_times(const Tube& a, const Tensor3& b, TransformKind kind = TransformKind::kCosine);

/// Tube c-product a *c b.
Tube tube_product(const Tube& a, const Tube& b, TransformKind kind = TransformKind::kCosine);

/// sum_j y_j U_j.
Tensor3 global_combine(const std::vector<Tensor3>& blocks, const Vector& y);

/// Column-wise extension: block i of the result is global_combine(blocks, c.col(i)).
std::vector<Tensor3> global_combine(const std::vector<Tensor3>& blocks, const Matrix& c);

/// c-Kronecker product: transform-domain slices are A~(i) (x) B~(i).
Tensor3 ckron(const Tensor3& a, const Tensor3& b, TransformKind kind = TransformKind::kCosine);

/// Stacks the lateral slices vertically: n1*n2 x 1 x n3.
Tensor3 tvect(const Tensor3& a);

/// [[A, B], [C, D]] composed frontal slice by frontal slice.
Tensor3 block_compose(const Tensor3& a, const Tensor3& b, const Tensor3& c, const Tensor3& d);

/// Q^T *c Q = Q *c Q^T = I, each within `tol` in Frobenius norm.
bool is_orthogonal(const Tensor3& q, double tol = 1e-10, TransformKind kind = TransformKind::kCosine);

constexpr double kDefaultRankTolerance = 1e-10;

/// Number of singular tubes with ||S(i,i,:)||_F > tol * ||S(1,1,:)||_F.
Index tubal_rank(const Tensor3& a, double tol = kDefaultRankTolerance,
                 TransformKind kind = TransformKind::kCosine);

/// Numerical rank of each transform-domain slice, relative to the largest
/// singular value over all slices.
std::vector<Index> multi_rank(const Tensor3& a, double tol = kDefaultRankTolerance,
                              TransformKind kind = TransformKind::kCosine);

/// A *c X for a fixed A, with A's transform computed once.
class CProductOperator {
public:
    explicit CProductOperator(const Tensor3& a, TransformKind kind = TransformKind::kCosine);

    Index rows() const noexcept { return n1_; }
    Index cols() const noexcept { return n2_; }
    Index n3() const noexcept { return n3_; }
    TransformKind kind() const noexcept { return kind_; }
    const Tensor3& transformed() const noexcept { return transformed_; }

    /// A *c X.
    Tensor3 apply(const Tensor3& x) const;
    /// A^T *c X.
    Tensor3 apply_transpose(const Tensor3& x) const;

    /// Transform-domain versions: slices of X~ in, slices of (A X)~ out.
    std::vector<Matrix> apply_hat(const std::vector<Matrix>& x_hat) const;
    std::vector<Matrix> apply_transpose_hat(const std::vector<Matrix>& x_hat) const;

private:
    Index n1_;
    Index n2_;
    Index n3_;
    TransformKind kind_;
    Tensor3 transformed_;
};

}  // namespace tubal
