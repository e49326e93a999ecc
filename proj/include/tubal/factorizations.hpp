#pragma once

#include "tubal/tensor3.hpp"
#include "tubal/transform.hpp"

#include <algorithm>
#include <vector>

namespace tubal {

/// A = U *c S *c V^T with orthogonal U, V and f-diagonal S.
///
/// In the transform domain every slice of S~ is diagonal, nonnegative and
/// nonincreasing. Singular vectors are sign-normalized so that the
/// largest-magnitude entry of each left singular vector is nonnegative.
struct CsvdFactors {
    Tensor3 U;
    Tensor3 S;
    Tensor3 V;
    TransformKind transform = TransformKind::kCosine;

    Index rank_bound() const noexcept { return std::min(S.n1(), S.n2()); }
    /// S(i,i,:).
    Tube singular_tube(Index i) const { return S.tube(i, i); }
    /// Transform-domain singular values: column k holds the diagonal of S~(k).
    Matrix transformed_singular_values() const;
};

/// Full c-SVD: U is n1 x n1 x n3, V is n2 x n2 x n3.
CsvdFactors csvd(const Tensor3& a, TransformKind kind = TransformKind::kCosine);

/// Economy c-SVD with p = min(n1, n2): U is n1 x p, S is p x p, V is n2 x p.
/// Never materializes the full square factor, so it is the one to use for
/// tall training tensors.
CsvdFactors csvd_economy(const Tensor3& a, TransformKind kind = TransformKind::kCosine);

struct TruncatedCsvd {
    Tensor3 U;              ///< n1 x r x n3
    Tensor3 S;              ///< r x r x n3
    Tensor3 V;              ///< n2 x r x n3
    Tensor3 approximation;  ///< sum_{i<r} U(:,i,:) *c S(i,i,:) *c V(:,i,:)^T
};

/// Rank-r truncation of the c-SVD. Throws InvalidArgument unless 1 <= r <= min(n1, n2).
TruncatedCsvd truncated_csvd(const Tensor3& a, Index r, TransformKind kind = TransformKind::kCosine);

/// sum_{i < count} U(:,i,:) *c S(i,i,:) *c V(:,i,:)^T, evaluated term by term
/// with spatial-domain c-products.
Tensor3 expand_singular_triplets(const CsvdFactors& f, Index count);

/// U *c S *c V^T.
Tensor3 reconstruct(const CsvdFactors& f);

struct CqrFactors {
    Tensor3 Q;  ///< n1 x n1 x n3, orthogonal
    Tensor3 R;  ///< n1 x n2 x n3, upper triangular transform-domain slices with nonnegative diagonal
    TransformKind transform = TransformKind::kCosine;
};

CqrFactors cqr(const Tensor3& a, TransformKind kind = TransformKind::kCosine);

/// Relation between the slice sums of A and of its c-SVD factors.
struct SliceSumCheck {
    Matrix lhs;                ///< sum_k A_k
    Matrix rhs;                ///< (sum_k U_k)(sum_k S_k)(sum_k V_k^T)
    double measured_constant;  ///< least-squares c in lhs ~ c * rhs
    double fit_residual;       ///< ||lhs - c rhs||_F / ||lhs||_F
    /// ||sum_k w_k A_k - (sum w_k U_k)(sum w_k S_k)(sum w_k V_k^T)||_F, relative,
    /// where w is the first row of the forward transform. This weighted form
    /// holds exactly for any transform.
    double weighted_residual;
};

SliceSumCheck slice_sum_identity_check(const CsvdFactors& f);

}  // namespace tubal
