#pragma once

#include "tubal/tensor3.hpp"
#include "tubal/transform.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace tubal {

struct NormalizeResult {
    Tensor3 q;
    Tube a;
    /// Transform-domain slices whose norm was at or below the tolerance and
    /// were replaced by a normalized pseudo-random slice (with a_j = 0).
    std::vector<Index> replaced_slices;

    bool all_replaced() const noexcept {
        return static_cast<Index>(replaced_slices.size()) == q.n3();
    }
};

/// Factors A = a (tube-fiber) Q with tube_dot(Q, Q) = e.
///
/// Slice j of Q~ is A~(j) / ||A~(j)||_F; slices with norm <= tol are replaced
/// by a seeded uniform random slice, normalized, and get a_j = 0.
NormalizeResult normalize(const Tensor3& a, double tol, std::uint64_t seed = 0x6b1d5eedULL,
                          TransformKind kind = TransformKind::kCosine);

struct GkOptions {
    /// Re-orthogonalize every new block against all previous ones (twice).
    bool reorthogonalize = false;
    /// Global variant: stop when alpha_i or beta_i <= this * ||A||_F.
    double breakdown_tolerance = 1e-13;
    /// Tube variant: Normalize tolerance. Defaults to n3 * eps * ||A~||_F.
    std::optional<double> normalize_tolerance;
    std::uint64_t seed = 0x6b1d5eedULL;
    TransformKind transform = TransformKind::kCosine;
};

/// Output of the global (Frobenius-normalized) bidiagonalization.
struct GkMatrixResult {
    std::vector<Tensor3> U_blocks;  ///< k blocks, n1 x s x n3
    std::vector<Tensor3> V_blocks;  ///< k + 1 blocks, n2 x s x n3
    std::vector<double> alphas;     ///< k values
    std::vector<double> betas;      ///< k values
    std::optional<Index> breakdown_step;

    Index steps() const noexcept { return static_cast<Index>(alphas.size()); }
    /// k x k upper bidiagonal C_k.
    Matrix bidiagonal() const;
    /// (k + 1) x k matrix [C_k^T; beta_k e_k^T].
    Matrix extended_bidiagonal_transpose() const;
};

GkMatrixResult tggka(const Tensor3& a, const Tensor3& v1, Index k, const GkOptions& options = {});

/// Diagonal tubes a_1..a_k and superdiagonal tubes b_1..b_k.
struct TubeBidiagonal {
    std::vector<Tube> a;
    std::vector<Tube> b;
    Index n3 = 1;

    Index steps() const noexcept { return static_cast<Index>(a.size()); }
    /// k x k x n3 upper bidiagonal tensor.
    Tensor3 square() const;
    /// k x (k + 1) x n3 tensor with b_k in position (k, k + 1).
    Tensor3 extended() const;
};

struct GkTubeResult {
    std::vector<Tensor3> U_blocks;  ///< k blocks, n1 x s x n3
    std::vector<Tensor3> V_blocks;  ///< k + 1 blocks, n2 x s x n3
    TubeBidiagonal bidiag;
    /// (step, slice) pairs, 1-based step, where Normalize took the random branch.
    std::vector<std::pair<Index, Index>> breakdown_slices;
    std::optional<Index> breakdown_step;

    Index steps() const noexcept { return bidiag.steps(); }
};

GkTubeResult ttggka(const Tensor3& a, const Tensor3& v1, Index k, const GkOptions& options = {});

/// Frobenius norms of the residuals of the two recurrence relations.
struct RecurrenceResiduals {
    double forward;    ///< A *c V_k against U_k combined with C_k
    double transpose;  ///< A^T *c U_k against V_{k+1} combined with C~_k^T
};

/// A *c V_k = U_k (global combine) C_k and
/// A^T *c U_k = V_k (global combine) C_k^T + beta_k [0, ..., 0, V_{k+1}].
RecurrenceResiduals tggka_residuals(const Tensor3& a, const GkMatrixResult& r,
                                    TransformKind kind = TransformKind::kCosine);

/// A *c V_k = U_k *c (C_k ckron I_s) and A^T *c U_k = V_{k+1} *c (C~_k^T ckron I_s),
/// evaluated with spatial-domain products on the stacked blocks.
RecurrenceResiduals ttggka_residuals(const Tensor3& a, const GkTubeResult& r,
                                     TransformKind kind = TransformKind::kCosine);

struct LeadingSingularElements {
    std::vector<Tube> sigma;  ///< approximate singular tubes, r of them
    Tensor3 left;             ///< n1 x r x n3 approximate left singular lateral slices
    GkTubeResult krylov;
};

/// Runs k steps of the tube bidiagonalization from a seeded random start
/// (s = 1), takes the c-SVD of the small k x (k + 1) bidiagonal tensor and
/// lifts its leading r left singular slices through U_k.
LeadingSingularElements leading_singular_elements(const Tensor3& a, Index k, Index r,
                                                  const GkOptions& options);

/// Seeded start block for the bidiagonalizations, n2 x s x n3.
Tensor3 random_start_block(Index n2, Index s, Index n3, std::uint64_t seed);

}  // namespace tubal
