#pragma once

#include "tubal/pca.hpp"
#include "tubal/tensor3.hpp"
#include "tubal/transform.hpp"

#include <cstdint>

namespace tubal {

/// Standard normal entries.
Tensor3 random_tensor(Index n1, Index n2, Index n3, std::uint64_t seed);

/// Matrix with orthonormal columns, n x m (m <= n), Haar-distributed.
Matrix random_orthonormal(Index n, Index m, std::uint64_t seed);

/// n1 x n2 x n3 tensor whose transform-domain slice k has singular values
/// scale_k * ratio^i, i = 0..min(n1, n2)-1, with random orthonormal factors.
/// scale_k = 1 + k / n3 keeps the slices distinct.
Tensor3 geometric_spectrum_tensor(Index n1, Index n2, Index n3, double ratio, std::uint64_t seed,
                                  TransformKind kind = TransformKind::kCosine);

/// Gaussian classes of n1 x n2 x n3 images. Class means are random with
/// entries of size `separation`; each image adds unit-variance noise.
LabeledImages synthetic_classes(Index classes, Index train_per_class, Index test_per_class, Index n1, Index n2,
                                Index n3, double separation, std::uint64_t seed);

}  // namespace tubal
