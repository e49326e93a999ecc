// Independent reference implementations used only by the tests. Each one is
// written from the defining formula, index by index, without calling the
// library routine it checks.
#pragma once

#include "tubal/tensor3.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using tubal::Index;
using tubal::Matrix;
using tubal::Tensor3;
using tubal::Vector;

/// C(i,j) = sqrt((2 - delta_{i1}) / n) cos((i - 1)(2j - 1) pi / (2n)), 1-based.
inline Matrix dct(Index n) {
    Matrix c(n, n);
    for (Index i = 1; i <= n; ++i) {
        for (Index j = 1; j <= n; ++j) {
            const double scale = std::sqrt((i == 1 ? 1.0 : 2.0) / static_cast<double>(n));
            c(i - 1, j - 1) = scale * std::cos(static_cast<double>((i - 1) * (2 * j - 1)) * std::numbers::pi /
                                               (2.0 * static_cast<double>(n)));
        }
    }
    return c;
}

/// Hankel matrix H(i,j) = h[i + j] from its first row and last row.
inline Matrix hankel(const Vector& first_row, const Vector& last_row) {
    const Index n = first_row.size();
    Matrix h(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const Index s = i + j;
            h(i, j) = s < n ? first_row[s] : last_row[s - (n - 1)];
        }
    }
    return h;
}

/// Symmetric Toeplitz with first column v plus the Hankel matrix with first
/// row (v2, ..., vn, 0) and last row (0, vn, ..., v2).
inline Matrix th(const Vector& v) {
    const Index n = v.size();
    Matrix t(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) t(i, j) = v[std::abs(i - j)];
    }
    Vector first = Vector::Zero(n);
    Vector last = Vector::Zero(n);
    for (Index j = 0; j + 1 < n; ++j) first[j] = v[j + 1];
    for (Index j = 1; j < n; ++j) last[j] = v[n - j];
    return t + hankel(first, last);
}

/// Block version of th with frontal slices A_1..A_n as blocks.
inline Matrix mat(const Tensor3& a) {
    const Index n = a.n3();
    const Index r = a.n1();
    const Index c = a.n2();
    Matrix m = Matrix::Zero(r * n, c * n);
    for (Index bi = 0; bi < n; ++bi) {
        for (Index bj = 0; bj < n; ++bj) {
            Matrix block = a.slice(std::abs(bi - bj));
            const Index s = bi + bj;
            if (s < n - 1) {
                block += a.slice(s + 1);
            } else if (s > n - 1) {
                block += a.slice(n - (s - (n - 1)));
            }
            m.block(bi * r, bj * c, r, c) = block;
        }
    }
    return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
    return out;
}

inline Matrix blockdiag(const std::vector<Matrix>& blocks) {
    Index rows = 0;
    Index cols = 0;
    for (const Matrix& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix out = Matrix::Zero(rows, cols);
    Index r = 0;
    Index c = 0;
    for (const Matrix& b : blocks) {
        out.block(r, c, b.rows(), b.cols()) = b;
        r += b.rows();
        c += b.cols();
    }
    return out;
}

/// Applies m along the third mode with explicit loops.
inline Tensor3 mode3(const Tensor3& t, const Matrix& m) {
    Tensor3 out(t.n1(), t.n2(), m.rows());
    for (Index i = 0; i < t.n1(); ++i) {
        for (Index j = 0; j < t.n2(); ++j) {
            for (Index p = 0; p < m.rows(); ++p) {
                double s = 0.0;
                for (Index k = 0; k < t.n3(); ++k) s += m(p, k) * t(i, j, k);
                out(i, j, p) = s;
            }
        }
    }
    return out;
}

/// Cosine transform matrix W^{-1} C (I + Z), assembled from the oracle DCT.
inline Matrix m_matrix(Index n) {
    const Matrix c = dct(n);
    Matrix iz = Matrix::Identity(n, n);
    for (Index i = 0; i + 1 < n; ++i) iz(i, i + 1) = 1.0;
    Matrix w_inv = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) w_inv(i, i) = 1.0 / c(i, 0);
    return w_inv * c * iz;
}

inline Tensor3 random_tensor(Index n1, Index n2, Index n3, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Tensor3 out(n1, n2, n3);
    for (Index k = 0; k < n3; ++k) {
        for (Index j = 0; j < n2; ++j) {
            for (Index i = 0; i < n1; ++i) out(i, j, k) = normal(rng);
        }
    }
    return out;
}

inline Vector random_vector(Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = normal(rng);
    return v;
}

/// Textbook Golub-Kahan bidiagonalization of a matrix from a unit start vector.
struct MatrixGk {
    std::vector<double> alphas;
    std::vector<double> betas;
};

inline MatrixGk golub_kahan(const Matrix& a, Vector v, Index k) {
    MatrixGk out;
    v /= v.norm();
    Vector u_prev = Vector::Zero(a.rows());
    double beta_prev = 0.0;
    for (Index i = 0; i < k; ++i) {
        Vector u = a * v - beta_prev * u_prev;
        const double alpha = u.norm();
        u /= alpha;
        Vector w = a.transpose() * u - alpha * v;
        const double beta = w.norm();
        out.alphas.push_back(alpha);
        out.betas.push_back(beta);
        v = w / beta;
        u_prev = u;
        beta_prev = beta;
    }
    return out;
}

/// Principal-angle residual: ||(I - Q_b Q_b^T) Q_a||_2 for orthonormal column sets.
inline double subspace_gap(const Matrix& qa, const Matrix& qb) {
    const Matrix r = qa - qb * (qb.transpose() * qa);
    Eigen::JacobiSVD<Matrix> svd(r);
    return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

}  // namespace oracle
