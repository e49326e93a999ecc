#include "tubal/algebra.hpp"

#include "tubal/errors.hpp"
#include "tubal/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tubal {

namespace {

std::vector<Matrix> hat_slices(const Tensor3& transformed) {
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(transformed.n3()));
    for (Index k = 0; k < transformed.n3(); ++k) out.emplace_back(transformed.slice(k));
    return out;
}

Vector singular_values(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    if (std::min(m.rows(), m.cols()) > 64) return Eigen::BDCSVD<Matrix>(m).singularValues();
    return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

}  // namespace

Matrix BlockDiagonalForm::assemble() const {
    if (slices.empty()) return {};
    const Index r = slices.front().rows();
    const Index c = slices.front().cols();
    Matrix out = Matrix::Zero(r * n3(), c * n3());
    for (Index k = 0; k < n3(); ++k) out.block(k * r, k * c, r, c) = slices[static_cast<std::size_t>(k)];
    return out;
}

BlockDiagonalForm block_diagonal(const Tensor3& a, TransformKind kind) {
    return {hat_slices(to_transform_domain(a, kind))};
}

Tensor3 from_block_diagonal(const BlockDiagonalForm& form, TransformKind kind) {
    return from_transform_domain(Tensor3::from_slices(form.slices), kind);
}

Matrix mat(const Tensor3& a) {
    const Index n1 = a.n1();
    const Index n2 = a.n2();
    const Index n = a.n3();
    Matrix out = Matrix::Zero(n1 * n, n2 * n);
    // Block (i,j) is sum_k th(e_k)(i,j) A_k.
    for (Index k = 0; k < n; ++k) {
        const Matrix pattern = toeplitz_plus_hankel(Vector::Unit(n, k));
        const auto ak = a.slice(k);
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) {
                if (pattern(i, j) != 0.0) out.block(i * n1, j * n2, n1, n2) += pattern(i, j) * ak;
            }
        }
    }
    return out;
}

Tensor3 ten(const Matrix& m, Index n1, Index n2, Index n3) {
    if (n1 < 1 || n2 < 1 || n3 < 1 || m.rows() != n1 * n3 || m.cols() != n2 * n3) {
        throw DimensionError("ten: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             ", expected " + std::to_string(n1 * n3) + "x" + std::to_string(n2 * n3));
    }
    // First block column holds A_i + A_{i+1} (i < n3-1) and A_{n3} last.
    Tensor3 out(n1, n2, n3);
    out.slice(n3 - 1) = m.block((n3 - 1) * n1, 0, n1, n2);
    for (Index i = n3 - 2; i >= 0; --i) {
        out.slice(i) = m.block(i * n1, 0, n1, n2) - out.slice(i + 1);
    }
    return out;
}

Tensor3 cproduct(const Tensor3& a, const Tensor3& b, TransformKind kind) {
    if (a.n2() != b.n1() || a.n3() != b.n3()) {
        throw DimensionError("cproduct: cannot multiply " + std::to_string(a.n1()) + "x" +
                             std::to_string(a.n2()) + "x" + std::to_string(a.n3()) + " by " +
                             std::to_string(b.n1()) + "x" + std::to_string(b.n2()) + "x" +
                             std::to_string(b.n3()));
    }
    return CProductOperator(a, kind).apply(b);
}

Tensor3 transpose(const Tensor3& a) {
    Tensor3 out(a.n2(), a.n1(), a.n3());
    for (Index k = 0; k < a.n3(); ++k) out.slice(k) = a.slice(k).transpose();
    return out;
}

Tensor3 identity_tensor(Index n1, Index n3, TransformKind kind) {
    Tensor3 hat(n1, n1, n3);
    for (Index k = 0; k < n3; ++k) hat.slice(k).setIdentity();
    return from_transform_domain(hat, kind);
}

Tube identity_tube(Index n3, TransformKind kind) {
    return Tube(TubeTransform::get(kind, n3)->inverse(Vector::Ones(n3)));
}

Tensor3 inverse(const Tensor3& a, TransformKind kind) {
    if (a.n1() != a.n2()) throw DimensionError("inverse: frontal slices must be square");
    const Tensor3 hat = to_transform_domain(a, kind);
    Tensor3 out_hat(a.n1(), a.n1(), a.n3());
    const double limit = 1.0 / (100.0 * std::numeric_limits<double>::epsilon());
    for (Index k = 0; k < a.n3(); ++k) {
        const Matrix s = hat.slice(k);
        const Vector sv = singular_values(s);
        const double cond = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1]
                                                     : std::numeric_limits<double>::infinity();
        if (!(cond <= limit)) throw SingularTensorError(static_cast<std::size_t>(k), cond);
        out_hat.slice(k) = s.partialPivLu().inverse();
    }
    return from_transform_domain(out_hat, kind);
}

double inner_product(const Tensor3& a, const Tensor3& b) {
    if (!a.same_shape(b)) throw DimensionError("inner_product: shape mismatch");
    return a.tubes().cwiseProduct(b.tubes()).sum();
}

double fro_norm(const Tensor3& a) { return a.tubes().norm(); }

Tube tube_dot(const Tensor3& a, const Tensor3& b, TransformKind kind) {
    if (!a.same_shape(b)) throw DimensionError("tube_dot: shape mismatch");
    const auto transform = TubeTransform::get(kind, a.n3());
    const Tensor3 ah = transform->forward(a);
    const Tensor3 bh = transform->forward(b);
    Vector hat(a.n3());
    for (Index k = 0; k < a.n3(); ++k) hat[k] = ah.slice(k).cwiseProduct(bh.slice(k)).sum();
    return Tube(transform->inverse(hat));
}

Tensor3 tube_times(const Tube& a, const Tensor3& b, TransformKind kind) {
    if (a.n3() != b.n3()) throw DimensionError("tube_times: tube length mismatch");
    const auto transform = TubeTransform::get(kind, b.n3());
    const Vector ah = transform->forward(a.entries());
    Tensor3 bh = transform->forward(b);
    for (Index k = 0; k < b.n3(); ++k) bh.slice(k) *= ah[k];
    return transform->inverse(bh);
}

Tube tube_product(const Tube& a, const Tube& b, TransformKind kind) {
    if (a.n3() != b.n3()) throw DimensionError("tube_product: tube length mismatch");
    const auto transform = TubeTransform::get(kind, a.n3());
    const Vector prod = transform->forward(a.entries()).cwiseProduct(transform->forward(b.entries()));
    return Tube(transform->inverse(prod));
}

Tensor3 global_combine(const std::vector<Tensor3>& blocks, const Vector& y) {
    if (blocks.empty() || static_cast<Index>(blocks.size()) != y.size()) {
        throw DimensionError("global_combine: need one weight per block");
    }
    Tensor3 out(blocks.front().n1(), blocks.front().n2(), blocks.front().n3());
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (!blocks[j].same_shape(out)) throw DimensionError("global_combine: blocks differ in shape");
        const double w = y[static_cast<Index>(j)];
        if (w != 0.0) out.tubes() += w * blocks[j].tubes();
    }
    return out;
}

std::vector<Tensor3> global_combine(const std::vector<Tensor3>& blocks, const Matrix& c) {
    std::vector<Tensor3> out;
    out.reserve(static_cast<std::size_t>(c.cols()));
    for (Index i = 0; i < c.cols(); ++i) out.push_back(global_combine(blocks, Vector(c.col(i))));
    return out;
}

Tensor3 ckron(const Tensor3& a, const Tensor3& b, TransformKind kind) {
    if (a.n3() != b.n3()) throw DimensionError("ckron: tube length mismatch");
    const auto transform = TubeTransform::get(kind, a.n3());
    const Tensor3 ah = transform->forward(a);
    const Tensor3 bh = transform->forward(b);
    Tensor3 out(a.n1() * b.n1(), a.n2() * b.n2(), a.n3());
    for (Index k = 0; k < a.n3(); ++k) {
        auto dst = out.slice(k);
        const auto as = ah.slice(k);
        const auto bs = bh.slice(k);
        for (Index i = 0; i < a.n1(); ++i) {
            for (Index j = 0; j < a.n2(); ++j) {
                dst.block(i * b.n1(), j * b.n2(), b.n1(), b.n2()) = as(i, j) * bs;
            }
        }
    }
    return transform->inverse(out);
}

Tensor3 tvect(const Tensor3& a) {
    // Column-major slices already stack the lateral slices in order.
    return Tensor3(a.n1() * a.n2(), 1, a.n3(), std::vector<double>(a.data().begin(), a.data().end()));
}

Tensor3 block_compose(const Tensor3& a, const Tensor3& b, const Tensor3& c, const Tensor3& d) {
    const Index n3 = a.n3();
    if (b.n3() != n3 || c.n3() != n3 || d.n3() != n3) throw DimensionError("block_compose: n3 mismatch");
    if (a.n1() != b.n1() || c.n1() != d.n1()) throw DimensionError("block_compose: row counts differ");
    if (a.n2() != c.n2() || b.n2() != d.n2()) throw DimensionError("block_compose: column counts differ");
    Tensor3 out(a.n1() + c.n1(), a.n2() + b.n2(), n3);
    for (Index k = 0; k < n3; ++k) {
        auto s = out.slice(k);
        s.topLeftCorner(a.n1(), a.n2()) = a.slice(k);
        s.topRightCorner(b.n1(), b.n2()) = b.slice(k);
        s.bottomLeftCorner(c.n1(), c.n2()) = c.slice(k);
        s.bottomRightCorner(d.n1(), d.n2()) = d.slice(k);
    }
    return out;
}

bool is_orthogonal(const Tensor3& q, double tol, TransformKind kind) {
    if (q.n1() != q.n2()) return false;
    const Tensor3 id = identity_tensor(q.n1(), q.n3(), kind);
    const Tensor3 qt = transpose(q);
    return fro_norm(cproduct(qt, q, kind) - id) <= tol && fro_norm(cproduct(q, qt, kind) - id) <= tol;
}

Index tubal_rank(const Tensor3& a, double tol, TransformKind kind) {
    const auto transform = TubeTransform::get(kind, a.n3());
    const Tensor3 hat = transform->forward(a);
    const Index p = std::min(a.n1(), a.n2());
    Matrix sigma_hat(p, a.n3());
    for (Index k = 0; k < a.n3(); ++k) sigma_hat.col(k) = singular_values(hat.slice(k));
    // Row i of sigma_hat is the transform of the singular tube S(i,i,:).
    const Matrix sigma = sigma_hat * transform->inverse_matrix().transpose();
    const double lead = sigma.row(0).norm();
    if (lead == 0.0) return 0;
    Index rank = 0;
    for (Index i = 0; i < p; ++i) {
        if (sigma.row(i).norm() > tol * lead) ++rank;
    }
    return rank;
}

std::vector<Index> multi_rank(const Tensor3& a, double tol, TransformKind kind) {
    const Tensor3 hat = to_transform_domain(a, kind);
    std::vector<Vector> values;
    double largest = 0.0;
    for (Index k = 0; k < a.n3(); ++k) {
        values.push_back(singular_values(hat.slice(k)));
        if (values.back().size() > 0) largest = std::max(largest, values.back()[0]);
    }
    std::vector<Index> ranks;
    for (const auto& v : values) {
        ranks.push_back(largest == 0.0 ? 0 : static_cast<Index>((v.array() > tol * largest).count()));
    }
    return ranks;
}

CProductOperator::CProductOperator(const Tensor3& a, TransformKind kind)
    : n1_(a.n1()), n2_(a.n2()), n3_(a.n3()), kind_(kind), transformed_(to_transform_domain(a, kind)) {}

std::vector<Matrix> CProductOperator::apply_hat(const std::vector<Matrix>& x_hat) const {
    if (static_cast<Index>(x_hat.size()) != n3_) throw DimensionError("apply_hat: slice count mismatch");
    std::vector<Matrix> out(x_hat.size());
    parallel_for(x_hat.size(), [&](std::size_t k) {
        if (x_hat[k].rows() != n2_) throw DimensionError("apply_hat: inner dimension mismatch");
        out[k].noalias() = transformed_.slice(static_cast<Index>(k)) * x_hat[k];
    });
    return out;
}

std::vector<Matrix> CProductOperator::apply_transpose_hat(const std::vector<Matrix>& x_hat) const {
    if (static_cast<Index>(x_hat.size()) != n3_) throw DimensionError("apply_transpose_hat: slice count mismatch");
    std::vector<Matrix> out(x_hat.size());
    parallel_for(x_hat.size(), [&](std::size_t k) {
        if (x_hat[k].rows() != n1_) throw DimensionError("apply_transpose_hat: inner dimension mismatch");
        out[k].noalias() = transformed_.slice(static_cast<Index>(k)).transpose() * x_hat[k];
    });
    return out;
}

Tensor3 CProductOperator::apply(const Tensor3& x) const {
    if (x.n1() != n2_ || x.n3() != n3_) throw DimensionError("cproduct: inner dimension or n3 mismatch");
    const auto transform = TubeTransform::get(kind_, n3_);
    return transform->inverse(Tensor3::from_slices(apply_hat(hat_slices(transform->forward(x)))));
}

Tensor3 CProductOperator::apply_transpose(const Tensor3& x) const {
    if (x.n1() != n1_ || x.n3() != n3_) throw DimensionError("cproduct: inner dimension or n3 mismatch");
    const auto transform = TubeTransform::get(kind_, n3_);
    return transform->inverse(Tensor3::from_slices(apply_transpose_hat(hat_slices(transform->forward(x)))));
}

}  // namespace tubal
