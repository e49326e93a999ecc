#include "tubal/tensor3.hpp"

#include "tubal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tubal {

namespace {

void check_extents(Index n1, Index n2, Index n3) {
    if (n1 < 1 || n2 < 1 || n3 < 1) {
        throw DimensionError("tensor extents must be positive, got " + std::to_string(n1) + "x" +
                             std::to_string(n2) + "x" + std::to_string(n3));
    }
}

}  // namespace

Tube::Tube(Index n3) : entries_(Vector::Zero(n3)) {
    if (n3 < 1) throw DimensionError("tube length must be positive");
}

Tube::Tube(Vector entries) : entries_(std::move(entries)) {
    if (entries_.size() < 1) throw DimensionError("tube length must be positive");
    if (!entries_.allFinite()) throw InvalidInput("tube has non-finite entries");
}

Tensor3 Tube::as_tensor() const {
    Tensor3 t(1, 1, n3());
    for (Index k = 0; k < n3(); ++k) t(0, 0, k) = entries_[k];
    return t;
}

Tensor3::Tensor3(Index n1, Index n2, Index n3) : n1_(n1), n2_(n2), n3_(n3) {
    check_extents(n1, n2, n3);
    data_.assign(static_cast<std::size_t>(n1 * n2 * n3), 0.0);
}

Tensor3::Tensor3(Index n1, Index n2, Index n3, std::vector<double> data)
    : n1_(n1), n2_(n2), n3_(n3), data_(std::move(data)) {
    check_extents(n1, n2, n3);
    if (static_cast<Index>(data_.size()) != n1 * n2 * n3) {
        throw DimensionError("tensor data length " + std::to_string(data_.size()) +
                             " does not match extents");
    }
    if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
        throw InvalidInput("tensor data contains non-finite entries");
    }
}

Tensor3 Tensor3::from_matrix(const Matrix& m) {
    Tensor3 t(m.rows(), m.cols(), 1);
    t.slice(0) = m;
    return t;
}

Tensor3 Tensor3::from_slices(const std::vector<Matrix>& slices) {
    if (slices.empty()) throw DimensionError("from_slices needs at least one slice");
    Tensor3 t(slices.front().rows(), slices.front().cols(), static_cast<Index>(slices.size()));
    for (Index k = 0; k < t.n3(); ++k) {
        const auto& s = slices[static_cast<std::size_t>(k)];
        if (s.rows() != t.n1() || s.cols() != t.n2()) {
            throw DimensionError("from_slices: slices differ in shape");
        }
        t.slice(k) = s;
    }
    return t;
}

ConstMatrixMap Tensor3::slice(Index k) const {
    return {data_.data() + static_cast<std::size_t>(n1_ * n2_ * k), n1_, n2_};
}

MatrixMap Tensor3::slice(Index k) {
    return {data_.data() + static_cast<std::size_t>(n1_ * n2_ * k), n1_, n2_};
}

ConstMatrixMap Tensor3::tubes() const { return {data_.data(), n1_ * n2_, n3_}; }

MatrixMap Tensor3::tubes() { return {data_.data(), n1_ * n2_, n3_}; }

Tube Tensor3::tube(Index i, Index j) const {
    Vector v(n3_);
    for (Index k = 0; k < n3_; ++k) v[k] = (*this)(i, j, k);
    return Tube(std::move(v));
}

void Tensor3::set_tube(Index i, Index j, const Tube& t) {
    if (t.n3() != n3_) throw DimensionError("set_tube: tube length mismatch");
    for (Index k = 0; k < n3_; ++k) (*this)(i, j, k) = t[k];
}

Tensor3 Tensor3::lateral(Index first, Index count) const {
    if (first < 0 || count < 1 || first + count > n2_) {
        throw DimensionError("lateral slice range out of bounds");
    }
    Tensor3 out(n1_, count, n3_);
    for (Index k = 0; k < n3_; ++k) out.slice(k) = slice(k).middleCols(first, count);
    return out;
}

void Tensor3::set_lateral(Index first, const Tensor3& block) {
    if (block.n1() != n1_ || block.n3() != n3_ || first < 0 || first + block.n2() > n2_) {
        throw DimensionError("set_lateral: block does not fit");
    }
    for (Index k = 0; k < n3_; ++k) slice(k).middleCols(first, block.n2()) = block.slice(k);
}

Tensor3& Tensor3::operator+=(const Tensor3& other) {
    if (!same_shape(other)) throw DimensionError("tensor sum: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& other) {
    if (!same_shape(other)) throw DimensionError("tensor difference: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

Tensor3& Tensor3::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

Tensor3 concat_lateral(const std::vector<Tensor3>& blocks) {
    if (blocks.empty()) throw DimensionError("concat_lateral: no blocks");
    Index width = 0;
    for (const auto& b : blocks) {
        if (b.n1() != blocks.front().n1() || b.n3() != blocks.front().n3()) {
            throw DimensionError("concat_lateral: blocks differ in n1 or n3");
        }
        width += b.n2();
    }
    Tensor3 out(blocks.front().n1(), width, blocks.front().n3());
    Index at = 0;
    for (const auto& b : blocks) {
        out.set_lateral(at, b);
        at += b.n2();
    }
    return out;
}

double max_abs_diff(const Tensor3& a, const Tensor3& b) {
    if (!a.same_shape(b)) throw DimensionError("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (Index i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a.data()[static_cast<std::size_t>(i)] - b.data()[static_cast<std::size_t>(i)]));
    }
    return m;
}

}  // namespace tubal
