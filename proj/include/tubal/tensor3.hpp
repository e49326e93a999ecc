#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace tubal {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using MatrixMap = Eigen::Map<Matrix>;
using ConstMatrixMap = Eigen::Map<const Matrix>;

class Tensor3;

/// A 1x1xn3 tubal scalar, the scalar of the c-product algebra.
class Tube {
public:
    explicit Tube(Index n3);
    explicit Tube(Vector entries);

    Index n3() const noexcept { return entries_.size(); }
    double operator[](Index k) const { return entries_[k]; }
    double& operator[](Index k) { return entries_[k]; }
    const Vector& entries() const noexcept { return entries_; }
    Vector& entries() noexcept { return entries_; }
    double norm() const { return entries_.norm(); }

    Tensor3 as_tensor() const;

private:
    Vector entries_;
};

/// Dense real n1 x n2 x n3 tensor.
///
/// Storage is slice-major: frontal slice k occupies a contiguous block of
/// n1*n2 values, column-major within the slice. Entry (i,j,k) lives at
/// i + n1*(j + n2*k). Viewed as an (n1*n2) x n3 matrix, each row is a tube.
class Tensor3 {
public:
    Tensor3(Index n1, Index n2, Index n3);
    /// Adopts `data` (length n1*n2*n3, slice-major). Rejects non-finite entries.
    Tensor3(Index n1, Index n2, Index n3, std::vector<double> data);

    static Tensor3 zeros(Index n1, Index n2, Index n3) { return {n1, n2, n3}; }
    /// A single frontal slice, i.e. the matrix embedded with n3 = 1.
    static Tensor3 from_matrix(const Matrix& m);
    static Tensor3 from_slices(const std::vector<Matrix>& slices);

    Index n1() const noexcept { return n1_; }
    Index n2() const noexcept { return n2_; }
    Index n3() const noexcept { return n3_; }
    Index size() const noexcept { return static_cast<Index>(data_.size()); }

    double operator()(Index i, Index j, Index k) const { return data_[offset(i, j, k)]; }
    double& operator()(Index i, Index j, Index k) { return data_[offset(i, j, k)]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    ConstMatrixMap slice(Index k) const;
    MatrixMap slice(Index k);

    /// The (n1*n2) x n3 view whose rows are the tubes.
    ConstMatrixMap tubes() const;
    MatrixMap tubes();

    Tube tube(Index i, Index j) const;
    void set_tube(Index i, Index j, const Tube& t);

    /// Lateral slices [first, first + count) as an n1 x count x n3 tensor.
    Tensor3 lateral(Index first, Index count = 1) const;
    void set_lateral(Index first, const Tensor3& block);

    Tensor3& operator+=(const Tensor3& other);
    Tensor3& operator-=(const Tensor3& other);
    Tensor3& operator*=(double s);

    bool same_shape(const Tensor3& other) const noexcept {
        return n1_ == other.n1_ && n2_ == other.n2_ && n3_ == other.n3_;
    }

    friend bool operator==(const Tensor3& a, const Tensor3& b) {
        return a.same_shape(b) && a.data_ == b.data_;
    }

private:
    std::size_t offset(Index i, Index j, Index k) const noexcept {
        return static_cast<std::size_t>(i + n1_ * (j + n2_ * k));
    }

    Index n1_;
    Index n2_;
    Index n3_;
    std::vector<double> data_;
};

Tensor3 operator+(Tensor3 a, const Tensor3& b);
Tensor3 operator-(Tensor3 a, const Tensor3& b);
Tensor3 operator*(double s, Tensor3 a);

/// Concatenates tensors along mode 2: [A_1, ..., A_m].
Tensor3 concat_lateral(const std::vector<Tensor3>& blocks);

/// Entrywise maximum of |a - b|.
double max_abs_diff(const Tensor3& a, const Tensor3& b);

}  // namespace tubal
