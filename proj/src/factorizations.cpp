#include "tubal/factorizations.hpp"

#include "tubal/algebra.hpp"
#include "tubal/errors.hpp"
#include "tubal/parallel.hpp"

#include <cmath>
#include <string>

namespace tubal {

namespace {

struct SliceSvd {
    Matrix u;
    Vector s;
    Matrix v;
};

Index argmax_abs(const Eigen::Ref<const Vector>& x) {
    Index at = 0;
    x.cwiseAbs().maxCoeff(&at);
    return at;
}

SliceSvd slice_svd(const Matrix& m, bool full) {
    const unsigned flags = full ? (Eigen::ComputeFullU | Eigen::ComputeFullV)
                                : (Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::BDCSVD<Matrix> svd(m, flags);
    SliceSvd out{svd.matrixU(), svd.singularValues(), svd.matrixV()};
    const Index p = out.s.size();
    for (Index i = 0; i < out.u.cols(); ++i) {
        if (out.u(argmax_abs(out.u.col(i)), i) < 0.0) {
            out.u.col(i) *= -1.0;
            if (i < p) out.v.col(i) *= -1.0;
        }
    }
    // Right vectors without a partner carry their own sign convention.
    for (Index i = p; i < out.v.cols(); ++i) {
        if (out.v(argmax_abs(out.v.col(i)), i) < 0.0) out.v.col(i) *= -1.0;
    }
    return out;
}

void require_finite(const Tensor3& a, const char* who) {
    if (!a.tubes().allFinite()) throw InvalidInput(std::string(who) + ": non-finite input");
}

CsvdFactors csvd_impl(const Tensor3& a, TransformKind kind, bool full) {
    require_finite(a, "csvd");
    const auto transform = TubeTransform::get(kind, a.n3());
    const Tensor3 hat = transform->forward(a);
    const Index p = std::min(a.n1(), a.n2());
    const Index ucols = full ? a.n1() : p;
    const Index vcols = full ? a.n2() : p;
    Tensor3 u_hat(a.n1(), ucols, a.n3());
    Tensor3 s_hat(ucols, vcols, a.n3());
    Tensor3 v_hat(a.n2(), vcols, a.n3());
    parallel_for(static_cast<std::size_t>(a.n3()), [&](std::size_t slice) {
        const Index k = static_cast<Index>(slice);
        const SliceSvd svd = slice_svd(hat.slice(k), full);
        u_hat.slice(k) = svd.u;
        v_hat.slice(k) = svd.v;
        for (Index i = 0; i < p; ++i) s_hat(i, i, k) = svd.s[i];
    });
    return {transform->inverse(u_hat), transform->inverse(s_hat), transform->inverse(v_hat), kind};
}

}  // namespace

Matrix CsvdFactors::transformed_singular_values() const {
    const Tensor3 hat = to_transform_domain(S, transform);
    Matrix out(rank_bound(), S.n3());
    for (Index k = 0; k < S.n3(); ++k) out.col(k) = hat.slice(k).diagonal().head(rank_bound());
    return out;
}

CsvdFactors csvd(const Tensor3& a, TransformKind kind) { return csvd_impl(a, kind, true); }

CsvdFactors csvd_economy(const Tensor3& a, TransformKind kind) { return csvd_impl(a, kind, false); }

TruncatedCsvd truncated_csvd(const Tensor3& a, Index r, TransformKind kind) {
    const Index p = std::min(a.n1(), a.n2());
    if (r < 1 || r > p) {
        throw InvalidArgument("truncated_csvd: rank " + std::to_string(r) + " outside [1, " + std::to_string(p) + "]");
    }
    const CsvdFactors f = csvd_economy(a, kind);
    TruncatedCsvd out{f.U.lateral(0, r), Tensor3(r, r, a.n3()), f.V.lateral(0, r), Tensor3(a.n1(), a.n2(), a.n3())};
    const auto transform = TubeTransform::get(kind, a.n3());
    const Tensor3 u_hat = transform->forward(out.U);
    const Tensor3 v_hat = transform->forward(out.V);
    const Tensor3 s_hat = transform->forward(f.S);
    Tensor3 approx_hat(a.n1(), a.n2(), a.n3());
    Tensor3 sr_hat(r, r, a.n3());
    for (Index k = 0; k < a.n3(); ++k) {
        const Vector sigma = s_hat.slice(k).diagonal().head(r);
        sr_hat.slice(k) = sigma.asDiagonal();
        approx_hat.slice(k).noalias() = u_hat.slice(k) * sigma.asDiagonal() * v_hat.slice(k).transpose();
    }
    out.S = transform->inverse(sr_hat);
    out.approximation = transform->inverse(approx_hat);
    return out;
}

Tensor3 expand_singular_triplets(const CsvdFactors& f, Index count) {
    if (count < 1 || count > f.rank_bound()) throw InvalidArgument("expand_singular_triplets: count out of range");
    Tensor3 sum(f.U.n1(), f.V.n1(), f.U.n3());
    for (Index i = 0; i < count; ++i) {
        const Tensor3 s_ii = f.S.tube(i, i).as_tensor();
        sum += cproduct(cproduct(f.U.lateral(i), s_ii, f.transform), transpose(f.V.lateral(i)), f.transform);
    }
    return sum;
}

Tensor3 reconstruct(const CsvdFactors& f) {
    return cproduct(cproduct(f.U, f.S, f.transform), transpose(f.V), f.transform);
}

CqrFactors cqr(const Tensor3& a, TransformKind kind) {
    require_finite(a, "cqr");
    const auto transform = TubeTransform::get(kind, a.n3());
    const Tensor3 hat = transform->forward(a);
    Tensor3 q_hat(a.n1(), a.n1(), a.n3());
    Tensor3 r_hat(a.n1(), a.n2(), a.n3());
    parallel_for(static_cast<std::size_t>(a.n3()), [&](std::size_t slice) {
        const Index k = static_cast<Index>(slice);
        Eigen::HouseholderQR<Matrix> qr(hat.slice(k));
        Matrix q = qr.householderQ();
        Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Index i = 0; i < std::min(a.n1(), a.n2()); ++i) {
            if (r(i, i) < 0.0) {
                r.row(i) *= -1.0;
                q.col(i) *= -1.0;
            }
        }
        q_hat.slice(k) = q;
        r_hat.slice(k) = r;
    });
    return {transform->inverse(q_hat), transform->inverse(r_hat), kind};
}

SliceSumCheck slice_sum_identity_check(const CsvdFactors& f) {
    const Tensor3 a = reconstruct(f);
    const Tensor3 vt = transpose(f.V);
    auto weighted = [](const Tensor3& t, const Vector& w) {
        Matrix sum = Matrix::Zero(t.n1(), t.n2());
        for (Index k = 0; k < t.n3(); ++k) sum += w[k] * t.slice(k);
        return sum;
    };
    const Vector ones = Vector::Ones(a.n3());
    SliceSumCheck out;
    out.lhs = weighted(a, ones);
    out.rhs = weighted(f.U, ones) * weighted(f.S, ones) * weighted(vt, ones);
    const double rr = out.rhs.squaredNorm();
    out.measured_constant = rr > 0.0 ? out.lhs.cwiseProduct(out.rhs).sum() / rr : 0.0;
    const double lhs_norm = out.lhs.norm();
    out.fit_residual = lhs_norm > 0.0 ? (out.lhs - out.measured_constant * out.rhs).norm() / lhs_norm : 0.0;

    const Vector w = TubeTransform::get(f.transform, a.n3())->forward_matrix().row(0).transpose();
    const Matrix wl = weighted(a, w);
    const Matrix wr = weighted(f.U, w) * weighted(f.S, w) * weighted(vt, w);
    out.weighted_residual = wl.norm() > 0.0 ? (wl - wr).norm() / wl.norm() : (wl - wr).norm();
    return out;
}

}  // namespace tubal
