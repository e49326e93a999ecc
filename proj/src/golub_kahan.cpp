#include "tubal/golub_kahan.hpp"

#include "tubal/algebra.hpp"
#include "tubal/errors.hpp"
#include "tubal/factorizations.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace tubal {

namespace {

using Slices = std::vector<Matrix>;

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Slices to_slices(const Tensor3& hat) {
    Slices out;
    for (Index k = 0; k < hat.n3(); ++k) out.emplace_back(hat.slice(k));
    return out;
}

Tensor3 spatial(const Slices& hat, const TubeTransform& transform) {
    return transform.inverse(Tensor3::from_slices(hat));
}

void fill_random(Matrix& m, std::mt19937_64& rng) {
    for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) m(i, j) = uniform01(rng);
    }
}

/// Normalize on transform-domain slices. Returns a~; replaced slices appended to `replaced`.
Vector normalize_slices(Slices& q, double tol, std::mt19937_64& rng, std::vector<Index>& replaced) {
    Vector a(static_cast<Index>(q.size()));
    for (std::size_t j = 0; j < q.size(); ++j) {
        const double norm = q[j].norm();
        if (norm > tol) {
            q[j] /= norm;
            a[static_cast<Index>(j)] = norm;
        } else {
            fill_random(q[j], rng);
            q[j] /= q[j].norm();
            a[static_cast<Index>(j)] = 0.0;
            replaced.push_back(static_cast<Index>(j));
        }
    }
    return a;
}

/// Removes from `x` its slice-wise components along previous blocks, two passes.
void reorthogonalize_slicewise(Slices& x, const std::vector<Slices>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const Slices& b : basis) {
            for (std::size_t p = 0; p < x.size(); ++p) {
                x[p] -= b[p].cwiseProduct(x[p]).sum() * b[p];
            }
        }
    }
}

/// Replaced random slices are made orthogonal to the previous blocks and renormalized.
void orthogonalize_replaced(Slices& x, const std::vector<Slices>& basis, const std::vector<Index>& replaced) {
    for (const Index p : replaced) {
        const auto s = static_cast<std::size_t>(p);
        for (int pass = 0; pass < 2; ++pass) {
            for (const Slices& b : basis) x[s] -= b[s].cwiseProduct(x[s]).sum() * b[s];
        }
        const double norm = x[s].norm();
        if (norm > 0.0) x[s] /= norm;
    }
}

void reorthogonalize_global(Tensor3& x, const std::vector<Tensor3>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const Tensor3& b : basis) x.tubes() -= inner_product(b, x) * b.tubes();
    }
}

}  // namespace

NormalizeResult normalize(const Tensor3& a, double tol, std::uint64_t seed, TransformKind kind) {
    if (!(tol > 0.0)) throw InvalidArgument("normalize: tolerance must be positive");
    const auto transform = TubeTransform::get(kind, a.n3());
    Slices q = to_slices(transform->forward(a));
    std::mt19937_64 rng(seed);
    std::vector<Index> replaced;
    const Vector a_hat = normalize_slices(q, tol, rng, replaced);
    return {spatial(q, *transform), Tube(transform->inverse(a_hat)), std::move(replaced)};
}

Matrix GkMatrixResult::bidiagonal() const {
    const Index k = steps();
    Matrix c = Matrix::Zero(k, k);
    for (Index i = 0; i < k; ++i) {
        c(i, i) = alphas[static_cast<std::size_t>(i)];
        if (i + 1 < k) c(i, i + 1) = betas[static_cast<std::size_t>(i)];
    }
    return c;
}

Matrix GkMatrixResult::extended_bidiagonal_transpose() const {
    const Index k = steps();
    Matrix ct = Matrix::Zero(k + 1, k);
    ct.topRows(k) = bidiagonal().transpose();
    if (k > 0) ct(k, k - 1) = betas.back();
    return ct;
}

GkMatrixResult tggka(const Tensor3& a, const Tensor3& v1, Index k, const GkOptions& options) {
    if (k < 1) throw InvalidArgument("tggka: k must be positive");
    if (v1.n1() != a.n2() || v1.n3() != a.n3()) throw DimensionError("tggka: V1 must be n2 x s x n3");
    const double v1_norm = fro_norm(v1);
    if (v1_norm == 0.0) throw InvalidArgument("tggka: V1 must be nonzero");

    const CProductOperator op(a, options.transform);
    const double tol = options.breakdown_tolerance * fro_norm(a);
    GkMatrixResult r;
    r.V_blocks.push_back((1.0 / v1_norm) * v1);

    for (Index i = 1; i <= k; ++i) {
        Tensor3 u = op.apply(r.V_blocks.back());
        if (i > 1) u.tubes() -= r.betas.back() * r.U_blocks.back().tubes();
        if (options.reorthogonalize) reorthogonalize_global(u, r.U_blocks);
        const double alpha = fro_norm(u);
        if (alpha <= tol) {
            r.breakdown_step = i;
            break;
        }
        u *= 1.0 / alpha;
        r.U_blocks.push_back(std::move(u));
        r.alphas.push_back(alpha);

        Tensor3 v = op.apply_transpose(r.U_blocks.back());
        v.tubes() -= alpha * r.V_blocks.back().tubes();
        if (options.reorthogonalize) reorthogonalize_global(v, r.V_blocks);
        const double beta = fro_norm(v);
        r.betas.push_back(beta);
        if (beta <= tol) {
            r.V_blocks.push_back(std::move(v));
            r.breakdown_step = i;
            break;
        }
        v *= 1.0 / beta;
        r.V_blocks.push_back(std::move(v));
    }
    return r;
}

Tensor3 TubeBidiagonal::square() const {
    const Index k = steps();
    Tensor3 c(k, k, n3);
    for (Index i = 0; i < k; ++i) {
        c.set_tube(i, i, a[static_cast<std::size_t>(i)]);
        if (i + 1 < k) c.set_tube(i, i + 1, b[static_cast<std::size_t>(i)]);
    }
    return c;
}

Tensor3 TubeBidiagonal::extended() const {
    const Index k = steps();
    Tensor3 c(k, k + 1, n3);
    for (Index i = 0; i < k; ++i) {
        c.set_tube(i, i, a[static_cast<std::size_t>(i)]);
        c.set_tube(i, i + 1, b[static_cast<std::size_t>(i)]);
    }
    return c;
}

GkTubeResult ttggka(const Tensor3& a, const Tensor3& v1, Index k, const GkOptions& options) {
    if (k < 1) throw InvalidArgument("ttggka: k must be positive");
    if (v1.n1() != a.n2() || v1.n3() != a.n3()) throw DimensionError("ttggka: V1 must be n2 x s x n3");

    const Index n3 = a.n3();
    const auto transform = TubeTransform::get(options.transform, n3);
    const CProductOperator op(a, options.transform);
    const double tol = options.normalize_tolerance.value_or(
        static_cast<double>(n3) * std::numeric_limits<double>::epsilon() * op.transformed().tubes().norm());
    if (!(tol > 0.0)) throw DegenerateDataError("ttggka: operator is zero");

    std::mt19937_64 rng(options.seed);
    GkTubeResult r;
    r.bidiag.n3 = n3;
    std::vector<Slices> u_hat;
    std::vector<Slices> v_hat;
    std::vector<Vector> a_hat;
    std::vector<Vector> b_hat;

    {
        Slices v = to_slices(transform->forward(v1));
        std::vector<Index> replaced;
        normalize_slices(v, std::numeric_limits<double>::min(), rng, replaced);
        v_hat.push_back(std::move(v));
    }

    for (Index i = 1; i <= k; ++i) {
        Slices u = op.apply_hat(v_hat.back());
        if (i > 1) {
            for (Index p = 0; p < n3; ++p) u[static_cast<std::size_t>(p)] -= b_hat.back()[p] * u_hat.back()[static_cast<std::size_t>(p)];
        }
        if (options.reorthogonalize) reorthogonalize_slicewise(u, u_hat);
        std::vector<Index> replaced;
        Vector alpha = normalize_slices(u, tol, rng, replaced);
        if (static_cast<Index>(replaced.size()) == n3) {
            r.breakdown_step = i;
            break;
        }
        if (options.reorthogonalize) orthogonalize_replaced(u, u_hat, replaced);
        for (const Index p : replaced) r.breakdown_slices.emplace_back(i, p);
        u_hat.push_back(std::move(u));
        a_hat.push_back(alpha);

        Slices v = op.apply_transpose_hat(u_hat.back());
        for (Index p = 0; p < n3; ++p) v[static_cast<std::size_t>(p)] -= alpha[p] * v_hat.back()[static_cast<std::size_t>(p)];
        if (options.reorthogonalize) reorthogonalize_slicewise(v, v_hat);
        replaced.clear();
        Vector beta = normalize_slices(v, tol, rng, replaced);
        if (options.reorthogonalize) orthogonalize_replaced(v, v_hat, replaced);
        for (const Index p : replaced) r.breakdown_slices.emplace_back(i, p);
        v_hat.push_back(std::move(v));
        b_hat.push_back(beta);
        if (static_cast<Index>(replaced.size()) == n3) {
            r.breakdown_step = i;
            break;
        }
    }

    for (const auto& u : u_hat) r.U_blocks.push_back(spatial(u, *transform));
    for (const auto& v : v_hat) r.V_blocks.push_back(spatial(v, *transform));
    for (const auto& x : a_hat) r.bidiag.a.emplace_back(transform->inverse(x));
    for (const auto& x : b_hat) r.bidiag.b.emplace_back(transform->inverse(x));
    return r;
}

RecurrenceResiduals tggka_residuals(const Tensor3& a, const GkMatrixResult& r, TransformKind kind) {
    const Index k = r.steps();
    if (k == 0) return {0.0, 0.0};
    const std::vector<Tensor3> u(r.U_blocks.begin(), r.U_blocks.begin() + k);
    const std::vector<Tensor3> v(r.V_blocks.begin(), r.V_blocks.begin() + k);
    const Matrix c = r.bidiagonal();

    const std::vector<Tensor3> uc = global_combine(u, c);
    const std::vector<Tensor3> vct = global_combine(v, Matrix(c.transpose()));
    double forward = 0.0;
    double backward = 0.0;
    for (Index i = 0; i < k; ++i) {
        const auto s = static_cast<std::size_t>(i);
        forward += std::pow(fro_norm(cproduct(a, v[s], kind) - uc[s]), 2);
        Tensor3 rhs = vct[s];
        if (i == k - 1) rhs += r.betas.back() * r.V_blocks[static_cast<std::size_t>(k)];
        backward += std::pow(fro_norm(cproduct(transpose(a), u[s], kind) - rhs), 2);
    }
    return {std::sqrt(forward), std::sqrt(backward)};
}

RecurrenceResiduals ttggka_residuals(const Tensor3& a, const GkTubeResult& r, TransformKind kind) {
    const Index k = r.steps();
    if (k == 0) return {0.0, 0.0};
    const Index s = r.U_blocks.front().n2();
    const Index n3 = a.n3();
    const std::vector<Tensor3> v_k(r.V_blocks.begin(), r.V_blocks.begin() + k);
    const std::vector<Tensor3> v_k1(r.V_blocks.begin(), r.V_blocks.begin() + k + 1);
    const Tensor3 uu = concat_lateral(r.U_blocks);
    const Tensor3 vv = concat_lateral(v_k);
    const Tensor3 vv1 = concat_lateral(v_k1);
    const Tensor3 id_s = identity_tensor(s, n3, kind);

    const Tensor3 lhs1 = cproduct(a, vv, kind);
    const Tensor3 rhs1 = cproduct(uu, ckron(r.bidiag.square(), id_s, kind), kind);
    const Tensor3 lhs2 = cproduct(transpose(a), uu, kind);
    const Tensor3 rhs2 = cproduct(vv1, ckron(transpose(r.bidiag.extended()), id_s, kind), kind);
    return {fro_norm(lhs1 - rhs1), fro_norm(lhs2 - rhs2)};
}

Tensor3 random_start_block(Index n2, Index s, Index n3, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Tensor3 v(n2, s, n3);
    for (double& x : v.data()) x = gauss(rng);
    return v;
}

LeadingSingularElements leading_singular_elements(const Tensor3& a, Index k, Index r, const GkOptions& options) {
    if (r < 1 || r > k) {
        throw InvalidArgument("leading_singular_elements: need 1 <= r <= k, got r=" + std::to_string(r) +
                              ", k=" + std::to_string(k));
    }
    if (k > std::min(a.n1(), a.n2())) {
        throw InvalidArgument("leading_singular_elements: k exceeds min(n1, n2)");
    }
    const Tensor3 v1 = random_start_block(a.n2(), 1, a.n3(), options.seed);
    GkTubeResult krylov = ttggka(a, v1, k, options);
    const Index steps = krylov.steps();
    if (steps < r) {
        throw DegenerateDataError("leading_singular_elements: bidiagonalization stopped after " +
                                  std::to_string(steps) + " steps, fewer than r=" + std::to_string(r));
    }
    const CsvdFactors small = csvd(krylov.bidiag.extended(), options.transform);
    LeadingSingularElements out{{}, cproduct(concat_lateral(krylov.U_blocks), small.U.lateral(0, r), options.transform),
                                std::move(krylov)};
    for (Index i = 0; i < r; ++i) out.sigma.push_back(small.singular_tube(i));
    return out;
}

}  // namespace tubal
