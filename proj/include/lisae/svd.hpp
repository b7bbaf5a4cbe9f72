#ifndef LISAE_SVD_HPP
#define LISAE_SVD_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "lisae/errors.hpp"
#include "lisae/matrix.hpp"

namespace lisae {

/// Thin SVD, X = U diag(sigma) V^T with min(m,n) triples, sigma nonincreasing.
struct Svd {
    Matrix u;
    Vector sigma;
    Matrix v;
};

struct TruncatedSvd {
    Matrix u_r;
    Vector sigma;
    Matrix v_r;
};

/// Split of a vector into its projection onto a column space and the residual
/// in the orthogonal complement.
struct OrthoDecomposition {
    Vector parallel;
    Vector orthogonal;
};

namespace detail {

/// Householder QR of a tall matrix (rows >= cols). Reflectors are stored for
/// later application of Q to arbitrary columns.
class HouseholderQr {
public:
    explicit HouseholderQr(Matrix a) : a_(std::move(a)) {
        const std::size_t m = a_.rows(), n = a_.cols();
        if (m < n) throw ParameterError("qr: requires rows >= cols");
        betas_.assign(n, 0.0);
        diag_r_.assign(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            double norm_x = 0.0;
            for (std::size_t i = k; i < m; ++i) norm_x += a_(i, k) * a_(i, k);
            norm_x = std::sqrt(norm_x);
            if (norm_x == 0.0) continue; // zero column, identity reflector
            const double alpha = a_(k, k) >= 0.0 ? -norm_x : norm_x;
            // v = x - alpha e_k, stored in-place below the diagonal
            a_(k, k) -= alpha;
            double vnorm2 = 0.0;
            for (std::size_t i = k; i < m; ++i) vnorm2 += a_(i, k) * a_(i, k);
            betas_[k] = 2.0 / vnorm2;
            diag_r_[k] = alpha;
            for (std::size_t j = k + 1; j < n; ++j) {
                double s = 0.0;
                for (std::size_t i = k; i < m; ++i) s += a_(i, k) * a_(i, j);
                s *= betas_[k];
                for (std::size_t i = k; i < m; ++i) a_(i, j) -= s * a_(i, k);
            }
        }
    }

    std::size_t rows() const { return a_.rows(); }
    std::size_t cols() const { return a_.cols(); }

    /// Upper-triangular factor (n x n).
    Matrix r() const {
        const std::size_t n = a_.cols();
        Matrix r(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            r(i, i) = diag_r_[i];
            for (std::size_t j = i + 1; j < n; ++j) r(i, j) = a_(i, j);
        }
        return r;
    }

    /// Q times an m x k matrix given as full-height columns.
    Matrix apply_q(const Matrix& x) const {
        if (x.rows() != a_.rows()) throw ParameterError("qr: apply_q shape mismatch");
        Matrix y = x;
        const std::size_t m = a_.rows(), n = a_.cols();
        for (std::size_t kk = n; kk-- > 0;) {
            if (betas_[kk] == 0.0) continue;
            for (std::size_t j = 0; j < y.cols(); ++j) {
                double s = 0.0;
                for (std::size_t i = kk; i < m; ++i) s += a_(i, kk) * y(i, j);
                s *= betas_[kk];
                for (std::size_t i = kk; i < m; ++i) y(i, j) -= s * a_(i, kk);
            }
        }
        return y;
    }

    /// Columns q_begin..q_end-1 of the full m x m Q.
    Matrix q_columns(std::size_t q_begin, std::size_t q_end) const {
        const std::size_t m = a_.rows();
        Matrix e(m, q_end - q_begin);
        for (std::size_t j = q_begin; j < q_end; ++j) e(j, j - q_begin) = 1.0;
        return apply_q(e);
    }

private:
    Matrix a_;           // reflectors below the diagonal, R strictly above
    Vector betas_;
    Vector diag_r_;
};

/// One-sided (Hestenes) Jacobi SVD of a matrix with rows >= cols: columns are
/// orthogonalized in place by plane rotations accumulated into V. Works on X
/// directly -- the X^T X eigen-route is avoided for conditioning.
inline void one_sided_jacobi(Matrix& a, Matrix& v) {
    const std::size_t n = a.cols();
    v = Matrix::identity(n);
    if (n < 2) return;
    const double tol = 1e-15;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < a.rows(); ++i) {
                    const double x = a(i, p), y = a(i, q);
                    app += x * x;
                    aqq += y * y;
                    apq += x * y;
                }
                if (std::abs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0) continue;
                rotated = true;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < a.rows(); ++i) {
                    const double x = a(i, p), y = a(i, q);
                    a(i, p) = c * x - s * y;
                    a(i, q) = s * x + c * y;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double x = v(i, p), y = v(i, q);
                    v(i, p) = c * x - s * y;
                    v(i, q) = s * x + c * y;
                }
            }
        }
        if (!rotated) break;
    }
}

/// Completes u's columns [filled, total) to an orthonormal set using the
/// Householder Q of the already-filled block (deterministic).
inline void complete_orthonormal_columns(Matrix& u, std::size_t filled) {
    const std::size_t m = u.rows(), total = u.cols();
    if (filled == total) return;
    if (filled == 0) {
        for (std::size_t j = 0; j < total; ++j)
            for (std::size_t i = 0; i < m; ++i) u(i, j) = (i == j) ? 1.0 : 0.0;
        return;
    }
    Matrix block(m, filled);
    for (std::size_t j = 0; j < filled; ++j)
        for (std::size_t i = 0; i < m; ++i) block(i, j) = u(i, j);
    HouseholderQr qr(std::move(block));
    const Matrix extra = qr.q_columns(filled, total);
    for (std::size_t j = filled; j < total; ++j)
        for (std::size_t i = 0; i < m; ++i) u(i, j) = extra(i, j - filled);
}

/// Deterministic sign convention: the largest-magnitude entry of each left
/// singular vector is made positive (first index wins ties); the matching
/// right vector is flipped with it.
inline void fix_signs(Matrix& u, Matrix& v) {
    for (std::size_t j = 0; j < u.cols(); ++j) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < u.rows(); ++i) {
            const double a = std::abs(u(i, j));
            if (a > best) {
                best = a;
                arg = i;
            }
        }
        if (u(arg, j) < 0.0) {
            for (std::size_t i = 0; i < u.rows(); ++i) u(i, j) = -u(i, j);
            if (j < v.cols())
                for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) = -v(i, j);
        }
    }
}

} // namespace detail

/// Thin SVD by one-sided Jacobi with QR preconditioning for tall inputs.
/// Singular values are nonincreasing; each left vector's largest-magnitude
/// entry is positive; zero singular directions get deterministically completed
/// orthonormal left vectors.
inline Svd svd(const Matrix& x) {
    x.require_finite("svd");
    const bool transposed = x.rows() < x.cols();
    Matrix a = transposed ? x.transpose() : x;
    const std::size_t m = a.rows(), n = a.cols();
    const std::size_t k = n; // = min of the original dims

    Matrix u(m, k), v;
    Vector sigma(k, 0.0);

    if (m > 2 * n && n > 0) {
        // QR first: Jacobi then runs on the small n x n factor.
        detail::HouseholderQr qr(a);
        Matrix r = qr.r();
        Matrix vr;
        detail::one_sided_jacobi(r, vr);
        // r's columns are now U_r * sigma; normalize the nonzero ones
        Matrix ur(n, n);
        Vector sig(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) sig[j] = norm(r.col(j));
        for (std::size_t j = 0; j < n; ++j) {
            if (sig[j] > 0.0) {
                for (std::size_t i = 0; i < n; ++i) ur(i, j) = r(i, j) / sig[j];
            }
        }
        // lift: U = Q * [ur; 0]
        Matrix lift(m, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) lift(i, j) = ur(i, j);
        u = qr.apply_q(lift);
        sigma = sig;
        v = vr;
    } else {
        Matrix work = a;
        detail::one_sided_jacobi(work, v);
        for (std::size_t j = 0; j < n; ++j) sigma[j] = norm(work.col(j));
        for (std::size_t j = 0; j < n; ++j) {
            if (sigma[j] > 0.0) {
                for (std::size_t i = 0; i < m; ++i) u(i, j) = work(i, j) / sigma[j];
            }
        }
    }

    // stable sort by descending singular value
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a_, std::size_t b_) { return sigma[a_] > sigma[b_]; });
    Matrix u_sorted(u.rows(), k), v_sorted(v.rows(), k);
    Vector sigma_sorted(k);
    for (std::size_t j = 0; j < k; ++j) {
        sigma_sorted[j] = sigma[order[j]];
        u_sorted.set_col(j, u.col(order[j]));
        v_sorted.set_col(j, v.col(order[j]));
    }

    // replace zero-sigma left vectors by a deterministic orthonormal completion
    const double drop = sigma_sorted.empty() ? 0.0 : sigma_sorted[0] * 1e-300;
    std::size_t filled = 0;
    while (filled < k && sigma_sorted[filled] > drop && sigma_sorted[filled] > 0.0) ++filled;
    detail::complete_orthonormal_columns(u_sorted, filled);

    detail::fix_signs(u_sorted, v_sorted);

    if (transposed) return {std::move(v_sorted), std::move(sigma_sorted), std::move(u_sorted)};
    return {std::move(u_sorted), std::move(sigma_sorted), std::move(v_sorted)};
}

/// First r singular triples of x; by Eckart-Young, U_r diag(sigma) V_r^T is the
/// best rank-r approximation in Frobenius norm.
inline TruncatedSvd truncated_svd(const Matrix& x, std::size_t r) {
    if (r < 1 || r > std::min(x.rows(), x.cols())) {
        throw ParameterError("truncated_svd: rank out of range");
    }
    x.require_finite("truncated_svd");
    Svd full = svd(x);
    TruncatedSvd out;
    out.u_r = Matrix(x.rows(), r);
    out.v_r = Matrix(x.cols(), r);
    out.sigma.assign(full.sigma.begin(), full.sigma.begin() + static_cast<long>(r));
    for (std::size_t j = 0; j < r; ++j) {
        out.u_r.set_col(j, full.u.col(j));
        out.v_r.set_col(j, full.v.col(j));
    }
    return out;
}

/// Largest deviation of U^T U from the identity.
inline double orthonormality_defect(const Matrix& u) {
    double worst = 0.0;
    for (std::size_t a = 0; a < u.cols(); ++a) {
        for (std::size_t b = a; b < u.cols(); ++b) {
            const double g = dot(u.col(a), u.col(b));
            worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
        }
    }
    return worst;
}

/// Orthonormal basis U_c of the complement of Col(U_r), so [U_r | U_c] is an
/// orthonormal m x m matrix. r = m yields a matrix with zero columns.
inline Matrix orthogonal_complement_basis(const Matrix& u_r) {
    const std::size_t m = u_r.rows(), r = u_r.cols();
    if (r > m) throw ParameterError("orthogonal_complement_basis: more columns than rows");
    if (orthonormality_defect(u_r) > 1e-8) {
        throw ParameterError("orthogonal_complement_basis: input columns not orthonormal");
    }
    if (r == m) return Matrix(m, 0);
    if (r == 0) return Matrix::identity(m);
    detail::HouseholderQr qr(u_r);
    return qr.q_columns(r, m);
}

/// x = parallel + orthogonal with parallel = U_r U_r^T x.
inline OrthoDecomposition decompose(std::span<const double> x, const Matrix& u_r) {
    if (x.size() != u_r.rows()) throw ParameterError("decompose: dimension mismatch");
    const Vector z = matvec_transposed(u_r, x);
    Vector parallel = matvec(u_r, z);
    Vector orthogonal(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) orthogonal[i] = x[i] - parallel[i];
    return {std::move(parallel), std::move(orthogonal)};
}

} // namespace lisae

#endif // LISAE_SVD_HPP
