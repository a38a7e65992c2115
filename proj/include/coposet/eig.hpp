// Symmetric eigendecomposition (cyclic Jacobi), tolerance-aware rank and
// kernel computation, PSD tests, and small dense solvers.
//
// Jacobi is exact enough for the scales in this library: all inputs are
// O(1) trigonometric values and n stays below ~50.  Nonsymmetric rank and
// kernel questions are routed through the symmetric embedding
// [[0, M], [M^T, 0]], whose eigenvalues are +-(singular values of M);
// this avoids squaring the condition number the way M^T M would.

#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "coposet/matrix.hpp"

namespace coposet {

struct Spectrum {
    Vec eigenvalues;                // ascending
    std::vector<Vec> eigenvectors;  // orthonormal, eigenvectors[k] pairs with eigenvalues[k]
};

namespace detail {

inline void jacobi_rotate(std::vector<Vec>& a, std::vector<Vec>& v, int p, int q, int n) {
    double apq = a[p][q];
    if (apq == 0.0) return;
    double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    double t = (theta >= 0.0) ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                              : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
    double c = 1.0 / std::sqrt(1.0 + t * t);
    double s = t * c;
    double tau = s / (1.0 + c);

    double app = a[p][p], aqq = a[q][q];
    a[p][p] = app - t * apq;
    a[q][q] = aqq + t * apq;
    a[p][q] = a[q][p] = 0.0;
    for (int k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        double akp = a[k][p], akq = a[k][q];
        a[k][p] = a[p][k] = akp - s * (akq + tau * akp);
        a[k][q] = a[q][k] = akq + s * (akp - tau * akq);
    }
    for (int k = 0; k < n; ++k) {
        double vkp = v[k][p], vkq = v[k][q];
        v[k][p] = vkp - s * (vkq + tau * vkp);
        v[k][q] = vkq + s * (vkp - tau * vkq);
    }
}

}  // namespace detail

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
/// Eigenvalues ascending; ties broken by the sign convention that each
/// eigenvector's first nonzero component is positive.  Throws on
/// non-convergence (100-sweep cap).
inline Spectrum eig_sym(const SymMatrix& A) {
    int n = A.n();
    std::vector<Vec> a(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n)));
    std::vector<Vec> v(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) {
        v[i][i] = 1.0;
        for (int j = 0; j < n; ++j) a[i][j] = A(i, j);
    }

    const int max_sweeps = 100;
    double scale = A.norm_inf();
    bool converged = (n == 1);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a[p][q]));
        if (off <= 1e-15 * std::max(1.0, scale)) {
            converged = true;
            break;
        }
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q, n);
    }
    if (!converged) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a[p][q]));
        if (off > 1e-12 * std::max(1.0, scale))
            throw std::runtime_error("eig_sym: Jacobi did not converge within 100 sweeps");
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] < a[j][j]; });

    Spectrum sp;
    sp.eigenvalues.resize(static_cast<std::size_t>(n));
    sp.eigenvectors.assign(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n)));
    for (int k = 0; k < n; ++k) {
        int c = order[static_cast<std::size_t>(k)];
        sp.eigenvalues[static_cast<std::size_t>(k)] = a[c][c];
        Vec& ev = sp.eigenvectors[static_cast<std::size_t>(k)];
        for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = v[i][c];
        for (double x : ev) {
            if (std::abs(x) > 1e-12) {
                if (x < 0.0)
                    for (double& y : ev) y = -y;
                break;
            }
        }
    }
    return sp;
}

struct RankKernel {
    int rank = 0;
    std::vector<Vec> kernel_basis;  // orthonormal
};

/// Rank and orthonormal kernel basis of a symmetric matrix.  An eigenvalue
/// counts as zero when |lambda| <= rank_eps * max(1, |lambda|_max).
inline RankKernel rank_and_kernel(const SymMatrix& A, const Tolerance& tol = {}) {
    Spectrum sp = eig_sym(A);
    double lmax = 0.0;
    for (double l : sp.eigenvalues) lmax = std::max(lmax, std::abs(l));
    double cut = tol.rank_eps * std::max(1.0, lmax);
    RankKernel rk;
    for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k) {
        if (std::abs(sp.eigenvalues[k]) <= cut)
            rk.kernel_basis.push_back(sp.eigenvectors[k]);
        else
            ++rk.rank;
    }
    return rk;
}

/// min eigenvalue >= -psd_eps * (1 + |A|_inf).
inline bool is_psd(const SymMatrix& A, const Tolerance& tol = {}) {
    Spectrum sp = eig_sym(A);
    return sp.eigenvalues.front() >= -tol.psd_eps * (1.0 + A.norm_inf());
}

inline double min_eigenvalue(const SymMatrix& A) { return eig_sym(A).eigenvalues.front(); }

// ---------------------------------------------------------------------------
// General (nonsymmetric / rectangular) matrices, row-major.

struct Mat {
    int rows = 0, cols = 0;
    Vec a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

struct Svd {
    Vec singular_values;          // descending
    std::vector<Vec> right_vecs;  // orthonormal, right_vecs[k] pairs with singular_values[k]
};

/// Singular values and right singular vectors via the symmetric embedding.
/// Eigenpairs with clearly positive eigenvalue yield right vectors directly
/// (lower block scaled by sqrt(2)); the remaining slots are completed with an
/// orthonormal basis of the complement, which spans the kernel of M.  Near-
/// zero eigenpairs of the embedding mix left and right null vectors, so their
/// lower blocks are never used directly.
inline Svd svd(const Mat& M) {
    int r = M.rows, c = M.cols, n = r + c;
    SymMatrix E(n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            E(i, r + j) = M(i, j);
            E(r + j, i) = M(i, j);
        }
    Spectrum sp = eig_sym(E);

    double lmax = 0.0;
    for (double l : sp.eigenvalues) lmax = std::max(lmax, std::abs(l));
    double extract_cut = 1e-12 * std::max(1.0, lmax);

    Svd out;
    for (int k = n - 1; k >= 0 && static_cast<int>(out.singular_values.size()) < c; --k) {
        double lam = sp.eigenvalues[static_cast<std::size_t>(k)];
        if (lam <= extract_cut) break;
        Vec v(static_cast<std::size_t>(c));
        for (int j = 0; j < c; ++j)
            v[static_cast<std::size_t>(j)] =
                sp.eigenvectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(r + j)];
        double nv = std::sqrt(dot(v, v));
        if (nv < 0.5) continue;  // defect: not a genuine right vector
        for (double& x : v) x /= nv;
        out.singular_values.push_back(lam);
        out.right_vecs.push_back(std::move(v));
    }

    // Complete with an orthonormal basis of the complement (sigma = 0 slots).
    for (int j = 0; j < c && static_cast<int>(out.right_vecs.size()) < c; ++j) {
        Vec e(static_cast<std::size_t>(c), 0.0);
        e[static_cast<std::size_t>(j)] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& b : out.right_vecs) {
                double p = dot(e, b);
                for (std::size_t t = 0; t < e.size(); ++t) e[t] -= p * b[t];
            }
        double ne = std::sqrt(dot(e, e));
        if (ne > 1e-8) {
            for (double& x : e) x /= ne;
            out.singular_values.push_back(0.0);
            out.right_vecs.push_back(std::move(e));
        }
    }
    if (static_cast<int>(out.right_vecs.size()) != c)
        throw std::runtime_error("svd: basis completion failed");
    return out;
}

inline int numeric_rank(const Mat& M, const Tolerance& tol = {}) {
    Svd s = svd(M);
    double smax = s.singular_values.empty() ? 0.0 : s.singular_values.front();
    double cut = tol.rank_eps * std::max(1.0, smax);
    int r = 0;
    for (double sv : s.singular_values)
        if (sv > cut) ++r;
    return r;
}

/// Orthonormal basis of {x : M x = 0}.
inline std::vector<Vec> nullspace(const Mat& M, const Tolerance& tol = {}) {
    Svd s = svd(M);
    double smax = s.singular_values.empty() ? 0.0 : s.singular_values.front();
    double cut = tol.rank_eps * std::max(1.0, smax);
    std::vector<Vec> out;
    for (std::size_t k = 0; k < s.singular_values.size(); ++k)
        if (s.singular_values[k] <= cut) out.push_back(s.right_vecs[k]);
    return out;
}

/// Gaussian elimination with partial pivoting.  Throws on (numerically)
/// singular systems.
inline Vec solve(Mat A, Vec b) {
    if (A.rows != A.cols || static_cast<int>(b.size()) != A.rows)
        throw std::invalid_argument("solve: shape mismatch");
    int n = A.rows;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > std::abs(A(piv, k))) piv = i;
        if (std::abs(A(piv, k)) < 1e-14)
            throw std::runtime_error("solve: singular matrix");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(piv)]);
        }
        for (int i = k + 1; i < n; ++i) {
            double f = A(i, k) / A(k, k);
            if (f == 0.0) continue;
            for (int j = k; j < n; ++j) A(i, j) -= f * A(k, j);
            b[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(k)];
        }
    }
    Vec x(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= A(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / A(i, i);
    }
    return x;
}

/// Least-squares solution of an overdetermined system via the symmetric
/// embedding SVD (no normal equations).
inline Vec lstsq(const Mat& A, const Vec& b, const Tolerance& tol = {}) {
    // x = sum_k (u_k^T b / sigma_k) v_k with u_k recovered from A v_k.
    Svd s = svd(A);
    double smax = s.singular_values.empty() ? 0.0 : s.singular_values.front();
    double cut = tol.rank_eps * std::max(1.0, smax);
    Vec x(static_cast<std::size_t>(A.cols), 0.0);
    for (std::size_t k = 0; k < s.singular_values.size(); ++k) {
        double sv = s.singular_values[k];
        if (sv <= cut) continue;
        const Vec& v = s.right_vecs[k];
        Vec Av(static_cast<std::size_t>(A.rows), 0.0);
        for (int i = 0; i < A.rows; ++i) {
            double acc = 0.0;
            for (int j = 0; j < A.cols; ++j) acc += A(i, j) * v[static_cast<std::size_t>(j)];
            Av[static_cast<std::size_t>(i)] = acc;
        }
        double coef = dot(Av, b) / (sv * sv);
        for (int j = 0; j < A.cols; ++j) x[static_cast<std::size_t>(j)] += coef * v[static_cast<std::size_t>(j)];
    }
    return x;
}

}  // namespace coposet
