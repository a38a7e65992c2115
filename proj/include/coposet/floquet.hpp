// The periodic linear system S_u attached to a zero collection, its
// monodromy operator and Floquet multipliers, and the subspace of
// n-periodic solutions.
//
// The system is the scalar recurrence sum_{i=0}^{d} c^t_i x_{t+i} = 0 of
// order d = n-3 with n-periodic coefficient vectors c^t = u^t_{I_t},
// normalized so c^t_d = 1.  Solutions are parameterized by the initial
// values (x_1,...,x_d); the monodromy is the linear map advancing a
// solution by one period in that basis.

#pragma once

#include "coposet/polyroots.hpp"
#include "coposet/supports.hpp"

namespace coposet {

struct PeriodicSystem {
    int d = 0;                  // order, n - 3
    int n = 0;                  // period
    std::vector<Vec> coeffs;    // coeffs[t-1] = c^t, length d+1, trailing 1

    const Vec& c(int t) const { return coeffs[static_cast<std::size_t>(wrap1(t, n) - 1)]; }
};

inline PeriodicSystem system_from_collection(const ZeroCollection& c) {
    PeriodicSystem sys;
    sys.n = c.n;
    sys.d = c.n - 3;
    for (int t = 1; t <= c.n; ++t) sys.coeffs.push_back(c.core(t));
    return sys;
}

/// Companion-form map taking (x_t,...,x_{t+d-1}) to (x_{t+1},...,x_{t+d});
/// its determinant is (-1)^d c^t_0.
inline Mat step_matrix(const PeriodicSystem& sys, int t) {
    int d = sys.d;
    Mat S(d, d);
    for (int i = 0; i + 1 < d; ++i) S(i, i + 1) = 1.0;
    const Vec& ct = sys.c(t);
    for (int i = 0; i < d; ++i) S(d - 1, i) = -ct[static_cast<std::size_t>(i)];
    return S;
}

struct Monodromy {
    Mat M;                          // d x d, basis (x_1,...,x_d)
    std::vector<Cplx> multipliers;  // eigenvalues of M
    double det = 0.0;
};

namespace detail {

inline Mat mat_mul(const Mat& A, const Mat& B) {
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            double a = A(i, k);
            if (a == 0.0) continue;
            for (int j = 0; j < B.cols; ++j) C(i, j) += a * B(k, j);
        }
    return C;
}

inline double det_gauss(Mat A) {
    int n = A.rows;
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > std::abs(A(piv, k))) piv = i;
        if (A(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            det = -det;
        }
        det *= A(k, k);
        for (int i = k + 1; i < n; ++i) {
            double f = A(i, k) / A(k, k);
            for (int j = k; j < n; ++j) A(i, j) -= f * A(k, j);
        }
    }
    return det;
}

}  // namespace detail

/// M = step(n) * ... * step(1); multipliers from the QR eigensolver.
/// Validates det M = prod_j u^j_j (each u^j_j = c^j_0) to 1e-9 relative.
inline Monodromy monodromy(const PeriodicSystem& sys) {
    Monodromy out;
    out.M = Mat(sys.d, sys.d);
    for (int i = 0; i < sys.d; ++i) out.M(i, i) = 1.0;
    for (int t = 1; t <= sys.n; ++t) out.M = detail::mat_mul(step_matrix(sys, t), out.M);
    out.det = detail::det_gauss(out.M);

    double expected = 1.0;
    for (int t = 1; t <= sys.n; ++t) expected *= sys.c(t)[0];
    if (std::abs(out.det - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
        throw std::runtime_error("monodromy: determinant identity violated");

    out.multipliers = eigenvalues(out.M);
    std::sort(out.multipliers.begin(), out.multipliers.end(), [](Cplx a, Cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

inline Monodromy monodromy(const ZeroCollection& c) { return monodromy(system_from_collection(c)); }

/// Count of multipliers with | |lambda| - 1 | <= 1e-7.
inline int multipliers_on_unit_circle(const Monodromy& m) {
    int cnt = 0;
    for (Cplx z : m.multipliers)
        if (std::abs(std::abs(z) - 1.0) <= 1e-7) ++cnt;
    return cnt;
}

/// Geometric multiplicity of the Floquet multiplier 1 = corank of M - Id.
inline int multiplier_one_multiplicity(const Monodromy& m, const Tolerance& tol = {}) {
    Mat D = m.M;
    for (int i = 0; i < D.rows; ++i) D(i, i) -= 1.0;
    return D.rows - numeric_rank(D, tol);
}

struct PeriodicSolutions {
    int dim = 0;
    std::vector<Vec> basis;  // orthonormal n-vectors (x_1,...,x_n)
};

/// n-periodic solutions are exactly the n-vectors orthogonal to every u^j
/// (Floquet multiplier 1 eigenvectors).  Cross-checked against the
/// multiplier-1 geometric multiplicity of the monodromy.
inline PeriodicSolutions periodic_solution_space(const ZeroCollection& c, const Tolerance& tol = {}) {
    Mat Ut(c.n, c.n);  // rows u^j
    for (int j = 1; j <= c.n; ++j)
        for (int i = 0; i < c.n; ++i) Ut(j - 1, i) = c.vec(j)[static_cast<std::size_t>(i)];
    PeriodicSolutions out;
    std::vector<Vec> ns = nullspace(Ut, tol);
    out.dim = static_cast<int>(ns.size());
    out.basis = std::move(ns);

    Monodromy m = monodromy(c);
    if (multiplier_one_multiplicity(m, tol) != out.dim)
        throw std::runtime_error(
            "periodic_solution_space: multiplier-1 multiplicity disagrees with corank of U");
    return out;
}

}  // namespace coposet
