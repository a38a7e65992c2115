// Complex eigenvalues of small real matrices (Hessenberg reduction followed
// by complex single-shift QR with Wilkinson shifts) and polynomial root
// finding through the companion matrix.
//
// The QR iteration runs in complex arithmetic: no real 2x2 block handling,
// plain Givens chasing, deflation on negligible subdiagonals.  Matrices here
// never exceed ~12x12.

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "coposet/eig.hpp"

namespace coposet {

using Cplx = std::complex<double>;

namespace detail {

using CMat = std::vector<std::vector<Cplx>>;

inline void hessenberg_reduce(CMat& h) {
    int n = static_cast<int>(h.size());
    for (int k = 0; k < n - 2; ++k) {
        // Householder on column k below the subdiagonal
        double scale = 0.0;
        for (int i = k + 1; i < n; ++i) scale += std::norm(h[i][k]);
        if (scale < 1e-300) continue;
        Cplx x0 = h[k + 1][k];
        double alpha = std::sqrt(scale);
        Cplx phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : Cplx(1.0, 0.0);
        Cplx v0 = x0 + phase * alpha;
        std::vector<Cplx> v(static_cast<std::size_t>(n), Cplx(0.0, 0.0));
        v[static_cast<std::size_t>(k + 1)] = v0;
        for (int i = k + 2; i < n; ++i) v[static_cast<std::size_t>(i)] = h[i][k];
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) vnorm2 += std::norm(v[static_cast<std::size_t>(i)]);
        if (vnorm2 < 1e-300) continue;
        // H = I - 2 v v* / |v|^2 ; apply H from left and right
        for (int j = 0; j < n; ++j) {
            Cplx s(0.0, 0.0);
            for (int i = k + 1; i < n; ++i) s += std::conj(v[static_cast<std::size_t>(i)]) * h[i][j];
            s *= 2.0 / vnorm2;
            for (int i = k + 1; i < n; ++i) h[i][j] -= v[static_cast<std::size_t>(i)] * s;
        }
        for (int i = 0; i < n; ++i) {
            Cplx s(0.0, 0.0);
            for (int j = k + 1; j < n; ++j) s += h[i][j] * v[static_cast<std::size_t>(j)];
            s *= 2.0 / vnorm2;
            for (int j = k + 1; j < n; ++j) h[i][j] -= s * std::conj(v[static_cast<std::size_t>(j)]);
        }
        for (int i = k + 2; i < n; ++i) h[i][k] = Cplx(0.0, 0.0);
    }
}

inline Cplx wilkinson_shift(const CMat& h, int m) {
    Cplx a = h[m - 1][m - 1], b = h[m - 1][m], c = h[m][m - 1], d = h[m][m];
    Cplx tr = a + d, det = a * d - b * c;
    Cplx disc = std::sqrt(tr * tr - 4.0 * det);
    Cplx l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
    return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

}  // namespace detail

/// Eigenvalues of a real square matrix, in no particular order.
inline std::vector<Cplx> eigenvalues(const Mat& M) {
    if (M.rows != M.cols) throw std::invalid_argument("eigenvalues: square matrix required");
    int n = M.rows;
    if (n == 1) return {Cplx(M(0, 0), 0.0)};

    detail::CMat h(static_cast<std::size_t>(n), std::vector<Cplx>(static_cast<std::size_t>(n)));
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            h[i][j] = Cplx(M(i, j), 0.0);
            scale = std::max(scale, std::abs(M(i, j)));
        }
    if (scale == 0.0) return std::vector<Cplx>(static_cast<std::size_t>(n), Cplx(0.0, 0.0));
    detail::hessenberg_reduce(h);

    std::vector<Cplx> out;
    int m = n - 1;  // active block is lo..m
    int iter = 0, since_deflation = 0;
    const int max_iter = 80 * n;
    while (m >= 0) {
        if (m == 0) {
            out.push_back(h[0][0]);
            break;
        }
        int lo = 0;
        bool deflated_tail = false;
        for (int k = m; k >= 1; --k) {
            double thr = 1e-15 * (std::abs(h[k - 1][k - 1]) + std::abs(h[k][k]));
            if (thr == 0.0) thr = 1e-15 * scale;
            if (std::abs(h[k][k - 1]) <= thr) {
                h[k][k - 1] = Cplx(0.0, 0.0);
                if (k == m) {
                    out.push_back(h[m][m]);
                    --m;
                    since_deflation = 0;
                    deflated_tail = true;
                } else {
                    lo = k;
                }
                break;
            }
        }
        if (deflated_tail) continue;

        if (++iter > max_iter) throw std::runtime_error("eigenvalues: QR iteration did not converge");
        Cplx mu = detail::wilkinson_shift(h, m);
        if (++since_deflation % 12 == 0)  // exceptional shift to break cycles
            mu = h[m][m] + Cplx(1.5 * std::abs(h[m][m - 1]), 0.0);

        for (int i = lo; i <= m; ++i) h[i][i] -= mu;

        // QR factorization of the active block by Givens rotations
        std::vector<Cplx> cs(static_cast<std::size_t>(m + 1)), sn(static_cast<std::size_t>(m + 1));
        for (int k = lo; k < m; ++k) {
            Cplx x = h[k][k], y = h[k + 1][k];
            double r = std::sqrt(std::norm(x) + std::norm(y));
            Cplx c(1.0, 0.0), s(0.0, 0.0);
            if (r > 1e-300) {
                c = x / r;
                s = y / r;
            }
            cs[static_cast<std::size_t>(k)] = c;
            sn[static_cast<std::size_t>(k)] = s;
            for (int j = k; j <= m; ++j) {
                Cplx t1 = h[k][j], t2 = h[k + 1][j];
                h[k][j] = std::conj(c) * t1 + std::conj(s) * t2;
                h[k + 1][j] = -s * t1 + c * t2;
            }
        }
        // form R Q by applying the adjoint rotations from the right
        for (int k = lo; k < m; ++k) {
            Cplx c = cs[static_cast<std::size_t>(k)], s = sn[static_cast<std::size_t>(k)];
            int hi = std::min(k + 1, m);
            for (int i = lo; i <= hi; ++i) {
                Cplx t1 = h[i][k], t2 = h[i][k + 1];
                h[i][k] = t1 * c + t2 * s;
                h[i][k + 1] = -t1 * std::conj(s) + t2 * std::conj(c);
            }
        }
        for (int i = lo; i <= m; ++i) h[i][i] += mu;
    }
    return out;
}

/// Roots of a real polynomial given by ascending coefficients c[0] + c[1] x +
/// ... + c[d] x^d, computed as companion-matrix eigenvalues.
inline std::vector<Cplx> poly_roots(const Vec& coeffs) {
    Vec c = coeffs;
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    if (c.size() < 2) return {};
    int d = static_cast<int>(c.size()) - 1;
    Mat comp(d, d);
    for (int i = 0; i + 1 < d; ++i) comp(i + 1, i) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    return eigenvalues(comp);
}

/// Evaluate a real polynomial (ascending coefficients) at a complex point.
inline Cplx poly_eval(const Vec& coeffs, Cplx x) {
    Cplx acc(0.0, 0.0);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

/// Convolution of coefficient vectors = polynomial product.
inline Vec poly_mul(const Vec& a, const Vec& b) {
    Vec out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace coposet
