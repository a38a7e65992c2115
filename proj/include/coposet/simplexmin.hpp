// Exact minimization of a quadratic form over the standard simplex by
// enumeration of active supports.  Any local minimum of x^T Q x over
// {x >= 0, sum x = 1} satisfies, on its support S, the stationarity system
//   (Q x)_i = mu for i in S,  sum_S x = 1,
// with value mu, and (Q x)_i >= mu off the support.  Enumerating all 2^n - 1
// supports and solving the bordered symmetric system
//   [[Q_S, -1], [-1^T, 0]] (x, mu) = (0, -1)
// therefore yields the global minimum; n <= ~12 keeps this cheap.
//
// Singular bordered systems (degenerate faces, the interesting case for
// boundary matrices) are resolved through the spectral pseudo-inverse.
// Kernel directions with no mu-component leave the value invariant, so
// feasibility along them is decided by exact line search when the kernel is
// one-dimensional; mu-varying directions reach their extremes on subfaces,
// which the enumeration covers anyway.

#pragma once

#include <limits>
#include <optional>

#include "coposet/eig.hpp"

namespace coposet {

struct SimplexMin {
    double value = 0.0;
    Vec minimizer;   // on the simplex
    bool complete = true;  // false if some degenerate support could not be resolved
};

namespace detail {

struct BorderedSolve {
    bool consistent = false;
    Vec x;                     // length m+1: (lambda, mu)
    std::vector<Vec> kernel;   // kernel basis of the bordered matrix
};

inline BorderedSolve solve_bordered(const SymMatrix& K, const Vec& rhs) {
    Spectrum sp = eig_sym(K);
    double lmax = 0.0;
    for (double l : sp.eigenvalues) lmax = std::max(lmax, std::abs(l));
    double cut = 1e-11 * std::max(1.0, lmax);
    BorderedSolve out;
    out.x.assign(rhs.size(), 0.0);
    for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k) {
        double lam = sp.eigenvalues[k];
        if (std::abs(lam) <= cut) {
            out.kernel.push_back(sp.eigenvectors[k]);
            continue;
        }
        double coef = dot(sp.eigenvectors[k], rhs) / lam;
        for (std::size_t i = 0; i < out.x.size(); ++i) out.x[i] += coef * sp.eigenvectors[k][i];
    }
    Vec resid = K * out.x;
    for (std::size_t i = 0; i < resid.size(); ++i) resid[i] -= rhs[i];
    out.consistent = inf_norm(resid) <= 1e-8 * (1.0 + inf_norm(rhs));
    return out;
}

}  // namespace detail

inline SimplexMin min_on_simplex(const SymMatrix& Q, const Tolerance& tol = {}) {
    int n = Q.n();
    double scale = 1.0 + Q.norm_inf();
    SimplexMin best;
    best.value = std::numeric_limits<double>::infinity();
    Vec undecided_mus;

    std::vector<int> idx;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        idx.clear();
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        int m = static_cast<int>(idx.size());

        SymMatrix K(m + 1);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) K(a, b) = Q(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
            K(a, m) = -1.0;
            K(m, a) = -1.0;
        }
        Vec rhs(static_cast<std::size_t>(m) + 1, 0.0);
        rhs.back() = -1.0;

        detail::BorderedSolve bs = detail::solve_bordered(K, rhs);
        if (!bs.consistent) continue;

        // split kernel into mu-invariant directions (value-preserving) and
        // mu-varying ones (value varies linearly; extremes lie on subfaces)
        std::vector<Vec> flat;
        for (const Vec& k : bs.kernel)
            if (std::abs(k.back()) <= 1e-9) flat.push_back(k);

        Vec cand;
        bool feasible = false;
        auto check = [&](const Vec& x) {
            double mn = 0.0;
            for (int a = 0; a < m; ++a) mn = std::min(mn, x[static_cast<std::size_t>(a)]);
            return mn >= -1e-9;
        };
        if (flat.empty()) {
            feasible = check(bs.x);
            cand = bs.x;
        } else if (flat.size() == 1) {
            // exact feasibility interval along the single flat direction
            const Vec& k = flat.front();
            double lo = -std::numeric_limits<double>::infinity();
            double hi = std::numeric_limits<double>::infinity();
            bool ok = true;
            for (int a = 0; a < m && ok; ++a) {
                double x0 = bs.x[static_cast<std::size_t>(a)], ka = k[static_cast<std::size_t>(a)];
                if (std::abs(ka) < 1e-13) {
                    if (x0 < -1e-9) ok = false;
                } else if (ka > 0.0) {
                    lo = std::max(lo, -x0 / ka);
                } else {
                    hi = std::min(hi, -x0 / ka);
                }
            }
            if (ok && lo <= hi + 1e-12) {
                double t = (lo > hi) ? 0.5 * (lo + hi) : std::min(std::max(0.0, lo), hi);
                cand = bs.x;
                for (std::size_t i = 0; i < cand.size(); ++i) cand[i] += t * k[i];
                feasible = check(cand);
            }
        } else {
            // multi-dimensional flat kernel: try the pseudo-solution and a few
            // perturbations; if none is feasible the support stays undecided
            // and is only a problem when it could beat the current best
            std::vector<Vec> trials = {bs.x};
            for (const Vec& k : flat)
                for (double s : {1.0, -1.0, 0.5, -0.5}) {
                    Vec t = bs.x;
                    for (std::size_t i = 0; i < t.size(); ++i) t[i] += s * k[i];
                    trials.push_back(std::move(t));
                }
            for (const Vec& t : trials)
                if (check(t)) {
                    cand = t;
                    feasible = true;
                    break;
                }
            if (!feasible) {
                undecided_mus.push_back(bs.x.back());
                continue;
            }
        }
        if (!feasible) continue;

        // evaluate the quadratic directly at the (clamped, renormalized) point
        Vec x(static_cast<std::size_t>(n), 0.0);
        double s = 0.0;
        for (int a = 0; a < m; ++a) {
            double v = std::max(0.0, cand[static_cast<std::size_t>(a)]);
            x[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])] = v;
            s += v;
        }
        if (s <= 0.0) continue;
        for (double& v : x) v /= s;
        double val = Q.quad(x);
        if (val < best.value) {
            best.value = val;
            best.minimizer = x;
        }
    }
    return best;
}

}  // namespace coposet
