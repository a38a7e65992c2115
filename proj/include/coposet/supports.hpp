// Circulant support combinatorics and zero collections.
//
// For order n >= 5 the ordered index sets are I_1 = (1,...,n-2) and its
// circular shifts I_2, ..., I_n, together with the shorter sets
// I_1' = (1,...,n-3), ..., I_n'.  A ZeroCollection holds nonnegative
// vectors u^1,...,u^n with Supp u^j = I_j exactly, normalized so that the
// last element of each positive subvector u^j_{I_j} equals 1.
//
// All indices at this interface are 1-based.

#pragma once

#include <optional>

#include "coposet/eig.hpp"
#include "coposet/matrix.hpp"

namespace coposet {

struct IndexSets {
    int n = 0;
    std::vector<IndexTuple> I;       // n tuples of size n-2
    std::vector<IndexTuple> Iprime;  // n tuples of size n-3
};

inline int wrap1(int i, int n) { return ((i - 1) % n + n) % n + 1; }

inline IndexSets make_index_sets(int n) {
    if (n < 5) throw std::invalid_argument("make_index_sets: n must be >= 5");
    IndexSets s;
    s.n = n;
    for (int j = 1; j <= n; ++j) {
        IndexTuple big, small;
        for (int k = 0; k < n - 2; ++k) big.push_back(wrap1(j + k, n));
        for (int k = 0; k < n - 3; ++k) small.push_back(wrap1(j + k, n));
        s.I.push_back(std::move(big));
        s.Iprime.push_back(std::move(small));
    }
    return s;
}

struct ZeroCollection {
    int n = 0;
    std::vector<Vec> u;  // u[j-1] = u^j, full n-vectors

    const Vec& vec(int j) const { return u[static_cast<std::size_t>(j - 1)]; }

    /// Positive subvector u^j_{I_j} in the order of the tuple I_j.
    Vec core(int j) const {
        Vec c;
        c.reserve(static_cast<std::size_t>(n - 2));
        for (int k = 0; k < n - 2; ++k)
            c.push_back(u[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(wrap1(j + k, n) - 1)]);
        return c;
    }

    /// n x n matrix U with columns u^1,...,u^n.
    Mat matrix_U() const {
        Mat U(n, n);
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < n; ++i) U(i, j - 1) = u[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)];
        return U;
    }

    void validate() const {
        if (n < 5) throw std::invalid_argument("ZeroCollection: n must be >= 5");
        if (static_cast<int>(u.size()) != n) throw std::invalid_argument("ZeroCollection: need n vectors");
        IndexSets s = make_index_sets(n);
        for (int j = 1; j <= n; ++j) {
            const Vec& v = u[static_cast<std::size_t>(j - 1)];
            if (static_cast<int>(v.size()) != n)
                throw std::invalid_argument("ZeroCollection: wrong vector length");
            std::vector<bool> on(static_cast<std::size_t>(n) + 1, false);
            for (int i : s.I[static_cast<std::size_t>(j - 1)]) on[static_cast<std::size_t>(i)] = true;
            for (int i = 1; i <= n; ++i) {
                double x = v[static_cast<std::size_t>(i - 1)];
                if (!std::isfinite(x)) throw std::invalid_argument("ZeroCollection: non-finite entry");
                if (on[static_cast<std::size_t>(i)] && !(x > 0.0))
                    throw std::invalid_argument("ZeroCollection: entry on support not positive");
                if (!on[static_cast<std::size_t>(i)] && x != 0.0)
                    throw std::invalid_argument("ZeroCollection: entry off support not zero");
            }
            int last = s.I[static_cast<std::size_t>(j - 1)].back();
            if (std::abs(v[static_cast<std::size_t>(last - 1)] - 1.0) > 1e-12)
                throw std::invalid_argument("ZeroCollection: last core element must equal 1");
        }
    }
};

/// Places one positive core vector on every I_j (circulant collection when
/// the core is palindromic; arbitrary positive cores are accepted).
inline ZeroCollection collection_from_core(const Vec& core, int n) {
    if (n < 5) throw std::invalid_argument("collection_from_core: n must be >= 5");
    if (static_cast<int>(core.size()) != n - 2)
        throw std::invalid_argument("collection_from_core: core must have length n-2");
    for (double x : core)
        if (!(x > 0.0)) throw std::invalid_argument("collection_from_core: core entries must be positive");
    ZeroCollection c;
    c.n = n;
    double scale = core.back();
    for (int j = 1; j <= n; ++j) {
        Vec v(static_cast<std::size_t>(n), 0.0);
        for (int k = 0; k < n - 2; ++k)
            v[static_cast<std::size_t>(wrap1(j + k, n) - 1)] = core[static_cast<std::size_t>(k)] / scale;
        c.u.push_back(std::move(v));
    }
    return c;
}

/// Builds a collection from per-j cores (cores[j-1] placed on I_j).
inline ZeroCollection collection_from_cores(const std::vector<Vec>& cores, int n) {
    if (static_cast<int>(cores.size()) != n)
        throw std::invalid_argument("collection_from_cores: need n cores");
    ZeroCollection c;
    c.n = n;
    for (int j = 1; j <= n; ++j) {
        const Vec& core = cores[static_cast<std::size_t>(j - 1)];
        if (static_cast<int>(core.size()) != n - 2)
            throw std::invalid_argument("collection_from_cores: core length");
        double scale = core.back();
        if (!(scale > 0.0)) throw std::invalid_argument("collection_from_cores: nonpositive entry");
        Vec v(static_cast<std::size_t>(n), 0.0);
        for (int k = 0; k < n - 2; ++k) {
            double x = core[static_cast<std::size_t>(k)] / scale;
            if (!(x > 0.0)) throw std::invalid_argument("collection_from_cores: nonpositive entry");
            v[static_cast<std::size_t>(wrap1(j + k, n) - 1)] = x;
        }
        c.u.push_back(std::move(v));
    }
    return c;
}

struct ZeroExtraction {
    std::optional<ZeroCollection> collection;
    int failed_j = 0;     // offending index when extraction fails
    std::string message;  // "no circulant zero structure" diagnostics
};

namespace detail {

/// Strict positivity of a candidate core against roundoff: entries above
/// 1e-7 * |v|_inf count as positive, below count as failures.
inline bool strictly_positive(const Vec& v) {
    double thr = 1e-7 * inf_norm(v);
    for (double x : v)
        if (!(x > thr)) return false;
    return true;
}

/// For a 2-dimensional kernel {cos(t)*k1 + sin(t)*k2}, returns the two
/// extreme rays of its intersection with the closed positive orthant, or
/// nothing if the intersection is trivial.  Coordinate i is nonnegative on
/// the half-circle |t - beta_i| <= pi/2 with beta_i = atan2(k2_i, k1_i);
/// intersecting these closed half-circles leaves a single arc whose
/// endpoints are the extreme rays.
inline std::optional<std::pair<Vec, Vec>> positive_cone_rays(const Vec& k1, const Vec& k2) {
    const double pi = 3.14159265358979323846;
    std::size_t m = k1.size();
    double scale = std::max(inf_norm(k1), inf_norm(k2));
    double tiny = 1e-12 * std::max(1.0, scale);

    bool have = false;
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (std::hypot(k1[i], k2[i]) < tiny) continue;  // coordinate vanishes on the plane
        double beta = std::atan2(k2[i], k1[i]);
        double a = beta - pi / 2, b = beta + pi / 2;
        if (!have) {
            lo = a;
            hi = b;
            have = true;
            continue;
        }
        // shift [a, b] by 2*pi*k to overlap [lo, hi], then intersect
        double best_lo = 1.0, best_hi = 0.0;
        for (int k = -2; k <= 2; ++k) {
            double aa = a + 2 * pi * k, bb = b + 2 * pi * k;
            double l = std::max(lo, aa), h = std::min(hi, bb);
            if (h - l > best_hi - best_lo) {
                best_lo = l;
                best_hi = h;
            }
        }
        lo = best_lo;
        hi = best_hi;
        if (hi < lo - 1e-12) return std::nullopt;
    }
    if (!have) return std::nullopt;

    auto eval = [&](double t) {
        Vec v(m);
        for (std::size_t i = 0; i < m; ++i) v[i] = std::cos(t) * k1[i] + std::sin(t) * k2[i];
        return v;
    };
    return std::make_pair(eval(lo), eval(hi));
}

}  // namespace detail

/// Extracts the circulant zero collection of A: for each j a kernel vector
/// of A_{I_j} with strictly positive entries.  Corank-1 kernels must be
/// sign-definite; corank-2 kernels contribute the sum of the two extreme
/// rays of (kernel plane) cap (positive orthant), the unique choice with
/// full support I_j.
inline ZeroExtraction zeros_from_matrix(const SymMatrix& A, const IndexSets& sets,
                                        const Tolerance& tol = {}) {
    ZeroExtraction out;
    int n = sets.n;
    if (A.n() != n) throw std::invalid_argument("zeros_from_matrix: dimension mismatch");
    std::vector<Vec> cores;
    for (int j = 1; j <= n; ++j) {
        SymMatrix Aj = A.submatrix(sets.I[static_cast<std::size_t>(j - 1)]);
        RankKernel rk = rank_and_kernel(Aj, tol);
        Vec core;
        if (rk.kernel_basis.empty()) {
            out.failed_j = j;
            out.message = "no circulant zero structure: A_I nonsingular at j=" + std::to_string(j);
            return out;
        } else if (rk.kernel_basis.size() == 1) {
            core = rk.kernel_basis.front();
            double mx = 0.0;
            for (double x : core)
                if (std::abs(x) > std::abs(mx)) mx = x;
            if (mx < 0.0)
                for (double& x : core) x = -x;
        } else if (rk.kernel_basis.size() == 2) {
            auto rays = detail::positive_cone_rays(rk.kernel_basis[0], rk.kernel_basis[1]);
            if (!rays) {
                out.failed_j = j;
                out.message =
                    "no circulant zero structure: kernel plane misses the positive orthant at j=" +
                    std::to_string(j);
                return out;
            }
            core.assign(rays->first.size(), 0.0);
            for (std::size_t i = 0; i < core.size(); ++i)
                core[i] = rays->first[i] + rays->second[i];
        } else {
            out.failed_j = j;
            out.message = "no circulant zero structure: kernel dimension " +
                          std::to_string(rk.kernel_basis.size()) + " at j=" + std::to_string(j);
            return out;
        }
        if (!detail::strictly_positive(core)) {
            out.failed_j = j;
            out.message = "no circulant zero structure: kernel vector not positive at j=" +
                          std::to_string(j);
            return out;
        }
        cores.push_back(std::move(core));
    }
    out.collection = collection_from_cores(cores, n);
    return out;
}

/// Numerical rank of the n x n matrix U with columns u^1,...,u^n.
inline int rank_of_U(const ZeroCollection& c, const Tolerance& tol = {}) {
    return numeric_rank(c.matrix_U(), tol);
}

}  // namespace coposet
