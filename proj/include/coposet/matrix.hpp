// Dense real symmetric matrices and the shared tolerance bundle.
//
// Everything in this library works on small dense symmetric matrices
// (n <= ~50).  SymMatrix stores the full row-major array and enforces
// exact symmetry on construction; principal submatrices are taken with
// ordered index tuples so that circulant index bookkeeping stays 1-based
// at the interface and 0-based internally.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace coposet {

using Vec = std::vector<double>;

/// Ordered index tuple, 1-based (interface convention).
using IndexTuple = std::vector<int>;

struct Tolerance {
    double rank_eps = 1e-9;   // relative eigenvalue/singular-value cutoff
    double psd_eps = 1e-9;    // absolute slack in PSD tests
    double match_eps = 1e-8;  // absolute slack in value comparisons

    void validate() const {
        if (!(rank_eps > 0.0) || !(psd_eps > 0.0) || !(match_eps > 0.0))
            throw std::invalid_argument("Tolerance: all thresholds must be positive");
        if (rank_eps > 1e-6)
            throw std::invalid_argument("Tolerance: rank_eps must be <= 1e-6");
    }
};

inline double inf_norm(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

class SymMatrix {
public:
    SymMatrix() = default;

    explicit SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
        if (n < 1) throw std::invalid_argument("SymMatrix: n must be >= 1");
    }

    // Symmetrizes (A + A^T)/2; rejects non-finite input.
    SymMatrix(int n, const Vec& row_major) : SymMatrix(n) {
        if (row_major.size() != a_.size())
            throw std::invalid_argument("SymMatrix: wrong number of entries");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = 0.5 * (row_major[idx(i, j)] + row_major[idx(j, i)]);
                if (!std::isfinite(v)) throw std::invalid_argument("SymMatrix: non-finite entry");
                a_[idx(i, j)] = v;
            }
    }

    SymMatrix(std::initializer_list<std::initializer_list<double>> rows) {
        n_ = static_cast<int>(rows.size());
        if (n_ < 1) throw std::invalid_argument("SymMatrix: n must be >= 1");
        Vec flat;
        flat.reserve(static_cast<std::size_t>(n_) * n_);
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != n_)
                throw std::invalid_argument("SymMatrix: ragged initializer");
            flat.insert(flat.end(), r.begin(), r.end());
        }
        *this = SymMatrix(n_, flat);
    }

    static SymMatrix identity(int n) {
        SymMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static SymMatrix diag(const Vec& d) {
        SymMatrix m(static_cast<int>(d.size()));
        for (int i = 0; i < m.n_; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
        return m;
    }

    /// E_{ij}: ones at (i,j) and (j,i), zero elsewhere.  1-based i, j.
    static SymMatrix unit(int n, int i, int j) {
        SymMatrix m(n);
        m(i - 1, j - 1) = 1.0;
        m(j - 1, i - 1) = 1.0;
        return m;
    }

    /// Symmetrized outer product (x y^T + y x^T)/2.
    static SymMatrix sym_outer(const Vec& x, const Vec& y) {
        int n = static_cast<int>(x.size());
        if (y.size() != x.size()) throw std::invalid_argument("sym_outer: size mismatch");
        SymMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = 0.5 * (x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] +
                                 y[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)]);
        return m;
    }

    int n() const { return n_; }

    double& operator()(int i, int j) { return a_[idx(i, j)]; }
    double operator()(int i, int j) const { return a_[idx(i, j)]; }

    /// 1-based element access, matching the paper-facing index convention.
    double at1(int i, int j) const { return a_[idx(i - 1, j - 1)]; }
    void set1(int i, int j, double v) {
        a_[idx(i - 1, j - 1)] = v;
        a_[idx(j - 1, i - 1)] = v;
    }

    const Vec& data() const { return a_; }

    /// Principal submatrix A_I for an ordered 1-based index tuple.
    SymMatrix submatrix(const IndexTuple& I) const {
        SymMatrix s(static_cast<int>(I.size()));
        for (int p = 0; p < s.n_; ++p)
            for (int q = 0; q < s.n_; ++q)
                s(p, q) = at1(I[static_cast<std::size_t>(p)], I[static_cast<std::size_t>(q)]);
        return s;
    }

    Vec operator*(const Vec& x) const {
        if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("matvec: size mismatch");
        Vec y(static_cast<std::size_t>(n_), 0.0);
        for (int i = 0; i < n_; ++i) {
            double s = 0.0;
            for (int j = 0; j < n_; ++j) s += a_[idx(i, j)] * x[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = s;
        }
        return y;
    }

    double quad(const Vec& x) const { return dot(x, (*this) * x); }

    /// x^T A y.
    double bilinear(const Vec& x, const Vec& y) const { return dot(x, (*this) * y); }

    SymMatrix& operator+=(const SymMatrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    SymMatrix& operator-=(const SymMatrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    SymMatrix& operator*=(double c) {
        for (double& v : a_) v *= c;
        return *this;
    }

    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
    friend SymMatrix operator*(double c, SymMatrix a) { return a *= c; }

    double norm_inf() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Frobenius inner product <A, B> = tr(A B).
    double frob_dot(const SymMatrix& o) const {
        check_same(o);
        double s = 0.0;
        for (std::size_t k = 0; k < a_.size(); ++k) s += a_[k] * o.a_[k];
        return s;
    }

    double max_abs_diff(const SymMatrix& o) const {
        check_same(o);
        double m = 0.0;
        for (std::size_t k = 0; k < a_.size(); ++k) m = std::max(m, std::abs(a_[k] - o.a_[k]));
        return m;
    }

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
    void check_same(const SymMatrix& o) const {
        if (o.n_ != n_) throw std::invalid_argument("SymMatrix: dimension mismatch");
    }

    int n_ = 0;
    Vec a_;
};

}  // namespace coposet
