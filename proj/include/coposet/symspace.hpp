// The space S^n of symmetric matrices as a Euclidean space of dimension
// n(n+1)/2, with the vectorization chosen so that the Frobenius inner
// product becomes the ordinary dot product (off-diagonal entries scaled by
// sqrt(2)).  Nullspaces of linear maps on S^n are computed here.

#pragma once

#include "coposet/eig.hpp"
#include "coposet/matrix.hpp"

namespace coposet {

inline int sym_dim(int n) { return n * (n + 1) / 2; }

inline Vec sym_to_vec(const SymMatrix& A) {
    const double s2 = std::sqrt(2.0);
    int n = A.n();
    Vec v;
    v.reserve(static_cast<std::size_t>(sym_dim(n)));
    for (int i = 0; i < n; ++i) {
        v.push_back(A(i, i));
        for (int j = i + 1; j < n; ++j) v.push_back(s2 * A(i, j));
    }
    return v;
}

inline SymMatrix vec_to_sym(int n, const Vec& v) {
    const double s2 = std::sqrt(2.0);
    if (static_cast<int>(v.size()) != sym_dim(n))
        throw std::invalid_argument("vec_to_sym: wrong length");
    SymMatrix A(n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
        A(i, i) = v[k++];
        for (int j = i + 1; j < n; ++j) {
            A(i, j) = v[k] / s2;
            A(j, i) = v[k] / s2;
            ++k;
        }
    }
    return A;
}

struct SymNullspace {
    int dimension = 0;
    std::vector<SymMatrix> basis;  // orthonormal under Frobenius
};

/// Nullspace of the linear map X -> (<C_r, X>_F)_r on S^n, the functionals
/// given as symmetric coefficient matrices.  An empty row list yields the
/// full space.
inline SymNullspace nullspace_of_linear_map(int n, const std::vector<SymMatrix>& rows,
                                            const Tolerance& tol = {}) {
    int d = sym_dim(n);
    SymNullspace out;
    if (rows.empty()) {
        out.dimension = d;
        for (int k = 0; k < d; ++k) {
            Vec e(static_cast<std::size_t>(d), 0.0);
            e[static_cast<std::size_t>(k)] = 1.0;
            out.basis.push_back(vec_to_sym(n, e));
        }
        return out;
    }
    Mat G(static_cast<int>(rows.size()), d);
    for (int r = 0; r < G.rows; ++r) {
        if (rows[static_cast<std::size_t>(r)].n() != n)
            throw std::invalid_argument("nullspace_of_linear_map: row dimension mismatch");
        Vec v = sym_to_vec(rows[static_cast<std::size_t>(r)]);
        for (int j = 0; j < d; ++j) G(r, j) = v[static_cast<std::size_t>(j)];
    }
    std::vector<Vec> ns = nullspace(G, tol);
    out.dimension = static_cast<int>(ns.size());
    for (const Vec& v : ns) out.basis.push_back(vec_to_sym(n, v));
    return out;
}

}  // namespace coposet
