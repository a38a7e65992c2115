// The linear correspondence between matrices A with A_{I_j} u^j_{I_j} = 0
// and shift-related bilinear forms on the dual of the solution space of the
// periodic system, plus the face classification built on it.
//
// A form is stored by its coefficient matrix on the evaluation-functional
// basis e_1,...,e_d; values B(e_t, e_s) for larger t, s follow from the
// recurrence e_{t+d} = -sum_{i<d} c^t_i e_{t+i}.  The forward recurrence is
// used everywhere; the backward one exists for validation.

#pragma once

#include <optional>
#include <sstream>

#include "coposet/floquet.hpp"
#include "coposet/symspace.hpp"

namespace coposet {

class BilinearForm {
public:
    BilinearForm(SymMatrix Bmat, PeriodicSystem sys)
        : d_(sys.d), Bmat_(std::move(Bmat)), sys_(std::move(sys)) {
        if (Bmat_.n() != d_) throw std::invalid_argument("BilinearForm: coefficient matrix size");
    }

    int d() const { return d_; }
    const SymMatrix& Bmat() const { return Bmat_; }
    const PeriodicSystem& sys() const { return sys_; }

    /// Coefficients of e_t in the basis e_1,...,e_d (t >= 1), by the forward
    /// recurrence.
    const Vec& basis_coeffs(int t) const {
        if (t < 1) throw std::invalid_argument("basis_coeffs: t must be >= 1");
        while (static_cast<int>(expans_.size()) < t) {
            int next = static_cast<int>(expans_.size()) + 1;
            if (next <= d_) {
                Vec e(static_cast<std::size_t>(d_), 0.0);
                e[static_cast<std::size_t>(next - 1)] = 1.0;
                expans_.push_back(std::move(e));
            } else {
                int tbase = next - d_;  // relation at time tbase defines e_next
                const Vec& c = sys_.c(tbase);
                Vec e(static_cast<std::size_t>(d_), 0.0);
                for (int i = 0; i < d_; ++i) {
                    const Vec& prev = expans_[static_cast<std::size_t>(tbase + i - 1)];
                    double ci = c[static_cast<std::size_t>(i)];
                    for (int k = 0; k < d_; ++k) e[static_cast<std::size_t>(k)] -= ci * prev[static_cast<std::size_t>(k)];
                }
                expans_.push_back(std::move(e));
            }
        }
        return expans_[static_cast<std::size_t>(t - 1)];
    }

    /// Coefficients of e_t via the backward recurrence from e_{t+1..t+d},
    /// valid since c^t_0 != 0.  Test hook for time-reversibility.
    Vec basis_coeffs_backward(int t) const {
        const Vec& c = sys_.c(t);
        Vec e(static_cast<std::size_t>(d_), 0.0);
        for (int i = 1; i <= d_; ++i) {
            const Vec& nxt = basis_coeffs(t + i);
            double ci = c[static_cast<std::size_t>(i)];
            for (int k = 0; k < d_; ++k) e[static_cast<std::size_t>(k)] -= ci / c[0] * nxt[static_cast<std::size_t>(k)];
        }
        return e;
    }

    double eval(int t, int s) const {
        const Vec& a = basis_coeffs(t);
        const Vec& b = basis_coeffs(s);
        double acc = 0.0;
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
                acc += a[static_cast<std::size_t>(i)] * Bmat_(i, j) * b[static_cast<std::size_t>(j)];
        return acc;
    }

private:
    int d_;
    SymMatrix Bmat_;
    PeriodicSystem sys_;
    mutable std::vector<Vec> expans_;
};

/// Membership of A in the subspace {A : A_{I_j} u^j_{I_j} = 0 for all j}.
/// Returns the first violating j, or 0 when A belongs to it.
inline int a_space_violation(const SymMatrix& A, const ZeroCollection& c, const Tolerance& tol = {}) {
    IndexSets sets = make_index_sets(c.n);
    double scale = std::max(1.0, A.norm_inf());
    for (int j = 1; j <= c.n; ++j) {
        SymMatrix Aj = A.submatrix(sets.I[static_cast<std::size_t>(j - 1)]);
        Vec r = Aj * c.core(j);
        if (inf_norm(r) > tol.match_eps * scale) return j;
    }
    return 0;
}

/// The form associated with A: coefficient matrix A_{I_1'}.
inline BilinearForm lambda_of(const SymMatrix& A, const ZeroCollection& c, const Tolerance& tol = {}) {
    if (A.n() != c.n) throw std::invalid_argument("lambda_of: dimension mismatch");
    int bad = a_space_violation(A, c, tol);
    if (bad != 0)
        throw std::invalid_argument("lambda_of: A_{I_j} u^j != 0 at j=" + std::to_string(bad));
    IndexSets sets = make_index_sets(c.n);
    return BilinearForm(A.submatrix(sets.Iprime[0]), system_from_collection(c));
}

/// Preimage of a form under the correspondence:
///   A_ij = B(e_i, e_j) for j - i <= n-3, else B(e_{i+n}, e_j)   (i <= j).
/// The form must satisfy the shift and band relations; otherwise it has no
/// preimage and is rejected.
inline SymMatrix lambda_inverse(const BilinearForm& B, const ZeroCollection& c,
                                const Tolerance& tol = {}) {
    int n = c.n, d = n - 3;
    double scale = 1.0 + B.Bmat().norm_inf();
    for (int t = 1; t <= d; ++t)
        for (int s = t; s <= d; ++s)
            if (std::abs(B.eval(t + n, s + n) - B.eval(t, s)) > tol.match_eps * scale)
                throw std::invalid_argument("lambda_inverse: form is not shift-invariant");
    for (int t = 1; t <= n; ++t)
        for (int s = t + 3; s <= std::min(n, t + n - 3); ++s)
            if (std::abs(B.eval(t + n, s) - B.eval(t, s)) > tol.match_eps * scale)
                throw std::invalid_argument("lambda_inverse: band relation violated");

    SymMatrix A(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            double v = (j - i <= n - 3) ? B.eval(i, j) : B.eval(i + n, j);
            A.set1(i, j, v);
        }
    return A;
}

enum class Membership { IN_P, IN_F_STRICT, OUT };

struct MembershipResult {
    Membership verdict = Membership::OUT;
    std::string reason;  // set when OUT
};

/// Decides membership of a form in the LMI-described face image: PSD,
/// shift-invariance, band equalities, and the n corner inequalities
/// B(e_t, e_{t+2}) >= B(e_{t+n}, e_{t+2}).  All inequalities must hold with
/// equality (PSD side) or all strictly (exceptional side); anything mixed
/// signals numerical trouble and is flagged.
inline MembershipResult check_membership(const BilinearForm& B, const ZeroCollection& c,
                                         const Tolerance& tol = {}) {
    MembershipResult res;
    int n = c.n, d = n - 3;
    double scale = 1.0 + B.Bmat().norm_inf();

    if (!is_psd(B.Bmat(), tol)) {
        res.reason = "coefficient matrix is not positive semi-definite";
        return res;
    }
    for (int t = 1; t <= d; ++t)
        for (int s = t; s <= d; ++s)
            if (std::abs(B.eval(t + n, s + n) - B.eval(t, s)) > tol.match_eps * scale) {
                std::ostringstream os;
                os << "shift-invariance violated at (t,s)=(" << t << "," << s << ")";
                res.reason = os.str();
                return res;
            }
    for (int t = 1; t <= n; ++t)
        for (int s = t + 3; s <= std::min(n, t + n - 3); ++s)
            if (std::abs(B.eval(t + n, s) - B.eval(t, s)) > tol.match_eps * scale) {
                std::ostringstream os;
                os << "linear relation violated at (t,s)=(" << t << "," << s << ")";
                res.reason = os.str();
                return res;
            }

    int strict = 0, equal = 0;
    for (int t = 1; t <= n; ++t) {
        double margin = B.eval(t, t + 2) - B.eval(t + n, t + 2);
        if (margin < -1e-9 * scale) {
            res.reason = "corner inequality violated at t=" + std::to_string(t);
            return res;
        }
        if (margin <= 1e-9 * scale)
            ++equal;
        else if (margin > 1e-7 * scale)
            ++strict;
        // the band between the two thresholds stays unclassified
    }
    if (equal == n) {
        res.verdict = Membership::IN_P;
        return res;
    }
    if (strict == n) {
        res.verdict = Membership::IN_F_STRICT;
        return res;
    }
    res.reason = "dichotomy violated";
    return res;
}

/// Dimension of {A in S^n : A_{I_j} u^j_{I_j} = 0 for all j}.
inline int dim_A_u(const ZeroCollection& c, const Tolerance& tol = {}) {
    IndexSets sets = make_index_sets(c.n);
    std::vector<SymMatrix> rows;
    for (int j = 1; j <= c.n; ++j) {
        Vec e(static_cast<std::size_t>(c.n), 0.0);
        for (int i : sets.I[static_cast<std::size_t>(j - 1)]) {
            e.assign(static_cast<std::size_t>(c.n), 0.0);
            e[static_cast<std::size_t>(i - 1)] = 1.0;
            rows.push_back(SymMatrix::sym_outer(e, c.vec(j)));
        }
    }
    return nullspace_of_linear_map(c.n, rows, tol).dimension;
}

enum class FaceKind { ZERO, PSD_ONLY, RAY_EXCEPTIONAL, R2_EVEN, HIGHER_ODD, UNRESOLVED };

inline const char* to_string(FaceKind k) {
    switch (k) {
        case FaceKind::ZERO: return "ZERO";
        case FaceKind::PSD_ONLY: return "PSD_ONLY";
        case FaceKind::RAY_EXCEPTIONAL: return "RAY_EXCEPTIONAL";
        case FaceKind::R2_EVEN: return "R2_EVEN";
        case FaceKind::HIGHER_ODD: return "HIGHER_ODD";
        case FaceKind::UNRESOLVED: return "UNRESOLVED";
    }
    return "UNRESOLVED";
}

struct FaceReport {
    int n = 0;
    int rank_U = 0;
    bool monodromy_is_identity = false;
    int r_psd = 0;                   // n - rank_U
    int multipliers_on_circle = 0;
    FaceKind face_kind = FaceKind::UNRESOLVED;
    int psd_only_k = 0;              // rank bound for PSD_ONLY faces
    std::string notes;
};

/// Classifies the face cut out by the collection.  Necessary conditions from
/// the monodromy restrict the possible kinds; an exceptional verdict is never
/// asserted without a caller-supplied member matrix, whose form must pass the
/// strict side of the membership dichotomy.
inline FaceReport classify_face(const ZeroCollection& c, const Tolerance& tol = {},
                                const std::optional<SymMatrix>& member = std::nullopt) {
    FaceReport rep;
    rep.n = c.n;
    rep.rank_U = rank_of_U(c, tol);
    rep.r_psd = c.n - rep.rank_U;

    Monodromy m = monodromy(c);
    rep.multipliers_on_circle = multipliers_on_unit_circle(m);
    Mat D = m.M;
    double dev = 0.0;
    for (int i = 0; i < D.rows; ++i)
        for (int j = 0; j < D.cols; ++j) dev = std::max(dev, std::abs(D(i, j) - (i == j ? 1.0 : 0.0)));
    rep.monodromy_is_identity = dev <= 1e-8;

    if (rep.rank_U == 3) {
        rep.face_kind = FaceKind::PSD_ONLY;
        rep.psd_only_k = c.n - 3;
        rep.notes = "monodromy is the identity; face isomorphic to the PSD cone of order n-3";
        return rep;
    }
    if (rep.r_psd >= 2) {
        rep.face_kind = FaceKind::PSD_ONLY;
        rep.psd_only_k = rep.r_psd;
        rep.notes = "PSD part of rank >= 2 excludes exceptional members";
        return rep;
    }
    if (rep.multipliers_on_circle < c.n - 4) {
        rep.face_kind = (rep.r_psd >= 1) ? FaceKind::PSD_ONLY : FaceKind::ZERO;
        rep.psd_only_k = rep.r_psd;
        rep.notes = "fewer than n-4 multipliers on the unit circle";
        return rep;
    }
    if (!member) {
        rep.face_kind = FaceKind::UNRESOLVED;
        rep.notes = "necessary conditions hold; no exceptional member supplied";
        return rep;
    }

    BilinearForm B = lambda_of(*member, c, tol);
    MembershipResult mres = check_membership(B, c, tol);
    if (mres.verdict != Membership::IN_F_STRICT) {
        rep.face_kind = FaceKind::UNRESOLVED;
        rep.notes = (mres.verdict == Membership::IN_P)
                        ? "supplied member is positive semi-definite, not exceptional"
                        : "supplied member rejected: " + mres.reason;
        return rep;
    }

    bool has_minus_one = false;
    for (Cplx z : m.multipliers)
        if (std::abs(z + Cplx(1.0, 0.0)) <= 1e-6) has_minus_one = true;

    if (c.n % 2 == 0) {
        rep.face_kind = FaceKind::R2_EVEN;
        rep.notes = "face isomorphic to R+^2: exceptional ray plus rank-1 PSD ray";
        if (rep.r_psd != 1) rep.notes += " (unexpected r_psd != 1)";
    } else if (!has_minus_one) {
        rep.face_kind = FaceKind::RAY_EXCEPTIONAL;
        rep.notes = "odd order, no multiplier -1: extremal exceptional ray";
    } else if (dim_A_u(c, tol) == 1) {
        rep.face_kind = FaceKind::RAY_EXCEPTIONAL;
        rep.notes = "odd order with multiplier -1 but one-dimensional ambient space";
    } else {
        rep.face_kind = FaceKind::HIGHER_ODD;
        rep.notes = "odd order with multiplier -1: boundary rays exceptional, face may be higher-dimensional";
    }
    return rep;
}

/// Matrix of Lemma-style differences (B(e_{t+k} - e_{t+n+k}, e_{s+k})) for
/// t = 0..n-5, s = 2..n-3: lower-triangular with positive diagonal for
/// strict members.  Test hook.
inline Mat triangular_Mk(const BilinearForm& B, int n, int k) {
    Mat M(n - 4, n - 4);
    for (int t = 0; t <= n - 5; ++t)
        for (int s = 2; s <= n - 3; ++s)
            M(t, s - 2) = B.eval(t + k, s + k) - B.eval(t + n + k, s + k);
    return M;
}

enum class ZeroSupportKind { MINIMAL, NONMINIMAL };

struct ManifoldCheck {
    int codim = 0;
    bool independent = false;
};

/// Rank of the stacked defining-equation gradients at A.
///   MINIMAL:    n gradients u^j (u^j)^T                       (expect n)
///   NONMINIMAL: v^j from ker A_{I_j'}; v^j(v^j)^T and the
///               symmetrized v^j(v^{j+1})^T cross terms         (expect 2n)
inline ManifoldCheck manifold_codim_check(const SymMatrix& A, const ZeroCollection& c,
                                          ZeroSupportKind kind, const Tolerance& tol = {}) {
    IndexSets sets = make_index_sets(c.n);
    std::vector<SymMatrix> grads;
    int expected = 0;
    if (kind == ZeroSupportKind::MINIMAL) {
        expected = c.n;
        for (int j = 1; j <= c.n; ++j) grads.push_back(SymMatrix::sym_outer(c.vec(j), c.vec(j)));
    } else {
        expected = 2 * c.n;
        std::vector<Vec> v;
        for (int j = 1; j <= c.n; ++j) {
            SymMatrix Aj = A.submatrix(sets.Iprime[static_cast<std::size_t>(j - 1)]);
            RankKernel rk = rank_and_kernel(Aj, tol);
            if (rk.kernel_basis.size() != 1)
                throw std::runtime_error("manifold_codim_check: kernel of A_{I_j'} not 1-dimensional at j=" +
                                         std::to_string(j));
            Vec full(static_cast<std::size_t>(c.n), 0.0);
            const IndexTuple& idx = sets.Iprime[static_cast<std::size_t>(j - 1)];
            for (std::size_t k = 0; k < idx.size(); ++k)
                full[static_cast<std::size_t>(idx[k] - 1)] = rk.kernel_basis[0][k];
            v.push_back(std::move(full));
        }
        for (int j = 0; j < c.n; ++j) grads.push_back(SymMatrix::sym_outer(v[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(j)]));
        for (int j = 0; j < c.n; ++j)
            grads.push_back(SymMatrix::sym_outer(v[static_cast<std::size_t>(j)], v[static_cast<std::size_t>((j + 1) % c.n)]));
    }
    Mat G(static_cast<int>(grads.size()), sym_dim(c.n));
    for (int r = 0; r < G.rows; ++r) {
        Vec row = sym_to_vec(grads[static_cast<std::size_t>(r)]);
        for (int j = 0; j < G.cols; ++j) G(r, j) = row[static_cast<std::size_t>(j)];
    }
    ManifoldCheck out;
    out.codim = numeric_rank(G, tol);
    out.independent = (out.codim == expected);
    return out;
}

}  // namespace coposet
