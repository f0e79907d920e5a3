#pragma once
#include <set>
#include <variant>

#include "orbit.hpp"

namespace qorbit {

// ---------------------------------------------------------------------------
// module fingerprints
//
// For M = P/C the vector (rank of a.(-) : M -> M) over all arrows a is an
// isomorphism invariant. It is the invariant the degeneration diagrams track:
// inside a one-parameter family of boundary points it jumps exactly at the
// members drawn as separate degenerations.
// ---------------------------------------------------------------------------

// Full left action of one arrow on P-coordinates (column 0 = top class e,
// then the radical classes in order).
inline Matrix full_arrow_action(const ModulePtr& m, int arrow_idx, const VarOrderPtr& vars) {
    const AlgebraPtr& A = m->algebra();
    const Quiver& q = A->quiver();
    std::size_t n = m->dim_p();
    Matrix act(n, n, vars);
    auto pcol = [&](int cls) -> std::size_t {
        if (A->length_of(cls) == 0) return 0;
        return m->radical_col(cls) + 1;
    };
    for (std::size_t j = 0; j < n; ++j) {
        int cls = (j == 0) ? m->top_class() : m->radical_classes()[j - 1];
        if (q.arrow(arrow_idx).source != A->target_of(cls)) continue;
        Path ap;
        ap.word = {arrow_idx};
        ap.vertex = q.arrow(arrow_idx).source;
        Path prod = Path::compose(q, ap, A->basis_path(cls));
        for (const auto& [k, c] : A->normal_form(prod)) act.at(j, pcol(k)) = ExactScalar(vars, c);
    }
    return act;
}

// Action matrix of an arrow on the quotient P/X in the coordinates of the
// non-pivot P-columns of X.
inline Matrix quotient_action(const Subspace& x, int arrow_idx,
                              const std::function<void(const ExactScalar&)>& collector = {}) {
    const ModulePtr& m = x.module;
    VarOrderPtr vars = x.mat.vars();
    std::size_t np = m->dim_p();

    // X rows lifted to P-coordinates (radical columns shifted by one)
    Matrix lifted(0, np, vars);
    for (std::size_t i = 0; i < x.mat.rows(); ++i) {
        std::vector<ExactScalar> row(np, ExactScalar(vars));
        for (std::size_t j = 0; j < x.mat.cols(); ++j) row[j + 1] = x.mat.at(i, j);
        lifted.push_row(std::move(row));
    }
    std::vector<std::size_t> lpiv;
    for (std::size_t p : x.pivots) lpiv.push_back(p + 1);

    std::vector<std::size_t> qcols;
    for (std::size_t j = 0; j < np; ++j)
        if (std::find(lpiv.begin(), lpiv.end(), j) == lpiv.end()) qcols.push_back(j);

    Matrix act = full_arrow_action(m, arrow_idx, vars);
    Matrix out(qcols.size(), qcols.size(), vars);
    for (std::size_t r = 0; r < qcols.size(); ++r) {
        std::vector<ExactScalar> img(np, ExactScalar(vars));
        for (std::size_t k = 0; k < np; ++k) img[k] = act.at(qcols[r], k);
        img = lifted.residual(img, lpiv);
        for (std::size_t c = 0; c < qcols.size(); ++c) out.at(r, c) = img[qcols[c]];
    }
    if (collector) {
        Matrix tmp = out;
        tmp.rref(collector);
    }
    return out;
}

using Fingerprint = std::vector<std::size_t>;

inline Fingerprint module_fingerprint(const Subspace& x) {
    const AlgebraPtr& A = x.module->algebra();
    Fingerprint fp;
    for (std::size_t ai = 0; ai < A->quiver().num_arrows(); ++ai)
        fp.push_back(quotient_action(x, static_cast<int>(ai)).rank());
    return fp;
}

// ---------------------------------------------------------------------------
// rational roots of univariate polynomials over Q
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<Integer> divisors_with_budget(Integer n) {
    if (n < 0) n = -n;
    std::vector<Integer> out;
    if (n == 0) return out;
    Integer i = 1;
    long steps = 0;
    while (i * i <= n) {
        if (++steps > 2000000)
            throw NotOverBaseField("coefficient too large to enumerate rational roots");
        if (n % i == 0) {
            out.push_back(i);
            if (i * i != n) out.push_back(n / i);
        }
        ++i;
    }
    return out;
}

} // namespace detail

// All rational roots of a nonzero univariate polynomial (variable var).
inline std::vector<Rational> rational_roots(const MultiPoly& p, std::size_t var) {
    std::vector<Rational> roots;
    if (p.is_zero() || p.is_constant()) return roots;
    MultiPoly q = p;
    int v0 = q.min_degree_in(var);
    if (v0 > 0) {
        roots.push_back(0);
        q = q.divide_power(var, v0);
    }
    if (q.is_constant()) return roots;

    // integer-primitive coefficients
    Rational content = q.numeric_content();
    q = q.scaled(Rational(1) / content);
    int deg = q.degree_in(var);
    std::vector<Integer> coeff(static_cast<std::size_t>(deg) + 1, Integer(0));
    for (const auto& [mticket, c] : q.terms()) {
        coeff[static_cast<std::size_t>(mticket[var])] = numerator(c); // denominators are 1
    }
    if (deg == 1) {
        roots.push_back(Rational(-coeff[0], coeff[1]));
        return roots;
    }
    auto divisors_p = detail::divisors_with_budget(coeff[0]);
    auto divisors_q = detail::divisors_with_budget(coeff[static_cast<std::size_t>(deg)]);
    std::set<Rational> found;
    for (const Integer& a : divisors_p)
        for (const Integer& b : divisors_q)
            for (int sign : {1, -1}) {
                Rational cand(sign * a, b);
                if (q.substitute_value(var, cand).is_zero()) found.insert(cand);
            }
    for (const Rational& r : found) roots.push_back(r);
    return roots;
}

inline std::vector<Rational> scalar_root_candidates(const ExactScalar& x, std::size_t var) {
    std::vector<Rational> out;
    for (const Rational& r : rational_roots(x.num(), var)) out.push_back(r);
    for (const Rational& r : rational_roots(x.den(), var)) out.push_back(r);
    return out;
}

// ---------------------------------------------------------------------------
// one-parameter families in canonical lambda-form
// ---------------------------------------------------------------------------

// Canonical form of a genuinely varying one-parameter family of boundary
// points: the RREF matrix over Q(lam) whose first non-constant entry is lam
// itself. Membership at finite lambda is by specialization, at poles and at
// infinity by a further flat limit.
struct FamilyForm {
    ModulePtr module;
    Matrix mat;                                 // RREF over {"lam"}
    std::vector<std::size_t> pivots;
    std::pair<std::size_t, std::size_t> lam_pos; // position of the entry == lam

    bool operator==(const FamilyForm& o) const { return mat == o.mat; }

    std::string str() const {
        Subspace s{module, mat, pivots};
        return s.str();
    }
};

inline const VarOrderPtr& lam_order() {
    static const VarOrderPtr order = VarOrder::make({"lam"});
    return order;
}

// Member of the family's closure at lam = v (or at infinity). Poles and the
// point at infinity are resolved by the DVR limit along lam = v + s or 1/s.
inline GrassPoint family_member(const FamilyForm& f, const std::optional<Rational>& v) {
    static const VarOrderPtr sorder = VarOrder::make({"s"});
    bool pole = !v.has_value();
    if (v) {
        for (std::size_t i = 0; i < f.mat.rows() && !pole; ++i)
            for (std::size_t j = 0; j < f.mat.cols() && !pole; ++j)
                if (f.mat.at(i, j).den().substitute_value(0, *v).is_zero()) pole = true;
        if (!pole) {
            Matrix spec = f.mat.specialized("lam", *v);
            spec.rref();
            return make_grass_point(make_subspace(f.module, std::move(spec)));
        }
    }
    ExactScalar target = v ? ExactScalar(sorder, *v) + ExactScalar::variable(sorder, "s")
                           : ExactScalar(MultiPoly::constant(sorder, 1),
                                         MultiPoly::variable(sorder, "s"));
    Matrix shifted(f.mat.rows(), f.mat.cols(), sorder);
    for (std::size_t i = 0; i < f.mat.rows(); ++i)
        for (std::size_t j = 0; j < f.mat.cols(); ++j)
            shifted.at(i, j) = f.mat.at(i, j).substitute("lam", target);
    return limit_point(f.module, shifted);
}

} // namespace qorbit
