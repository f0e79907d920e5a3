#pragma once
#include "modrep.hpp"

namespace qorbit {

// One-parameter families of subspaces over the tower Q(c1,...,cr)(s) and
// their limits at s = 0: the DVR saturation of Lemma 3.2 and an independent
// Pluecker-normalization route used as an oracle.

struct SaturationResult {
    Matrix y; // d' x d' over the fraction field, B = Y.V
    Matrix b; // saturated rows: all ord_s >= 0, full rank at s = 0
};

// Row reduction over the valuation ring: repeatedly pick the entry of
// minimal ord_s among unprocessed rows (ties: smallest row, then column),
// scale that row by s^-q, clear its column from the other unprocessed rows,
// and recurse.
inline SaturationResult dvr_saturate(const Matrix& v, const std::string& var = "s") {
    std::size_t d = v.rows(), m = v.cols();
    VarOrderPtr vars = v.vars();
    Matrix b = v;
    Matrix y = Matrix::identity(d, vars);
    ExactScalar svar = ExactScalar::variable(vars, var);

    std::vector<bool> done(d, false);
    for (std::size_t step = 0; step < d; ++step) {
        long best = 0;
        std::size_t bi = d, bj = m;
        for (std::size_t i = 0; i < d; ++i) {
            if (done[i]) continue;
            for (std::size_t j = 0; j < m; ++j) {
                auto o = b.at(i, j).ord(var);
                if (!o) continue;
                if (bi == d || *o < best) {
                    best = *o;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi == d) throw RankDeficient("rows are dependent over the fraction field");
        ExactScalar scale = svar.pow(-best);
        for (std::size_t j = 0; j < m; ++j) b.at(bi, j) *= scale;
        for (std::size_t j = 0; j < d; ++j) y.at(bi, j) *= scale;
        const ExactScalar pivot = b.at(bi, bj); // a unit of the DVR
        for (std::size_t i = 0; i < d; ++i) {
            if (done[i] || i == bi || b.at(i, bj).is_zero()) continue;
            ExactScalar f = b.at(i, bj) / pivot;
            for (std::size_t j = 0; j < m; ++j) b.at(i, j) -= f * b.at(bi, j);
            for (std::size_t j = 0; j < d; ++j) y.at(i, j) -= f * y.at(bi, j);
        }
        done[bi] = true;
    }
    return SaturationResult{std::move(y), std::move(b)};
}

// Flat limit at s = 0 of the family spanned by the rows (a Lambda-stable
// subspace for every fixed parameter value). The result is checked to be a
// Lambda-submodule of the same dimension.
inline GrassPoint limit_point(const ModulePtr& module, const Matrix& family,
                              const std::string& var = "s") {
    SaturationResult sat = dvr_saturate(family, var);
    Matrix at_zero = sat.b.specialized(var, 0);
    Subspace s = make_subspace(module, std::move(at_zero));
    if (s.dim() != family.rows())
        throw LimitNotStable("limit dropped dimension"); // cannot happen for saturated rows
    if (!is_lambda_stable(s))
        throw LimitNotStable("limit of a family of submodules is not a submodule");
    return GrassPoint{std::move(s)};
}

// All d' x d' minors in lexicographic column-set order, normalized so the
// first nonzero coordinate is 1.
struct PluckerVector {
    std::vector<ExactScalar> coords;
    std::vector<std::vector<std::size_t>> column_sets;

    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (i) out += " : ";
            out += coords[i].str();
        }
        return out + ")";
    }
};

namespace detail {

inline void column_sets_rec(std::size_t m, std::size_t d, std::size_t start,
                            std::vector<std::size_t>& cur,
                            std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == d) {
        out.push_back(cur);
        return;
    }
    for (std::size_t c = start; c + (d - cur.size()) <= m; ++c) {
        cur.push_back(c);
        column_sets_rec(m, d, c + 1, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<std::size_t>> column_sets(std::size_t m, std::size_t d) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    column_sets_rec(m, d, 0, cur, out);
    return out;
}

} // namespace detail

inline PluckerVector plucker_raw(const Matrix& rows) {
    std::size_t d = rows.rows();
    PluckerVector p;
    p.column_sets = detail::column_sets(rows.cols(), d);
    p.coords.reserve(p.column_sets.size());
    for (const auto& cs : p.column_sets) p.coords.push_back(rows.submatrix_cols(cs).det());
    return p;
}

inline PluckerVector plucker(const Matrix& rows) {
    PluckerVector p = plucker_raw(rows);
    std::size_t first = p.coords.size();
    for (std::size_t i = 0; i < p.coords.size(); ++i)
        if (!p.coords[i].is_zero()) {
            first = i;
            break;
        }
    if (first == p.coords.size()) throw RankDeficient("all maximal minors vanish");
    ExactScalar lead = p.coords[first];
    for (auto& c : p.coords) c /= lead;
    return p;
}

inline PluckerVector plucker(const Subspace& s) { return plucker(s.mat); }

namespace detail {

// parity of the permutation sending row order to sorted column positions:
// the number of remaining pivots strictly between the replaced pivot and the
// new column
inline int reconstruction_sign(const std::vector<std::size_t>& pivot_set, std::size_t replaced_pos,
                               std::size_t new_col) {
    std::size_t lo = std::min(pivot_set[replaced_pos], new_col);
    std::size_t hi = std::max(pivot_set[replaced_pos], new_col);
    int inversions = 0;
    for (std::size_t k = 0; k < pivot_set.size(); ++k)
        if (k != replaced_pos && pivot_set[k] > lo && pivot_set[k] < hi) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

} // namespace detail

// Reconstruct the subspace from a Pluecker vector via the pivot-minor method:
// the lexicographically first nonzero coordinate names the pivot column set.
inline Matrix plucker_reconstruct(const PluckerVector& p, std::size_t m, std::size_t d,
                                  const VarOrderPtr& vars) {
    std::size_t first = p.coords.size();
    for (std::size_t i = 0; i < p.coords.size(); ++i)
        if (!p.coords[i].is_zero()) {
            first = i;
            break;
        }
    if (first == p.coords.size()) throw RankDeficient("zero Pluecker vector");
    const std::vector<std::size_t>& J = p.column_sets[first];
    const ExactScalar& pj = p.coords[first];

    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < p.column_sets.size(); ++i) index[p.column_sets[i]] = i;

    Matrix rows(d, m, vars);
    for (std::size_t i = 0; i < d; ++i) {
        rows.at(i, J[i]) = ExactScalar(vars, Rational(1));
        for (std::size_t c = 0; c < m; ++c) {
            bool in_j = false;
            for (std::size_t jc : J)
                if (jc == c) in_j = true;
            if (in_j) continue;
            std::vector<std::size_t> S;
            for (std::size_t k = 0; k < d; ++k)
                if (k != i) S.push_back(J[k]);
            S.push_back(c);
            std::sort(S.begin(), S.end());
            auto it = index.find(S);
            if (it == index.end()) continue; // degenerate (repeated column)
            int sign = detail::reconstruction_sign(J, i, c);
            ExactScalar val = p.coords[it->second] / pj;
            rows.at(i, c) = sign > 0 ? val : -val;
        }
    }
    return rows;
}

// Independent limit route: normalize the family's Pluecker vector by the
// minimal s-order, set s = 0, and rebuild the subspace from the limit vector.
inline GrassPoint plucker_limit(const ModulePtr& module, const Matrix& family,
                                const std::string& var = "s") {
    PluckerVector p = plucker_raw(family);
    ExactScalar svar = ExactScalar::variable(family.vars(), var);
    bool any = false;
    long min_ord = 0;
    for (const auto& c : p.coords) {
        auto o = c.ord(var);
        if (!o) continue;
        if (!any || *o < min_ord) min_ord = *o;
        any = true;
    }
    if (!any) throw RankDeficient("family has dependent rows");
    ExactScalar scale = svar.pow(-min_ord);
    PluckerVector limit = p;
    for (auto& c : limit.coords) c = (c * scale).specialize(var, 0);

    Matrix rows = plucker_reconstruct(limit, family.cols(), family.rows(),
                                      limit.coords.front().vars());
    Subspace s = make_subspace(module, std::move(rows));
    if (!is_lambda_stable(s))
        throw LimitNotStable("Pluecker limit is not a submodule");
    return GrassPoint{std::move(s)};
}

} // namespace qorbit
