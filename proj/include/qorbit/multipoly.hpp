#pragma once
#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <vector>

#include "rational.hpp"

namespace qorbit {

// Ordered variable list of a polynomial tower Q(c1,...,cr)(s). The order is
// fixed at construction; the symbol "s" is reserved for the curve parameter
// and, when present, must come last.
class VarOrder {
public:
    explicit VarOrder(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw ParseError("empty variable name");
            if (names_[i] == "s" && i + 1 != names_.size())
                throw ParseError("the reserved symbol 's' must be the last variable");
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw ParseError("duplicate variable name '" + names_[i] + "'");
        }
    }

    static std::shared_ptr<const VarOrder> make(std::vector<std::string> names) {
        return std::make_shared<const VarOrder>(std::move(names));
    }
    static const std::shared_ptr<const VarOrder>& rationals() {
        static const auto empty = make({});
        return empty;
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    int index_of(const std::string& n) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return static_cast<int>(i);
        return -1;
    }

    std::shared_ptr<const VarOrder> without(std::size_t idx) const {
        std::vector<std::string> rest;
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (i != idx) rest.push_back(names_[i]);
        return make(std::move(rest));
    }

    bool operator==(const VarOrder& o) const { return names_ == o.names_; }
    bool operator!=(const VarOrder& o) const { return !(*this == o); }

private:
    std::vector<std::string> names_;
};

using VarOrderPtr = std::shared_ptr<const VarOrder>;

inline bool same_vars(const VarOrderPtr& a, const VarOrderPtr& b) {
    return a == b || *a == *b;
}

using Monomial = std::vector<int>;

// Graded lexicographic order; earlier variables dominate within a degree.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        long da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

// Sparse multivariate polynomial with rational coefficients over a fixed
// VarOrder. Terms are kept in ascending grlex order with no zero entries.
class MultiPoly {
public:
    using TermMap = std::map<Monomial, Rational, GrlexLess>;

    explicit MultiPoly(VarOrderPtr vars) : vars_(std::move(vars)) {}

    static MultiPoly zero(const VarOrderPtr& vars) { return MultiPoly(vars); }

    static MultiPoly constant(const VarOrderPtr& vars, const Rational& c) {
        MultiPoly p(vars);
        if (c != 0) p.terms_[Monomial(vars->size(), 0)] = c;
        return p;
    }

    static MultiPoly variable(const VarOrderPtr& vars, const std::string& name, int exp = 1) {
        int idx = vars->index_of(name);
        if (idx < 0) throw ParseError("unknown variable '" + name + "'");
        MultiPoly p(vars);
        Monomial m(vars->size(), 0);
        m[static_cast<std::size_t>(idx)] = exp;
        p.terms_[m] = 1;
        return p;
    }

    const VarOrderPtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        for (int e : terms_.begin()->first)
            if (e != 0) return false;
        return true;
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        return terms_.begin()->second;
    }

    long total_degree() const {
        long d = 0;
        for (const auto& [m, c] : terms_) {
            long t = 0;
            for (int e : m) t += e;
            d = std::max(d, t);
        }
        return d;
    }

    int degree_in(std::size_t var) const {
        int d = -1; // -1 for the zero polynomial
        for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
        return d;
    }

    // s-adic valuation ingredient: least exponent of the variable.
    int min_degree_in(std::size_t var) const {
        int d = -1;
        for (const auto& [m, c] : terms_)
            d = (d < 0) ? m[var] : std::min(d, m[var]);
        return d;
    }

    bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

    MultiPoly operator-() const {
        MultiPoly r(vars_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    MultiPoly operator+(const MultiPoly& o) const {
        check_vars(o);
        MultiPoly r = *this;
        for (const auto& [m, c] : o.terms_) {
            auto it = r.terms_.find(m);
            if (it == r.terms_.end()) {
                r.terms_[m] = c;
            } else {
                it->second += c;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
        return r;
    }

    MultiPoly operator-(const MultiPoly& o) const { return *this + (-o); }

    MultiPoly operator*(const MultiPoly& o) const {
        check_vars(o);
        MultiPoly r(vars_);
        for (const auto& [ma, ca] : terms_) {
            for (const auto& [mb, cb] : o.terms_) {
                Monomial m(ma);
                for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                auto it = r.terms_.find(m);
                if (it == r.terms_.end()) {
                    Rational c = ca * cb;
                    if (c != 0) r.terms_[m] = c;
                } else {
                    it->second += ca * cb;
                    if (it->second == 0) r.terms_.erase(it);
                }
            }
        }
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly scaled(const Rational& c) const {
        MultiPoly r(vars_);
        if (c == 0) return r;
        for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
        return r;
    }

    MultiPoly pow(int e) const {
        MultiPoly acc = constant(vars_, 1);
        for (int i = 0; i < e; ++i) acc *= *this;
        return acc;
    }

    bool operator==(const MultiPoly& o) const {
        return same_vars(vars_, o.vars_) && terms_ == o.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    // Exact division by var^k; requires every term to carry the factor.
    MultiPoly divide_power(std::size_t var, int k) const {
        MultiPoly r(vars_);
        for (const auto& [m, c] : terms_) {
            if (m[var] < k) throw ParseError("divide_power: not divisible");
            Monomial m2 = m;
            m2[var] -= k;
            r.terms_[m2] = c;
        }
        return r;
    }

    // Substitute a rational value; the variable stays in the order with
    // exponent folded to zero (use drop_var to shrink the tower).
    MultiPoly substitute_value(std::size_t var, const Rational& v) const {
        MultiPoly r(vars_);
        for (const auto& [m, c] : terms_) {
            Monomial m2 = m;
            int e = m2[var];
            m2[var] = 0;
            Rational coeff = c * rational_pow(v, e);
            if (coeff == 0) continue;
            auto it = r.terms_.find(m2);
            if (it == r.terms_.end()) r.terms_[m2] = coeff;
            else {
                it->second += coeff;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
        return r;
    }

    MultiPoly drop_var(std::size_t var) const {
        if (depends_on(var)) throw ParseError("drop_var: variable still occurs");
        VarOrderPtr nv = vars_->without(var);
        MultiPoly r(nv);
        for (const auto& [m, c] : terms_) {
            Monomial m2;
            m2.reserve(m.size() - 1);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (i != var) m2.push_back(m[i]);
            r.terms_[m2] = c;
        }
        return r;
    }

    // Re-express over a superset variable order (match by name).
    MultiPoly convert(const VarOrderPtr& nv) const {
        if (same_vars(vars_, nv)) {
            MultiPoly r(nv);
            r.terms_ = terms_;
            return r;
        }
        std::vector<int> where(vars_->size());
        for (std::size_t i = 0; i < vars_->size(); ++i) {
            int idx = nv->index_of(vars_->name(i));
            if (idx < 0) throw ParseError("convert: missing variable '" + vars_->name(i) + "'");
            where[i] = idx;
        }
        MultiPoly r(nv);
        for (const auto& [m, c] : terms_) {
            Monomial m2(nv->size(), 0);
            for (std::size_t i = 0; i < m.size(); ++i) m2[static_cast<std::size_t>(where[i])] = m[i];
            r.terms_[m2] = c;
        }
        return r;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        Rational acc(0);
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0) t *= rational_pow(point[i], m[i]);
            acc += t;
        }
        return acc;
    }

    // Leading data under grlex.
    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    const Rational& leading_coeff() const { return terms_.rbegin()->second; }

    Rational numeric_content() const {
        Rational g(0);
        for (const auto& [m, c] : terms_) g = rational_content_gcd(g, c);
        return g;
    }

    // Single-divisor long division; succeeds exactly when divisor | this.
    std::optional<MultiPoly> try_divide_exact(const MultiPoly& divisor) const {
        check_vars(divisor);
        if (divisor.is_zero()) throw DenominatorVanishes("division by zero polynomial");
        MultiPoly rem = *this;
        MultiPoly quot(vars_);
        const Monomial& lm = divisor.leading_monomial();
        const Rational& lc = divisor.leading_coeff();
        while (!rem.is_zero()) {
            const Monomial& rm = rem.leading_monomial();
            Monomial q(rm);
            bool divisible = true;
            for (std::size_t i = 0; i < q.size(); ++i) {
                q[i] -= lm[i];
                if (q[i] < 0) { divisible = false; break; }
            }
            if (!divisible) return std::nullopt;
            Rational qc = rem.leading_coeff() / lc;
            MultiPoly mono(vars_);
            mono.terms_[q] = qc;
            quot += mono;
            rem -= mono * divisor;
        }
        return quot;
    }

    MultiPoly divide_exact(const MultiPoly& divisor) const {
        auto q = try_divide_exact(divisor);
        if (!q) throw ParseError("divide_exact: not divisible");
        return *q;
    }

    static MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

    std::string str() const;

    bool less_than(const MultiPoly& o) const {
        // deterministic structural order, used for canonical tie-breaking
        auto it = terms_.rbegin();
        auto jt = o.terms_.rbegin();
        GrlexLess lt;
        for (; it != terms_.rend() && jt != o.terms_.rend(); ++it, ++jt) {
            if (lt(it->first, jt->first)) return true;
            if (lt(jt->first, it->first)) return false;
            if (it->second != jt->second) return it->second < jt->second;
        }
        return it == terms_.rend() && jt != o.terms_.rend();
    }

private:
    void check_vars(const MultiPoly& o) const {
        if (!same_vars(vars_, o.vars_))
            throw ParseError("mixed variable orders in polynomial arithmetic");
    }

    VarOrderPtr vars_;
    TermMap terms_;
};

namespace detail {

// View of a polynomial as univariate in `var` with MultiPoly coefficients.
inline std::map<int, MultiPoly> coeffs_in(const MultiPoly& p, std::size_t var) {
    std::map<int, MultiPoly> out;
    for (const auto& [m, c] : p.terms()) {
        int e = m[var];
        auto it = out.find(e);
        if (it == out.end()) it = out.emplace(e, MultiPoly::zero(p.vars())).first;
        MultiPoly term = MultiPoly::constant(p.vars(), c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != var && m[i] != 0)
                term *= MultiPoly::variable(p.vars(), p.vars()->name(i), m[i]);
        it->second += term;
    }
    return out;
}

inline MultiPoly from_coeffs(const std::map<int, MultiPoly>& cs, std::size_t var,
                             const VarOrderPtr& vars) {
    MultiPoly acc = MultiPoly::zero(vars);
    for (const auto& [e, c] : cs) {
        MultiPoly t = c;
        if (e != 0) t *= MultiPoly::variable(vars, vars->name(var), e);
        acc += t;
    }
    return acc;
}

inline MultiPoly poly_content(const MultiPoly& p, std::size_t var) {
    auto cs = coeffs_in(p, var);
    MultiPoly g = MultiPoly::zero(p.vars());
    for (const auto& [e, c] : cs) g = MultiPoly::gcd(g, c);
    return g;
}

inline MultiPoly leading_coeff_in(const MultiPoly& p, std::size_t var) {
    auto cs = coeffs_in(p, var);
    return cs.rbegin()->second;
}

// Euclid with monic normalization; both arguments must involve only `var`.
inline MultiPoly univar_gcd(MultiPoly a, MultiPoly b, std::size_t var) {
    auto monic = [&](MultiPoly p) {
        if (p.is_zero()) return p;
        return p.scaled(Rational(1) / p.leading_coeff());
    };
    a = monic(a);
    b = monic(b);
    while (!b.is_zero()) {
        // a mod b by plain long division in var
        int db = b.degree_in(var);
        while (!a.is_zero() && a.degree_in(var) >= db) {
            int da = a.degree_in(var);
            auto ac = coeffs_in(a, var);
            Rational lr = ac.rbegin()->second.constant_value();
            MultiPoly shift = (da > db)
                                  ? MultiPoly::variable(a.vars(), a.vars()->name(var), da - db)
                                  : MultiPoly::constant(a.vars(), 1);
            a -= shift.scaled(lr) * b;
        }
        std::swap(a, b);
        b = monic(b);
    }
    return monic(a);
}

// lc(b)^(da-db+1) * a = q*b + r in (coefficient ring)[var]; returns r.
inline MultiPoly pseudo_rem(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
    int db = b.degree_in(var);
    auto bc = coeffs_in(b, var);
    MultiPoly lb = bc.rbegin()->second;
    MultiPoly rem = a;
    int guard = a.degree_in(var) - db + 1;
    for (int i = 0; i < guard + 1 && !rem.is_zero(); ++i) {
        int dr = rem.degree_in(var);
        if (dr < db) break;
        auto rc = coeffs_in(rem, var);
        MultiPoly lr = rc.rbegin()->second;
        // rem <- lb*rem - lr*var^(dr-db)*b, rescaled to keep rationals small
        MultiPoly shift = MultiPoly::variable(rem.vars(), rem.vars()->name(var), dr - db);
        rem = lb * rem - lr * shift * b;
        if (!rem.is_zero()) {
            Rational c = rem.numeric_content();
            if (c != 1) rem = rem.scaled(Rational(1) / c);
        }
    }
    return rem;
}

} // namespace detail

namespace detail {

MultiPoly gcd_primitive_prs(const MultiPoly& pa, const MultiPoly& pb, std::size_t v);
MultiPoly gcd_brown(const MultiPoly& pa, const MultiPoly& pb, std::size_t v);

// Fallback for the rare case the evaluation points run dry: primitive PRS.
inline MultiPoly gcd_primitive_prs(const MultiPoly& pa, const MultiPoly& pb, std::size_t v) {
    MultiPoly f = pa, g = pb;
    if (f.degree_in(v) < g.degree_in(v)) std::swap(f, g);
    while (!g.is_zero()) {
        MultiPoly r = pseudo_rem(f, g, v);
        if (!r.is_zero()) {
            MultiPoly cr = poly_content(r, v);
            r = r.divide_exact(cr);
            Rational nc = r.numeric_content();
            if (nc != 1) r = r.scaled(Rational(1) / nc);
        }
        f = g;
        g = r;
    }
    MultiPoly cf = poly_content(f, v);
    return f.divide_exact(cf);
}

// Brown's evaluation/interpolation gcd of primitive parts (both depend on v,
// at least one further variable occurs). Returns a primitive-wrt-v result up
// to a rational unit.
inline MultiPoly gcd_brown(const MultiPoly& pa, const MultiPoly& pb, std::size_t v) {
    const VarOrderPtr& vars = pa.vars();
    int wi = -1;
    for (int i = static_cast<int>(vars->size()) - 1; i >= 0; --i) {
        std::size_t u = static_cast<std::size_t>(i);
        if (u == v) continue;
        if (pa.depends_on(u) || pb.depends_on(u)) {
            wi = i;
            break;
        }
    }
    std::size_t w = static_cast<std::size_t>(wi);

    MultiPoly lca = leading_coeff_in(pa, v);
    MultiPoly lcb = leading_coeff_in(pb, v);
    MultiPoly gamma = MultiPoly::gcd(lca, lcb);
    int needed = std::min(pa.degree_in(w), pb.degree_in(w)) + gamma.degree_in(w) + 1;

    for (int attempt = 0; attempt < 4; ++attempt) {
        std::vector<Rational> points;
        std::vector<MultiPoly> images;
        int best_dv = -1;
        long t_raw = 0;
        int steps = 0;
        const int step_budget = 64 + 8 * needed;
        auto next_point = [&]() {
            long k = t_raw++;
            long val = (k % 2 == 0) ? k / 2 : -(k / 2 + 1); // 0, -1, 1, -2, 2, ...
            return Rational(val + 7 * attempt);
        };
        while (static_cast<int>(points.size()) < needed && steps++ < step_budget) {
            Rational t = next_point();
            if (lca.substitute_value(w, t).is_zero() || lcb.substitute_value(w, t).is_zero())
                continue;
            MultiPoly ia = pa.substitute_value(w, t);
            MultiPoly ib = pb.substitute_value(w, t);
            MultiPoly img = MultiPoly::gcd(ia, ib);
            if (img.is_constant()) return MultiPoly::constant(vars, 1);
            int dv = img.degree_in(v);
            if (best_dv >= 0 && dv > best_dv) continue; // unlucky point
            if (best_dv < 0 || dv < best_dv) {
                best_dv = dv;
                points.clear();
                images.clear();
            }
            MultiPoly gamma_t = gamma.substitute_value(w, t);
            auto factor = gamma_t.try_divide_exact(leading_coeff_in(img, v));
            if (!factor) continue;
            points.push_back(t);
            images.push_back(img * *factor);
        }
        if (static_cast<int>(points.size()) < needed) continue;

        // Lagrange interpolation in w
        MultiPoly H = MultiPoly::zero(vars);
        for (std::size_t j = 0; j < points.size(); ++j) {
            MultiPoly basis = MultiPoly::constant(vars, 1);
            Rational denom(1);
            for (std::size_t k = 0; k < points.size(); ++k) {
                if (k == j) continue;
                basis *= MultiPoly::variable(vars, vars->name(w), 1) -
                         MultiPoly::constant(vars, points[k]);
                denom *= points[j] - points[k];
            }
            H += (images[j] * basis).scaled(Rational(1) / denom);
        }
        if (H.is_zero()) continue;
        MultiPoly ch = poly_content(H, v);
        MultiPoly cand = H.divide_exact(ch);
        if (pa.try_divide_exact(cand).has_value() && pb.try_divide_exact(cand).has_value())
            return cand;
    }
    return gcd_primitive_prs(pa, pb, v);
}

} // namespace detail

inline MultiPoly MultiPoly::gcd(const MultiPoly& a, const MultiPoly& b) {
    auto monic = [](const MultiPoly& p) {
        if (p.is_zero()) return p;
        return p.scaled(Rational(1) / p.leading_coeff());
    };
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return constant(a.vars(), 1);

    // main variable: last one occurring in either operand
    int var = -1;
    for (int i = static_cast<int>(a.vars()->size()) - 1; i >= 0; --i) {
        if (a.depends_on(static_cast<std::size_t>(i)) || b.depends_on(static_cast<std::size_t>(i))) {
            var = i;
            break;
        }
    }
    std::size_t v = static_cast<std::size_t>(var);
    if (!a.depends_on(v) || !b.depends_on(v)) {
        // one operand is free of the main variable: gcd divides its content
        const MultiPoly& free = a.depends_on(v) ? b : a;
        const MultiPoly& other = a.depends_on(v) ? a : b;
        return gcd(free, detail::poly_content(other, v));
    }

    MultiPoly ca = detail::poly_content(a, v);
    MultiPoly cb = detail::poly_content(b, v);
    MultiPoly cg = gcd(ca, cb);
    MultiPoly pa = a.divide_exact(ca);
    MultiPoly pb = b.divide_exact(cb);

    bool multivar = false;
    for (std::size_t i = 0; i < a.vars()->size() && !multivar; ++i)
        if (i != v && (pa.depends_on(i) || pb.depends_on(i))) multivar = true;

    MultiPoly prim = multivar ? detail::gcd_brown(pa, pb, v)
                              : detail::univar_gcd(pa, pb, v);
    return monic(cg * prim);
}

inline std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Monomial& m = it->first;
        Rational c = it->second;
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        Rational ac = abs(c);
        bool trivial_monomial = true;
        for (int e : m)
            if (e != 0) trivial_monomial = false;
        bool coeff_shown = (ac != 1) || trivial_monomial;
        if (coeff_shown) os << rational_str(ac);
        bool star = coeff_shown;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (star) os << "*";
            os << vars_->name(i);
            if (m[i] > 1) os << "^" << m[i];
            star = true;
        }
    }
    return os.str();
}

} // namespace qorbit
