#pragma once
#include <limits>
#include <optional>

#include "multipoly.hpp"

namespace qorbit {

// Element of the fraction field of Q(c1,...,cr)(s), kept gcd-reduced with a
// monic denominator so that equality, hashing and printing are canonical.
class ExactScalar {
public:
    explicit ExactScalar(VarOrderPtr vars = VarOrder::rationals())
        : num_(MultiPoly::zero(vars)), den_(MultiPoly::constant(vars, 1)) {}

    ExactScalar(VarOrderPtr vars, const Rational& q)
        : num_(MultiPoly::constant(vars, q)), den_(MultiPoly::constant(vars, 1)) {}

    explicit ExactScalar(const MultiPoly& num)
        : num_(num), den_(MultiPoly::constant(num.vars(), 1)) {}

    ExactScalar(const MultiPoly& num, const MultiPoly& den) : num_(num), den_(den) {
        if (den_.is_zero()) throw DenominatorVanishes("zero denominator");
        normalize();
    }

    static ExactScalar variable(const VarOrderPtr& vars, const std::string& name) {
        return ExactScalar(MultiPoly::variable(vars, name));
    }

    const VarOrderPtr& vars() const { return num_.vars(); }
    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    Rational as_rational() const {
        if (!is_constant()) throw ParseError("scalar is not constant: " + str());
        return num_.constant_value() / den_.constant_value();
    }

    ExactScalar operator-() const {
        ExactScalar r = *this;
        r.num_ = -r.num_;
        return r;
    }

    ExactScalar operator+(const ExactScalar& o) const {
        return ExactScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    ExactScalar operator-(const ExactScalar& o) const {
        return ExactScalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    ExactScalar operator*(const ExactScalar& o) const {
        return ExactScalar(num_ * o.num_, den_ * o.den_);
    }
    ExactScalar operator/(const ExactScalar& o) const {
        if (o.is_zero()) throw DenominatorVanishes("division by zero scalar");
        return ExactScalar(num_ * o.den_, den_ * o.num_);
    }

    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
    ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

    bool operator==(const ExactScalar& o) const {
        // values are normalized, but tolerate mixed provenance via cross-multiplication
        if (same_vars(vars(), o.vars()) && num_ == o.num_ && den_ == o.den_) return true;
        return (num_ * o.den_) == (o.num_ * den_);
    }
    bool operator!=(const ExactScalar& o) const { return !(*this == o); }

    ExactScalar pow(long e) const {
        if (e < 0) return ExactScalar(num_.vars(), Rational(1)) / pow(-e);
        ExactScalar acc(num_.vars(), Rational(1));
        for (long i = 0; i < e; ++i) acc *= *this;
        return acc;
    }

    // Valuation at the prime (var); nullopt encodes +infinity (the zero scalar).
    std::optional<long> ord(const std::string& var = "s") const {
        if (is_zero()) return std::nullopt;
        int idx = vars()->index_of(var);
        if (idx < 0) throw ParseError("ord: variable '" + var + "' not in tower");
        std::size_t v = static_cast<std::size_t>(idx);
        return static_cast<long>(num_.min_degree_in(v)) - static_cast<long>(den_.min_degree_in(v));
    }

    ExactScalar specialize(const std::string& var, const Rational& value) const {
        int idx = vars()->index_of(var);
        if (idx < 0) throw ParseError("specialize: variable '" + var + "' not in tower");
        std::size_t v = static_cast<std::size_t>(idx);
        MultiPoly d = den_.substitute_value(v, value);
        if (d.is_zero())
            throw DenominatorVanishes("denominator vanishes at " + var + " = " + rational_str(value));
        MultiPoly n = num_.substitute_value(v, value);
        return ExactScalar(n.drop_var(v), d.drop_var(v));
    }

    // Substitute var by an arbitrary scalar g; the result lives in g's tower.
    // Remaining variables of *this must exist in g's tower.
    ExactScalar substitute(const std::string& var, const ExactScalar& g) const {
        int idx = vars()->index_of(var);
        if (idx < 0) throw ParseError("substitute: variable '" + var + "' not in tower");
        std::size_t v = static_cast<std::size_t>(idx);
        ExactScalar n = substitute_into(num_, v, g);
        ExactScalar d = substitute_into(den_, v, g);
        if (d.is_zero()) throw DenominatorVanishes("denominator vanishes under substitution");
        return n / d;
    }

    ExactScalar convert(const VarOrderPtr& nv) const {
        return ExactScalar(num_.convert(nv), den_.convert(nv));
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        Rational d = den_.evaluate(point);
        if (d == 0) throw DenominatorVanishes("denominator vanishes at sample point");
        return num_.evaluate(point) / d;
    }

    std::string str() const {
        if (den_ == MultiPoly::constant(vars(), 1)) return num_.str();
        std::string ns = num_.str();
        std::string ds = den_.str();
        bool nparen = num_.terms().size() > 1;
        bool dparen = ds.find_first_of("+-*") != std::string::npos;
        std::string out;
        out += nparen ? "(" + ns + ")" : ns;
        out += "/";
        out += dparen ? "(" + ds + ")" : ds;
        return out;
    }

    bool less_than(const ExactScalar& o) const {
        if (num_ != o.num_) return num_.less_than(o.num_);
        return den_.less_than(o.den_);
    }

private:
    static ExactScalar substitute_into(const MultiPoly& p, std::size_t v, const ExactScalar& g) {
        // Horner in v over scalar arithmetic
        auto cs = detail::coeffs_in(p, v);
        ExactScalar acc(g.vars());
        int prev = -1;
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
            int e = it->first;
            if (prev >= 0) acc = acc * g.pow(prev - e);
            ExactScalar coeff(it->second.drop_var(v).convert(g.vars()));
            acc += coeff;
            prev = e;
        }
        if (prev > 0) acc = acc * g.pow(prev);
        return acc;
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = MultiPoly::constant(num_.vars(), 1);
            return;
        }
        MultiPoly g = MultiPoly::gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = num_.divide_exact(g);
            den_ = den_.divide_exact(g);
        }
        Rational lc = den_.leading_coeff();
        if (lc != 1) {
            Rational inv = Rational(1) / lc;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    MultiPoly num_, den_;
};

inline ExactScalar operator*(const Rational& q, const ExactScalar& x) {
    return ExactScalar(x.vars(), q) * x;
}

inline ExactScalar operator*(const ExactScalar& x, const Rational& q) {
    return x * ExactScalar(x.vars(), q);
}

} // namespace qorbit
