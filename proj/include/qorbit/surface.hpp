#pragma once
#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qorbit {

// Combinatorial bookkeeping for curve configurations on smooth rational
// surfaces: named curves with self-intersection numbers, a multiset of
// transverse crossings, and the Picard rank of the ambient surface.
class CurveConfig {
public:
    CurveConfig() = default;
    explicit CurveConfig(int picard_rank) : picard_rank_(picard_rank) {}

    static CurveConfig p2_with_line() {
        CurveConfig c(1);
        c.add_curve("L", 1);
        return c;
    }

    // X0 = P1 x P1 with the two rulings through one point
    static CurveConfig x0() {
        CurveConfig c(2);
        c.add_curve("D0", 0);
        c.add_curve("D0p", 0);
        c.add_crossing("D0", "D0p");
        return c;
    }

    int picard_rank() const { return picard_rank_; }
    std::size_t num_curves() const { return curves_.size(); }

    bool has_curve(const std::string& name) const { return find(name) >= 0; }

    int self_intersection(const std::string& name) const {
        int i = find(name);
        if (i < 0) throw InvalidPoint("unknown curve '" + name + "'");
        return curves_[static_cast<std::size_t>(i)].second;
    }

    void add_curve(const std::string& name, int self_int) {
        if (find(name) >= 0) throw InvalidPoint("curve '" + name + "' already present");
        curves_.push_back({name, self_int});
    }

    void add_crossing(const std::string& a, const std::string& b) {
        if (find(a) < 0 || find(b) < 0) throw InvalidPoint("crossing references unknown curve");
        crossings_.push_back(ordered(a, b));
        std::sort(crossings_.begin(), crossings_.end());
    }

    int crossing_count(const std::string& a, const std::string& b) const {
        auto key = ordered(a, b);
        int n = 0;
        for (const auto& c : crossings_)
            if (c == key) ++n;
        return n;
    }

    const std::vector<std::pair<std::string, int>>& curves() const { return curves_; }
    const std::vector<std::pair<std::string, std::string>>& crossings() const { return crossings_; }

    std::string str() const {
        std::string out = "rank " + std::to_string(picard_rank_) + "; curves {";
        for (std::size_t i = 0; i < curves_.size(); ++i) {
            if (i) out += ", ";
            out += curves_[i].first + "^2=" + std::to_string(curves_[i].second);
        }
        out += "}; crossings {";
        for (std::size_t i = 0; i < crossings_.size(); ++i) {
            if (i) out += ", ";
            out += crossings_[i].first + "." + crossings_[i].second;
        }
        return out + "}";
    }

    std::string dot() const {
        std::string out = "graph crossings {\n";
        for (const auto& [n, s] : curves_)
            out += "  \"" + n + "\" [label=\"" + n + " (" + std::to_string(s) + ")\"];\n";
        for (const auto& [a, b] : crossings_) out += "  \"" + a + "\" -- \"" + b + "\";\n";
        out += "}\n";
        return out;
    }

    bool operator==(const CurveConfig& o) const {
        return picard_rank_ == o.picard_rank_ && sorted_curves() == o.sorted_curves() &&
               crossings_ == o.crossings_;
    }

private:
    int find(const std::string& name) const {
        for (std::size_t i = 0; i < curves_.size(); ++i)
            if (curves_[i].first == name) return static_cast<int>(i);
        return -1;
    }
    static std::pair<std::string, std::string> ordered(const std::string& a, const std::string& b) {
        return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
    }
    std::vector<std::pair<std::string, int>> sorted_curves() const {
        auto c = curves_;
        std::sort(c.begin(), c.end());
        return c;
    }

    int picard_rank_ = 1;
    std::vector<std::pair<std::string, int>> curves_;
    std::vector<std::pair<std::string, std::string>> crossings_;

    friend CurveConfig blow_up_crossing(const CurveConfig&, const std::string&, const std::string&,
                                        const std::string&);
    friend CurveConfig blow_up_on_curve(const CurveConfig&, const std::string&, const std::string&);
    friend CurveConfig blow_up_free(const CurveConfig&, const std::string&);
    friend CurveConfig blow_down(const CurveConfig&, const std::string&);
};

// Monoidal transformation at the crossing point of two curves: both lose the
// mutual crossing and one unit of self-intersection; the exceptional curve
// crosses both. Picard rank rises by one.
inline CurveConfig blow_up_crossing(const CurveConfig& cfg, const std::string& a,
                                    const std::string& b, const std::string& exceptional) {
    if (cfg.crossing_count(a, b) < 1) throw InvalidPoint("curves do not cross");
    CurveConfig out = cfg;
    out.picard_rank_ += 1;
    auto key = CurveConfig::ordered(a, b);
    auto it = std::find(out.crossings_.begin(), out.crossings_.end(), key);
    out.crossings_.erase(it);
    for (auto& [n, s] : out.curves_)
        if (n == a || n == b) s -= 1;
    out.add_curve(exceptional, -1);
    out.add_crossing(a, exceptional);
    out.add_crossing(b, exceptional);
    return out;
}

inline CurveConfig blow_up_on_curve(const CurveConfig& cfg, const std::string& a,
                                    const std::string& exceptional) {
    if (!cfg.has_curve(a)) throw InvalidPoint("unknown curve '" + a + "'");
    CurveConfig out = cfg;
    out.picard_rank_ += 1;
    for (auto& [n, s] : out.curves_)
        if (n == a) s -= 1;
    out.add_curve(exceptional, -1);
    out.add_crossing(a, exceptional);
    return out;
}

inline CurveConfig blow_up_free(const CurveConfig& cfg, const std::string& exceptional) {
    CurveConfig out = cfg;
    out.picard_rank_ += 1;
    out.add_curve(exceptional, -1);
    return out;
}

// Contract a (-1)-curve: curves crossing it k times gain k^2 in
// self-intersection and pairs crossing it gain mutual crossings.
inline CurveConfig blow_down(const CurveConfig& cfg, const std::string& e) {
    if (!cfg.has_curve(e)) throw InvalidPoint("unknown curve '" + e + "'");
    if (cfg.self_intersection(e) != -1)
        throw NotMinusOne("curve '" + e + "' has self-intersection " +
                          std::to_string(cfg.self_intersection(e)));
    CurveConfig out(cfg.picard_rank() - 1);
    std::map<std::string, int> hits;
    for (const auto& [n, s] : cfg.curves_)
        if (n != e) hits[n] = cfg.crossing_count(n, e);
    for (const auto& [n, s] : cfg.curves_)
        if (n != e) out.add_curve(n, s + hits[n] * hits[n]);
    for (const auto& [a, b] : cfg.crossings_)
        if (a != e && b != e) out.add_crossing(a, b);
    // images of curves through the contracted point meet there
    std::vector<std::string> through;
    for (const auto& [n, k] : hits)
        for (int i = 0; i < k; ++i) through.push_back(n);
    for (std::size_t i = 0; i < through.size(); ++i)
        for (std::size_t j = i + 1; j < through.size(); ++j)
            out.add_crossing(through[i], through[j]);
    return out;
}

// The elementary-transformation recursion from X0: blow up the crossing of
// D_i and D'_i, then blow down the proper transform of D_i. After n rounds
// the configuration is the Hirzebruch surface X_n carrying a curve of
// self-intersection -n (rank 2). The returned config names that curve D<n>
// and the 0-curve F<n>.
inline CurveConfig hirzebruch(int n) {
    if (n < 0 || n == 1) throw InvalidPoint("X_n requires n >= 0, n != 1");
    CurveConfig cfg = CurveConfig::x0();
    std::string d = "D0", dp = "D0p";
    for (int i = 0; i < n; ++i) {
        std::string e = "E" + std::to_string(i);
        cfg = blow_up_crossing(cfg, d, dp, e);
        cfg = blow_down(cfg, d);
        d = e; // D_{i+1} = tilde E_i, D'_{i+1} = tilde D'_i
    }
    // rename: the negative section becomes D<n>, the fiber class F<n>
    CurveConfig out(cfg.picard_rank());
    std::string neg = (cfg.self_intersection(d) <= cfg.self_intersection(dp)) ? d : dp;
    std::string fib = (neg == d) ? dp : d;
    out.add_curve("D" + std::to_string(n), cfg.self_intersection(neg));
    out.add_curve("F" + std::to_string(n), cfg.self_intersection(fib));
    for (int k = 0; k < cfg.crossing_count(d, dp); ++k)
        out.add_crossing("D" + std::to_string(n), "F" + std::to_string(n));
    if (out.self_intersection("D" + std::to_string(n)) != -n)
        throw FormulaMismatch("Hirzebruch recursion produced the wrong self-intersection");
    if (out.picard_rank() != 2) throw FormulaMismatch("Hirzebruch recursion changed the rank");
    return out;
}

} // namespace qorbit
