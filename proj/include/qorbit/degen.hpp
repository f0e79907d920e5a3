#pragma once
#include <atomic>
#include <deque>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "degen_support.hpp"

namespace qorbit {

// ---------------------------------------------------------------------------
// boundary enumeration by monomial curves and stratification of the closure
// ---------------------------------------------------------------------------

struct ExploreOptions {
    int max_exponent = 4;
    std::vector<Rational> samples = {Rational(-2), Rational(-1), Rational(1), Rational(2),
                                     Rational(3)};
    int jobs = 1;
};

// Monomial curve t_i = c_i s^-a_i through the orbit chart; exponent 0 keeps
// the coordinate as a free affine parameter z_i.
struct CurveSpec {
    std::vector<int> exponents;

    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < exponents.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(exponents[i]);
        }
        return out + ")";
    }
};

enum class StratumKind { Top, Orbit, Family, Point };

struct Stratum {
    StratumKind kind;
    std::size_t orbit_dim = 0;     // q: dimension of each orbit in the stratum
    GrassPoint rep;                // concrete representative
    std::optional<FamilyForm> family;
    std::vector<std::optional<Rational>> carved; // family only; nullopt = infinity
    std::string base;              // point | A1 | A1 minus r points | P1 | A<m>
    int chi = 0;
    std::set<std::string> curves;  // provenance: which curve specs reached it

    std::string label() const {
        std::string out;
        switch (kind) {
        case StratumKind::Top: out = "open orbit"; break;
        case StratumKind::Orbit: out = "orbit"; break;
        case StratumKind::Family: out = "family"; break;
        case StratumKind::Point: out = "point"; break;
        }
        out += " dim " + std::to_string(orbit_dim) + ", base " + base;
        out += ", rep " + (kind == StratumKind::Family ? family->str() : rep.str());
        return out;
    }
};

struct DegenPoset {
    std::vector<Stratum> strata;     // node 0 = open orbit
    std::vector<std::pair<int, int>> edges; // covering relations, transitively reduced
};

struct ChiBounds {
    int chi_boundary = 0;
    int t = 0;
    bool ok_t_plus_1 = false;
    bool ok_2t = false;
};

struct Stratification {
    DegenPoset poset;
    int chi = 0;
    ChiBounds bounds;
    bool complete = false;
    std::vector<std::string> collapse_notes;
    // (one-dimensional stratum node, point node in its closure)
    std::vector<std::pair<int, int>> closure_contacts;
};

namespace detail {

constexpr int kSourceTop = -1;
constexpr int kFamilyBase = 1000000;

struct ClassInfo {
    GrassPoint rep;           // canonical: lexicographically least RREF seen
    std::size_t m = 0;
    std::set<int> sources;
    std::set<std::string> curves;
    bool absorbed = false;
};

struct FamilyInfo {
    FamilyForm form;
    Fingerprint generic_fp;
    std::set<int> sources;
    std::set<std::string> curves;
    std::vector<std::pair<std::optional<Rational>, int>> members; // located closure members
    std::vector<std::optional<Rational>> carved;
};

inline bool opt_less(const std::optional<Rational>& a, const std::optional<Rational>& b) {
    if (a.has_value() != b.has_value()) return a.has_value(); // finite before infinity
    if (!a) return false;
    return *a < *b;
}

} // namespace detail

class BoundaryExplorer {
public:
    BoundaryExplorer(OrbitDescriptor top, ExploreOptions opt)
        : top_(std::move(top)), opt_(std::move(opt)), module_(top_.rep.space.module) {}

    Stratification run();

private:
    using ClassInfo = detail::ClassInfo;
    using FamilyInfo = detail::FamilyInfo;

    // ---- curve enumeration -------------------------------------------------

    std::vector<CurveSpec> curve_specs(std::size_t m) const {
        std::vector<CurveSpec> out;
        std::vector<int> cur(m, 0);
        for (;;) {
            std::size_t i = 0;
            while (i < m) {
                if (++cur[i] <= opt_.max_exponent) break;
                cur[i] = 0;
                ++i;
            }
            if (i == m) break;
            std::vector<int> exps(cur.rbegin(), cur.rend()); // lexicographic order
            out.push_back(CurveSpec{exps});
        }
        std::sort(out.begin(), out.end(),
                  [](const CurveSpec& a, const CurveSpec& b) { return a.exponents < b.exponents; });
        return out;
    }

    // raw (un-reduced) rows of rep.(e + sum t_i omega_i) with t_i = c_i s^-a_i
    Matrix curve_matrix(const OrbitDescriptor& d, const CurveSpec& spec, VarOrderPtr& vars_out) const {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < spec.exponents.size(); ++i)
            names.push_back((spec.exponents[i] == 0 ? "z" : "c") + std::to_string(i + 1));
        names.push_back("s");
        VarOrderPtr vars = VarOrder::make(names);
        vars_out = vars;

        const AlgebraPtr& A = module_->algebra();
        AlgebraElement u = AlgebraElement::identity(A, vars);
        for (std::size_t i = 0; i < spec.exponents.size(); ++i) {
            ExactScalar coeff = ExactScalar::variable(vars, names[i]);
            if (spec.exponents[i] > 0)
                coeff = coeff / ExactScalar::variable(vars, "s").pow(spec.exponents[i]);
            u.coeff(d.omega[i]) = coeff;
        }

        Matrix rows(0, module_->dim_radical(), vars);
        for (std::size_t i = 0; i < d.rep.space.mat.rows(); ++i) {
            std::vector<ExactScalar> img(module_->dim_radical(), ExactScalar(vars));
            for (std::size_t j = 0; j < module_->dim_radical(); ++j) {
                ExactScalar cj = d.rep.space.mat.at(i, j).convert(vars);
                if (cj.is_zero()) continue;
                int cls = module_->radical_classes()[j];
                for (std::size_t t = 0; t < u.coeffs().size(); ++t) {
                    if (u.coeff(static_cast<int>(t)).is_zero()) continue;
                    for (const auto& [k, f] : A->table(cls, static_cast<int>(t)))
                        img[module_->radical_col(k)] += cj * u.coeff(static_cast<int>(t)) * f;
                }
            }
            rows.push_row(std::move(img));
        }
        return rows;
    }

    // ---- classification helpers -------------------------------------------

    static std::vector<std::size_t> used_params(const Matrix& m) {
        std::vector<std::size_t> used;
        for (std::size_t v = 0; v < m.vars()->size(); ++v) {
            bool dep = false;
            for (std::size_t i = 0; i < m.rows() && !dep; ++i)
                for (std::size_t j = 0; j < m.cols() && !dep; ++j)
                    if (m.at(i, j).num().depends_on(v) || m.at(i, j).den().depends_on(v)) dep = true;
            if (dep) used.push_back(v);
        }
        return used;
    }

    static Matrix to_rationals(Matrix m) {
        while (m.vars()->size() > 0) m = m.specialized(m.vars()->name(0), 0);
        return m;
    }

    GrassPoint concrete_point(const Matrix& m) const {
        Matrix q = to_rationals(m);
        q.rref();
        return make_grass_point(make_subspace(module_, std::move(q)));
    }

    // find-or-create a concrete boundary class; returns -2 when the point is
    // interior (same orbit as the top representative)
    int register_class(const GrassPoint& gp, int source, const std::string& curve) {
        if (gp.dim_sub() == top_.rep.dim_sub() && same_orbit(gp, top_.rep)) return -2;
        for (std::size_t k = 0; k < classes_.size(); ++k) {
            if (classes_[k].rep == gp || same_orbit(classes_[k].rep, gp)) {
                classes_[k].sources.insert(source);
                classes_[k].curves.insert(curve);
                if (gp.space.mat.lex_less(classes_[k].rep.space.mat)) classes_[k].rep = gp;
                return static_cast<int>(k);
            }
        }
        ClassInfo info;
        info.rep = gp;
        OrbitDescriptor d = orbit_descriptor(gp);
        info.m = d.m;
        info.sources.insert(source);
        info.curves.insert(curve);
        classes_.push_back(std::move(info));
        int id = static_cast<int>(classes_.size()) - 1;
        if (d.m >= top_.m)
            throw InconclusiveClassification("boundary class does not lower the orbit dimension");
        if (d.m >= 1) queue_.push_back({d, id});
        return id;
    }

    int register_family(FamilyForm form, int source, const std::string& curve) {
        for (std::size_t f = 0; f < families_.size(); ++f) {
            if (families_[f].form == form) {
                families_[f].sources.insert(source);
                families_[f].curves.insert(curve);
                return static_cast<int>(f);
            }
        }
        FamilyInfo info;
        info.generic_fp = module_fingerprint(Subspace{module_, form.mat, form.pivots});
        info.form = std::move(form);
        info.sources.insert(source);
        info.curves.insert(curve);
        families_.push_back(std::move(info));
        return static_cast<int>(families_.size()) - 1;
    }

    // Express every non-constant RREF entry of a parameterized limit as a
    // rational function of the first one; returns the canonical lambda-form.
    std::optional<FamilyForm> canonicalize_family(const GrassPoint& L) const {
        const Matrix& m = L.space.mat;
        std::optional<std::pair<std::size_t, std::size_t>> first;
        for (std::size_t i = 0; i < m.rows() && !first; ++i)
            for (std::size_t j = 0; j < m.cols() && !first; ++j)
                if (!m.at(i, j).is_constant()) first = {i, j};
        if (!first) return std::nullopt;
        const ExactScalar g = m.at(first->first, first->second);

        Matrix out(m.rows(), m.cols(), lam_order());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) {
                const ExactScalar& e = m.at(i, j);
                if (e.is_constant()) {
                    out.at(i, j) = ExactScalar(lam_order(), e.as_rational());
                } else if (e == g) {
                    out.at(i, j) = ExactScalar::variable(lam_order(), "lam");
                } else {
                    auto r = express_in(e, g);
                    if (!r) return std::nullopt;
                    out.at(i, j) = *r;
                }
            }
        FamilyForm form;
        form.module = module_;
        form.mat = out;
        Matrix check = out;
        form.pivots = check.rref();
        if (check != out) return std::nullopt; // not a stable RREF presentation
        form.lam_pos = *first;
        return form;
    }

    // solve target = A(g)/B(g) with bounded degree by linear algebra over Q
    static std::optional<ExactScalar> express_in(const ExactScalar& target, const ExactScalar& g) {
        const VarOrderPtr& vars = target.vars();
        const MultiPoly &p = g.num(), &q = g.den();
        const MultiPoly &u = target.num(), &v = target.den();
        for (int D = 1; D <= 3; ++D) {
            std::vector<MultiPoly> pu, pv;
            for (int i = 0; i <= D; ++i) {
                MultiPoly w = p.pow(i) * q.pow(D - i);
                pu.push_back(u * w);
                pv.push_back(v * w);
            }
            // collect monomials
            std::map<Monomial, std::size_t, GrlexLess> rows;
            auto note = [&](const MultiPoly& mp) {
                for (const auto& [mon, c] : mp.terms())
                    if (!rows.count(mon)) rows.emplace(mon, rows.size());
            };
            for (const auto& mp : pu) note(mp);
            for (const auto& mp : pv) note(mp);
            Matrix system(rows.size(), 2 * (D + 1));
            for (int i = 0; i <= D; ++i) {
                for (const auto& [mon, c] : pv[static_cast<std::size_t>(i)].terms())
                    system.at(rows.at(mon), static_cast<std::size_t>(i)) =
                        ExactScalar(VarOrder::rationals(), -c);
                for (const auto& [mon, c] : pu[static_cast<std::size_t>(i)].terms())
                    system.at(rows.at(mon), static_cast<std::size_t>(D + 1 + i)) =
                        ExactScalar(VarOrder::rationals(), c);
            }
            Matrix null = system.nullspace();
            for (std::size_t r = 0; r < null.rows(); ++r) {
                MultiPoly A = MultiPoly::zero(lam_order()), B = MultiPoly::zero(lam_order());
                for (int i = 0; i <= D; ++i) {
                    Rational ai = null.at(r, static_cast<std::size_t>(i)).as_rational();
                    Rational bi = null.at(r, static_cast<std::size_t>(D + 1 + i)).as_rational();
                    MultiPoly mono = MultiPoly::variable(lam_order(), "lam", 1).pow(i);
                    A += mono.scaled(ai);
                    B += mono.scaled(bi);
                }
                if (B.is_zero()) continue;
                ExactScalar cand(A, B);
                ExactScalar back = cand.substitute("lam", g.convert(vars));
                if (back == target) return cand;
            }
        }
        return std::nullopt;
    }

    // ---- main classification of one symbolic limit -------------------------

    void classify(const GrassPoint& L, const Matrix& raw_curve, int source,
                  const std::string& curve_tag) {
        std::vector<std::size_t> params = used_params(L.space.mat);
        // drop the tower down to the surviving parameters
        if (params.empty()) {
            register_class(concrete_point(L.space.mat), source, curve_tag);
            return;
        }

        // sample all surviving parameters over the sample set
        std::vector<std::string> names;
        for (std::size_t v : params) names.push_back(L.space.mat.vars()->name(v));
        std::vector<GrassPoint> members;
        std::vector<std::vector<Rational>> assignments;
        std::vector<std::size_t> fallbacks;
        std::vector<std::size_t> idx(names.size(), 0);
        for (;;) {
            std::vector<Rational> vals;
            for (std::size_t i = 0; i < names.size(); ++i) vals.push_back(opt_.samples[idx[i]]);
            try {
                Matrix spec = L.space.mat;
                for (std::size_t i = 0; i < names.size(); ++i)
                    spec = spec.specialized(names[i], vals[i]);
                members.push_back(concrete_point(spec));
            } catch (const DenominatorVanishes&) {
                // recompute as the limit of the specialized curve
                Matrix spec = raw_curve;
                for (std::size_t i = 0; i < names.size(); ++i)
                    spec = spec.specialized(names[i], vals[i]);
                GrassPoint lim = limit_point(module_, spec);
                members.push_back(concrete_point(lim.space.mat));
                fallbacks.push_back(members.size() - 1);
            }
            assignments.push_back(vals);
            std::size_t i = 0;
            while (i < idx.size()) {
                if (++idx[i] < opt_.samples.size()) break;
                idx[i] = 0;
                ++i;
            }
            if (i == idx.size()) break;
        }

        // distinct member matrices
        std::vector<std::size_t> reps;
        for (std::size_t i = 0; i < members.size(); ++i) {
            bool fresh = true;
            for (std::size_t r : reps)
                if (members[r] == members[i]) fresh = false;
            if (fresh) reps.push_back(i);
        }

        bool all_same = true, all_diff = true;
        for (std::size_t x = 0; x < reps.size() && (all_same || all_diff); ++x)
            for (std::size_t y = x + 1; y < reps.size(); ++y) {
                bool so = same_orbit(members[reps[x]], members[reps[y]]);
                all_same = all_same && so;
                all_diff = all_diff && !so;
            }

        if (reps.size() == 1 || all_same) {
            if (reps.size() == 1) {
                // guard against dependence invisible on the sample set
                for (int extra : {5, 7}) {
                    try {
                        Matrix spec = L.space.mat;
                        for (const std::string& n : names)
                            spec = spec.specialized(n, Rational(extra));
                        GrassPoint probe = concrete_point(spec);
                        if (probe != members[reps[0]] && !same_orbit(probe, members[reps[0]]))
                            throw InconclusiveClassification(
                                "limit varies outside the sample set on curve " + curve_tag);
                    } catch (const DenominatorVanishes&) {
                        // pole members are handled by the closure probes
                    }
                }
            }
            // one orbit; pick the lexicographically least representative
            std::size_t best = reps[0];
            for (std::size_t r : reps)
                if (members[r].space.mat.lex_less(members[best].space.mat)) best = r;
            int id = register_class(members[best], source, curve_tag);
            if (id >= 0) probe_closure(L, id, curve_tag);
            return;
        }
        if (!all_diff)
            throw InconclusiveClassification(
                "sampled limits mix orbit-equal and orbit-distinct members on curve " + curve_tag);

        auto form = canonicalize_family(L);
        if (!form)
            throw InconclusiveClassification("family on curve " + curve_tag +
                                             " does not reduce to one parameter");
        register_family(std::move(*form), source, curve_tag);
    }

    // For an orbit-classified parameterized limit: its closure may stick out
    // of the orbit at special parameter values and at infinity; those points
    // lie in the closure of the orbit stratum.
    void probe_closure(const GrassPoint& L, int class_id, const std::string& curve_tag) {
        std::vector<std::size_t> params = used_params(L.space.mat);
        if (params.size() != 1) return; // nothing to probe or out of desk-scale scope
        auto form = canonicalize_family(L);
        if (!form) return;
        for (const auto& v : family_candidates(*form)) {
            GrassPoint m = family_member(*form, v);
            register_class(m, class_id, curve_tag + " closure");
        }
    }

    std::vector<std::optional<Rational>> family_candidates(const FamilyForm& f) const {
        std::set<Rational> finite;
        for (std::size_t i = 0; i < f.mat.rows(); ++i)
            for (std::size_t j = 0; j < f.mat.cols(); ++j)
                for (const Rational& r : scalar_root_candidates(f.mat.at(i, j), 0)) finite.insert(r);
        const AlgebraPtr& A = module_->algebra();
        Subspace s{module_, f.mat, f.pivots};
        for (std::size_t ai = 0; ai < A->quiver().num_arrows(); ++ai) {
            quotient_action(s, static_cast<int>(ai), [&](const ExactScalar& pivot) {
                for (const Rational& r : rational_roots(pivot.num(), 0)) finite.insert(r);
                for (const Rational& r : rational_roots(pivot.den(), 0)) finite.insert(r);
            });
        }
        std::vector<std::optional<Rational>> out;
        for (const Rational& r : finite) out.push_back(r);
        out.push_back(std::nullopt); // infinity
        return out;
    }

    // ---- post-pass: memberships, carving, absorption ------------------------

    void analyze_families() {
        // locate every known concrete class on every family
        for (std::size_t f = 0; f < families_.size(); ++f) {
            FamilyInfo& fam = families_[f];
            for (std::size_t k = 0; k < classes_.size(); ++k) {
                const GrassPoint& rep = classes_[k].rep;
                if (rep.space.pivots != fam.form.pivots) continue;
                Rational lam0 =
                    rep.space.mat.at(fam.form.lam_pos.first, fam.form.lam_pos.second).as_rational();
                GrassPoint member = family_member(fam.form, lam0);
                if (member == rep) {
                    classes_[k].sources.insert(detail::kFamilyBase + static_cast<int>(f));
                    fam.members.push_back({lam0, static_cast<int>(k)});
                }
            }
        }
        // closure candidates (poles, rank events, infinity)
        for (std::size_t f = 0; f < families_.size(); ++f) {
            FamilyInfo& fam = families_[f];
            for (const auto& v : family_candidates(fam.form)) {
                bool known = false;
                for (const auto& [w, id] : fam.members)
                    if (w.has_value() == v.has_value() && (!v || *w == *v)) known = true;
                if (known) continue;
                GrassPoint m = family_member(fam.form, v);
                int id = register_class(m, detail::kFamilyBase + static_cast<int>(f),
                                        "family " + std::to_string(f) + " closure");
                if (id == -2)
                    throw InconclusiveClassification("family closure reaches the open orbit");
                fam.members.push_back({v, id});
            }
        }
        // carve decisions
        for (std::size_t f = 0; f < families_.size(); ++f) {
            FamilyInfo& fam = families_[f];
            int self = detail::kFamilyBase + static_cast<int>(f);
            std::sort(fam.members.begin(), fam.members.end(),
                      [](const auto& a, const auto& b) { return detail::opt_less(a.first, b.first); });
            for (const auto& [v, id] : fam.members) {
                ClassInfo& cls = classes_[static_cast<std::size_t>(id)];
                bool shared = false;
                for (int src : cls.sources)
                    if (src != detail::kSourceTop && src != self) shared = true;
                bool jumps = module_fingerprint(cls.rep.space) != fam.generic_fp;
                if (shared || jumps) {
                    fam.carved.push_back(v);
                } else {
                    cls.absorbed = true;
                }
            }
        }
        for (const ClassInfo& c : classes_)
            if (c.absorbed && c.m >= 1)
                throw InconclusiveClassification("a positive-dimensional orbit was absorbed");
    }

    // ---- assembly -----------------------------------------------------------

    Stratification assemble();

    OrbitDescriptor top_;
    ExploreOptions opt_;
    ModulePtr module_;
    std::vector<ClassInfo> classes_;
    std::vector<FamilyInfo> families_;
    std::deque<std::pair<OrbitDescriptor, int>> queue_;
    std::map<std::string, std::set<std::string>> collapse_map_; // target -> curve tags
};

inline Stratification BoundaryExplorer::run() {
    if (top_.m >= 1) queue_.push_back({top_, detail::kSourceTop});
    while (!queue_.empty()) {
        auto [d, src] = queue_.front();
        queue_.pop_front();
        std::string who = src == detail::kSourceTop ? std::string("top")
                                                    : "class " + std::to_string(src);
        std::vector<CurveSpec> specs = curve_specs(d.m);

        std::vector<std::pair<Matrix, VarOrderPtr>> raws(specs.size());
        std::vector<GrassPoint> limits(specs.size());
        auto worker = [&](std::size_t i) {
            VarOrderPtr vars;
            Matrix raw = curve_matrix(d, specs[i], vars);
            limits[i] = limit_point(module_, raw);
            raws[i] = {std::move(raw), vars};
        };
        if (opt_.jobs > 1) {
            std::vector<std::thread> pool;
            std::atomic<std::size_t> next{0};
            int jobs = std::min<int>(opt_.jobs, static_cast<int>(specs.size()));
            for (int t = 0; t < jobs; ++t)
                pool.emplace_back([&]() {
                    for (;;) {
                        std::size_t i = next.fetch_add(1);
                        if (i >= specs.size()) return;
                        worker(i);
                    }
                });
            for (auto& th : pool) th.join();
        } else {
            for (std::size_t i = 0; i < specs.size(); ++i) worker(i);
        }

        for (std::size_t i = 0; i < specs.size(); ++i) {
            std::string tag = who + " " + specs[i].str();
            // collapse note: an affine coordinate line maps to one limit
            bool has_z = false;
            for (int e : specs[i].exponents) has_z = has_z || e == 0;
            if (has_z) {
                bool depends = false;
                for (std::size_t v = 0; v < limits[i].space.mat.vars()->size(); ++v) {
                    const std::string& n = limits[i].space.mat.vars()->name(v);
                    if (n[0] != 'z') continue;
                    for (std::size_t r = 0; r < limits[i].space.mat.rows() && !depends; ++r)
                        for (std::size_t c = 0; c < limits[i].space.mat.cols() && !depends; ++c)
                            if (limits[i].space.mat.at(r, c).num().depends_on(v) ||
                                limits[i].space.mat.at(r, c).den().depends_on(v))
                                depends = true;
                }
                if (!depends) {
                    std::vector<std::size_t> leftover = used_params(limits[i].space.mat);
                    std::string target = leftover.empty()
                                             ? concrete_point(limits[i].space.mat).str()
                                             : std::string("a parameterized boundary point");
                    collapse_map_[target].insert(specs[i].str());
                }
            }
            classify(limits[i], raws[i].first, src, tag);
        }
    }
    analyze_families();
    return assemble();
}

inline Stratification BoundaryExplorer::assemble() {
    Stratification out;
    std::vector<Stratum>& strata = out.poset.strata;

    // node 0: the open orbit
    {
        Stratum top;
        top.kind = StratumKind::Top;
        top.orbit_dim = top_.m;
        top.rep = top_.rep;
        top.base = "A" + std::to_string(top_.m);
        top.chi = 1;
        strata.push_back(std::move(top));
    }

    std::map<int, int> class_node;   // class id -> node id
    std::map<int, int> family_node;  // family id -> node id

    for (std::size_t k = 0; k < classes_.size(); ++k) {
        if (classes_[k].absorbed || classes_[k].m < 1) continue;
        Stratum s;
        s.kind = StratumKind::Orbit;
        s.orbit_dim = classes_[k].m;
        s.rep = classes_[k].rep;
        s.base = "A" + std::to_string(classes_[k].m);
        s.chi = 1;
        s.curves = classes_[k].curves;
        class_node[static_cast<int>(k)] = static_cast<int>(strata.size());
        strata.push_back(std::move(s));
    }
    for (std::size_t f = 0; f < families_.size(); ++f) {
        Stratum s;
        s.kind = StratumKind::Family;
        s.orbit_dim = 0;
        s.family = families_[f].form;
        // representative: first uncarved probe member
        std::vector<Rational> probes = opt_.samples;
        for (int extra : {0, 5, 7, 11}) probes.push_back(Rational(extra));
        for (const Rational& v : probes) {
            bool carved = false;
            for (const auto& w : families_[f].carved)
                if (w && *w == v) carved = true;
            if (carved) continue;
            s.rep = family_member(families_[f].form, v);
            break;
        }
        s.carved = families_[f].carved;
        std::size_t r = s.carved.size();
        if (r == 0) {
            s.base = "P1";
            s.chi = 2;
        } else if (r == 1) {
            s.base = "A1";
            s.chi = 1;
        } else {
            s.base = "A1 minus " + std::to_string(r - 1) + (r == 2 ? " point" : " points");
            s.chi = 2 - static_cast<int>(r);
        }
        s.curves = families_[f].curves;
        family_node[static_cast<int>(f)] = static_cast<int>(strata.size());
        strata.push_back(std::move(s));
    }
    for (std::size_t k = 0; k < classes_.size(); ++k) {
        if (classes_[k].absorbed || classes_[k].m != 0) continue;
        Stratum s;
        s.kind = StratumKind::Point;
        s.orbit_dim = 0;
        s.rep = classes_[k].rep;
        s.base = "point";
        s.chi = 1;
        s.curves = classes_[k].curves;
        class_node[static_cast<int>(k)] = static_cast<int>(strata.size());
        strata.push_back(std::move(s));
    }

    // reachability: top reaches all; an orbit stratum reaches what its
    // recursion discovered; families have closed member orbits, hence no
    // outgoing covers
    std::size_t n = strata.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t j = 1; j < n; ++j) reach[0][j] = true;
    for (const auto& [cid, node] : class_node) {
        for (int src : classes_[static_cast<std::size_t>(cid)].sources) {
            if (src == detail::kSourceTop || src >= detail::kFamilyBase) continue;
            auto it = class_node.find(src);
            if (it == class_node.end()) continue;
            if (it->second != node) reach[static_cast<std::size_t>(it->second)]
                                         [static_cast<std::size_t>(node)] = true;
        }
    }
    for (const auto& [fid, node] : family_node) {
        for (int src : families_[static_cast<std::size_t>(fid)].sources) {
            if (src == detail::kSourceTop || src >= detail::kFamilyBase) continue;
            auto it = class_node.find(src);
            if (it != class_node.end() && it->second != node)
                reach[static_cast<std::size_t>(it->second)][static_cast<std::size_t>(node)] = true;
        }
    }
    // transitive closure then reduction
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!reach[i][j] || i == j) continue;
            bool covered = false;
            for (std::size_t k = 0; k < n && !covered; ++k)
                if (k != i && k != j && reach[i][k] && reach[k][j]) covered = true;
            if (!covered) out.poset.edges.push_back({static_cast<int>(i), static_cast<int>(j)});
        }
    std::sort(out.poset.edges.begin(), out.poset.edges.end());

    // closure contacts of the one-dimensional boundary components
    for (const auto& [cid, node] : class_node) {
        if (strata[static_cast<std::size_t>(node)].kind != StratumKind::Point) continue;
        for (int src : classes_[static_cast<std::size_t>(cid)].sources) {
            if (src == detail::kSourceTop) continue;
            if (src >= detail::kFamilyBase) {
                auto it = family_node.find(src - detail::kFamilyBase);
                if (it != family_node.end())
                    out.closure_contacts.push_back({it->second, node});
            } else {
                auto it = class_node.find(src);
                if (it != class_node.end() && it->second != node)
                    out.closure_contacts.push_back({it->second, node});
            }
        }
    }
    std::sort(out.closure_contacts.begin(), out.closure_contacts.end());

    out.chi = 0;
    for (const Stratum& s : strata) out.chi += s.chi;
    out.bounds.chi_boundary = out.chi - 1;
    out.bounds.t = 0;
    for (const Stratum& s : strata) {
        if (s.kind == StratumKind::Orbit && s.orbit_dim == 1) ++out.bounds.t;
        if (s.kind == StratumKind::Family) ++out.bounds.t;
    }
    out.bounds.ok_t_plus_1 = out.bounds.chi_boundary <= out.bounds.t + 1;
    out.bounds.ok_2t = out.bounds.chi_boundary <= 2 * out.bounds.t;
    out.complete = out.bounds.ok_t_plus_1 && out.bounds.ok_2t;
    for (const auto& [target, tags] : collapse_map_) {
        std::string note = "curves {";
        bool first = true;
        for (const std::string& t : tags) {
            if (!first) note += ", ";
            note += t;
            first = false;
        }
        note += "} collapse affine lines onto " + target;
        out.collapse_notes.push_back(note);
    }
    return out;
}

// ---------------------------------------------------------------------------
// convenience driver + serialization
// ---------------------------------------------------------------------------

inline Stratification enumerate_boundary(const GrassPoint& C, const ExploreOptions& opt = {}) {
    OrbitDescriptor d = orbit_descriptor(C);
    return BoundaryExplorer(d, opt).run();
}

inline int euler_characteristic(const Stratification& s) { return s.chi; }

inline std::string chi_bounds_report(const Stratification& s) {
    std::ostringstream os;
    os << "chi(boundary)=" << s.bounds.chi_boundary << " <= t+1=" << s.bounds.t + 1
       << (s.bounds.ok_t_plus_1 ? " OK" : " VIOLATED");
    os << ", chi(boundary)=" << s.bounds.chi_boundary << " <= 2t=" << 2 * s.bounds.t
       << (s.bounds.ok_2t ? " OK" : " VIOLATED");
    return os.str();
}

inline std::string poset_dot(const Stratification& s) {
    std::ostringstream os;
    os << "digraph degenerations {\n";
    for (std::size_t i = 0; i < s.poset.strata.size(); ++i)
        os << "  n" << i << " [label=\"" << s.poset.strata[i].label() << "\"];\n";
    for (const auto& [a, b] : s.poset.edges) os << "  n" << a << " -> n" << b << ";\n";
    os << "}\n";
    return os.str();
}

inline nlohmann::ordered_json poset_json(const Stratification& s) {
    nlohmann::ordered_json doc;
    doc["chi"] = s.chi;
    doc["complete"] = s.complete ? "verified-complete" : "lower bound on degenerations";
    doc["bounds"] = {{"chi_boundary", s.bounds.chi_boundary},
                     {"t", s.bounds.t},
                     {"t_plus_1_ok", s.bounds.ok_t_plus_1},
                     {"two_t_ok", s.bounds.ok_2t}};
    doc["nodes"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.poset.strata.size(); ++i) {
        const Stratum& st = s.poset.strata[i];
        nlohmann::ordered_json node;
        node["id"] = i;
        switch (st.kind) {
        case StratumKind::Top: node["kind"] = "open-orbit"; break;
        case StratumKind::Orbit: node["kind"] = "orbit"; break;
        case StratumKind::Family: node["kind"] = "family"; break;
        case StratumKind::Point: node["kind"] = "point"; break;
        }
        node["orbit_dim"] = st.orbit_dim;
        node["base"] = st.base;
        node["chi"] = st.chi;
        node["rep"] = st.kind == StratumKind::Family ? st.family->str() : st.rep.str();
        if (st.kind == StratumKind::Family) {
            auto carved = nlohmann::ordered_json::array();
            for (const auto& v : st.carved) carved.push_back(v ? rational_str(*v) : "inf");
            node["carved"] = carved;
        }
        doc["nodes"].push_back(node);
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : s.poset.edges) doc["edges"].push_back({a, b});
    return doc;
}

} // namespace qorbit
