// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via ctest or directly:  ./qorbit_acceptance
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include "qorbit/problem.hpp"
#include "qorbit/scalar_parser.hpp"
#include "qorbit/surface.hpp"

#include "fixtures.hpp"

using namespace qorbit;

#ifndef QORBIT_FIXTURE_DIR
#define QORBIT_FIXTURE_DIR "fixtures"
#endif
#ifndef QORBIT_CLI_PATH
#define QORBIT_CLI_PATH "qorbit"
#endif

namespace {

int failures = 0;

struct Criterion {
    std::string name;
    double budget_seconds;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;

    Criterion(std::string n, double budget) : name(std::move(n)), budget_seconds(budget) {}

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [" << what << "]";
        }
    }

    void finish() {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > budget_seconds) {
            ok = false;
            detail << " [over time budget " << budget_seconds << "s]";
        }
        char line[64];
        std::snprintf(line, sizeof(line), " (%.2fs)", secs);
        std::cout << (ok ? "PASS" : "FAIL") << " " << name << detail.str() << line << "\n";
        if (!ok) ++failures;
    }
};

std::string fixture(const std::string& name) {
    return std::string(QORBIT_FIXTURE_DIR) + "/" + name;
}

Stratification stratify(const std::string& name) {
    ProblemSpec spec = parse_problem_file(fixture(name));
    return enumerate_boundary(spec.c, spec.options);
}

int count_kind(const Stratification& s, StratumKind k, int dim = -1) {
    int n = 0;
    for (const Stratum& st : s.poset.strata)
        if (st.kind == k && (dim < 0 || static_cast<int>(st.orbit_dim) == dim)) ++n;
    return n;
}

void criterion_1() {
    Criterion c("1 example 5.1(a): three boundary orbits, chi = 4", 5.0);
    Stratification s = stratify("ex_5_1a.json");
    c.require(s.poset.strata.size() == 4, "expected 4 strata");
    c.require(count_kind(s, StratumKind::Orbit, 1) == 2, "two 1-dimensional orbit classes");
    c.require(count_kind(s, StratumKind::Point) == 1, "one closed point");
    c.require(count_kind(s, StratumKind::Family) == 0, "no families");
    c.require(s.chi == 4, "chi = 4");
    c.finish();
}

void criterion_2() {
    Criterion c("2 example 5.1(b): one P1-family, chi = 3", 5.0);
    ProblemSpec spec = parse_problem_file(fixture("ex_5_1b.json"));
    Stratification s = enumerate_boundary(spec.c, spec.options);
    c.require(s.poset.strata.size() == 2, "open orbit plus one family");
    bool fam_ok = false;
    if (s.poset.strata.size() == 2) {
        const Stratum& fam = s.poset.strata[1];
        fam_ok = fam.kind == StratumKind::Family && fam.base == "P1" && fam.chi == 2 &&
                 fam.family->str() == "[a*w1 + lam*a*w2]";
    }
    c.require(fam_ok, "family is the P1 of k(a*w1 + lam*a*w2)");
    // distinct sampled (a:b) are pairwise non-isomorphic
    if (fam_ok) {
        const FamilyForm& f = *s.poset.strata[1].family;
        std::vector<GrassPoint> pts;
        for (int v : {-2, -1, 0, 1, 2, 3}) pts.push_back(family_member(f, Rational(v)));
        bool all_distinct = true;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if (same_orbit(pts[i], pts[j])) all_distinct = false;
        c.require(all_distinct, "sampled family members pairwise non-isomorphic");
    }
    c.require(s.chi == 3, "chi = 3");
    c.finish();
}

void criterion_3() {
    Criterion c("3 example 5.2: quoted limits byte-exact, 5 classes, chi = 4", 30.0);
    ProblemSpec spec = parse_problem_file(fixture("ex_5_2.json"));
    OrbitDescriptor d = orbit_descriptor(spec.c);

    auto limit_of = [&](const std::string& t1, const std::string& t2,
                        const std::vector<std::string>& symbols) {
        std::vector<std::string> names = symbols;
        names.push_back("s");
        VarOrderPtr vars = VarOrder::make(names);
        std::vector<ExactScalar> t{parse_scalar(t1, vars), parse_scalar(t2, vars)};
        GrassPoint moved = psi(d, t);
        return limit_point(spec.module, moved.space.mat);
    };

    GrassPoint l1 = limit_of("z1", "1/s", {"z1"});
    c.require(l1.str() == "[a*w, g*w + z1*g*w^2, a*w^2]",
              "lim C(e1+z1 w+(1/t)w^2) = L a*w^2 + L a*w + L(g*w + z1 g*w^2)");

    GrassPoint l2 = limit_of("1/s", "y3/s^2", {"y3"});
    c.require(l2.str() == "[a*w - 1/(y3 - 1)*b*w, a*w^2, g*w^2]",
              "lim C(e1+(1/t)w+(y3/t^2)w^2) = L((1-y3)a*w + b*w) + L a*w^2 + L g*w^2");
    // byte-exactness against the quoted generators, independently closed
    {
        auto vars = VarOrder::make({"y3"});
        Matrix gens(0, spec.module->dim_radical(), vars);
        std::vector<ExactScalar> row(spec.module->dim_radical(), ExactScalar(vars));
        auto col = [&](const std::string& p) {
            return spec.module->radical_col(
                spec.algebra->basis_index(fixtures::path(*spec.algebra, p)));
        };
        row[col("a*w")] = parse_scalar("1 - y3", vars);
        row[col("b*w")] = parse_scalar("1", vars);
        gens.push_row(row);
        std::vector<ExactScalar> row2(spec.module->dim_radical(), ExactScalar(vars));
        row2[col("a*w^2")] = parse_scalar("1", vars);
        gens.push_row(row2);
        std::vector<ExactScalar> row3(spec.module->dim_radical(), ExactScalar(vars));
        row3[col("g*w^2")] = parse_scalar("1", vars);
        gens.push_row(row3);
        Subspace quoted = lambda_closure(spec.module, gens);
        c.require(quoted.mat == l2.space.mat.converted(vars), "RREF row spaces agree");
    }

    auto ts = VarOrder::make({"t", "s"});
    std::vector<ExactScalar> tvec{parse_scalar("1/t", ts), parse_scalar("1/(t^2*s)", ts)};
    GrassPoint inner = limit_point(spec.module, psi(d, tvec).space.mat, "s");
    GrassPoint l3 = limit_point(spec.module, inner.space.mat, "t");
    c.require(l3.str() == "[a*w, a*w^2, g*w^2]", "nested limit = L a*w + L a*w^2 + L g*w^2");

    Stratification s = enumerate_boundary(spec.c, spec.options);
    c.require(s.poset.strata.size() == 5, "5 classes as in the figure");
    std::vector<std::pair<int, int>> expect{{0, 1}, {0, 2}, {0, 4}, {1, 3}};
    c.require(s.poset.edges == expect, "covering edges of the figure");
    c.require(s.chi == 4, "chi = 4");
    c.finish();
}

void criterion_4() {
    Criterion c("4 example 5.3: 6 classes, A1 minus {0,1} family, chi = 4", 30.0);
    Stratification s = stratify("ex_5_3.json");
    c.require(s.poset.strata.size() == 6, "6 classes");
    bool collapsed_ok = false, family_ok = false;
    for (const Stratum& st : s.poset.strata) {
        if (st.kind == StratumKind::Point && st.rep.str() == "[a*w, a*w^2, g*w^2]")
            collapsed_ok = st.curves.size() >= 2;
        if (st.kind == StratumKind::Family)
            family_ok = st.chi == -1 && st.base == "A1 minus 2 points";
    }
    c.require(collapsed_ok, "collapsed point reached from two curve directions");
    c.require(family_ok, "family over A1 minus {0,1} with chi = -1");
    c.require(s.chi == 4, "chi = 4");
    c.finish();
}

void criterion_5() {
    Criterion c("5 example 5.4: 6 classes, chi = 5", 30.0);
    Stratification s = stratify("ex_5_4.json");
    c.require(s.poset.strata.size() == 6, "6 classes");
    c.require(count_kind(s, StratumKind::Orbit, 1) == 2, "E1 and E2 of dimension 1");
    c.require(count_kind(s, StratumKind::Family) == 1, "one k*-family");
    c.require(count_kind(s, StratumKind::Point) == 2, "two closed points");
    c.require(s.chi == 5, "chi = 5 (blow-up of P1 x P1 at a point)");
    c.finish();
}

void criterion_6() {
    Criterion c("6 oracle: saturation limit = Pluecker limit on 200 random families", 60.0);
    std::mt19937_64 rng(20260809u);
    auto vars = VarOrder::make({"s"});
    std::uniform_int_distribution<int> coeff(-3, 3), deg(0, 3), pole(0, 2);
    int agreements = 0;
    for (int iter = 0; iter < 200; ++iter) {
        std::uniform_int_distribution<std::size_t> md(2, 8);
        std::size_t m = md(rng);
        std::uniform_int_distribution<std::size_t> dd(1, std::min<std::size_t>(4, m));
        std::size_t d = dd(rng);

        std::vector<std::string> verts{"0"};
        std::vector<Arrow> arrows;
        for (std::size_t k = 0; k < m; ++k) {
            verts.push_back("v" + std::to_string(k + 1));
            arrows.push_back({"x" + std::to_string(k + 1), 0, static_cast<int>(k + 1)});
        }
        AlgebraPtr A = Algebra::build(Quiver(verts, arrows), {});
        ModulePtr P = projective_cover(A, 0);

        Matrix fam(d, m, vars);
        for (;;) {
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    MultiPoly num = MultiPoly::zero(vars);
                    for (int e = 0; e <= deg(rng); ++e)
                        num += MultiPoly::constant(vars, Rational(coeff(rng))) *
                               MultiPoly::variable(vars, "s", 1).pow(e);
                    fam.at(i, j) = ExactScalar(num, MultiPoly::variable(vars, "s", 1).pow(pole(rng)));
                }
            if (fam.rank() == d) break;
        }
        if (limit_point(P, fam) == plucker_limit(P, fam)) ++agreements;
    }
    c.require(agreements == 200, "zero disagreements");
    c.finish();
}

void criterion_7() {
    Criterion c("7 m-formula identity on fixtures and 50 random submodules", 60.0);
    int checked = 0;
    for (const char* name : {"ex_5_1a.json", "ex_5_1b.json", "ex_5_2.json", "ex_5_3.json",
                             "ex_5_4.json"}) {
        ProblemSpec spec = parse_problem_file(fixture(name));
        OrbitDescriptor d = orbit_descriptor(spec.c); // throws FormulaMismatch on violation
        c.require(d.m == 2, std::string(name) + " has a 2-dimensional orbit");
        ++checked;
    }
    std::mt19937_64 rng(7u);
    std::uniform_int_distribution<int> coeff(-3, 3), ngen(1, 3);
    std::vector<const char*> names{"ex_5_1a.json", "ex_5_2.json", "ex_5_4.json"};
    int random_checked = 0;
    for (int iter = 0; random_checked < 50; ++iter) {
        ProblemSpec spec = parse_problem_file(fixture(names[static_cast<std::size_t>(iter) % 3]));
        const ModulePtr& P = spec.module;
        Matrix gens(0, P->dim_radical());
        int g = ngen(rng);
        for (int k = 0; k < g; ++k) {
            std::vector<ExactScalar> row(P->dim_radical(), ExactScalar(VarOrder::rationals()));
            for (std::size_t j = 0; j < P->dim_radical(); ++j)
                row[j] = ExactScalar(VarOrder::rationals(), Rational(coeff(rng)));
            gens.push_row(std::move(row));
        }
        GrassPoint C = make_grass_point(lambda_closure(P, gens));
        std::size_t m_stab = P->mu() - stab(C).dim();
        std::size_t m_hom = hom_dim_from_p(C) - hom_dim_from_p_mod_c(C);
        if (m_stab != m_hom) c.require(false, "violation on a random submodule");
        ++random_checked;
    }
    c.require(checked == 5 && random_checked == 50, "coverage");
    c.finish();
}

void criterion_8() {
    Criterion c("8 chi bounds of the additivity argument on every fixture", 120.0);
    for (const char* name : {"ex_5_1a.json", "ex_5_1b.json", "ex_5_2.json", "ex_5_3.json",
                             "ex_5_4.json"}) {
        Stratification s = stratify(name);
        c.require(s.bounds.ok_t_plus_1, std::string(name) + ": chi(boundary) <= t+1");
        c.require(s.bounds.ok_2t, std::string(name) + ": chi(boundary) <= 2t");
    }
    c.finish();
}

void criterion_9() {
    Criterion c("9 surface lab: Hirzebruch ladder and monoidal bookkeeping", 1.0);
    for (int n : {0, 2, 3, 4, 5, 6, 7, 8}) {
        CurveConfig xn = hirzebruch(n);
        c.require(xn.self_intersection("D" + std::to_string(n)) == -n,
                  "X_" + std::to_string(n) + " carries a -" + std::to_string(n) + " curve");
        c.require(xn.picard_rank() == 2, "X_" + std::to_string(n) + " has rank 2");
    }
    CurveConfig x0 = CurveConfig::x0();
    c.require(blow_down(blow_up_free(x0, "E"), "E") == x0, "free round trip");
    c.require(blow_down(blow_up_on_curve(x0, "D0", "E"), "E") == x0, "on-curve round trip");
    c.require(blow_down(blow_up_crossing(x0, "D0", "D0p", "E"), "E") == x0, "crossing round trip");
    c.require(blow_up_free(x0, "E").picard_rank() == x0.picard_rank() + 1, "rank +1 per blow-up");
    c.finish();
}

std::string run_cli(const std::string& args) {
    std::string cmd = std::string(QORBIT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    return out;
}

void criterion_10() {
    Criterion c("10 determinism: identical bytes across repeated CLI runs", 300.0);
    std::vector<std::string> fixtures{"ex_5_1a.json", "ex_5_1b.json", "ex_5_2.json",
                                      "ex_5_3.json", "ex_5_4.json"};
    std::vector<std::string> commands{"basis", "orbit", "boundary", "poset --format json",
                                      "poset --format dot", "euler", "surface"};
    for (const std::string& f : fixtures)
        for (const std::string& cmd : commands) {
            std::string args = cmd;
            std::size_t sp = args.find(' ');
            std::string full = (sp == std::string::npos)
                                   ? args + " " + fixture(f)
                                   : args.substr(0, sp) + " " + fixture(f) + args.substr(sp);
            std::string a = run_cli(full);
            std::string b = run_cli(full);
            c.require(!a.empty() && a == b, cmd + " on " + f);
        }
    std::string lim = "limit " + fixture("ex_5_2.json") + " --curve 1,2 --coeffs 1,y3";
    c.require(run_cli(lim) == run_cli(lim), "limit command");
    c.finish();
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
