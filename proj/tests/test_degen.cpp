#include <catch2/catch_amalgamated.hpp>

#include "qorbit/degen.hpp"

#include "fixtures.hpp"

using namespace qorbit;

namespace {

GrassPoint point_of(const ModulePtr& m,
                    const std::vector<std::vector<std::pair<int, std::string>>>& gens) {
    Matrix rows(0, m->dim_radical());
    for (const auto& g : gens) {
        std::vector<ExactScalar> row(m->dim_radical(), ExactScalar(VarOrder::rationals()));
        for (const auto& [coeff, text] : g) {
            int cls = m->algebra()->basis_index(fixtures::path(*m->algebra(), text));
            row[m->radical_col(cls)] += ExactScalar(VarOrder::rationals(), Rational(coeff));
        }
        rows.push_row(std::move(row));
    }
    return make_grass_point(lambda_closure(m, rows));
}

struct Counts {
    int orbits1 = 0, families = 0, points = 0;
};

Counts count(const Stratification& s) {
    Counts c;
    for (const Stratum& st : s.poset.strata) {
        if (st.kind == StratumKind::Orbit && st.orbit_dim == 1) ++c.orbits1;
        if (st.kind == StratumKind::Family) ++c.families;
        if (st.kind == StratumKind::Point) ++c.points;
    }
    return c;
}

} // namespace

TEST_CASE("boundary of 5.1(a): three orbit classes, chi 4", "[degen]") {
    ModulePtr P = projective_cover(fixtures::algebra_5_1a(), 0);
    GrassPoint C = point_of(P, {{{1, "a1"}}, {{1, "a2"}}});
    Stratification s = enumerate_boundary(C);

    REQUIRE(s.poset.strata.size() == 4);
    Counts c = count(s);
    CHECK(c.orbits1 == 2);
    CHECK(c.families == 0);
    CHECK(c.points == 1);
    CHECK(s.chi == 4);
    CHECK(s.complete);

    // poset: top covers the two 1-dim orbits; both cover the point
    std::vector<std::pair<int, int>> expect{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    CHECK(s.poset.edges == expect);
}

TEST_CASE("boundary of 5.1(b): one P1 family, chi 3", "[degen]") {
    ModulePtr P = projective_cover(fixtures::algebra_5_1b(), 0);
    GrassPoint C = point_of(P, {{{1, "a"}}});
    Stratification s = enumerate_boundary(C);

    REQUIRE(s.poset.strata.size() == 2);
    const Stratum& fam = s.poset.strata[1];
    CHECK(fam.kind == StratumKind::Family);
    CHECK(fam.base == "P1");
    CHECK(fam.chi == 2);
    CHECK(fam.family->str() == "[a*w1 + lam*a*w2]");
    CHECK(s.chi == 3);
    CHECK(s.complete);
    std::vector<std::pair<int, int>> expect{{0, 1}};
    CHECK(s.poset.edges == expect);
}

TEST_CASE("boundary of 5.2: five classes of Figure 2, chi 4", "[degen]") {
    ModulePtr P = projective_cover(fixtures::algebra_5_2(), 0);
    GrassPoint C = point_of(P, {{{1, "a"}, {1, "b"}}, {{1, "a*w"}}, {{1, "g*w"}}});
    Stratification s = enumerate_boundary(C);

    REQUIRE(s.poset.strata.size() == 5);
    Counts c = count(s);
    CHECK(c.orbits1 == 1);
    CHECK(c.families == 1);
    CHECK(c.points == 2);
    CHECK(s.chi == 4);
    CHECK(s.complete);

    // strata: 0 top, 1 E-orbit, 2 k*-family, 3/4 the two points
    const Stratum& E = s.poset.strata[1];
    CHECK(E.kind == StratumKind::Orbit);
    CHECK(E.rep.str() == "[a*w, g*w, a*w^2]"); // lex-least member of the E-orbit

    const Stratum& fam = s.poset.strata[2];
    CHECK(fam.base == "A1 minus 1 point"); // k^*
    CHECK(fam.chi == 0);
    CHECK(fam.family->str() == "[a*w + lam*b*w, a*w^2, g*w^2]");

    // the carved members: lam = 0 is the maximal degeneration, lam = inf the
    // beta-point
    REQUIRE(fam.carved.size() == 2);
    CHECK(fam.carved[0].has_value());
    CHECK(*fam.carved[0] == 0);
    CHECK_FALSE(fam.carved[1].has_value());

    const Stratum& maxdeg = s.poset.strata[3];
    CHECK(maxdeg.rep.str() == "[a*w, a*w^2, g*w^2]");
    const Stratum& beta = s.poset.strata[4];
    CHECK(beta.rep.str() == "[b*w, a*w^2, g*w^2]");

    // Figure 2: top -> E, family, beta; E -> max
    std::vector<std::pair<int, int>> expect{{0, 1}, {0, 2}, {0, 4}, {1, 3}};
    CHECK(s.poset.edges == expect);
}

TEST_CASE("boundary of 5.3: six classes, chi 4, A1 minus {0,1} family", "[degen]") {
    ModulePtr P = projective_cover(fixtures::algebra_5_2(), 0);
    GrassPoint C = point_of(P, {{{1, "a"}, {1, "b"}}, {{1, "a*w"}}, {{1, "g"}}});
    Stratification s = enumerate_boundary(C);

    REQUIRE(s.poset.strata.size() == 6);
    Counts c = count(s);
    CHECK(c.orbits1 == 1);
    CHECK(c.families == 1);
    CHECK(c.points == 3);
    CHECK(s.chi == 4);
    CHECK(s.complete);

    const Stratum& fam = s.poset.strata[2];
    CHECK(fam.chi == -1);
    CHECK(fam.base == "A1 minus 2 points");

    // the collapsed point is reached from more than one curve direction
    bool found_collapsed = false;
    for (const Stratum& st : s.poset.strata) {
        if (st.kind != StratumKind::Point) continue;
        if (st.rep.str() == "[a*w, a*w^2, g*w^2]") {
            found_collapsed = true;
            CHECK(st.curves.size() >= 2);
        }
    }
    CHECK(found_collapsed);
    CHECK_FALSE(s.collapse_notes.empty());

    // Figure 3: top -> D, family, collapsed point, beta point; D -> max
    std::vector<std::pair<int, int>> expect{{0, 1}, {0, 2}, {0, 3}, {0, 5}, {1, 4}};
    CHECK(s.poset.edges == expect);
}

TEST_CASE("boundary of 5.4: six classes, chi 5", "[degen]") {
    ModulePtr P = projective_cover(fixtures::algebra_5_4(), 0);
    GrassPoint C = point_of(
        P, {{{1, "a"}}, {{1, "b"}}, {{1, "g"}}, {{1, "d"}}, {{1, "a*w1"}, {1, "b*w2"}}});
    Stratification s = enumerate_boundary(C);

    REQUIRE(s.poset.strata.size() == 6);
    Counts c = count(s);
    CHECK(c.orbits1 == 2);
    CHECK(c.families == 1);
    CHECK(c.points == 2);
    CHECK(s.chi == 5);
    CHECK(s.complete);

    const Stratum& fam = s.poset.strata[3];
    CHECK(fam.base == "A1 minus 1 point");
    CHECK(fam.chi == 0);

    // Figure 4: top -> E1, E2, family; E1 -> point1, E2 -> point2
    std::vector<std::pair<int, int>> expect{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5}};
    CHECK(s.poset.edges == expect);
}

TEST_CASE("rigid points give a single-node poset", "[degen]") {
    ModulePtr P = projective_cover(fixtures::algebra_5_1b(), 0);
    GrassPoint rigid = point_of(P, {{{1, "a*w1"}}});
    REQUIRE(orbit_descriptor(rigid).m == 0);
    Stratification s = enumerate_boundary(rigid);
    CHECK(s.poset.strata.size() == 1);
    CHECK(s.poset.edges.empty());
    CHECK(s.chi == 1);
}

TEST_CASE("strata are pairwise orbit-inequivalent", "[degen]") {
    ModulePtr P = projective_cover(fixtures::algebra_5_2(), 0);
    GrassPoint C = point_of(P, {{{1, "a"}, {1, "b"}}, {{1, "a*w"}}, {{1, "g"}}});
    Stratification s = enumerate_boundary(C);
    for (std::size_t i = 0; i < s.poset.strata.size(); ++i)
        for (std::size_t j = i + 1; j < s.poset.strata.size(); ++j) {
            const GrassPoint& a = s.poset.strata[i].rep;
            const GrassPoint& b = s.poset.strata[j].rep;
            if (a.dim_sub() != b.dim_sub()) continue;
            CHECK_FALSE(same_orbit(a, b));
        }
}

TEST_CASE("re-enumerating a boundary orbit stays below it", "[degen]") {
    // idempotence: the boundary of the E-orbit of 5.2 consists of classes
    // already present in the full stratification
    ModulePtr P = projective_cover(fixtures::algebra_5_2(), 0);
    GrassPoint C = point_of(P, {{{1, "a"}, {1, "b"}}, {{1, "a*w"}}, {{1, "g*w"}}});
    Stratification full = enumerate_boundary(C);

    GrassPoint E = point_of(P, {{{1, "a*w^2"}}, {{1, "a*w"}}, {{1, "g*w"}}});
    Stratification sub = enumerate_boundary(E);
    for (const Stratum& st : sub.poset.strata) {
        if (st.kind == StratumKind::Top) continue;
        bool known = false;
        for (const Stratum& big : full.poset.strata) {
            if (big.kind == StratumKind::Family || st.rep.dim_sub() != big.rep.dim_sub()) continue;
            if (same_orbit(st.rep, big.rep)) known = true;
        }
        CHECK(known);
    }
}

TEST_CASE("chi bounds hold on every fixture", "[degen]") {
    struct Case {
        AlgebraPtr a;
        std::vector<std::vector<std::pair<int, std::string>>> gens;
    };
    std::vector<Case> cases = {
        {fixtures::algebra_5_1a(), {{{1, "a1"}}, {{1, "a2"}}}},
        {fixtures::algebra_5_1b(), {{{1, "a"}}}},
        {fixtures::algebra_5_2(), {{{1, "a"}, {1, "b"}}, {{1, "a*w"}}, {{1, "g*w"}}}},
        {fixtures::algebra_5_2(), {{{1, "a"}, {1, "b"}}, {{1, "a*w"}}, {{1, "g"}}}},
        {fixtures::algebra_5_4(),
         {{{1, "a"}}, {{1, "b"}}, {{1, "g"}}, {{1, "d"}}, {{1, "a*w1"}, {1, "b*w2"}}}},
    };
    for (const Case& cs : cases) {
        ModulePtr P = projective_cover(cs.a, 0);
        Stratification s = enumerate_boundary(point_of(P, cs.gens));
        CHECK(s.bounds.ok_t_plus_1);
        CHECK(s.bounds.ok_2t);
        CHECK(s.complete);
    }
}

TEST_CASE("json round trip of the poset document", "[degen]") {
    ModulePtr P = projective_cover(fixtures::algebra_5_2(), 0);
    GrassPoint C = point_of(P, {{{1, "a"}, {1, "b"}}, {{1, "a*w"}}, {{1, "g*w"}}});
    Stratification s = enumerate_boundary(C);
    auto doc = poset_json(s);
    auto reparsed = nlohmann::ordered_json::parse(doc.dump());
    CHECK(reparsed == doc);
    CHECK(reparsed["nodes"].size() == 5);
    CHECK(reparsed["chi"] == 4);
}
