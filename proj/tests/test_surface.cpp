#include <catch2/catch_amalgamated.hpp>

#include "qorbit/surface.hpp"

using namespace qorbit;

TEST_CASE("blow up the X0 crossing", "[surface]") {
    CurveConfig x0 = CurveConfig::x0();
    CurveConfig b = blow_up_crossing(x0, "D0", "D0p", "E");
    CHECK(b.self_intersection("D0") == -1);
    CHECK(b.self_intersection("D0p") == -1);
    CHECK(b.self_intersection("E") == -1);
    CHECK(b.crossing_count("D0", "E") == 1);
    CHECK(b.crossing_count("D0p", "E") == 1);
    CHECK(b.crossing_count("D0", "D0p") == 0);
    CHECK(b.picard_rank() == 3);
}

TEST_CASE("blow up a free point", "[surface]") {
    CurveConfig x0 = CurveConfig::x0();
    CurveConfig b = blow_up_free(x0, "E");
    CHECK(b.self_intersection("E") == -1);
    CHECK(b.picard_rank() == 3);
    CHECK(b.crossing_count("E", "D0") == 0);
}

TEST_CASE("two successive blow-ups on a line in P2", "[surface]") {
    CurveConfig p2 = CurveConfig::p2_with_line();
    CurveConfig b1 = blow_up_on_curve(p2, "L", "E1");
    CHECK(b1.self_intersection("L") == 0);
    CurveConfig b2 = blow_up_on_curve(b1, "L", "E2");
    CHECK(b2.self_intersection("L") == -1);
    CHECK(b2.picard_rank() == 3);
}

TEST_CASE("blow down inverts blow up", "[surface]") {
    CurveConfig x0 = CurveConfig::x0();
    CHECK(blow_down(blow_up_free(x0, "E"), "E") == x0);
    CHECK(blow_down(blow_up_on_curve(x0, "D0", "E"), "E") == x0);
    CHECK(blow_down(blow_up_crossing(x0, "D0", "D0p", "E"), "E") == x0);
}

TEST_CASE("only (-1)-curves contract", "[surface]") {
    CurveConfig cfg(2);
    cfg.add_curve("C", -2);
    CHECK_THROWS_AS(blow_down(cfg, "C"), NotMinusOne);
}

TEST_CASE("one recursion round on X0", "[surface]") {
    CurveConfig cfg = CurveConfig::x0();
    cfg = blow_up_crossing(cfg, "D0", "D0p", "E0");
    cfg = blow_down(cfg, "D0");
    CHECK(cfg.picard_rank() == 2);
    CHECK(cfg.self_intersection("E0") == 0);
    CHECK(cfg.self_intersection("D0p") == -1);
    CHECK(cfg.crossing_count("E0", "D0p") == 1);
}

TEST_CASE("hirzebruch ladder", "[surface]") {
    CurveConfig x0 = hirzebruch(0);
    CHECK(x0.self_intersection("D0") == 0);
    CHECK(x0.picard_rank() == 2);

    CurveConfig x2 = hirzebruch(2);
    CHECK(x2.self_intersection("D2") == -2);
    CHECK(x2.self_intersection("F2") == 0);
    CHECK(x2.picard_rank() == 2);

    for (int n : {3, 4, 5, 6, 7, 8}) {
        CurveConfig xn = hirzebruch(n);
        CHECK(xn.self_intersection("D" + std::to_string(n)) == -n);
        CHECK(xn.picard_rank() == 2);
    }
    CHECK_THROWS_AS(hirzebruch(1), InvalidPoint);
}

TEST_CASE("picard rank moves by one per transformation", "[surface]") {
    CurveConfig cfg = CurveConfig::x0();
    int rank = cfg.picard_rank();
    cfg = blow_up_crossing(cfg, "D0", "D0p", "E0");
    CHECK(cfg.picard_rank() == rank + 1);
    cfg = blow_up_on_curve(cfg, "E0", "E1");
    CHECK(cfg.picard_rank() == rank + 2);
    cfg = blow_up_free(cfg, "E2");
    CHECK(cfg.picard_rank() == rank + 3);
    cfg = blow_down(cfg, "E2");
    CHECK(cfg.picard_rank() == rank + 2);
}

TEST_CASE("self-intersections never decrease under blow-downs", "[surface]") {
    // run the hirzebruch recursion and watch every surviving curve
    CurveConfig cfg = CurveConfig::x0();
    std::string d = "D0", dp = "D0p";
    for (int i = 0; i < 5; ++i) {
        std::string e = "E" + std::to_string(i);
        CurveConfig up = blow_up_crossing(cfg, d, dp, e);
        CurveConfig down = blow_down(up, d);
        for (const auto& [n, s] : down.curves())
            CHECK(s >= up.self_intersection(n));
        cfg = down;
        d = e;
    }
}

TEST_CASE("config serialization", "[surface]") {
    CurveConfig x2 = hirzebruch(2);
    CHECK(x2.str() == "rank 2; curves {D2^2=-2, F2^2=0}; crossings {D2.F2}");
    CHECK(x2.dot() ==
          "graph crossings {\n  \"D2\" [label=\"D2 (-2)\"];\n  \"F2\" [label=\"F2 (0)\"];\n"
          "  \"D2\" -- \"F2\";\n}\n");
}
