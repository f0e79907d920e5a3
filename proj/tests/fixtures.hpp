#pragma once
#include "qorbit/algebra.hpp"

// Programmatic versions of the bundled example algebras, shared by the unit
// and acceptance suites.
namespace qorbit::fixtures {

inline Path path(const Algebra& A, const std::string& text) {
    Path p;
    const Quiver& q = A.quiver();
    std::size_t i = 0;
    if (text.rfind("e_", 0) == 0) {
        p.vertex = q.vertex_index(text.substr(2));
        if (p.vertex < 0) throw ParseError("unknown vertex in '" + text + "'");
        return p;
    }
    while (i < text.size()) {
        std::size_t j = i;
        while (j < text.size() && text[j] != '*' && text[j] != '^') ++j;
        std::string name = text.substr(i, j - i);
        int idx = q.arrow_index(name);
        if (idx < 0) throw ParseError("unknown arrow '" + name + "'");
        int rep = 1;
        if (j < text.size() && text[j] == '^') {
            std::size_t k = j + 1;
            rep = 0;
            while (k < text.size() && isdigit(static_cast<unsigned char>(text[k]))) {
                rep = rep * 10 + (text[k] - '0');
                ++k;
            }
            j = k;
        }
        for (int r = 0; r < rep; ++r) p.word.push_back(idx);
        if (j < text.size() && text[j] == '*') ++j;
        i = j;
    }
    p.vertex = p.source(q);
    return p;
}

inline Relation monomial_relation(const Quiver& q, std::initializer_list<const char*> arrows) {
    Relation r;
    Path p;
    for (const char* a : arrows) p.word.push_back(q.arrow_index(a));
    p.vertex = p.source(q);
    r.terms = {{Rational(1), p}};
    return r;
}

// Example 5.1(a): two loops w1, w2 and two arrows a1, a2 from 1 to 2.
inline AlgebraPtr algebra_5_1a() {
    Quiver q({"1", "2"}, {{"w1", 0, 0}, {"w2", 0, 0}, {"a1", 0, 1}, {"a2", 0, 1}});
    std::vector<Relation> I = {
        monomial_relation(q, {"w1", "w1"}), monomial_relation(q, {"w1", "w2"}),
        monomial_relation(q, {"w2", "w1"}), monomial_relation(q, {"w2", "w2"}),
        monomial_relation(q, {"a1", "w2"}), monomial_relation(q, {"a2", "w1"})};
    return Algebra::build(q, I);
}

// Example 5.1(b): two loops and one arrow a from 1 to 2.
inline AlgebraPtr algebra_5_1b() {
    Quiver q({"1", "2"}, {{"w1", 0, 0}, {"w2", 0, 0}, {"a", 0, 1}});
    std::vector<Relation> I = {
        monomial_relation(q, {"w1", "w1"}), monomial_relation(q, {"w1", "w2"}),
        monomial_relation(q, {"w2", "w1"}), monomial_relation(q, {"w2", "w2"})};
    return Algebra::build(q, I);
}

// Examples 5.2 and 5.3: loop w, arrows a, b to 2 and g to 3; I = <w^3, b*w^2>.
inline AlgebraPtr algebra_5_2() {
    Quiver q({"1", "2", "3"}, {{"w", 0, 0}, {"a", 0, 1}, {"b", 0, 1}, {"g", 0, 2}});
    std::vector<Relation> I = {monomial_relation(q, {"w", "w", "w"}),
                               monomial_relation(q, {"b", "w", "w"})};
    return Algebra::build(q, I);
}

// Example 5.4: loops w1, w2, arrows a, b to 2 and g, d to 3.
inline AlgebraPtr algebra_5_4() {
    Quiver q({"1", "2", "3"},
             {{"w1", 0, 0}, {"w2", 0, 0}, {"a", 0, 1}, {"b", 0, 1}, {"g", 0, 2}, {"d", 0, 2}});
    std::vector<Relation> I = {
        monomial_relation(q, {"w1", "w1"}), monomial_relation(q, {"w1", "w2"}),
        monomial_relation(q, {"w2", "w1"}), monomial_relation(q, {"w2", "w2"}),
        monomial_relation(q, {"a", "w2"}),  monomial_relation(q, {"b", "w1"}),
        monomial_relation(q, {"g", "w2"}),  monomial_relation(q, {"d", "w1"})};
    return Algebra::build(q, I);
}

} // namespace qorbit::fixtures
