#pragma once
#include <string>
#include <vector>

#include "rational.hpp"

namespace qorbit {

struct Arrow {
    std::string name;
    int source;
    int target;
};

class Quiver {
public:
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
        : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            for (std::size_t j = i + 1; j < vertices_.size(); ++j)
                if (vertices_[i] == vertices_[j])
                    throw ParseError("duplicate vertex '" + vertices_[i] + "'");
        for (std::size_t i = 0; i < arrows_.size(); ++i) {
            const Arrow& a = arrows_[i];
            if (a.source < 0 || a.source >= static_cast<int>(vertices_.size()) ||
                a.target < 0 || a.target >= static_cast<int>(vertices_.size()))
                throw ParseError("arrow '" + a.name + "' references an undeclared vertex");
            for (std::size_t j = i + 1; j < arrows_.size(); ++j)
                if (a.name == arrows_[j].name)
                    throw ParseError("duplicate arrow '" + a.name + "'");
            for (const auto& v : vertices_)
                if (v == a.name) throw ParseError("name '" + a.name + "' used for vertex and arrow");
        }
    }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_arrows() const { return arrows_.size(); }
    const std::string& vertex_name(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
    const Arrow& arrow(int i) const { return arrows_[static_cast<std::size_t>(i)]; }

    int vertex_index(const std::string& name) const {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i] == name) return static_cast<int>(i);
        return -1;
    }
    int arrow_index(const std::string& name) const {
        for (std::size_t i = 0; i < arrows_.size(); ++i)
            if (arrows_[i].name == name) return static_cast<int>(i);
        return -1;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
};

// Oriented path. The word is stored in display order ("a*w" = w first, then
// a), i.e. the rightmost arrow acts first. Empty word = trivial path e_v.
struct Path {
    int vertex = 0;            // tag for the trivial path; ignored otherwise
    std::vector<int> word;     // arrow indices, leftmost first

    std::size_t length() const { return word.size(); }
    bool trivial() const { return word.empty(); }

    int source(const Quiver& q) const {
        return word.empty() ? vertex : q.arrow(word.back()).source;
    }
    int target(const Quiver& q) const {
        return word.empty() ? vertex : q.arrow(word.front()).target;
    }

    // q . p : p acts first; requires source(q) == target(p).
    static Path compose(const Quiver& quiver, const Path& q, const Path& p) {
        if (q.source(quiver) != p.target(quiver))
            throw DimensionMismatch("compose: paths are not composable");
        Path r;
        r.vertex = p.source(quiver);
        r.word = q.word;
        r.word.insert(r.word.end(), p.word.begin(), p.word.end());
        return r;
    }

    bool operator==(const Path& o) const {
        if (word.empty() != o.word.empty()) return false;
        if (word.empty()) return vertex == o.vertex;
        return word == o.word;
    }

    // by length, then lexicographically by declaration order of arrows
    bool operator<(const Path& o) const {
        if (word.size() != o.word.size()) return word.size() < o.word.size();
        if (word.empty()) return vertex < o.vertex;
        return word < o.word;
    }

    std::string str(const Quiver& q) const {
        if (word.empty()) return "e_" + q.vertex_name(vertex);
        std::string out;
        for (std::size_t i = 0; i < word.size();) {
            std::size_t j = i;
            while (j < word.size() && word[j] == word[i]) ++j;
            if (!out.empty()) out += "*";
            out += q.arrow(word[i]).name;
            if (j - i > 1) out += "^" + std::to_string(j - i);
            i = j;
        }
        return out;
    }
};

// Length-homogeneous admissible relation: sum of (coefficient, path) with a
// common source, target and length >= 2.
struct Relation {
    std::vector<std::pair<Rational, Path>> terms;

    void validate(const Quiver& q) const {
        if (terms.empty()) throw NotAdmissible("empty relation");
        const Path& first = terms.front().second;
        if (first.length() < 2)
            throw NotAdmissible("relation path of length < 2: " + first.str(q));
        for (const auto& [c, p] : terms) {
            if (c == 0) throw NotAdmissible("zero coefficient in relation");
            if (p.length() != first.length())
                throw NotAdmissible("relation is not length-homogeneous");
            if (p.source(q) != first.source(q) || p.target(q) != first.target(q))
                throw NotAdmissible("relation mixes sources or targets");
        }
    }

    std::string str(const Quiver& q) const {
        std::string out;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (i) out += " + ";
            if (terms[i].first != 1) out += rational_str(terms[i].first) + "*";
            out += terms[i].second.str(q);
        }
        return out;
    }
};

} // namespace qorbit
