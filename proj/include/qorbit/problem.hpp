#pragma once
#include <fstream>

#include <json.hpp>

#include "degen.hpp"

namespace qorbit {

// Input document: quiver, relations, top vertex, generators of C and options.
// Path arrays are written in display order (the leftmost arrow acts last).
struct ProblemSpec {
    AlgebraPtr algebra;
    ModulePtr module;
    GrassPoint c;
    ExploreOptions options;
    int length_cap = 32;
};

namespace detail {

inline Path parse_path(const Quiver& q, const nlohmann::json& arr) {
    if (!arr.is_array() || arr.empty())
        throw ParseError("path must be a non-empty array of arrow names");
    Path p;
    // trivial paths are written ["e_<vertex>"]
    if (arr.size() == 1 && arr[0].is_string()) {
        std::string name = arr[0].get<std::string>();
        if (name.rfind("e_", 0) == 0) {
            int v = q.vertex_index(name.substr(2));
            if (v < 0) throw ParseError("unknown vertex in '" + name + "'");
            p.vertex = v;
            return p;
        }
    }
    for (const auto& name : arr) {
        if (!name.is_string()) throw ParseError("arrow name must be a string");
        int idx = q.arrow_index(name.get<std::string>());
        if (idx < 0) throw ParseError("unknown arrow '" + name.get<std::string>() + "'");
        p.word.push_back(idx);
    }
    // composability
    for (std::size_t i = 0; i + 1 < p.word.size(); ++i)
        if (q.arrow(p.word[i]).source != q.arrow(p.word[i + 1]).target)
            throw ParseError("path is not composable");
    p.vertex = p.source(q);
    return p;
}

inline std::vector<std::pair<Rational, Path>> parse_combination(const Quiver& q,
                                                                const nlohmann::json& arr) {
    if (!arr.is_array() || arr.empty()) throw ParseError("expected an array of path terms");
    std::vector<std::pair<Rational, Path>> out;
    for (const auto& term : arr) {
        if (!term.is_object() || !term.contains("path"))
            throw ParseError("path term must be an object with 'path'");
        Rational coeff(1);
        if (term.contains("coeff")) coeff = parse_rational(term["coeff"].get<std::string>());
        out.push_back({coeff, parse_path(q, term["path"])});
    }
    return out;
}

} // namespace detail

inline ProblemSpec parse_problem(const nlohmann::json& doc, int length_cap_override = -1) {
    if (!doc.is_object()) throw ParseError("problem document must be a JSON object");
    for (const char* key : {"quiver", "relations", "top_vertex", "C"})
        if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");

    const auto& qdoc = doc["quiver"];
    if (!qdoc.contains("vertices") || !qdoc.contains("arrows"))
        throw ParseError("quiver needs 'vertices' and 'arrows'");
    std::vector<std::string> vertices;
    for (const auto& v : qdoc["vertices"]) vertices.push_back(v.get<std::string>());
    std::vector<Arrow> arrows;
    {
        // two passes: vertex indices first
        Quiver tmp(vertices, {});
        for (const auto& a : qdoc["arrows"]) {
            for (const char* key : {"name", "source", "target"})
                if (!a.contains(key)) throw ParseError("arrow needs name/source/target");
            int s = tmp.vertex_index(a["source"].get<std::string>());
            int t = tmp.vertex_index(a["target"].get<std::string>());
            if (s < 0 || t < 0) throw ParseError("arrow references an undeclared vertex");
            arrows.push_back({a["name"].get<std::string>(), s, t});
        }
    }
    Quiver quiver(vertices, arrows);

    std::vector<Relation> relations;
    for (const auto& r : doc["relations"]) {
        Relation rel;
        rel.terms = detail::parse_combination(quiver, r);
        relations.push_back(std::move(rel));
    }

    ProblemSpec spec;
    if (doc.contains("options")) {
        const auto& o = doc["options"];
        if (o.contains("max_exponent")) spec.options.max_exponent = o["max_exponent"].get<int>();
        if (o.contains("length_cap")) spec.length_cap = o["length_cap"].get<int>();
        if (o.contains("samples")) {
            spec.options.samples.clear();
            for (const auto& s : o["samples"])
                spec.options.samples.push_back(parse_rational(s.get<std::string>()));
            if (spec.options.samples.empty()) throw ParseError("empty sample list");
        }
    }

    if (length_cap_override > 0) spec.length_cap = length_cap_override;
    spec.algebra = Algebra::build(quiver, relations, spec.length_cap);
    int top = quiver.vertex_index(doc["top_vertex"].get<std::string>());
    if (top < 0) throw ParseError("unknown top vertex");
    spec.module = projective_cover(spec.algebra, top);

    Matrix gens(0, spec.module->dim_radical());
    for (const auto& g : doc["C"]) {
        std::vector<ExactScalar> row(spec.module->dim_radical(),
                                     ExactScalar(VarOrder::rationals()));
        for (const auto& [coeff, path] : detail::parse_combination(quiver, g)) {
            if (path.length() < 1 || path.source(quiver) != top)
                throw GeneratorNotInRadical("generator term " + path.str(quiver) +
                                            " does not lie in JP");
            auto nf = spec.algebra->normal_form(path);
            for (const auto& [k, c] : nf)
                row[spec.module->radical_col(k)] += ExactScalar(VarOrder::rationals(), coeff * c);
        }
        gens.push_row(std::move(row));
    }
    spec.c = make_grass_point(lambda_closure(spec.module, gens));
    return spec;
}

inline ProblemSpec parse_problem_text(const std::string& text, int length_cap_override = -1) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        return parse_problem(doc, length_cap_override);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed problem document: ") + e.what());
    }
}

inline ProblemSpec parse_problem_file(const std::string& path, int length_cap_override = -1) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_problem_text(text, length_cap_override);
}

} // namespace qorbit
