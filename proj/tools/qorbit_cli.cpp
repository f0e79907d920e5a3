// Command line front end: parse a problem document and run one stage of the
// orbit-closure pipeline with byte-deterministic output.
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qorbit/problem.hpp"
#include "qorbit/scalar_parser.hpp"
#include "qorbit/surface.hpp"

using namespace qorbit;

namespace {

std::string cmd_basis(const ProblemSpec& spec) {
    std::ostringstream os;
    const AlgebraPtr& A = spec.algebra;
    os << "dim Lambda = " << A->dim() << ", N = " << A->nilpotency_index() << "\n";
    os << "basis = " << A->basis_str() << "\n";
    os << "dim P = " << spec.module->dim_p() << ", dim JP = " << spec.module->dim_radical()
       << ", d = " << spec.c.codim() << ", d_prime = " << spec.c.dim_sub() << "\n";
    os << "radical basis of P = " << spec.module->radical_basis_str() << "\n";
    os << "C = " << spec.c.str() << "\n";
    return os.str();
}

std::string cmd_orbit(const ProblemSpec& spec) {
    OrbitDescriptor d = orbit_descriptor(spec.c);
    std::ostringstream os;
    os << "m = " << d.m << ", omega = " << d.omega_str() << ", stab_dim = " << d.stab_basis.dim()
       << "\n";
    os << "mu = " << d.mu << ", dim_P = " << spec.module->dim_p() << ", d = " << spec.c.codim()
       << ", d_prime = " << spec.c.dim_sub() << "\n";
    os << "hom_dim(P, JP/C) = " << hom_dim_from_p(spec.c) << ", hom_dim(P/C, JP/C) = "
       << hom_dim_from_p_mod_c(spec.c) << "\n";
    return os.str();
}

std::string cmd_limit(const ProblemSpec& spec, const std::string& curve_csv,
                      const std::string& coeff_csv) {
    OrbitDescriptor d = orbit_descriptor(spec.c);
    std::vector<int> exps;
    {
        std::istringstream in(curve_csv);
        std::string tok;
        while (std::getline(in, tok, ',')) exps.push_back(std::stoi(tok));
    }
    if (exps.size() != d.m)
        throw ParseError("curve needs " + std::to_string(d.m) + " exponents, got " +
                         std::to_string(exps.size()));
    std::vector<std::string> coeffs;
    if (!coeff_csv.empty()) {
        std::istringstream in(coeff_csv);
        std::string tok;
        while (std::getline(in, tok, ',')) coeffs.push_back(tok);
        if (coeffs.size() != exps.size())
            throw ParseError("need one coefficient per curve exponent");
    } else {
        for (std::size_t i = 0; i < exps.size(); ++i)
            coeffs.push_back((exps[i] == 0 ? "z" : "c") + std::to_string(i + 1));
    }

    // the variable tower: symbolic coefficients in order of appearance, then s
    std::vector<std::string> names;
    for (const std::string& c : coeffs) {
        bool symbol = !c.empty() && (std::isalpha(static_cast<unsigned char>(c[0])) != 0);
        if (symbol && std::find(names.begin(), names.end(), c) == names.end()) {
            if (c == "s" || c == "lam") throw ParseError("'" + c + "' is a reserved symbol");
            names.push_back(c);
        }
    }
    names.push_back("s");
    VarOrderPtr vars = VarOrder::make(names);

    const AlgebraPtr& A = spec.algebra;
    AlgebraElement u = AlgebraElement::identity(A, vars);
    std::ostringstream curve;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        ExactScalar t = parse_scalar(coeffs[i], vars);
        if (exps[i] > 0) t = t / ExactScalar::variable(vars, "s").pow(exps[i]);
        u.coeff(d.omega[i]) = t;
        if (i) curve << ", ";
        curve << "t" << i + 1 << " = " << t.str();
    }
    Matrix fam = right_multiply(spec.c.space, u).mat;
    GrassPoint lim = limit_point(spec.module, fam);

    std::ostringstream os;
    os << "curve: " << curve.str() << "\n";
    os << "limit = " << lim.str() << "\n";
    os << "stable = yes, dim = " << lim.dim_sub() << "\n";
    return os.str();
}

std::string stratum_line(const Stratification& s, std::size_t i) {
    const Stratum& st = s.poset.strata[i];
    std::ostringstream os;
    os << "stratum " << i << ": " << st.label();
    if (st.kind == StratumKind::Family && !st.carved.empty()) {
        os << ", carved {";
        for (std::size_t k = 0; k < st.carved.size(); ++k) {
            if (k) os << ", ";
            os << (st.carved[k] ? rational_str(*st.carved[k]) : "inf");
        }
        os << "}";
    }
    return os.str();
}

std::string completeness(const Stratification& s) {
    return s.complete ? "verified-complete" : "lower bound on degenerations";
}

std::string cmd_boundary(const ProblemSpec& spec) {
    Stratification s = enumerate_boundary(spec.c, spec.options);
    std::ostringstream os;
    for (std::size_t i = 0; i < s.poset.strata.size(); ++i) os << stratum_line(s, i) << "\n";
    for (const std::string& note : s.collapse_notes) os << "note: " << note << "\n";
    os << "enumeration: " << completeness(s) << "\n";
    return os.str();
}

std::string cmd_poset(const ProblemSpec& spec, const std::string& format) {
    Stratification s = enumerate_boundary(spec.c, spec.options);
    if (format == "dot") return poset_dot(s);
    if (format == "json") return poset_json(s).dump(2) + "\n";
    std::ostringstream os;
    for (std::size_t i = 0; i < s.poset.strata.size(); ++i) os << stratum_line(s, i) << "\n";
    for (const auto& [a, b] : s.poset.edges) os << "edge: " << a << " -> " << b << "\n";
    os << "enumeration: " << completeness(s) << "\n";
    return os.str();
}

std::string cmd_euler(const ProblemSpec& spec) {
    Stratification s = enumerate_boundary(spec.c, spec.options);
    std::ostringstream os;
    os << "chi = " << s.chi << ", strata = " << s.poset.strata.size()
       << ", bounds: chi(boundary)=" << s.bounds.chi_boundary << " <= t+1=" << s.bounds.t + 1
       << (s.bounds.ok_t_plus_1 ? " OK" : " VIOLATED") << "\n";
    os << "chi(boundary)=" << s.bounds.chi_boundary << " <= 2t=" << 2 * s.bounds.t
       << (s.bounds.ok_2t ? " OK" : " VIOLATED") << ", enumeration: " << completeness(s) << "\n";
    return os.str();
}

std::string cmd_surface_problem(const ProblemSpec& spec, const std::string& format) {
    Stratification s = enumerate_boundary(spec.c, spec.options);
    std::ostringstream os;

    std::vector<int> components;
    for (std::size_t i = 0; i < s.poset.strata.size(); ++i) {
        const Stratum& st = s.poset.strata[i];
        if ((st.kind == StratumKind::Orbit && st.orbit_dim == 1) || st.kind == StratumKind::Family)
            components.push_back(static_cast<int>(i));
    }
    os << "boundary components (t) = " << components.size() << "\n";
    for (int c : components) os << "  component: " << stratum_line(s, static_cast<std::size_t>(c))
                                << "\n";
    // crossings: point strata in the closure of two or more components
    std::map<int, std::set<int>> contacts;
    for (const auto& [comp, pt] : s.closure_contacts) contacts[pt].insert(comp);
    int crossings = 0;
    for (const auto& [pt, comps] : contacts) {
        if (comps.size() >= 2) {
            ++crossings;
            os << "  crossing at stratum " << pt << " between components {";
            bool first = true;
            for (int c : comps) {
                if (!first) os << ", ";
                os << c;
                first = false;
            }
            os << "}\n";
        }
    }
    os << "component crossings = " << crossings << "\n";
    for (const std::string& note : s.collapse_notes) os << "note: " << note << "\n";
    os << "chi = " << s.chi << ", chi(boundary) = " << s.bounds.chi_boundary << "\n";

    std::string guess = "unidentified";
    if (s.chi == 3) guess = "P2";
    else if (s.chi == 4) guess = "a minimal ruled surface (P1xP1 or X_n), possibly after contractions";
    else if (s.chi == 5) guess = "one monoidal transformation above a minimal surface";
    os << "surface type (heuristic, not asserted): " << guess << "\n";
    (void)format;
    return os.str();
}

std::string cmd_surface_hirzebruch(int n, const std::string& format) {
    CurveConfig cfg = hirzebruch(n);
    if (format == "dot") return cfg.dot();
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["picard_rank"] = cfg.picard_rank();
        doc["curves"] = nlohmann::ordered_json::array();
        for (const auto& [name, self] : cfg.curves())
            doc["curves"].push_back({{"name", name}, {"self_intersection", self}});
        doc["crossings"] = nlohmann::ordered_json::array();
        for (const auto& [a, b] : cfg.crossings()) doc["crossings"].push_back({a, b});
        return doc.dump(2) + "\n";
    }
    return cfg.str() + "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation of two-dimensional orbit closures in quiver Grassmannians"};
    app.require_subcommand(1);

    std::string input, format = "text", curve_csv, coeff_csv, samples_csv;
    int max_exponent = -1, length_cap = -1, jobs = 1, hirzebruch_n = -1;

    auto add_common = [&](CLI::App* sub, bool needs_input = true) {
        if (needs_input) sub->add_option("input", input, "problem JSON file")->required();
        sub->add_option("--max-exponent", max_exponent, "curve exponent bound E (default 4)");
        sub->add_option("--samples", samples_csv, "comma separated rational samples");
        sub->add_option("--length-cap", length_cap, "nilpotency length cap (default 32)");
        sub->add_option("--jobs", jobs, "parallel curve evaluation threads");
        sub->add_option("--format", format, "output format: text|dot|json");
    };

    CLI::App* basis = app.add_subcommand("basis", "algebra and projective module data");
    add_common(basis);
    CLI::App* orbit = app.add_subcommand("orbit", "orbit dimension and stabilizer of C");
    add_common(orbit);
    CLI::App* limit = app.add_subcommand("limit", "flat limit along one monomial curve");
    add_common(limit);
    limit->add_option("--curve", curve_csv, "comma separated exponents a_i (t_i = c_i s^-a_i)")
        ->required();
    limit->add_option("--coeffs", coeff_csv, "comma separated coefficients (rational or symbol)");
    CLI::App* boundary = app.add_subcommand("boundary", "enumerate boundary strata");
    add_common(boundary);
    CLI::App* poset = app.add_subcommand("poset", "top-stable degeneration poset");
    add_common(poset);
    CLI::App* euler = app.add_subcommand("euler", "Euler characteristic of the orbit closure");
    add_common(euler);
    CLI::App* surface = app.add_subcommand("surface", "boundary curve report / Hirzebruch data");
    add_common(surface, false);
    surface->add_option("input", input, "problem JSON file");
    surface->add_option("--hirzebruch", hirzebruch_n, "print the X_n curve configuration");

    CLI11_PARSE(app, argc, argv);

    try {
        std::string out;
        if (surface->parsed() && hirzebruch_n >= 0) {
            out = cmd_surface_hirzebruch(hirzebruch_n, format);
        } else {
            if (input.empty()) throw ParseError("missing problem input file");
            ProblemSpec spec = parse_problem_file(input, length_cap);
            if (max_exponent > 0) spec.options.max_exponent = max_exponent;
            if (jobs > 1) spec.options.jobs = jobs;
            if (!samples_csv.empty()) {
                spec.options.samples.clear();
                std::istringstream in(samples_csv);
                std::string tok;
                while (std::getline(in, tok, ',')) spec.options.samples.push_back(parse_rational(tok));
            }
            if (basis->parsed()) out = cmd_basis(spec);
            else if (orbit->parsed()) out = cmd_orbit(spec);
            else if (limit->parsed()) out = cmd_limit(spec, curve_csv, coeff_csv);
            else if (boundary->parsed()) out = cmd_boundary(spec);
            else if (poset->parsed()) out = cmd_poset(spec, format);
            else if (euler->parsed()) out = cmd_euler(spec);
            else if (surface->parsed()) out = cmd_surface_problem(spec, format);
        }
        std::cout << out;
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
