#pragma once
#include "grasslimit.hpp"

namespace qorbit {

// Orbit data of a point C in Grass^T_d for simple top: the stabilizer inside
// eJe, a complement basis omega_1..omega_m, and the orbit dimension m, which
// the affine parameterization Psi of the orbit turns into coordinates.
struct OrbitDescriptor {
    GrassPoint rep;
    CycleSubspace stab_basis;
    std::vector<int> omega; // algebra basis indices of the complement cycles
    std::size_t m = 0;
    std::size_t mu = 0;

    std::string omega_str() const {
        std::string out = "[";
        const AlgebraPtr& A = rep.space.module->algebra();
        for (std::size_t i = 0; i < omega.size(); ++i) {
            if (i) out += ", ";
            out += A->basis_path(omega[i]).str(A->quiver());
        }
        return out + "]";
    }
};

// Greedy complement: first cycles (declaration order) independent modulo the
// stabilizer. Asserts the two orbit-dimension formulas of the paper agree.
inline OrbitDescriptor orbit_descriptor(const GrassPoint& C) {
    const ModulePtr& m = C.space.module;
    OrbitDescriptor d;
    d.rep = C;
    d.stab_basis = stab(C);
    d.mu = m->mu();
    d.m = d.mu - d.stab_basis.dim();

    std::size_t hom = hom_dim_from_p(C) - hom_dim_from_p_mod_c(C);
    if (hom != d.m)
        throw FormulaMismatch("mu - dim Stab = " + std::to_string(d.m) +
                              " but the Hom formula gives " + std::to_string(hom));

    // greedy complement selection
    VarOrderPtr vars = d.stab_basis.mat.vars();
    Matrix span = d.stab_basis.mat;
    std::vector<std::size_t> piv = span.rref();
    for (std::size_t t = 0; t < d.mu && d.omega.size() < d.m; ++t) {
        std::vector<ExactScalar> unit(d.mu, ExactScalar(vars));
        unit[t] = ExactScalar(vars, Rational(1));
        if (Matrix::is_zero_row(span.residual(unit, piv))) continue;
        d.omega.push_back(m->cycles()[t]);
        span.push_row(std::move(unit));
        piv = span.rref();
    }
    return d;
}

// Psi(t) = C.(e + sum t_i omega_i): the Lemma 2.1 chart of the orbit.
inline GrassPoint psi(const OrbitDescriptor& d, const std::vector<ExactScalar>& t) {
    if (t.size() != d.m) throw DimensionMismatch("psi: wrong number of coordinates");
    const ModulePtr& m = d.rep.space.module;
    const AlgebraPtr& A = m->algebra();
    VarOrderPtr vars = t.empty() ? d.rep.space.mat.vars() : t.front().vars();
    AlgebraElement u = AlgebraElement::identity(A, vars);
    for (std::size_t i = 0; i < t.size(); ++i) u.coeff(d.omega[i]) = t[i];
    Subspace s = right_multiply(d.rep.space, u);
    return GrassPoint{std::move(s)};
}

// Decides whether C1 and C2 lie in one Aut_Lambda(P)-orbit: solve the linear
// system { u in k.e + eJe : C1.u inside C2 } and test for a solution with a
// nonzero e-coefficient (such u are units since eJe is nilpotent).
inline bool same_orbit(const GrassPoint& c1, const GrassPoint& c2) {
    if (c1.space.module != c2.space.module && c1.space.module->algebra() != c2.space.module->algebra())
        throw DimensionMismatch("same_orbit: different modules");
    if (c1.dim_sub() != c2.dim_sub())
        throw DimensionMismatch("same_orbit: different subspace dimensions");
    const ModulePtr& m = c1.space.module;
    const AlgebraPtr& A = m->algebra();
    VarOrderPtr vars = c1.space.mat.vars();
    Matrix c2m = c2.space.mat.vars() == vars ? c2.space.mat : c2.space.mat.converted(vars);
    Subspace target{m, c2m, {}};
    target.pivots = target.mat.rref(); // already RREF; recompute pivots

    std::size_t mu = m->mu();
    // unknowns: u0 (e-coefficient), then mu cycle coefficients
    Matrix system(0, mu + 1, vars);
    for (std::size_t i = 0; i < c1.space.mat.rows(); ++i) {
        std::vector<std::vector<ExactScalar>> images;
        {
            // e-component: the row itself
            std::vector<ExactScalar> img(m->dim_radical(), ExactScalar(vars));
            for (std::size_t j = 0; j < m->dim_radical(); ++j) img[j] = c1.space.mat.at(i, j);
            images.push_back(target.mat.residual(img, target.pivots));
        }
        for (std::size_t t = 0; t < mu; ++t) {
            std::vector<ExactScalar> img(m->dim_radical(), ExactScalar(vars));
            for (std::size_t j = 0; j < m->dim_radical(); ++j) {
                const ExactScalar& cj = c1.space.mat.at(i, j);
                if (cj.is_zero()) continue;
                for (const auto& [k, f] : A->table(m->radical_classes()[j], m->cycles()[t]))
                    img[m->radical_col(k)] += cj * f;
            }
            images.push_back(target.mat.residual(img, target.pivots));
        }
        for (std::size_t col = 0; col < m->dim_radical(); ++col) {
            std::vector<ExactScalar> cond(mu + 1, ExactScalar(vars));
            bool nonzero = false;
            for (std::size_t t = 0; t < images.size(); ++t) {
                cond[t] = images[t][col];
                if (!cond[t].is_zero()) nonzero = true;
            }
            if (nonzero) system.push_row(std::move(cond));
        }
    }
    Matrix null = system.nullspace();
    for (std::size_t i = 0; i < null.rows(); ++i)
        if (!null.at(i, 0).is_zero()) return true;
    return false;
}

} // namespace qorbit
