#pragma once
#include "algebra.hpp"

namespace qorbit {

// The projective cover P = Lambda e of the simple at vertex e: all algebra
// basis classes with source e, in algebra order. Column coordinates for
// submodules use the radical part (length >= 1), i.e. the basis of JP.
class ProjectiveModule {
public:
    ProjectiveModule(AlgebraPtr algebra, int top_vertex)
        : algebra_(std::move(algebra)), top_vertex_(top_vertex) {
        const Quiver& q = algebra_->quiver();
        for (std::size_t i = 0; i < algebra_->dim(); ++i) {
            if (algebra_->source_of(static_cast<int>(i)) != top_vertex) continue;
            if (algebra_->length_of(static_cast<int>(i)) == 0)
                top_class_ = static_cast<int>(i);
            else
                radical_classes_.push_back(static_cast<int>(i));
        }
        (void)q;
        cycles_ = algebra_->cycle_basis_at(top_vertex);
        // positions of cycles inside the radical coordinate system
        for (int c : cycles_) cycle_cols_.push_back(radical_col(c));
    }

    const AlgebraPtr& algebra() const { return algebra_; }
    int top_vertex() const { return top_vertex_; }
    int top_class() const { return top_class_; }

    std::size_t dim_p() const { return radical_classes_.size() + 1; }
    std::size_t dim_radical() const { return radical_classes_.size(); }
    const std::vector<int>& radical_classes() const { return radical_classes_; }

    // cycles at the top vertex: basis of eJe, with their radical columns
    const std::vector<int>& cycles() const { return cycles_; }
    const std::vector<std::size_t>& cycle_cols() const { return cycle_cols_; }
    std::size_t mu() const { return cycles_.size(); }

    std::size_t radical_col(int algebra_class) const {
        for (std::size_t i = 0; i < radical_classes_.size(); ++i)
            if (radical_classes_[i] == algebra_class) return i;
        throw DimensionMismatch("class is not in the radical of P");
    }

    std::string radical_basis_str() const {
        std::string out;
        for (std::size_t i = 0; i < radical_classes_.size(); ++i) {
            if (i) out += ", ";
            out += algebra_->basis_path(radical_classes_[i]).str(algebra_->quiver());
        }
        return out;
    }

    // Row vector over the radical basis as a readable combination of paths.
    std::string row_str(const std::vector<ExactScalar>& row) const {
        std::string out;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j].is_zero()) continue;
            std::string cs = row[j].str();
            bool neg = cs.rfind("-", 0) == 0;
            if (neg) cs = cs.substr(1);
            out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            if (cs != "1") {
                int depth = 0;
                bool needs_paren = false;
                for (char ch : cs) {
                    if (ch == '(') ++depth;
                    else if (ch == ')') --depth;
                    else if ((ch == '+' || ch == '-') && depth == 0) needs_paren = true;
                }
                if (needs_paren) cs = "(" + cs + ")";
                out += cs + "*";
            }
            out += algebra_->basis_path(radical_classes_[j]).str(algebra_->quiver());
        }
        return out.empty() ? "0" : out;
    }

private:
    AlgebraPtr algebra_;
    int top_vertex_;
    int top_class_ = -1;
    std::vector<int> radical_classes_;
    std::vector<int> cycles_;
    std::vector<std::size_t> cycle_cols_;
};

using ModulePtr = std::shared_ptr<const ProjectiveModule>;

inline ModulePtr projective_cover(const AlgebraPtr& a, int vertex) {
    return std::make_shared<const ProjectiveModule>(a, vertex);
}

// Subspace of JP in reduced row echelon form over the radical basis of P.
struct Subspace {
    ModulePtr module;
    Matrix mat;                       // RREF rows over radical coordinates
    std::vector<std::size_t> pivots;

    std::size_t dim() const { return mat.rows(); }

    bool operator==(const Subspace& o) const { return mat == o.mat; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    bool contains(const std::vector<ExactScalar>& v) const {
        return Matrix::is_zero_row(mat.residual(v, pivots));
    }

    std::string str() const {
        std::string out = "[";
        for (std::size_t i = 0; i < mat.rows(); ++i) {
            if (i) out += ", ";
            out += module->row_str(mat.row(i));
        }
        return out + "]";
    }
};

inline Subspace make_subspace(const ModulePtr& m, Matrix rows) {
    Subspace s;
    s.module = m;
    s.mat = std::move(rows);
    s.pivots = s.mat.rref();
    return s;
}

// Left-multiplication matrix of one arrow on radical coordinates (radical is
// closed under the left action since lengths only grow).
inline Matrix arrow_action(const ModulePtr& m, int arrow_idx, const VarOrderPtr& vars) {
    const AlgebraPtr& A = m->algebra();
    const Quiver& q = A->quiver();
    Matrix act(m->dim_radical(), m->dim_radical(), vars);
    for (std::size_t j = 0; j < m->dim_radical(); ++j) {
        int cls = m->radical_classes()[j];
        if (q.arrow(arrow_idx).source != A->target_of(cls)) continue;
        Path ap;
        ap.word = {arrow_idx};
        ap.vertex = q.arrow(arrow_idx).source;
        Path prod = Path::compose(q, ap, A->basis_path(cls));
        for (const auto& [k, c] : A->normal_form(prod))
            act.at(j, m->radical_col(k)) = ExactScalar(vars, c);
    }
    return act; // row j = image of basis vector j
}

// Smallest arrow-stable subspace containing the generators (rows over the
// radical basis), i.e. the Lambda-submodule they generate.
inline Subspace lambda_closure(const ModulePtr& m, const Matrix& generators) {
    const AlgebraPtr& A = m->algebra();
    const Quiver& q = A->quiver();
    VarOrderPtr vars = generators.vars();
    std::vector<Matrix> acts;
    for (std::size_t ai = 0; ai < q.num_arrows(); ++ai)
        acts.push_back(arrow_action(m, static_cast<int>(ai), vars));

    Matrix cur = generators;
    std::size_t dim = 0;
    for (;;) {
        Matrix next = cur;
        std::vector<std::size_t> piv = next.rref();
        if (next.rows() == dim) {
            Subspace s;
            s.module = m;
            s.mat = std::move(next);
            s.pivots = std::move(piv);
            return s;
        }
        dim = next.rows();
        cur = next;
        for (const Matrix& act : acts)
            for (std::size_t i = 0; i < next.rows(); ++i) {
                std::vector<ExactScalar> img(m->dim_radical(), ExactScalar(vars));
                bool nonzero = false;
                for (std::size_t j = 0; j < m->dim_radical(); ++j) {
                    if (next.at(i, j).is_zero()) continue;
                    for (std::size_t k = 0; k < m->dim_radical(); ++k) {
                        if (act.at(j, k).is_zero()) continue;
                        img[k] += next.at(i, j) * act.at(j, k);
                        nonzero = true;
                    }
                }
                if (nonzero) cur.push_row(std::move(img));
            }
    }
}

inline bool is_lambda_stable(const Subspace& s) {
    const AlgebraPtr& A = s.module->algebra();
    VarOrderPtr vars = s.mat.vars();
    for (std::size_t ai = 0; ai < A->quiver().num_arrows(); ++ai) {
        Matrix act = arrow_action(s.module, static_cast<int>(ai), vars);
        for (std::size_t i = 0; i < s.mat.rows(); ++i) {
            std::vector<ExactScalar> img(s.module->dim_radical(), ExactScalar(vars));
            for (std::size_t j = 0; j < s.module->dim_radical(); ++j) {
                if (s.mat.at(i, j).is_zero()) continue;
                for (std::size_t k = 0; k < s.module->dim_radical(); ++k)
                    if (!act.at(j, k).is_zero()) img[k] += s.mat.at(i, j) * act.at(j, k);
            }
            if (!s.contains(img)) return false;
        }
    }
    return true;
}

// A Lambda-stable subspace C of JP, a point of Grass^T_d with d = dim P - dim C.
struct GrassPoint {
    Subspace space;

    std::size_t dim_sub() const { return space.dim(); }                  // d'
    std::size_t codim() const { return space.module->dim_p() - dim_sub(); } // d

    bool operator==(const GrassPoint& o) const { return space == o.space; }
    bool operator!=(const GrassPoint& o) const { return !(*this == o); }
    std::string str() const { return space.str(); }
};

inline GrassPoint make_grass_point(Subspace s) {
    if (!is_lambda_stable(s)) throw LimitNotStable("subspace is not a Lambda-submodule");
    return GrassPoint{std::move(s)};
}

// Right multiplication of a subspace of JP by u in e + eJe (or any element of
// eLambdae): row-wise c -> c.u, then RREF.
inline Subspace right_multiply(const Subspace& c, const AlgebraElement& u) {
    const ModulePtr& m = c.module;
    const AlgebraPtr& A = m->algebra();
    VarOrderPtr vars = u.vars();
    Matrix out(0, m->dim_radical(), vars);
    for (std::size_t i = 0; i < c.mat.rows(); ++i) {
        std::vector<ExactScalar> img(m->dim_radical(), ExactScalar(vars));
        for (std::size_t j = 0; j < m->dim_radical(); ++j) {
            const ExactScalar& cj = c.mat.at(i, j);
            if (cj.is_zero()) continue;
            ExactScalar cc = cj.vars() == vars ? cj : cj.convert(vars);
            int cls = m->radical_classes()[j];
            for (std::size_t t = 0; t < u.coeffs().size(); ++t) {
                if (u.coeff(static_cast<int>(t)).is_zero()) continue;
                for (const auto& [k, f] : A->table(cls, static_cast<int>(t)))
                    img[m->radical_col(k)] += cc * u.coeff(static_cast<int>(t)) * f;
            }
        }
        out.push_row(std::move(img));
    }
    return make_subspace(m, std::move(out));
}

// Stab_{eJe}(C): the cycles a with C.a inside C, as RREF rows over the cycle
// basis of eJe.
struct CycleSubspace {
    ModulePtr module;
    Matrix mat; // rows over the cycle basis coordinates
    std::size_t dim() const { return mat.rows(); }
};

inline CycleSubspace stab(const GrassPoint& C) {
    const ModulePtr& m = C.space.module;
    const AlgebraPtr& A = m->algebra();
    VarOrderPtr vars = C.space.mat.vars();
    std::size_t mu = m->mu();
    // unknowns: coefficients of a over the cycle basis; conditions: for each
    // row c of C, residual of c.a modulo C vanishes coordinate-wise
    Matrix system(0, mu, vars);
    for (std::size_t i = 0; i < C.space.mat.rows(); ++i) {
        // image vectors per cycle
        std::vector<std::vector<ExactScalar>> per_cycle;
        for (std::size_t t = 0; t < mu; ++t) {
            std::vector<ExactScalar> img(m->dim_radical(), ExactScalar(vars));
            int cyc = m->cycles()[t];
            for (std::size_t j = 0; j < m->dim_radical(); ++j) {
                const ExactScalar& cj = C.space.mat.at(i, j);
                if (cj.is_zero()) continue;
                for (const auto& [k, f] : A->table(m->radical_classes()[j], cyc))
                    img[m->radical_col(k)] += cj * f;
            }
            per_cycle.push_back(C.space.mat.residual(img, C.space.pivots));
        }
        for (std::size_t col = 0; col < m->dim_radical(); ++col) {
            std::vector<ExactScalar> cond(mu, ExactScalar(vars));
            bool nonzero = false;
            for (std::size_t t = 0; t < mu; ++t) {
                cond[t] = per_cycle[t][col];
                if (!cond[t].is_zero()) nonzero = true;
            }
            if (nonzero) system.push_row(std::move(cond));
        }
    }
    Matrix null = system.nullspace();
    null.rref();
    return CycleSubspace{m, std::move(null)};
}

// dim Hom(P, JP/C) = dim e(JP/C)
inline std::size_t hom_dim_from_p(const GrassPoint& C) {
    const ModulePtr& m = C.space.module;
    VarOrderPtr vars = C.space.mat.vars();
    Matrix stacked = C.space.mat;
    for (std::size_t t = 0; t < m->mu(); ++t) {
        std::vector<ExactScalar> unit(m->dim_radical(), ExactScalar(vars));
        unit[m->cycle_cols()[t]] = ExactScalar(vars, Rational(1));
        stacked.push_row(std::move(unit));
    }
    return stacked.rank() - C.space.dim();
}

// dim Hom(P/C, JP/C) = dim { x in e(JP/C) : C.x = 0 in JP/C }
inline std::size_t hom_dim_from_p_mod_c(const GrassPoint& C) {
    const ModulePtr& m = C.space.module;
    const AlgebraPtr& A = m->algebra();
    VarOrderPtr vars = C.space.mat.vars();
    std::size_t mu = m->mu();

    Matrix system(0, mu, vars);
    for (std::size_t i = 0; i < C.space.mat.rows(); ++i) {
        std::vector<std::vector<ExactScalar>> per_cycle;
        for (std::size_t t = 0; t < mu; ++t) {
            std::vector<ExactScalar> img(m->dim_radical(), ExactScalar(vars));
            int cyc = m->cycles()[t];
            for (std::size_t j = 0; j < m->dim_radical(); ++j) {
                const ExactScalar& cj = C.space.mat.at(i, j);
                if (cj.is_zero()) continue;
                // row i of C acting on the cycle, as an element of Lambda e
                for (const auto& [k, f] : A->table(m->radical_classes()[j], cyc))
                    img[m->radical_col(k)] += cj * f;
            }
            per_cycle.push_back(C.space.mat.residual(img, C.space.pivots));
        }
        for (std::size_t col = 0; col < m->dim_radical(); ++col) {
            std::vector<ExactScalar> cond(mu, ExactScalar(vars));
            bool nonzero = false;
            for (std::size_t t = 0; t < mu; ++t) {
                cond[t] = per_cycle[t][col];
                if (!cond[t].is_zero()) nonzero = true;
            }
            if (nonzero) system.push_row(std::move(cond));
        }
    }
    std::size_t solutions = mu - system.rank();

    // subtract the solutions already inside C: dim(eJe intersect C)
    Matrix cycles_in_c(0, m->dim_radical(), vars);
    for (std::size_t t = 0; t < mu; ++t) {
        std::vector<ExactScalar> unit(m->dim_radical(), ExactScalar(vars));
        unit[m->cycle_cols()[t]] = ExactScalar(vars, Rational(1));
        cycles_in_c.push_row(std::move(unit));
    }
    Matrix stacked = C.space.mat;
    for (std::size_t i = 0; i < cycles_in_c.rows(); ++i) stacked.push_row(cycles_in_c.row(i));
    std::size_t inter = mu + C.space.dim() - stacked.rank(); // dim(eJe ∩ C)
    return solutions - inter;
}

} // namespace qorbit
