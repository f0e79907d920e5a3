#pragma once
#include <map>
#include <memory>

#include "matrix.hpp"
#include "quiver.hpp"

namespace qorbit {

// Finite-dimensional quotient Lambda = kQ/I of a path algebra by a
// length-homogeneous admissible ideal, with a basis of residue classes of
// paths and an exact multiplication table.
//
// Basis classes are the non-pivot paths of a degree-by-degree row reduction
// of the relation translates, ordered by (length, declaration-lex). Normal
// forms of all other paths are stored alongside.
class Algebra {
public:
    using SparseVec = std::vector<std::pair<int, Rational>>; // basis index -> coeff

    static std::shared_ptr<const Algebra> build(Quiver quiver, std::vector<Relation> relations,
                                                int length_cap = 32);

    const Quiver& quiver() const { return quiver_; }
    const std::vector<Relation>& relations() const { return relations_; }
    std::size_t dim() const { return basis_.size(); }
    int nilpotency_index() const { return nilpotency_; }

    const Path& basis_path(int i) const { return basis_[static_cast<std::size_t>(i)]; }
    int basis_index(const Path& p) const {
        auto it = basis_lookup_.find(p);
        return it == basis_lookup_.end() ? -1 : it->second;
    }
    int idempotent_index(int vertex) const { return vertex_class_[static_cast<std::size_t>(vertex)]; }

    int source_of(int i) const { return basis_[static_cast<std::size_t>(i)].source(quiver_); }
    int target_of(int i) const { return basis_[static_cast<std::size_t>(i)].target(quiver_); }
    std::size_t length_of(int i) const { return basis_[static_cast<std::size_t>(i)].length(); }

    // Normal form of an arbitrary path of the quiver (zero when it dies in
    // the quotient).
    SparseVec normal_form(const Path& p) const {
        if (static_cast<int>(p.length()) >= nilpotency_) return {};
        auto it = normal_forms_.find(p);
        if (it == normal_forms_.end()) return {};
        return it->second;
    }

    // Product of two basis classes as a sparse combination of basis classes.
    const SparseVec& table(int i, int j) const {
        return table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    // Basis classes of length >= 1 with source = target = e, in
    // (length, declaration) order: a basis of eJe.
    std::vector<int> cycle_basis_at(int vertex) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].length() >= 1 && source_of(static_cast<int>(i)) == vertex &&
                target_of(static_cast<int>(i)) == vertex)
                out.push_back(static_cast<int>(i));
        return out;
    }

    std::string basis_str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (i) out += ", ";
            out += basis_[i].str(quiver_);
        }
        return out + "}";
    }

private:
    Algebra(Quiver q, std::vector<Relation> rel) : quiver_(std::move(q)), relations_(std::move(rel)) {}

    Quiver quiver_;
    std::vector<Relation> relations_;
    std::vector<Path> basis_;
    std::map<Path, int> basis_lookup_;
    std::map<Path, SparseVec> normal_forms_;
    std::vector<int> vertex_class_;
    std::vector<std::vector<SparseVec>> table_;
    std::vector<std::vector<std::pair<Path, Rational>>> ideal_rows_cache_; // build-time only
    int nilpotency_ = 0;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

// Element of Lambda with ExactScalar coefficients over the algebra basis.
class AlgebraElement {
public:
    AlgebraElement(AlgebraPtr algebra, VarOrderPtr vars)
        : algebra_(std::move(algebra)),
          coeffs_(algebra_->dim(), ExactScalar(vars)), vars_(std::move(vars)) {}

    static AlgebraElement basis_element(const AlgebraPtr& a, int i,
                                        VarOrderPtr vars = VarOrder::rationals()) {
        AlgebraElement e(a, vars);
        e.coeffs_[static_cast<std::size_t>(i)] = ExactScalar(vars, Rational(1));
        return e;
    }

    static AlgebraElement identity(const AlgebraPtr& a, VarOrderPtr vars = VarOrder::rationals()) {
        AlgebraElement e(a, vars);
        for (std::size_t v = 0; v < a->quiver().num_vertices(); ++v)
            e.coeffs_[static_cast<std::size_t>(a->idempotent_index(static_cast<int>(v)))] =
                ExactScalar(vars, Rational(1));
        return e;
    }

    const AlgebraPtr& algebra() const { return algebra_; }
    const VarOrderPtr& vars() const { return vars_; }
    const std::vector<ExactScalar>& coeffs() const { return coeffs_; }
    ExactScalar& coeff(int i) { return coeffs_[static_cast<std::size_t>(i)]; }
    const ExactScalar& coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

    AlgebraElement operator+(const AlgebraElement& o) const {
        AlgebraElement r = *this;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
        return r;
    }

    AlgebraElement scaled(const ExactScalar& c) const {
        AlgebraElement r = *this;
        for (auto& x : r.coeffs_) x *= c;
        return r;
    }

    // Bilinear extension of the table; q.p is zero unless source(q)=target(p).
    AlgebraElement operator*(const AlgebraElement& o) const {
        AlgebraElement r(algebra_, vars_);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
                if (o.coeffs_[j].is_zero()) continue;
                for (const auto& [k, c] :
                     algebra_->table(static_cast<int>(i), static_cast<int>(j)))
                    r.coeffs_[static_cast<std::size_t>(k)] += c * (coeffs_[i] * o.coeffs_[j]);
            }
        }
        return r;
    }

    bool operator==(const AlgebraElement& o) const { return coeffs_ == o.coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            if (!coeffs_[i].is_one()) {
                std::string cs = coeffs_[i].str();
                if (cs.find_first_of("+-") != std::string::npos && cs.rfind("-", 0) != 0)
                    cs = "(" + cs + ")";
                out += cs + "*";
            }
            out += algebra_->basis_path(static_cast<int>(i)).str(algebra_->quiver());
        }
        return out.empty() ? "0" : out;
    }

private:
    AlgebraPtr algebra_;
    std::vector<ExactScalar> coeffs_;
    VarOrderPtr vars_;
};

inline std::shared_ptr<const Algebra> Algebra::build(Quiver quiver, std::vector<Relation> relations,
                                                     int length_cap) {
    for (const auto& r : relations) r.validate(quiver);
    std::shared_ptr<Algebra> A(new Algebra(std::move(quiver), std::move(relations)));
    const Quiver& Q = A->quiver_;

    // raw paths per length, sorted; index maps for coordinates
    std::vector<std::vector<Path>> raw(1);
    for (std::size_t v = 0; v < Q.num_vertices(); ++v) {
        Path e;
        e.vertex = static_cast<int>(v);
        raw[0].push_back(e);
    }
    A->vertex_class_.assign(Q.num_vertices(), -1);

    // length 0: the idempotents, always basis classes
    for (const Path& p : raw[0]) {
        A->vertex_class_[static_cast<std::size_t>(p.vertex)] = static_cast<int>(A->basis_.size());
        A->basis_lookup_[p] = static_cast<int>(A->basis_.size());
        A->basis_.push_back(p);
        A->normal_forms_[p] = {{A->basis_lookup_[p], Rational(1)}};
    }

    constexpr std::size_t kRawPathBudget = 200000;
    std::size_t raw_total = raw[0].size();

    int found_n = -1;

    for (int len = 1; len <= length_cap; ++len) {
        // extend raw paths
        std::vector<Path> cur;
        for (const Path& p : raw.back()) {
            int tgt = p.target(Q);
            for (std::size_t ai = 0; ai < Q.num_arrows(); ++ai) {
                if (Q.arrow(static_cast<int>(ai)).source != tgt) continue;
                Path np;
                np.vertex = p.source(Q);
                np.word.push_back(static_cast<int>(ai));
                np.word.insert(np.word.end(), p.word.begin(), p.word.end());
                cur.push_back(np);
            }
        }
        std::sort(cur.begin(), cur.end());
        raw.push_back(cur);
        raw_total += cur.size();
        if (raw_total > kRawPathBudget)
            throw NotAdmissible("path space exceeds budget; J is not nilpotent within the cap");
        if (cur.empty()) {
            found_n = len;
            break;
        }

        // ideal piece at this length: relation generators of this length plus
        // arrow * (previous ideal rows) and (previous ideal rows) * arrow,
        // reduced per (source, target) block
        std::map<Path, int> index;
        for (std::size_t i = 0; i < cur.size(); ++i) index[cur[i]] = static_cast<int>(i);

        std::vector<std::vector<Rational>> ideal_rows;
        auto add_row = [&](const std::map<Path, Rational>& combo) {
            std::vector<Rational> row(cur.size(), Rational(0));
            bool nonzero = false;
            for (const auto& [p, c] : combo) {
                row[static_cast<std::size_t>(index.at(p))] = c;
                if (c != 0) nonzero = true;
            }
            if (nonzero) ideal_rows.push_back(std::move(row));
        };

        for (const auto& rel : A->relations_) {
            if (static_cast<int>(rel.terms.front().second.length()) != len) continue;
            std::map<Path, Rational> combo;
            for (const auto& [c, p] : rel.terms) combo[p] += c;
            add_row(combo);
        }
        if (len >= 3) {
            for (const auto& prev_row : A->ideal_rows_cache_) {
                // prev_row: sparse combo over raw[len-1]
                // left multiply by arrows
                for (std::size_t ai = 0; ai < Q.num_arrows(); ++ai) {
                    std::map<Path, Rational> combo;
                    for (const auto& [p, c] : prev_row) {
                        if (Q.arrow(static_cast<int>(ai)).source != p.target(Q)) continue;
                        Path np;
                        np.vertex = p.source(Q);
                        np.word.push_back(static_cast<int>(ai));
                        np.word.insert(np.word.end(), p.word.begin(), p.word.end());
                        combo[np] += c;
                    }
                    if (!combo.empty()) add_row(combo);
                }
                // right multiply by arrows
                for (std::size_t ai = 0; ai < Q.num_arrows(); ++ai) {
                    std::map<Path, Rational> combo;
                    for (const auto& [p, c] : prev_row) {
                        if (Q.arrow(static_cast<int>(ai)).target != p.source(Q)) continue;
                        Path np;
                        np.vertex = Q.arrow(static_cast<int>(ai)).source;
                        np.word = p.word;
                        np.word.push_back(static_cast<int>(ai));
                        combo[np] += c;
                    }
                    if (!combo.empty()) add_row(combo);
                }
            }
        }

        // row reduce over the raw path coordinates (global path order already
        // groups (source,target) blocks consistently; rows never mix blocks)
        std::vector<std::vector<Rational>> rref;
        std::vector<int> pivot_col;
        for (auto row : ideal_rows) {
            for (std::size_t r = 0; r < rref.size(); ++r) {
                std::size_t pc = static_cast<std::size_t>(pivot_col[r]);
                if (row[pc] == 0) continue;
                Rational f = row[pc];
                for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * rref[r][j];
            }
            std::size_t pc = row.size();
            for (std::size_t j = 0; j < row.size(); ++j)
                if (row[j] != 0) {
                    pc = j;
                    break;
                }
            if (pc == row.size()) continue;
            Rational inv = Rational(1) / row[pc];
            for (std::size_t j = 0; j < row.size(); ++j) row[j] *= inv;
            // back-substitute into existing rows
            for (std::size_t r = 0; r < rref.size(); ++r) {
                if (rref[r][pc] == 0) continue;
                Rational f = rref[r][pc];
                for (std::size_t j = 0; j < row.size(); ++j) rref[r][j] -= f * row[j];
            }
            rref.push_back(row);
            pivot_col.push_back(static_cast<int>(pc));
        }

        // survivors: non-pivot paths become basis classes
        std::vector<bool> is_pivot(cur.size(), false);
        for (int pc : pivot_col) is_pivot[static_cast<std::size_t>(pc)] = true;
        std::vector<Path> alive;
        for (std::size_t j = 0; j < cur.size(); ++j) {
            if (is_pivot[j]) continue;
            alive.push_back(cur[j]);
            A->basis_lookup_[cur[j]] = static_cast<int>(A->basis_.size());
            A->basis_.push_back(cur[j]);
        }

        // normal forms at this length
        std::map<Path, SparseVec> nf;
        for (const Path& p : alive) nf[p] = {{A->basis_lookup_[p], Rational(1)}};
        for (std::size_t r = 0; r < rref.size(); ++r) {
            const Path& piv = cur[static_cast<std::size_t>(pivot_col[r])];
            SparseVec v;
            for (std::size_t j = 0; j < cur.size(); ++j) {
                if (static_cast<int>(j) == pivot_col[r] || rref[r][j] == 0) continue;
                v.push_back({A->basis_lookup_.at(cur[j]), -rref[r][j]});
            }
            nf[piv] = std::move(v);
        }
        for (auto& [p, v] : nf) A->normal_forms_[p] = std::move(v);

        // cache sparse ideal rows for the next length
        A->ideal_rows_cache_.clear();
        for (std::size_t r = 0; r < rref.size(); ++r) {
            std::vector<std::pair<Path, Rational>> sparse;
            for (std::size_t j = 0; j < cur.size(); ++j)
                if (rref[r][j] != 0) sparse.push_back({cur[j], rref[r][j]});
            A->ideal_rows_cache_.push_back(std::move(sparse));
        }

        if (alive.empty()) {
            found_n = len;
            break;
        }
    }

    if (found_n < 0)
        throw NotAdmissible("nonzero classes persist at length cap; J is not nilpotent within " +
                            std::to_string(length_cap));
    A->nilpotency_ = found_n;
    A->ideal_rows_cache_.clear();

    // multiplication table
    std::size_t n = A->basis_.size();
    A->table_.assign(n, std::vector<SparseVec>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Path& pi = A->basis_[i];
            const Path& pj = A->basis_[j];
            if (pi.source(Q) != pj.target(Q)) continue; // non-composable
            Path prod = Path::compose(Q, pi, pj);
            A->table_[i][j] = A->normal_form(prod);
        }
    }
    return A;
}

} // namespace qorbit
