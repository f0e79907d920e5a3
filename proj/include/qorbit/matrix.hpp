#pragma once
#include <functional>

#include "scalar.hpp"

namespace qorbit {

// Dense matrix over ExactScalar. All rows share one variable order.
class Matrix {
public:
    Matrix() : vars_(VarOrder::rationals()), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, VarOrderPtr vars = VarOrder::rationals())
        : vars_(std::move(vars)), cols_(cols),
          data_(rows, std::vector<ExactScalar>(cols, ExactScalar(vars_))) {}

    static Matrix identity(std::size_t n, VarOrderPtr vars = VarOrder::rationals()) {
        Matrix m(n, n, vars);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ExactScalar(m.vars_, Rational(1));
        return m;
    }

    std::size_t rows() const { return data_.size(); }
    std::size_t cols() const { return cols_; }
    const VarOrderPtr& vars() const { return vars_; }

    ExactScalar& at(std::size_t i, std::size_t j) { return data_[i][j]; }
    const ExactScalar& at(std::size_t i, std::size_t j) const { return data_[i][j]; }
    std::vector<ExactScalar>& row(std::size_t i) { return data_[i]; }
    const std::vector<ExactScalar>& row(std::size_t i) const { return data_[i]; }

    void push_row(std::vector<ExactScalar> r) {
        if (r.size() != cols_) throw DimensionMismatch("push_row: width mismatch");
        data_.push_back(std::move(r));
    }

    bool operator==(const Matrix& o) const {
        if (rows() != o.rows() || cols() != o.cols()) return false;
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != o.at(i, j)) return false;
        return true;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix multiply(const Matrix& o) const {
        if (cols_ != o.rows()) throw DimensionMismatch("multiply: shape mismatch");
        Matrix r(rows(), o.cols(), vars_);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < o.cols(); ++j) {
                    if (o.at(k, j).is_zero()) continue;
                    r.at(i, j) += at(i, k) * o.at(k, j);
                }
            }
        return r;
    }

    // In-place reduction to reduced row echelon form. Pivot = first row with a
    // nonzero entry in the leftmost unresolved column. Zero rows are dropped.
    // The optional collector receives every pivot scalar before scaling;
    // callers use it to harvest degeneration loci of parameterized matrices.
    std::vector<std::size_t> rref(const std::function<void(const ExactScalar&)>& collector = {}) {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows(); ++c) {
            std::size_t sel = rows();
            for (std::size_t i = r; i < rows(); ++i) {
                if (!at(i, c).is_zero()) {
                    sel = i;
                    break;
                }
            }
            if (sel == rows()) continue;
            std::swap(data_[r], data_[sel]);
            if (collector) collector(at(r, c));
            ExactScalar inv = ExactScalar(vars_, Rational(1)) / at(r, c);
            for (std::size_t j = c; j < cols_; ++j) at(r, j) *= inv;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (i == r || at(i, c).is_zero()) continue;
                ExactScalar f = at(i, c);
                for (std::size_t j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        data_.resize(r, std::vector<ExactScalar>(cols_, ExactScalar(vars_)));
        return pivots;
    }

    std::size_t rank() const {
        Matrix m = *this;
        return m.rref().size();
    }

    // Reduce an external row against this matrix (assumed RREF with `pivots`).
    std::vector<ExactScalar> residual(std::vector<ExactScalar> v,
                                      const std::vector<std::size_t>& pivots) const {
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            const ExactScalar& f = v[pivots[i]];
            if (f.is_zero()) continue;
            ExactScalar c = f;
            for (std::size_t j = 0; j < cols_; ++j) v[j] -= c * at(i, j);
        }
        return v;
    }

    static bool is_zero_row(const std::vector<ExactScalar>& v) {
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }

    // Basis of the right nullspace {x : M x = 0}, one column vector per row
    // of the result, in ascending free-column order.
    Matrix nullspace() const {
        Matrix m = *this;
        std::vector<std::size_t> pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t c : pivots) is_pivot[c] = true;
        Matrix basis(0, cols_, vars_);
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<ExactScalar> v(cols_, ExactScalar(vars_));
            v[f] = ExactScalar(vars_, Rational(1));
            for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m.at(i, f);
            basis.push_row(std::move(v));
        }
        return basis;
    }

    Matrix specialized(const std::string& var, const Rational& value) const {
        VarOrderPtr nv;
        Matrix r(0, cols_);
        bool first = true;
        for (std::size_t i = 0; i < rows(); ++i) {
            std::vector<ExactScalar> row;
            row.reserve(cols_);
            for (std::size_t j = 0; j < cols_; ++j) row.push_back(at(i, j).specialize(var, value));
            if (first && !row.empty()) {
                nv = row[0].vars();
                r = Matrix(0, cols_, nv);
                first = false;
            }
            r.push_row(std::move(row));
        }
        if (first) {
            int idx = vars_->index_of(var);
            r = Matrix(0, cols_, idx >= 0 ? vars_->without(static_cast<std::size_t>(idx)) : vars_);
        }
        return r;
    }

    Matrix converted(const VarOrderPtr& nv) const {
        Matrix r(rows(), cols_, nv);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).convert(nv);
        return r;
    }

    ExactScalar det() const {
        if (rows() != cols_) throw DimensionMismatch("det: not square");
        Matrix m = *this;
        ExactScalar acc(vars_, Rational(1));
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t sel = rows();
            for (std::size_t i = c; i < rows(); ++i)
                if (!m.at(i, c).is_zero()) {
                    sel = i;
                    break;
                }
            if (sel == rows()) return ExactScalar(vars_);
            if (sel != c) {
                std::swap(m.data_[sel], m.data_[c]);
                acc = -acc;
            }
            acc *= m.at(c, c);
            ExactScalar inv = ExactScalar(vars_, Rational(1)) / m.at(c, c);
            for (std::size_t i = c + 1; i < rows(); ++i) {
                if (m.at(i, c).is_zero()) continue;
                ExactScalar f = m.at(i, c) * inv;
                for (std::size_t j = c; j < cols_; ++j) m.at(i, j) -= f * m.at(c, j);
            }
        }
        return acc;
    }

    Matrix submatrix_cols(const std::vector<std::size_t>& cols) const {
        Matrix r(rows(), cols.size(), vars_);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) r.at(i, j) = at(i, cols[j]);
        return r;
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < rows(); ++i) {
            out += "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) out += ", ";
                out += at(i, j).str();
            }
            out += "]";
            if (i + 1 < rows()) out += "\n";
        }
        return out;
    }

    // Deterministic total order for canonical-representative selection.
    bool lex_less(const Matrix& o) const {
        if (rows() != o.rows()) return rows() < o.rows();
        if (cols_ != o.cols_) return cols_ < o.cols_;
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                if (at(i, j) != o.at(i, j)) return at(i, j).less_than(o.at(i, j));
            }
        return false;
    }

private:
    VarOrderPtr vars_;
    std::size_t cols_;
    std::vector<std::vector<ExactScalar>> data_;
};

} // namespace qorbit
