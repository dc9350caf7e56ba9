#ifndef GENFIELD_QMATRIX_HPP
#define GENFIELD_QMATRIX_HPP

#include <cassert>
#include <optional>
#include <utility>
#include <vector>

#include "genfield/errors.hpp"
#include "genfield/rational.hpp"

namespace genfield {

// Dense exact rational matrix.  Sizes here are tiny (d <= 16 mostly), so the
// implementation favors clarity: plain fraction arithmetic, no pivoting
// tricks beyond nonzero selection.
class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows, QVec(cols, Rat(0))) {}
    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.a_[i][i] = 1;
        return m;
    }
    static QMatrix from_rows(std::vector<QVec> rows) {
        QMatrix m;
        m.rows_ = rows.size();
        m.cols_ = rows.empty() ? 0 : rows.front().size();
        for (const auto& r : rows) assert(r.size() == m.cols_);
        m.a_ = std::move(rows);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i][j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i][j]; }
    const QVec& row(std::size_t i) const { return a_[i]; }
    const std::vector<QVec>& data() const { return a_; }

    bool operator==(const QMatrix& o) const { return a_ == o.a_; }

    QMatrix transpose() const {
        QMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.a_[j][i] = a_[i][j];
        return t;
    }

    friend QMatrix operator*(const QMatrix& x, const QMatrix& y) {
        assert(x.cols_ == y.rows_);
        QMatrix z(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x.a_[i][k] == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) z.a_[i][j] += x.a_[i][k] * y.a_[k][j];
            }
        return z;
    }

    friend QVec operator*(const QVec& v, const QMatrix& m) {
        assert(v.size() == m.rows_);
        QVec out(m.cols_, Rat(0));
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (v[i] == 0) continue;
            for (std::size_t j = 0; j < m.cols_; ++j) out[j] += v[i] * m.a_[i][j];
        }
        return out;
    }

    // Reduced row echelon form; returns the pivot columns (size = rank).
    std::vector<std::size_t> rref_with_pivots() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t lead = 0; r < rows_ && lead < cols_; ++lead) {
            std::size_t piv = r;
            while (piv < rows_ && a_[piv][lead] == 0) ++piv;
            if (piv == rows_) continue;
            std::swap(a_[piv], a_[r]);
            Rat inv = 1 / a_[r][lead];
            for (std::size_t j = lead; j < cols_; ++j) a_[r][j] *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || a_[i][lead] == 0) continue;
                Rat factor = a_[i][lead];
                for (std::size_t j = lead; j < cols_; ++j) a_[i][j] -= factor * a_[r][j];
            }
            pivots.push_back(lead);
            ++r;
        }
        return pivots;
    }

    std::size_t rref() { return rref_with_pivots().size(); }

    std::size_t rank() const {
        QMatrix c(*this);
        return c.rref();
    }

    Rat det() const {
        assert(rows_ == cols_);
        QMatrix c(*this);
        Rat d(1);
        for (std::size_t k = 0; k < rows_; ++k) {
            std::size_t piv = k;
            while (piv < rows_ && c.a_[piv][k] == 0) ++piv;
            if (piv == rows_) return Rat(0);
            if (piv != k) {
                std::swap(c.a_[piv], c.a_[k]);
                d = -d;
            }
            d *= c.a_[k][k];
            Rat inv = 1 / c.a_[k][k];
            for (std::size_t i = k + 1; i < rows_; ++i) {
                if (c.a_[i][k] == 0) continue;
                Rat factor = c.a_[i][k] * inv;
                for (std::size_t j = k; j < cols_; ++j) c.a_[i][j] -= factor * c.a_[k][j];
            }
        }
        return d;
    }

    std::optional<QMatrix> inverse() const {
        assert(rows_ == cols_);
        QMatrix aug(rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.a_[i][j] = a_[i][j];
            aug.a_[i][cols_ + i] = 1;
        }
        auto pivots = aug.rref_with_pivots();
        if (pivots.size() != rows_) return std::nullopt;
        for (auto p : pivots)
            if (p >= cols_) return std::nullopt; // pivot fell into the identity block
        QMatrix inv(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) inv.a_[i][j] = aug.a_[i][cols_ + j];
        return inv;
    }

    // Solve x * M = rhs for a row vector x; nullopt when rhs is outside the
    // row space.  Free variables are set to zero.
    std::optional<QVec> solve_left(const QVec& rhs) const {
        assert(rhs.size() == cols_);
        QMatrix aug(cols_, rows_ + 1);
        for (std::size_t i = 0; i < cols_; ++i) {
            for (std::size_t j = 0; j < rows_; ++j) aug.a_[i][j] = a_[j][i];
            aug.a_[i][rows_] = rhs[i];
        }
        auto pivots = aug.rref_with_pivots();
        QVec x(rows_, Rat(0));
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            if (pivots[r] == rows_) return std::nullopt; // 0 = nonzero row
            x[pivots[r]] = aug.a_[r][rows_];
        }
        return x;
    }

    // Basis of the left null space: rows y with y * M = 0.
    QMatrix left_kernel() const {
        QMatrix t = transpose(); // column kernel of M^T
        auto pivots = t.rref_with_pivots();
        std::vector<bool> is_pivot(rows_, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::vector<QVec> kernel;
        for (std::size_t free = 0; free < rows_; ++free) {
            if (is_pivot[free]) continue;
            QVec v(rows_, Rat(0));
            v[free] = 1;
            for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -t.a_[r][free];
            kernel.push_back(std::move(v));
        }
        QMatrix k = from_rows(std::move(kernel));
        if (k.rows() == 0) k = QMatrix(0, rows_);
        return k;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<QVec> a_;
};

} // namespace genfield

#endif
