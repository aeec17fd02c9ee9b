#pragma once

// Dense matrices over exact scalars, reduced echelon form, kernel bases,
// and the integer normal forms (Smith, Hermite) the lattice code relies on.

#include "wallkit/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wallkit {

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty()) return Matrix(0, 0);
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_columns(const std::vector<std::vector<T>>& cols) {
        if (cols.empty()) return Matrix(0, 0);
        Matrix m(cols[0].size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows_) throw std::invalid_argument("ragged columns");
            for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    // row a += c * row b
    void row_add(std::size_t a, std::size_t b, const T& c) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) += c * (*this)(b, j);
    }
    // col a += c * col b
    void col_add(std::size_t a, std::size_t b, const T& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) += c * (*this)(i, b);
    }
    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
    }
    void negate_col(std::size_t j) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
    }
    void scale_row(std::size_t i, const T& c) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) *= c;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using MatQ = Matrix<Rational>;
using MatZ = Matrix<Int>;

template <typename T>
std::vector<T> mul(const Matrix<T>& m, const std::vector<T>& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("matrix*vector shape mismatch");
    std::vector<T> r(m.rows(), T(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

inline MatQ to_rational(const MatZ& m) {
    MatQ q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
    return q;
}

// In-place reduced row echelon form; returns the pivot column of each pivot row.
inline std::vector<std::size_t> rref(MatQ& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t j = 0; j < m.cols() && r < m.rows(); ++j) {
        std::size_t p = r;
        while (p < m.rows() && m(p, j) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        const Rational inv = Rational(1) / m(r, j);
        m.scale_row(r, inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, j) == 0) continue;
            m.row_add(i, r, -m(i, j));
        }
        pivots.push_back(j);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(MatQ m) { return rref(m).size(); }
inline std::size_t rank(const MatZ& m) { return rank(to_rational(m)); }

inline Rational determinant(MatQ m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    Rational det(1);
    for (std::size_t col = 0; col < m.rows(); ++col) {
        std::size_t piv = col;
        while (piv < m.rows() && m(piv, col) == 0) ++piv;
        if (piv == m.rows()) return Rational(0);
        if (piv != col) {
            m.swap_rows(col, piv);
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t i = col + 1; i < m.rows(); ++i) {
            if (m(i, col) == 0) continue;
            m.row_add(i, col, Rational(-m(i, col) / m(col, col)));
        }
    }
    return det;
}

inline Rational determinant(const MatZ& m) { return determinant(to_rational(m)); }

// Basis of { x : m x = 0 }, one vector per free column, in free-column order.
inline std::vector<QVec> kernel_basis(MatQ m) {
    const auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto j : pivots) is_pivot[j] = true;
    std::vector<QVec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        QVec v(m.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of m x = b, if any.
inline std::optional<QVec> solve(const MatQ& m, const QVec& b) {
    if (m.rows() != b.size()) throw std::invalid_argument("solve: shape mismatch");
    MatQ aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    QVec x(m.cols(), Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
    return x;
}

inline std::optional<MatQ> inverse(const MatQ& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    MatQ aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const auto pivots = rref(aug);
    if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
    MatQ inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

// Smith decomposition u * a * v = d with u, v unimodular, d diagonal with
// nonnegative entries forming a divisibility chain.
struct SmithForm {
    MatZ d, u, uinv, v, vinv;
    std::size_t rank = 0;

    std::vector<Int> invariant_factors() const {
        const std::size_t n = std::min(d.rows(), d.cols());
        std::vector<Int> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = d(i, i);
        return f;
    }
};

inline SmithForm smith_normal_form(const MatZ& a) {
    SmithForm s;
    s.d = a;
    const std::size_t r = a.rows(), c = a.cols();
    s.u = MatZ::identity(r);
    s.uinv = MatZ::identity(r);
    s.v = MatZ::identity(c);
    s.vinv = MatZ::identity(c);
    MatZ& d = s.d;

    auto swap_rows = [&](std::size_t x, std::size_t y) {
        d.swap_rows(x, y); s.u.swap_rows(x, y); s.uinv.swap_cols(x, y);
    };
    auto swap_cols = [&](std::size_t x, std::size_t y) {
        d.swap_cols(x, y); s.v.swap_cols(x, y); s.vinv.swap_rows(x, y);
    };
    auto row_add = [&](std::size_t x, std::size_t y, const Int& q) {
        d.row_add(x, y, q); s.u.row_add(x, y, q); s.uinv.col_add(y, x, -q);
    };
    auto col_add = [&](std::size_t x, std::size_t y, const Int& q) {
        d.col_add(x, y, q); s.v.col_add(x, y, q); s.vinv.row_add(y, x, -q);
    };
    auto negate_row = [&](std::size_t x) {
        d.negate_row(x); s.u.negate_row(x); s.uinv.negate_col(x);
    };

    const std::size_t steps = std::min(r, c);
    for (std::size_t t = 0; t < steps; ++t) {
        // pivot: smallest nonzero magnitude in the trailing block
        std::size_t pi = t, pj = t;
        bool found = false;
        Int best = 0;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j) {
                if (d(i, j) == 0) continue;
                Int m = abs_int(d(i, j));
                if (!found || m < best) { found = true; best = m; pi = i; pj = j; }
            }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (d(i, t) == 0) continue;
                Int q = d(i, t) / d(t, t);
                if (q != 0) row_add(i, t, -q);
                if (d(i, t) != 0) { swap_rows(t, i); dirty = true; }
            }
            if (dirty) continue;
            for (std::size_t j = t + 1; j < c; ++j) {
                if (d(t, j) == 0) continue;
                Int q = d(t, j) / d(t, t);
                if (q != 0) col_add(j, t, -q);
                if (d(t, j) != 0) { swap_cols(t, j); dirty = true; }
            }
            if (dirty) continue;

            // divisibility of the trailing block by the pivot
            bool fixed = true;
            for (std::size_t i = t + 1; i < r && fixed; ++i)
                for (std::size_t j = t + 1; j < c && fixed; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        row_add(t, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (d(t, t) < 0) negate_row(t);
        ++s.rank;
    }
    return s;
}

inline std::vector<Int> invariant_factors(const MatZ& a) {
    return smith_normal_form(a).invariant_factors();
}

// Row-style Hermite normal form: positive pivots, entries above a pivot
// reduced into [0, pivot), zero rows pushed to the bottom. Canonical for the
// row-space lattice, so equality of forms decides lattice equality.
inline MatZ hermite_row(MatZ h) {
    const std::size_t rows = h.rows(), cols = h.cols();
    auto floor_div = [](const Int& a, const Int& b) {
        Int q = a / b;
        if (a % b != 0 && ((a < 0) != (b < 0))) --q;
        return q;
    };
    std::size_t r = 0;
    for (std::size_t j = 0; j < cols && r < rows; ++j) {
        for (;;) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (h(i, j) == 0) continue;
                if (best == rows || abs_int(h(i, j)) < abs_int(h(best, j))) best = i;
            }
            if (best == rows) break;
            h.swap_rows(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (h(i, j) == 0) continue;
                Int q = h(i, j) / h(r, j);
                if (q != 0) h.row_add(i, r, -q);
                if (h(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(r, j) == 0) continue;
        if (h(r, j) < 0) h.negate_row(r);
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(h(i, j), h(r, j));
            if (q != 0) h.row_add(i, r, -q);
        }
        ++r;
    }
    return h;
}

inline bool same_row_lattice(const MatZ& a, const MatZ& b) {
    if (a.cols() != b.cols()) return false;
    MatZ ha = hermite_row(a), hb = hermite_row(b);
    const std::size_t n = std::max(ha.rows(), hb.rows());
    auto entry = [](const MatZ& m, std::size_t i, std::size_t j) {
        return i < m.rows() ? m(i, j) : Int(0);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (entry(ha, i, j) != entry(hb, i, j)) return false;
    return true;
}

// Columns form a basis of { x in Z^n : a x = 0 }; the basis is saturated.
inline MatZ kernel_lattice(const MatZ& a) {
    const SmithForm s = smith_normal_form(a);
    const std::size_t n = a.cols(), k = n - s.rank;
    MatZ basis(n, k);
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t i = 0; i < n; ++i) basis(i, t) = s.v(i, s.rank + t);
    return basis;
}

// One integer solution of a x = b, if any.
inline std::optional<ZVec> solve_integer(const MatZ& a, const ZVec& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("solve_integer: shape mismatch");
    const SmithForm s = smith_normal_form(a);
    const ZVec ub = mul(s.u, b);
    ZVec y(a.cols(), Int(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i < s.rank) {
            if (ub[i] % s.d(i, i) != 0) return std::nullopt;
            if (i < a.cols()) y[i] = ub[i] / s.d(i, i);
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return mul(s.v, y);
}

} // namespace wallkit
