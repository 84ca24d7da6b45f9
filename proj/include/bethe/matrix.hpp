#ifndef BETHE_MATRIX_HPP
#define BETHE_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace bethe {

using Vec = std::vector<Rational>;

/// Dense row-major matrix over Q.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, Rational(0)) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
    {
        r_ = rows.size();
        c_ = r_ ? rows.begin()->size() : 0;
        for (const auto& row : rows) {
            if (row.size() != c_) throw Error("invalid_input", "ragged matrix");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }
    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Vec row(std::size_t i) const { return Vec(a_.begin() + static_cast<long>(i * c_), a_.begin() + static_cast<long>((i + 1) * c_)); }

    Matrix transpose() const
    {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.c_ != b.r_) throw Error("dimension_mismatch", "matrix product shape");
        Matrix m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += a(i, k) * b(k, j);
            }
        return m;
    }
    friend Vec operator*(const Matrix& a, const Vec& v)
    {
        if (a.c_ != v.size()) throw Error("dimension_mismatch", "matrix-vector shape");
        Vec out(a.r_, Rational(0));
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t j = 0; j < a.c_; ++j) out[i] += a(i, j) * v[j];
        return out;
    }
    friend Matrix operator*(const Rational& s, Matrix m)
    {
        for (auto& x : m.a_) x *= s;
        return m;
    }
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    bool is_symmetric() const
    {
        if (r_ != c_) return false;
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }
    bool is_skew() const
    {
        if (r_ != c_) return false;
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                if ((*this)(i, j) != -(*this)(j, i)) return false;
        return true;
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

/// In-place reduced row echelon form. Pivot: first column with a nonzero
/// entry at or below the current row, smallest such row index.
inline std::vector<std::size_t> rref(Matrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

struct AffineSolution {
    Vec particular;
    std::vector<Vec> null_basis;
};

/// All x with A x = b, or nullopt when infeasible. Null basis vectors have
/// +-1 in their free coordinate and a positive first nonzero entry.
inline std::optional<AffineSolution> solve_linear(const Matrix& A, const Vec& b)
{
    if (b.size() != A.rows()) throw Error("dimension_mismatch", "right-hand side length");
    const std::size_t n = A.cols();
    Matrix aug(A.rows(), n + 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
        aug(i, n) = b[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == n) return std::nullopt;

    AffineSolution sol;
    sol.particular.assign(n, Rational(0));
    std::vector<bool> is_pivot(n, false);
    for (std::size_t r = 0; r < piv.size(); ++r) {
        is_pivot[piv[r]] = true;
        sol.particular[piv[r]] = aug(r, n);
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Vec v(n, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -aug(r, f);
        auto lead = std::find_if(v.begin(), v.end(), [](const Rational& a) { return a != 0; });
        if (*lead < 0)
            for (auto& a : v) a = -a;
        sol.null_basis.push_back(std::move(v));
    }
    return sol;
}

inline std::vector<Vec> null_space(const Matrix& A)
{
    return solve_linear(A, Vec(A.rows(), Rational(0)))->null_basis;
}

/// Unique solution of a square nonsingular system.
inline Vec solve_unique(const Matrix& A, const Vec& b)
{
    auto s = solve_linear(A, b);
    if (!s || !s->null_basis.empty()) throw Error("singular", "system has no unique solution");
    return s->particular;
}

} // namespace bethe

#endif // BETHE_MATRIX_HPP
