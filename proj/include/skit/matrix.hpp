#ifndef SKIT_MATRIX_HPP
#define SKIT_MATRIX_HPP

#include "poly.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace skit {

/// Dense matrix over an exact field (Rational or GaussianRational).
template <class T>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, T(0)) {}
    static Mat identity(std::size_t n)
    {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    friend Mat operator*(const Mat& x, const Mat& y)
    {
        if (x.cols != y.rows) throw std::invalid_argument("matrix product shape mismatch");
        Mat r(x.rows, y.cols);
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t k = 0; k < x.cols; ++k) {
                if (is_zero(x(i, k))) continue;
                for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }
    friend bool operator==(const Mat& x, const Mat& y)
    {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    Mat transpose() const
    {
        Mat r(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    Mat top_rows(std::size_t r) const
    {
        if (r > rows) throw std::out_of_range("row slice");
        Mat m(r, cols);
        std::copy(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(r * cols), m.a.begin());
        return m;
    }
    Mat stack(const Mat& below) const
    {
        if (below.cols != cols) throw std::invalid_argument("stack shape mismatch");
        Mat m(rows + below.rows, cols);
        std::copy(a.begin(), a.end(), m.a.begin());
        std::copy(below.a.begin(), below.a.end(), m.a.begin() + static_cast<std::ptrdiff_t>(a.size()));
        return m;
    }
};

using QMat = Mat<Rational>;
using GMat = Mat<GaussianRational>;

inline GMat to_gaussian(const QMat& m)
{
    GMat r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i];
    return r;
}

/// Fraction-free Bareiss elimination.
template <class T>
T det_bareiss(Mat<T> m)
{
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows;
    if (n == 0) return T(1);
    T prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(m(k, k))) {
            std::size_t p = k + 1;
            while (p < n && is_zero(m(p, k))) ++p;
            if (p == n) return T(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                T v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = v / prev;
            }
            m(i, k) = T(0);
        }
        prev = m(k, k);
    }
    T d = m(n - 1, n - 1);
    return negate ? T(-d) : d;
}

/// Reduced row echelon form; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Mat<T>& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && is_zero(m(p, c))) ++p;
        if (p == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(r, j), m(p, j));
        T inv = T(1) / m(r, c);
        for (std::size_t j = 0; j < m.cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            T f = m(i, c);
            for (std::size_t j = 0; j < m.cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
std::size_t rank(Mat<T> m)
{
    return rref(m).size();
}

/// Rows span {v : m v = 0}.
template <class T>
Mat<T> null_space(Mat<T> m)
{
    auto piv = rref(m);
    std::vector<bool> is_piv(m.cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < m.cols; ++c)
        if (!is_piv[c]) free.push_back(c);
    Mat<T> n(free.size(), m.cols);
    for (std::size_t f = 0; f < free.size(); ++f) {
        n(f, free[f]) = T(1);
        for (std::size_t r = 0; r < piv.size(); ++r) n(f, piv[r]) = -m(r, free[f]);
    }
    return n;
}

template <class T>
Mat<T> inverse(const Mat<T>& m)
{
    if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = m.rows;
    Mat<T> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = T(1);
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("singular matrix");
    Mat<T> r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
}

// ----------------------------------------------------------- parametric

/// Matrix whose entries are polynomials over T in a shared variable list.
template <class T>
class ExactMatrix {
public:
    using Poly = MultiPoly<T>;

    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
        : rows_(rows), cols_(cols), nvars_(nvars), e_(rows * cols, Poly(nvars))
    {
    }
    static ExactMatrix from_scalars(const Mat<T>& m, std::size_t nvars)
    {
        ExactMatrix r(m.rows, m.cols, nvars);
        for (std::size_t i = 0; i < m.a.size(); ++i) r.e_[i] = Poly(nvars, m.a[i]);
        return r;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nvars() const { return nvars_; }
    Poly& operator()(std::size_t i, std::size_t j) { return e_.at(i * cols_ + j); }
    const Poly& operator()(std::size_t i, std::size_t j) const { return e_.at(i * cols_ + j); }

    bool is_scalar() const
    {
        for (auto& p : e_)
            if (!p.is_constant()) return false;
        return true;
    }

    /// Stack `below` underneath this matrix.
    ExactMatrix stack(const ExactMatrix& below) const
    {
        if (below.cols_ != cols_ || below.nvars_ != nvars_) throw std::invalid_argument("stack shape mismatch");
        ExactMatrix r(rows_ + below.rows_, cols_, nvars_);
        std::copy(e_.begin(), e_.end(), r.e_.begin());
        std::copy(below.e_.begin(), below.e_.end(), r.e_.begin() + static_cast<std::ptrdiff_t>(e_.size()));
        return r;
    }

    /// Right-multiply by a scalar matrix.
    ExactMatrix times(const Mat<T>& m) const
    {
        if (m.rows != cols_) throw std::invalid_argument("product shape mismatch");
        ExactMatrix r(rows_, m.cols, nvars_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Poly& p = (*this)(i, k);
                if (p.is_zero()) continue;
                for (std::size_t j = 0; j < m.cols; ++j)
                    if (!is_zero(m(k, j))) r(i, j) += p * m(k, j);
            }
        return r;
    }

    friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y)
    {
        if (x.cols_ != y.rows_) throw std::invalid_argument("product shape mismatch");
        ExactMatrix r(x.rows_, y.cols_, x.nvars_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    if (!y(k, j).is_zero()) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }

    ExactMatrix select(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const
    {
        ExactMatrix r(rs.size(), cs.size(), nvars_);
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) {
                if (rs[i] >= rows_ || cs[j] >= cols_) throw std::out_of_range("minor index");
                r(i, j) = (*this)(rs[i], cs[j]);
            }
        return r;
    }

private:
    std::size_t rows_ = 0, cols_ = 0, nvars_ = 0;
    std::vector<Poly> e_;
};

using QExactMatrix = ExactMatrix<Rational>;
using GExactMatrix = ExactMatrix<GaussianRational>;

namespace detail {
// Column-by-column Laplace expansion, memoized on the set of rows already used.
template <class T>
MultiPoly<T> det_laplace(const ExactMatrix<T>& m)
{
    const std::size_t n = m.rows();
    if (n > 30) throw std::invalid_argument("matrix too large for cofactor expansion");
    using Poly = MultiPoly<T>;
    std::unordered_map<std::uint32_t, Poly> layer{{0u, Poly(m.nvars(), T(1))}};
    for (std::size_t j = 0; j < n; ++j) {
        std::unordered_map<std::uint32_t, Poly> next;
        for (auto& [mask, value] : layer) {
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1u << i)) continue;
                const Poly& entry = m(i, j);
                if (entry.is_zero()) continue;
                int above = std::popcount(mask >> (i + 1)); // used rows greater than i
                Poly term = value * entry;
                if (above % 2) term = -term;
                auto [it, fresh] = next.try_emplace(mask | (1u << i), std::move(term));
                if (!fresh) it->second += term;
            }
        }
        for (auto it = next.begin(); it != next.end();)
            it = it->second.is_zero() ? next.erase(it) : std::next(it);
        layer = std::move(next);
        if (layer.empty()) return Poly(m.nvars());
    }
    auto it = layer.find(n == 32 ? ~0u : (1u << n) - 1);
    return it == layer.end() ? Poly(m.nvars()) : it->second;
}
} // namespace detail

template <class T>
MultiPoly<T> det(const ExactMatrix<T>& m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (m.is_scalar()) {
        Mat<T> s(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) s(i, j) = m(i, j).constant_term();
        return MultiPoly<T>(m.nvars(), det_bareiss(s));
    }
    return detail::det_laplace(m);
}

template <class T>
MultiPoly<T> minor(const ExactMatrix<T>& m, const std::vector<std::size_t>& rows,
                   const std::vector<std::size_t>& cols)
{
    if (rows.size() != cols.size()) throw std::invalid_argument("minor selection sizes differ");
    return det(m.select(rows, cols));
}

/// Determinant of a matrix of univariate polynomials (cofactor expansion).
template <class T>
UniPoly<T> det(const std::vector<std::vector<UniPoly<T>>>& m)
{
    const std::size_t n = m.size();
    ExactMatrix<T> e(n, n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw std::invalid_argument("determinant of non-square matrix");
        for (std::size_t j = 0; j < n; ++j) {
            MultiPoly<T> p(1);
            const auto& c = m[i][j].coefficients();
            for (std::size_t d = 0; d < c.size(); ++d) p.add_term(Monomial{static_cast<std::uint16_t>(d)}, c[d]);
            e(i, j) = p;
        }
    }
    MultiPoly<T> d = det(e);
    std::vector<T> c(d.is_zero() ? 0 : d.degree() + 1, T(0));
    for (auto& [mono, coef] : d.terms()) c[mono[0]] = coef;
    return UniPoly<T>(std::move(c), n ? m[0][0].var() : "t");
}

/// All size-r subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t r)
{
    std::vector<std::vector<std::size_t>> out;
    if (r > n) return out;
    std::vector<std::size_t> s(r);
    for (std::size_t i = 0; i < r; ++i) s[i] = i;
    for (;;) {
        out.push_back(s);
        std::size_t i = r;
        while (i > 0 && s[i - 1] == n - r + i - 1) --i;
        if (i == 0) break;
        ++s[i - 1];
        for (std::size_t j = i; j < r; ++j) s[j] = s[j - 1] + 1;
    }
    return out;
}

} // namespace skit

#endif
