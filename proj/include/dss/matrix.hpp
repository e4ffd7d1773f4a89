#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dss/errors.hpp"
#include "dss/field.hpp"

namespace dss {

// Dense row-major matrix over a field F (PrimeField or ExtField). All the
// problem sizes in this library are tiny, so plain Gaussian elimination is
// the right tool everywhere.
template <class F>
struct Mat {
    using E = typename F::Elem;

    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<E> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, E fill) : rows(r), cols(c), a(r * c, fill) {}

    static Mat zero(const F& f, std::size_t r, std::size_t c) { return Mat(r, c, f.zero()); }

    static Mat identity(const F& f, std::size_t n) {
        Mat m = zero(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    E& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const E& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    Mat transpose() const {
        Mat t;
        t.rows = cols;
        t.cols = rows;
        t.a.resize(a.size());
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) t.a[c * rows + r] = at(r, c);
        return t;
    }

    Mat take_columns(const std::vector<std::size_t>& idx) const {
        Mat m;
        m.rows = rows;
        m.cols = idx.size();
        m.a.reserve(rows * idx.size());
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c : idx) m.a.push_back(at(r, c));
        return m;
    }

    Mat take_rows(const std::vector<std::size_t>& idx) const {
        Mat m;
        m.rows = idx.size();
        m.cols = cols;
        m.a.reserve(idx.size() * cols);
        for (std::size_t r : idx)
            for (std::size_t c = 0; c < cols; ++c) m.a.push_back(at(r, c));
        return m;
    }

    bool operator==(const Mat& other) const {
        return rows == other.rows && cols == other.cols && a == other.a;
    }
};

template <class F>
Mat<F> mat_mul(const F& f, const Mat<F>& x, const Mat<F>& y) {
    require(x.cols == y.rows, Err::ShapeError, "matrix product shape mismatch");
    Mat<F> r = Mat<F>::zero(f, x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const auto& xv = x.at(i, k);
            if (f.is_zero(xv)) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                r.at(i, j) = f.add(r.at(i, j), f.mul(xv, y.at(k, j)));
        }
    return r;
}

template <class F>
std::vector<typename F::Elem> mat_vec(const F& f, const Mat<F>& m,
                                      const std::vector<typename F::Elem>& v) {
    require(m.cols == v.size(), Err::ShapeError, "matrix-vector shape mismatch");
    std::vector<typename F::Elem> r(m.rows, f.zero());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (!f.is_zero(m.at(i, j))) r[i] = f.add(r[i], f.mul(m.at(i, j), v[j]));
    return r;
}

template <class F>
std::vector<typename F::Elem> vec_mat(const F& f, const std::vector<typename F::Elem>& v,
                                      const Mat<F>& m) {
    require(m.rows == v.size(), Err::ShapeError, "vector-matrix shape mismatch");
    std::vector<typename F::Elem> r(m.cols, f.zero());
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (f.is_zero(v[i])) continue;
        for (std::size_t j = 0; j < m.cols; ++j)
            r[j] = f.add(r[j], f.mul(v[i], m.at(i, j)));
    }
    return r;
}

// In-place reduced row echelon form; returns the pivot column of each pivot
// row, in order. Everything downstream (rank, solve, inverse, nullspace)
// rides on this.
template <class F>
std::vector<std::size_t> rref(const F& f, Mat<F>& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t sel = row;
        while (sel < m.rows && f.is_zero(m.at(sel, col))) ++sel;
        if (sel == m.rows) continue;
        if (sel != row)
            for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(sel, c), m.at(row, c));
        auto piv_inv = f.inv(m.at(row, col));
        for (std::size_t c = col; c < m.cols; ++c) m.at(row, c) = f.mul(piv_inv, m.at(row, c));
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row || f.is_zero(m.at(r, col))) continue;
            auto factor = m.at(r, col);
            for (std::size_t c = col; c < m.cols; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class F>
std::size_t rank(const F& f, Mat<F> m) {
    return rref(f, m).size();
}

template <class F>
bool invertible(const F& f, const Mat<F>& m) {
    return m.rows == m.cols && rank(f, m) == m.rows;
}

// Solve m * x = rhs. Returns one solution, or nullopt when inconsistent.
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const F& f, const Mat<F>& m,
                                                   const std::vector<typename F::Elem>& rhs) {
    require(rhs.size() == m.rows, Err::ShapeError, "solve rhs length mismatch");
    Mat<F> aug;
    aug.rows = m.rows;
    aug.cols = m.cols + 1;
    aug.a.reserve(aug.rows * aug.cols);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) aug.a.push_back(m.at(r, c));
        aug.a.push_back(rhs[r]);
    }
    auto pivots = rref(f, aug);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt; // pivot in rhs column
    std::vector<typename F::Elem> x(m.cols, f.zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, m.cols);
    return x;
}

template <class F>
std::optional<Mat<F>> inverse(const F& f, const Mat<F>& m) {
    if (m.rows != m.cols) return std::nullopt;
    std::size_t n = m.rows;
    Mat<F> aug;
    aug.rows = n;
    aug.cols = 2 * n;
    aug.a.reserve(n * 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.a.push_back(m.at(r, c));
        for (std::size_t c = 0; c < n; ++c) aug.a.push_back(r == c ? f.one() : f.zero());
    }
    auto pivots = rref(f, aug);
    if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
    Mat<F> inv = Mat<F>::zero(f, n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
    return inv;
}

// Basis of { x : m x = 0 }, returned as rows.
template <class F>
Mat<F> nullspace(const F& f, Mat<F> m) {
    auto pivots = rref(f, m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat<F> basis = Mat<F>::zero(f, free_cols.size(), m.cols);
    for (std::size_t i = 0; i < free_cols.size(); ++i) {
        std::size_t fc = free_cols[i];
        basis.at(i, fc) = f.one();
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis.at(i, pivots[r]) = f.neg(m.at(r, fc));
    }
    return basis;
}

} // namespace dss
