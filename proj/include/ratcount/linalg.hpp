// Exact integer/rational linear algebra on small dense matrices.
//
// Everything here runs on lattice data of dimension <= 16 (cone and fan
// bookkeeping), so the algorithms are chosen for exactness and clarity, not
// asymptotics: Bareiss for determinants/rank, rational Gauss for solving,
// HNF with a unimodular transform for saturated kernels.
#pragma once

#include "ratcount/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace ratcount {

using Vec = std::vector<Integer>;   // lattice vector
using QVec = std::vector<Rational>; // rational vector
using Mat = std::vector<Vec>;       // row-major integer matrix
using QMat = std::vector<QVec>;

inline Integer dot(const Vec& a, const Vec& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const Vec& a, const QVec& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
    return s;
}

inline Rational dot(const QVec& a, const QVec& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline QVec to_qvec(const Vec& v)
{
    QVec q(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rational(v[i]);
    return q;
}

inline bool is_zero(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline Vec negate(const Vec& v)
{
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b)
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec scale(const Integer& c, const Vec& v)
{
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

// Divide by the gcd of the entries. Zero vector is left alone.
inline Vec primitivize(Vec v)
{
    Integer g = 0;
    for (const auto& x : v) g = gcd_int(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

// Primitive with the first nonzero entry positive.
inline Vec primitivize_signed(Vec v)
{
    v = primitivize(std::move(v));
    for (const auto& x : v) {
        if (x != 0) {
            if (x < 0)
                for (auto& y : v) y = -y;
            break;
        }
    }
    return v;
}

// Clear denominators and primitivize: the unique primitive integer vector on
// the same ray (input must be nonzero).
inline Vec primitive_direction(const QVec& v)
{
    Integer l = 1;
    for (const auto& q : v) l = l / gcd_int(l, den(q)) * den(q);
    Vec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = num(v[i]) * (l / den(v[i]));
    return primitivize(std::move(w));
}

// Determinant by fraction-free (Bareiss) elimination.
inline Integer det(Mat m)
{
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("det: not square");
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Row rank over Q (fraction-free elimination; destroys a copy).
inline int rank(Mat m)
{
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            Integer a = m[r][c], b = m[i][c];
            Integer g = gcd_int(a, b);
            Integer ma = a / g, mb = b / g;
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] * ma - m[r][j] * mb;
        }
        ++r;
    }
    return static_cast<int>(r);
}

// Solve A x = b exactly; A square nonsingular.
inline QVec solve(const Mat& a, const QVec& b)
{
    const std::size_t n = a.size();
    if (n == 0 || a[0].size() != n || b.size() != n)
        throw std::invalid_argument("solve: shape mismatch");
    QMat m(n, QVec(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
        m[i][n] = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) throw std::invalid_argument("solve: singular matrix");
        std::swap(m[c], m[piv]);
        Rational p = m[c][c];
        for (std::size_t j = c; j <= n; ++j) m[c][j] /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    QVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
    return x;
}

// Column-style Hermite normal form of A^T with transform:
// returns U (d x d unimodular, rows are the transform) such that the rows of
// U*A^T ... implemented directly: we bring the columns of A (viewed as the
// maps x -> A x) to echelon form by unimodular ROW operations on x-space.
//
// Concretely: given the m x d matrix A (m constraints on x in Z^d), computes a
// unimodular d x d matrix U such that the matrix A * U^T has a column echelon
// structure; the columns of U^T (rows of U) spanning the zero part form a
// saturated basis of { x in Z^d : A x = 0 }.
inline Mat kernel_lattice_basis(const Mat& a_in)
{
    if (a_in.empty()) throw std::invalid_argument("kernel_lattice_basis: empty matrix");
    const std::size_t m = a_in.size(), d = a_in[0].size();
    // Work on B = A^T-ish: track x-space basis vectors u_1..u_d (rows of U)
    // and their images under A.
    Mat u(d, Vec(d, 0));
    for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;
    Mat img(d, Vec(m));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < m; ++j) img[i][j] = a_in[j][i];

    std::size_t row = 0; // next basis slot to fix
    for (std::size_t c = 0; c < m && row < d; ++c) {
        // Euclidean reduction of column c across basis vectors row..d-1.
        while (true) {
            std::size_t nz = d;
            Integer best = 0;
            for (std::size_t i = row; i < d; ++i) {
                if (img[i][c] != 0 && (nz == d || abs_int(img[i][c]) < best)) {
                    nz = i;
                    best = abs_int(img[i][c]);
                }
            }
            if (nz == d) break; // column zero below 'row'
            std::swap(img[row], img[nz]);
            std::swap(u[row], u[nz]);
            bool reduced = true;
            for (std::size_t i = row + 1; i < d; ++i) {
                if (img[i][c] == 0) continue;
                Integer q = img[i][c] / img[row][c];
                for (std::size_t j = 0; j < m; ++j) img[i][j] -= q * img[row][j];
                for (std::size_t j = 0; j < d; ++j) u[i][j] -= q * u[row][j];
                if (img[i][c] != 0) reduced = false;
            }
            if (reduced) {
                ++row;
                break;
            }
        }
    }
    Mat kernel;
    for (std::size_t i = row; i < d; ++i) kernel.push_back(u[i]);
    return kernel; // saturated: the u_i remain a basis of Z^d throughout
}

// Primitive normal of the hyperplane spanned by d-1 independent vectors in
// Z^d; empty vector if the span has the wrong dimension. Computed as the
// vector of signed maximal minors (all zero exactly when the rows are
// dependent).
inline Vec hyperplane_normal(const Mat& rows, std::size_t d)
{
    if (rows.empty()) {
        if (d != 1) return {};
        return Vec{Integer(1)};
    }
    if (rows.size() != d - 1) {
        Mat a = rows;
        if (rank(a) != static_cast<int>(d) - 1) return {};
        Mat k = kernel_lattice_basis(a);
        if (k.size() != 1) return {};
        return primitivize(k[0]);
    }
    Vec n(d);
    bool nonzero = false;
    Mat minor(d - 1, Vec(d - 1));
    for (std::size_t skip = 0; skip < d; ++skip) {
        for (std::size_t i = 0; i + 1 < d; ++i) {
            std::size_t cj = 0;
            for (std::size_t j = 0; j < d; ++j) {
                if (j == skip) continue;
                minor[i][cj++] = rows[i][j];
            }
        }
        Integer m = det(minor);
        n[skip] = (skip % 2 == 0) ? m : Integer(-m);
        nonzero = nonzero || m != 0;
    }
    if (!nonzero) return {};
    return primitivize(std::move(n));
}

// Saturated basis of the lattice span(rows) /\ Z^d (kernel of the kernel).
inline Mat saturated_span_basis(const Mat& rows, std::size_t d)
{
    Mat k = kernel_lattice_basis(rows);
    if (k.empty()) {
        Mat id(d, Vec(d, 0));
        for (std::size_t i = 0; i < d; ++i) id[i][i] = 1;
        return id;
    }
    return kernel_lattice_basis(k);
}

} // namespace ratcount
