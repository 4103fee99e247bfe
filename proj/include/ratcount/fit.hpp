// Regression against the model N(B) = c B^a (log B)^(b-1): least squares on
// log N = log c + a log B + (b-1) log log B, with either exponent optionally
// held fixed. Plain unweighted least squares via Householder QR.
#pragma once

#include "ratcount/enumerate.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace ratcount {

struct FitResult {
    double a = 0.0;
    double b = 1.0;
    double log_c = 0.0;
    double residual = 0.0; // root mean square residual in log N
    bool fixed_a = false;
    bool fixed_b = false;

    double c() const { return std::exp(log_c); }
    double predict_log(double B) const
    {
        return log_c + a * std::log(B) + (b - 1.0) * std::log(std::log(B));
    }
};

namespace detail {

// least squares min ||A x - y|| by Householder QR in extended precision
// (the log/loglog columns are nearly collinear over short schedules)
inline std::vector<double> lstsq(const std::vector<std::vector<double>>& A_in,
                                 const std::vector<double>& y_in)
{
    const std::size_t n = A_in.size(), k = A_in[0].size();
    std::vector<std::vector<long double>> A(n, std::vector<long double>(k));
    std::vector<long double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) A[i][j] = A_in[i][j];
        y[i] = y_in[i];
    }
    for (std::size_t col = 0; col < k; ++col) {
        long double norm = 0;
        for (std::size_t i = col; i < n; ++i) norm += A[i][col] * A[i][col];
        norm = std::sqrt(norm);
        if (norm < 1e-300L) throw std::invalid_argument("fit: degenerate design matrix");
        long double alpha = (A[col][col] > 0) ? -norm : norm;
        std::vector<long double> v(n, 0.0L);
        for (std::size_t i = col; i < n; ++i) v[i] = A[i][col];
        v[col] -= alpha;
        long double vnorm2 = 0;
        for (std::size_t i = col; i < n; ++i) vnorm2 += v[i] * v[i];
        if (vnorm2 < 1e-300L) continue;
        for (std::size_t j = col; j < k; ++j) {
            long double dot = 0;
            for (std::size_t i = col; i < n; ++i) dot += v[i] * A[i][j];
            long double f = 2.0L * dot / vnorm2;
            for (std::size_t i = col; i < n; ++i) A[i][j] -= f * v[i];
        }
        long double doty = 0;
        for (std::size_t i = col; i < n; ++i) doty += v[i] * y[i];
        long double f = 2.0L * doty / vnorm2;
        for (std::size_t i = col; i < n; ++i) y[i] -= f * v[i];
    }
    std::vector<double> x(k, 0.0);
    std::vector<long double> xl(k, 0.0L);
    for (std::size_t row = k; row-- > 0;) {
        long double s = y[row];
        for (std::size_t j = row + 1; j < k; ++j) s -= A[row][j] * xl[j];
        if (std::fabs(static_cast<double>(A[row][row])) < 1e-300)
            throw std::invalid_argument("fit: degenerate design matrix");
        xl[row] = s / A[row][row];
        x[row] = static_cast<double>(xl[row]);
    }
    return x;
}

} // namespace detail

// Fit over samples with B >= 3 (so log log B > 0) and N >= 1.
inline FitResult fit_asymptotic(const CountCurve& curve, std::optional<double> fix_a = std::nullopt,
                                std::optional<double> fix_b = std::nullopt)
{
    std::vector<double> lb, llb, ln;
    for (const auto& [B, N] : curve.samples) {
        if (B < 3 || N < 1) continue;
        double bd = to_double(B);
        lb.push_back(std::log(bd));
        llb.push_back(std::log(std::log(bd)));
        ln.push_back(std::log(to_double(N)));
    }
    const std::size_t n = lb.size();
    std::size_t k = 1 + (fix_a ? 0 : 1) + (fix_b ? 0 : 1);
    if (n < 3 || n < k)
        throw std::invalid_argument("fit_asymptotic: need at least 3 usable samples with B >= 3");
    // distinct B values required
    bool distinct = false;
    for (std::size_t i = 1; i < n; ++i) distinct = distinct || lb[i] != lb[0];
    if (!distinct && k > 1) throw std::invalid_argument("fit_asymptotic: degenerate design matrix");

    std::vector<std::vector<double>> A(n, std::vector<double>(k, 0.0));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double rhs = ln[i];
        std::size_t col = 0;
        A[i][col++] = 1.0;
        if (fix_a)
            rhs -= *fix_a * lb[i];
        else
            A[i][col++] = lb[i];
        if (fix_b)
            rhs -= (*fix_b - 1.0) * llb[i];
        else
            A[i][col++] = llb[i];
        y[i] = rhs;
    }
    auto x = detail::lstsq(A, y);
    FitResult r;
    std::size_t col = 0;
    r.log_c = x[col++];
    r.fixed_a = fix_a.has_value();
    r.fixed_b = fix_b.has_value();
    r.a = fix_a ? *fix_a : x[col++];
    r.b = fix_b ? *fix_b : (x[col++] + 1.0);
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double model = r.log_c + r.a * lb[i] + (r.b - 1.0) * llb[i];
        ssr += (ln[i] - model) * (ln[i] - model);
    }
    r.residual = std::sqrt(ssr / static_cast<double>(n));
    return r;
}

// Partial height zeta function over an explicit stream of heights:
// sum over heights <= B of H^{-s}.
inline double zeta_partial(const std::vector<Rational>& heights, double s, const Rational& B)
{
    if (s <= 0) throw std::invalid_argument("zeta_partial: s must be positive");
    double sum = 0;
    for (const auto& h : heights) {
        if (h <= B) sum += std::pow(to_double(h), -s);
    }
    return sum;
}

// Curve-granularity variant: Riemann-Stieltjes sum over the count steps,
// charging each increment at its sample bound.
inline double zeta_partial(const CountCurve& curve, double s, const Rational& B)
{
    if (s <= 0) throw std::invalid_argument("zeta_partial: s must be positive");
    double sum = 0;
    Integer prev = 0;
    for (const auto& [bb, nn] : curve.samples) {
        if (bb > B) break;
        sum += to_double(Integer(nn - prev)) * std::pow(to_double(bb), -s);
        prev = nn;
    }
    return sum;
}

} // namespace ratcount
