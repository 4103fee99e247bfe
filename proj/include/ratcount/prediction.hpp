// Assembled asymptotic predictions: N(B) ~ c B^alpha (log B)^(beta-1), with
// c enclosed in an interval that tracks the Euler-product tail.
#pragma once

#include "ratcount/densities.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace ratcount {

struct Interval {
    double lo = std::numeric_limits<double>::quiet_NaN();
    double hi = std::numeric_limits<double>::quiet_NaN();

    bool valid() const { return std::isfinite(lo) && std::isfinite(hi) && lo <= hi; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return valid() && lo <= x && x <= hi; }

    static Interval exactly(double x) { return {x, x}; }
    static Interval undefined() { return {}; }
};

inline Interval operator*(const Interval& a, const Interval& b)
{
    double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Interval r{c[0], c[0]};
    for (double x : c) {
        r.lo = std::min(r.lo, x);
        r.hi = std::max(r.hi, x);
    }
    return r;
}

struct AsymptoticPrediction {
    std::string model_id;
    Rational alpha = 0;                 // exponent of B
    int beta = 0;                       // log power + 1
    Rational gamma = 0;                 // X-function of the effective cone at -K
    Integer delta = 1;
    EulerProductResult tau_finite;      // truncated Euler product with tail
    Rational tau_inf = 0;               // exact archimedean density
    Interval c;                         // leading constant enclosure
    bool constant_available = true;     // false for fibration-style predictions
    std::map<std::string, std::string> provenance;

    // Theta = alpha^beta gamma delta tau: the residue constant of the height
    // zeta function, the quantity that multiplies under products.
    Interval theta() const
    {
        if (!constant_available) return Interval::undefined();
        double exact = to_double(pow_rat(alpha, beta) * gamma * Rational(delta) * tau_inf);
        return Interval::exactly(exact) * Interval{tau_finite.lower(), tau_finite.upper()};
    }
};

// Tauberian constant Theta / (a (b-1)!), exact.
inline Rational tauberian_constant(const Rational& theta, const Rational& a, int b)
{
    if (b < 1) throw std::invalid_argument("tauberian_constant: pole order must be >= 1");
    if (a <= 0) throw std::invalid_argument("tauberian_constant: exponent must be positive");
    return theta / (a * Rational(factorial(static_cast<unsigned>(b - 1))));
}

inline double tauberian_constant(double theta, double a, int b)
{
    if (b < 1) throw std::invalid_argument("tauberian_constant: pole order must be >= 1");
    if (a <= 0) throw std::invalid_argument("tauberian_constant: exponent must be positive");
    return theta / (a * to_double(factorial(static_cast<unsigned>(b - 1))));
}

// Leading constant c = gamma alpha^{beta-1} delta tau / (beta-1)!.
//
// Equivalently Theta / (alpha (beta-1)!) with Theta = alpha^beta gamma delta
// tau: the X-function of the effective cone is evaluated at -K = alpha [L]
// in the L-Picard space, and homogeneity of degree -beta converts between
// the two evaluation points. For alpha = 1 (every anticanonical example)
// this is literally gamma delta tau / (beta-1)!.
inline Interval assemble_constant(const Rational& alpha, int beta, const Rational& gamma,
                                  const Integer& delta, const EulerProductResult& tau_fin,
                                  const Rational& tau_inf)
{
    if (beta < 1) throw std::invalid_argument("assemble_constant: beta must be >= 1");
    if (alpha <= 0) throw std::invalid_argument("assemble_constant: alpha must be positive");
    Rational exact = gamma * pow_rat(alpha, beta - 1) * Rational(delta) * tau_inf /
                     Rational(factorial(static_cast<unsigned>(beta - 1)));
    double e = to_double(exact);
    Interval enclosure = Interval::exactly(e) * Interval{tau_fin.lower(), tau_fin.upper()};
    // guard digits for the two float conversions
    const double slop = 1e-13;
    enclosure.lo *= (enclosure.lo >= 0 ? 1 - slop : 1 + slop);
    enclosure.hi *= (enclosure.hi >= 0 ? 1 + slop : 1 - slop);
    return enclosure;
}

// Product of two predictions.
//
// Case 1 (equal alpha): Theta multiplies, so beta adds and gamma, delta,
// tau all multiply; the Euler tables are merged factor by factor (both
// products must have been truncated at the same prime).
//
// Case 2 (alpha_1 < alpha_2): Theta = (sum over base points of
// H^{-alpha_2}) * Theta_2; the sum is over an enumerated stream of base
// heights up to some bound, so the constant is a monotone lower bound and is
// flagged as such in the provenance.
inline AsymptoticPrediction product_prediction(const AsymptoticPrediction& p1,
                                               const AsymptoticPrediction& p2,
                                               const std::vector<Rational>& base_heights = {},
                                               const Rational& truncation_height = 0)
{
    AsymptoticPrediction out;
    out.model_id = p1.model_id + " x " + p2.model_id;
    if (p1.alpha == p2.alpha) {
        out.alpha = p1.alpha;
        out.beta = p1.beta + p2.beta;
        out.gamma = p1.gamma * p2.gamma;
        out.delta = p1.delta * p2.delta;
        out.tau_inf = p1.tau_inf * p2.tau_inf;
        if (p1.tau_finite.truncation_prime != p2.tau_finite.truncation_prime)
            throw std::invalid_argument(
                "product_prediction: Euler products truncated at different primes");
        EulerProductResult tf;
        tf.truncation_prime = p1.tau_finite.truncation_prime;
        Rational prod = 1;
        if (p1.tau_finite.factor_table.size() != p2.tau_finite.factor_table.size())
            throw std::invalid_argument("product_prediction: factor tables disagree");
        for (std::size_t i = 0; i < p1.tau_finite.factor_table.size(); ++i) {
            const auto& [pa, fa] = p1.tau_finite.factor_table[i];
            const auto& [pb, fb] = p2.tau_finite.factor_table[i];
            if (pa != pb) throw std::invalid_argument("product_prediction: factor tables disagree");
            tf.factor_table.emplace_back(pa, fa * fb);
            prod *= fa * fb;
        }
        tf.partial_value = to_double(prod);
        tf.tail_bound = p1.tau_finite.tail_bound + p2.tau_finite.tail_bound;
        out.tau_finite = tf;
        out.constant_available = p1.constant_available && p2.constant_available;
        if (out.constant_available)
            out.c = assemble_constant(out.alpha, out.beta, out.gamma, out.delta, out.tau_finite,
                                      out.tau_inf);
        out.provenance["product"] = "case 1 (equal exponents): Theta = Theta_1 Theta_2";
        return out;
    }
    const AsymptoticPrediction& base = (p1.alpha < p2.alpha) ? p1 : p2;
    const AsymptoticPrediction& fiber = (p1.alpha < p2.alpha) ? p2 : p1;
    out.alpha = fiber.alpha;
    out.beta = fiber.beta;
    out.gamma = fiber.gamma;
    out.delta = fiber.delta;
    out.tau_inf = fiber.tau_inf;
    out.tau_finite = fiber.tau_finite;
    (void)base;
    Rational zeta_sum = 0;
    for (const auto& h : base_heights) {
        if (h <= 0) throw std::invalid_argument("product_prediction: base heights must be positive");
        // H^{-alpha_2} with rational alpha: exact only for integral alpha,
        // otherwise via doubles below; keep an exact fast path
        if (den(fiber.alpha) == 1)
            zeta_sum += pow_rat(Rational(1) / h, num(fiber.alpha).convert_to<long>());
        else
            zeta_sum += Rational(0); // handled in the float pass
    }
    double zs = 0;
    if (den(fiber.alpha) != 1) {
        for (const auto& h : base_heights) zs += std::pow(to_double(h), -to_double(fiber.alpha));
    } else {
        zs = to_double(zeta_sum);
    }
    Interval theta_fiber = fiber.theta();
    out.constant_available = fiber.constant_available && !base_heights.empty();
    if (out.constant_available) {
        double theta_lo = theta_fiber.lo * zs;
        out.c = Interval{theta_lo / (to_double(out.alpha) *
                                     to_double(factorial(static_cast<unsigned>(out.beta - 1)))),
                         std::numeric_limits<double>::infinity()};
    }
    out.provenance["product"] =
        "case 2 (alpha_1 < alpha_2): truncated height-zeta lower bound over " +
        std::to_string(base_heights.size()) + " base points up to height " +
        rational_to_string(truncation_height);
    return out;
}

} // namespace ratcount
