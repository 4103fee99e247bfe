// Exact height evaluation. Three families are supported: the standard height
// on projective space, heights of convex piecewise linear functions on torus
// points (max-of-monomials at every place), and weighted-projective heights
// built from a family of monomial sections of fixed weighted degree.
#pragma once

#include "ratcount/pl_function.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace ratcount {

// --------------------------------------------------------------------------
// points

struct ProjectivePoint {
    Vec coords; // primitive, first nonzero coordinate positive

    static ProjectivePoint normalized(Vec raw)
    {
        if (std::all_of(raw.begin(), raw.end(), [](const Integer& x) { return x == 0; }))
            throw std::invalid_argument("ProjectivePoint: all coordinates are zero");
        ProjectivePoint p;
        p.coords = primitivize_signed(std::move(raw));
        return p;
    }
};

struct TorusPoint {
    QVec coords; // all nonzero

    static TorusPoint of(QVec c)
    {
        for (const auto& q : c)
            if (q == 0) throw std::invalid_argument("TorusPoint: coordinates must be nonzero");
        return TorusPoint{std::move(c)};
    }
};

struct WeightedPoint {
    std::vector<long> weights; // positive
    Vec coords;                // normalized: no prime p with p^{w_i} | x_i for every i

    static WeightedPoint normalized(std::vector<long> weights, Vec raw);
};

// --------------------------------------------------------------------------
// factorization helpers (trial division; inputs in this library are small)

inline std::map<Integer, long> factor_integer(Integer n)
{
    if (n == 0) throw std::invalid_argument("factor_integer: zero");
    std::map<Integer, long> f;
    if (n < 0) n = -n;
    for (Integer p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    }
    if (n > 1) ++f[n];
    return f;
}

inline long valuation(const Rational& q, const Integer& p)
{
    if (q == 0) throw std::invalid_argument("valuation: zero");
    long v = 0;
    Integer n = num(q), d = den(q);
    while (n % p == 0) {
        ++v;
        n /= p;
    }
    while (d % p == 0) {
        --v;
        d /= p;
    }
    return v;
}

// primes appearing in numerator or denominator of any coordinate
inline std::vector<Integer> support_primes(const QVec& t)
{
    std::map<Integer, long> acc;
    for (const auto& q : t) {
        if (q == 0) continue;
        for (const auto& [p, e] : factor_integer(num(q))) acc[p] += e;
        for (const auto& [p, e] : factor_integer(den(q))) acc[p] += e;
    }
    std::vector<Integer> primes;
    for (const auto& [p, e] : acc)
        if (p > 1) primes.push_back(p);
    return primes;
}

inline WeightedPoint WeightedPoint::normalized(std::vector<long> weights, Vec raw)
{
    if (weights.size() != raw.size() || weights.empty())
        throw std::invalid_argument("WeightedPoint: weights and coordinates must match");
    for (long w : weights)
        if (w < 1) throw std::invalid_argument("WeightedPoint: weights must be positive");
    if (std::all_of(raw.begin(), raw.end(), [](const Integer& x) { return x == 0; }))
        throw std::invalid_argument("WeightedPoint: all coordinates are zero");
    // remove any prime p with p^{w_i} | x_i for all i
    Integer g = 0;
    for (const auto& x : raw) g = gcd_int(g, x);
    if (g > 1) {
        for (const auto& [p, e] : factor_integer(g)) {
            (void)e;
            while (true) {
                bool divisible = true;
                for (std::size_t i = 0; i < raw.size(); ++i) {
                    if (raw[i] == 0) continue;
                    if (raw[i] % pow_int(p, static_cast<unsigned long>(weights[i])) != 0) {
                        divisible = false;
                        break;
                    }
                }
                if (!divisible) break;
                for (std::size_t i = 0; i < raw.size(); ++i)
                    if (raw[i] != 0) raw[i] /= pow_int(p, static_cast<unsigned long>(weights[i]));
            }
        }
    }
    // sign normalization through the lambda = -1 action: coordinate i picks
    // up (-1)^{w_i}; make the first nonzero coordinate of odd weight positive
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (weights[i] % 2 == 0 || raw[i] == 0) continue;
        if (raw[i] < 0)
            for (std::size_t j = 0; j < raw.size(); ++j)
                if (weights[j] % 2 == 1) raw[j] = -raw[j];
        break;
    }
    return WeightedPoint{std::move(weights), std::move(raw)};
}

// --------------------------------------------------------------------------
// heights

// Standard height: product over places of the max coordinate norm. On a
// primitive integer vector the finite places contribute 1.
inline Rational standard_height(const ProjectivePoint& p)
{
    Integer best = 0;
    for (const auto& x : p.coords) best = std::max(best, abs_int(x));
    return Rational(best);
}

inline Rational standard_height(Vec raw) { return standard_height(ProjectivePoint::normalized(std::move(raw))); }

// Height of a torus point for an explicit family of monomial exponents
// (integer vectors in the character lattice): product over all places of the
// max of |t^mu|_v. Exact; only the support primes of t contribute.
inline Rational torus_monomial_height(const QVec& t, const std::vector<Vec>& monomials)
{
    if (monomials.empty()) throw std::invalid_argument("torus_monomial_height: empty monomial family");
    for (const auto& q : t)
        if (q == 0) throw std::invalid_argument("torus_monomial_height: zero coordinate");
    Rational h = 1;
    for (const auto& p : support_primes(t)) {
        // tbar = (-v_p(t_i)); local exponent = max over monomials of <mu, tbar>
        Vec tbar(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) tbar[i] = -valuation(t[i], p);
        Integer e = dot(monomials[0], tbar);
        for (const auto& mu : monomials) e = std::max(e, dot(mu, tbar));
        if (e >= 0)
            h *= Rational(pow_int(p, static_cast<unsigned long>(e)));
        else
            h /= Rational(pow_int(p, static_cast<unsigned long>(-e)));
    }
    Rational arch = 0;
    bool first = true;
    for (const auto& mu : monomials) {
        Rational v = 1;
        for (std::size_t i = 0; i < t.size(); ++i) {
            long e = mu[i].convert_to<long>();
            v *= pow_rat(t[i], e);
        }
        v = abs_rat(v);
        if (first || v > arch) {
            arch = v;
            first = false;
        }
    }
    return h * arch;
}

// Toric height of a convex PL function: H(t) = prod_v max_sigma |t^{m_sigma}|_v.
// Rational cone forms are handled by clearing denominators and taking the
// exact k-th root at the end; a failed root means the chosen metrization has
// irrational heights (possible for non-integral polarizations) and is
// reported as an error.
inline Rational toric_height(const TorusPoint& t, const PLFunction& phi)
{
    if (!phi.convex)
        throw std::domain_error(
            "toric_height: PL function is not convex; per-cone evaluation is out of scope");
    if (static_cast<int>(t.coords.size()) != phi.fan.dim)
        throw std::invalid_argument("toric_height: dimension mismatch");
    Integer k = 1;
    for (const auto& form : phi.cone_forms)
        for (const auto& c : form) k = k / gcd_int(k, den(c)) * den(c);
    std::vector<Vec> monomials;
    for (const auto& form : phi.cone_forms) {
        Vec mu(form.size());
        for (std::size_t i = 0; i < form.size(); ++i) mu[i] = num(form[i]) * (k / den(form[i]));
        bool seen = false;
        for (const auto& m : monomials) seen = seen || m == mu;
        if (!seen) monomials.push_back(std::move(mu));
    }
    Rational hk = torus_monomial_height(t.coords, monomials);
    if (k == 1) return hk;
    auto [root, ok] = exact_root(hk, static_cast<unsigned>(k.convert_to<unsigned long>()));
    if (!ok)
        throw std::domain_error("toric_height: height is irrational for this non-integral "
                                "polarization; use a monomial-section model instead");
    return root;
}

// --------------------------------------------------------------------------
// weighted-monomial height models

struct HeightModel {
    enum class Kind { StandardProjective, ToricPL, WeightedMonomial };
    Kind kind = Kind::StandardProjective;

    // WeightedMonomial: exponent vectors (one per monomial, length = #coords),
    // all of the same weighted degree.
    std::vector<long> weights;
    std::vector<Vec> monomials;
    Rational normalization_degree = 1;

    // ToricPL
    PLFunction phi;

    static HeightModel standard_projective()
    {
        HeightModel hm;
        hm.kind = Kind::StandardProjective;
        return hm;
    }
    static HeightModel toric(PLFunction f)
    {
        HeightModel hm;
        hm.kind = Kind::ToricPL;
        hm.phi = std::move(f);
        return hm;
    }
    static HeightModel weighted(std::vector<long> w, std::vector<Vec> monos,
                                Rational normalization = Rational(1))
    {
        if (monos.empty()) throw std::invalid_argument("HeightModel: empty monomial family");
        Integer deg0 = -1;
        for (const auto& mu : monos) {
            if (mu.size() != w.size()) throw std::invalid_argument("HeightModel: monomial length mismatch");
            Integer deg = 0;
            for (std::size_t i = 0; i < mu.size(); ++i) {
                if (mu[i] < 0) throw std::invalid_argument("HeightModel: negative exponent");
                deg += mu[i] * w[i];
            }
            if (deg0 < 0) deg0 = deg;
            if (deg != deg0)
                throw std::invalid_argument("HeightModel: monomial family has inconsistent weighted degree");
        }
        HeightModel hm;
        hm.kind = Kind::WeightedMonomial;
        hm.weights = std::move(w);
        hm.monomials = std::move(monos);
        hm.normalization_degree = std::move(normalization);
        return hm;
    }

    // The anticanonical height model of P(1,1,m). -K_W is not Cartier
    // unless m divides 2, so the model uses the sections of the Cartier
    // multiple m(-K_W) = O(m(m+2)) and reports heights through
    // normalization_degree = m; this is exactly the PL-metrized height of
    // the resolution (the section polytope of the multiple has lattice
    // vertices), the metric under which the counting exponents hold.
    static HeightModel weighted_plane_anticanonical(long m)
    {
        if (m < 2) throw std::invalid_argument("weighted_plane_anticanonical: m must be >= 2");
        std::vector<long> w = {1, 1, m};
        return weighted(w, monomials_of_weighted_degree(w, m * (m + 2)), Rational(m));
    }

    // All weighted monomials of the given degree (lattice points of the
    // section polytope), enumerated lexicographically.
    static std::vector<Vec> monomials_of_weighted_degree(const std::vector<long>& w, long degree)
    {
        std::vector<Vec> out;
        Vec cur(w.size(), Integer(0));
        std::function<void(std::size_t, long)> rec = [&](std::size_t i, long rem) {
            if (i + 1 == w.size()) {
                if (rem % w[i] == 0) {
                    cur[i] = rem / w[i];
                    out.push_back(cur);
                }
                return;
            }
            for (long e = 0; e * w[i] <= rem; ++e) {
                cur[i] = e;
                rec(i + 1, rem - e * w[i]);
            }
        };
        if (!w.empty()) rec(0, degree);
        return out;
    }
};

// Weighted height in the normalization-degree power scale:
// prod_v max over the monomial family of |mono(p)|_v, which equals
// H(p)^{normalization_degree}. Always an exact rational: the monomial values
// are integers on a normalized representative, so the finite places
// contribute exactly 1/gcd(values).
inline Rational weighted_height_power(const WeightedPoint& p, const HeightModel& hm)
{
    if (hm.kind != HeightModel::Kind::WeightedMonomial)
        throw std::invalid_argument("weighted_height: model kind is not weighted-monomial");
    if (hm.weights != p.weights) throw std::invalid_argument("weighted_height: weight mismatch");
    Integer maxabs = 0, g = 0;
    bool any_nonzero = false;
    for (const auto& mu : hm.monomials) {
        Integer v = 1;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            if (mu[i] == 0) continue;
            if (p.coords[i] == 0) {
                v = 0;
                break;
            }
            v *= pow_int(p.coords[i], mu[i].convert_to<unsigned long>());
        }
        if (v == 0) continue;
        any_nonzero = true;
        maxabs = std::max(maxabs, abs_int(v));
        g = gcd_int(g, v);
    }
    if (!any_nonzero)
        throw std::domain_error("weighted_height: every monomial vanishes at this point");
    return make_rational(maxabs, g);
}

// Height in the anticanonical scale: the exact normalization-degree-th root
// of the power-scale value. Heights of points meeting the singular locus
// deeply can be irrational in this scale; that is reported as an error (the
// power scale is always exact, and counting only ever compares powers).
inline Rational weighted_height(const WeightedPoint& p, const HeightModel& hm)
{
    Rational h = weighted_height_power(p, hm);
    if (hm.normalization_degree == 1) return h;
    if (den(hm.normalization_degree) != 1 || hm.normalization_degree <= 0)
        throw std::invalid_argument("weighted_height: normalization degree must be a positive integer");
    auto [root, ok] = exact_root(h, hm.normalization_degree.convert_to<unsigned>());
    if (!ok) throw std::domain_error("weighted_height: height is irrational in the anticanonical "
                                     "scale at this point; use weighted_height_power");
    return root;
}

// Torus-coordinate evaluation of a weighted-monomial model in the power
// scale: monomial x^mu evaluates as prod_{i>=1} t_i^{mu_i} on the point
// (1 : t_1 : ... : t_n). Exact, and a genuinely independent route from
// weighted_height_power (valuations of fractions against gcd of integer
// monomial values).
inline Rational weighted_model_torus_height_power(const QVec& t, const HeightModel& hm)
{
    if (hm.kind != HeightModel::Kind::WeightedMonomial)
        throw std::invalid_argument("weighted_model_torus_height: model kind is not weighted-monomial");
    if (t.size() + 1 != hm.weights.size())
        throw std::invalid_argument("weighted_model_torus_height: expected torus coordinates (1:t1:...:tn)");
    std::vector<Vec> family;
    for (const auto& mu : hm.monomials) family.push_back(Vec(mu.begin() + 1, mu.end()));
    return torus_monomial_height(t, family);
}

inline Rational weighted_model_torus_height(const QVec& t, const HeightModel& hm)
{
    Rational h = weighted_model_torus_height_power(t, hm);
    if (hm.normalization_degree == 1) return h;
    auto [root, ok] = exact_root(h, hm.normalization_degree.convert_to<unsigned>());
    if (!ok) throw std::domain_error("weighted_model_torus_height: height is irrational in the "
                                     "anticanonical scale at this point");
    return root;
}

// Integer representative of the point (1 : t_1 : ... : t_n) in a weighted
// projective space: scale by the smallest lambda making every coordinate
// integral, then normalize.
inline WeightedPoint weighted_point_from_torus(const std::vector<long>& weights, const QVec& t)
{
    if (t.size() + 1 != weights.size())
        throw std::invalid_argument("weighted_point_from_torus: coordinate count mismatch");
    if (weights[0] != 1)
        throw std::invalid_argument("weighted_point_from_torus: leading weight must be 1");
    Integer lambda = 1;
    for (std::size_t i = 0; i < t.size(); ++i) {
        long w = weights[i + 1];
        for (const auto& [p, e] : factor_integer(den(t[i]))) {
            long need = (e + w - 1) / w; // ceil(e / w)
            Integer pe = pow_int(p, static_cast<unsigned long>(need));
            Integer cur = 1;
            Integer l = lambda;
            while (l % p == 0) {
                cur *= p;
                l /= p;
            }
            if (cur < pe) lambda *= pe / cur;
        }
    }
    Vec coords;
    coords.push_back(lambda);
    for (std::size_t i = 0; i < t.size(); ++i) {
        Rational v = pow_rat(Rational(lambda), weights[i + 1]) * t[i];
        if (den(v) != 1) throw std::logic_error("weighted_point_from_torus: clearing failed");
        coords.push_back(num(v));
    }
    return WeightedPoint::normalized(weights, std::move(coords));
}

// --------------------------------------------------------------------------
// the cubic surface xyz = u^3

// Embedding of a torus point (x, y) into P^3 as (x : y : (xy)^{-1} : 1),
// cleared to a primitive integer quadruple with positive u-coordinate.
inline ProjectivePoint cubic_embed(const Rational& x, const Rational& y)
{
    if (x == 0 || y == 0) throw std::invalid_argument("cubic_embed: torus coordinates must be nonzero");
    Rational z = Rational(1) / (x * y);
    Integer l = den(x);
    l = l / gcd_int(l, den(y)) * den(y);
    l = l / gcd_int(l, den(z)) * den(z);
    Vec c = {num(x) * (l / den(x)), num(y) * (l / den(y)), num(z) * (l / den(z)), l};
    c = primitivize(std::move(c));
    if (c[3] < 0)
        for (auto& v : c) v = -v;
    return ProjectivePoint{std::move(c)};
}

// The anticanonical PL function of the (resolved) cubic fan; its three
// distinct cone forms are x, y and (xy)^{-1}.
inline PLFunction cubic_height_pl()
{
    return anticanonical_pl(resolve_fan_2d(fan_cubic_xyz_u3()));
}

} // namespace ratcount
