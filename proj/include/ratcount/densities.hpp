// Local and global Tamagawa data: Denef's strata formula for local
// densities, Artin convergence factors for the split torus, the truncated
// Euler product with an explicit tail enclosure, and the exact archimedean
// density of a positive PL function.
#pragma once

#include "ratcount/picard.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace ratcount {

struct RigidDivisorData {
    struct Component {
        int id = 0;        // divisor identifier (ray index for toric data)
        Rational r;        // multiplicity r_j > 0
        int b = 1;         // residue orbit length; 1 in the split case
    };
    std::vector<Component> components;

    static RigidDivisorData none() { return {}; }
    bool empty() const { return components.empty(); }

    void validate() const
    {
        for (const auto& c : components) {
            if (c.r <= 0) throw std::invalid_argument("RigidDivisorData: multiplicities must be positive");
            if (c.b < 1) throw std::invalid_argument("RigidDivisorData: orbit length must be >= 1");
        }
    }
};

using StrataCounts = std::map<std::vector<int>, Integer>; // J (sorted ids) -> #D_J^o(F_q)

// Denef's formula:
//   d = c_empty / q^n + q^{-n} * sum_{J != empty} c_J prod_{j in J}
//         (q^{b_j} - 1) / (q^{b_j (r_j + 1)} - 1).
// Requires a count for every subset of the component ids (zero counts must
// be supplied explicitly) and integral exponents b_j (r_j + 1).
inline Rational denef_density(const StrataCounts& strata, const Integer& q, int n,
                              const RigidDivisorData& rigid)
{
    if (q < 2) throw std::invalid_argument("denef_density: q must be >= 2");
    if (n < 0) throw std::invalid_argument("denef_density: negative dimension");
    rigid.validate();
    std::map<int, RigidDivisorData::Component> by_id;
    for (const auto& c : rigid.components) {
        if (!by_id.emplace(c.id, c).second)
            throw std::invalid_argument("denef_density: duplicate component id");
    }
    std::vector<int> ids;
    for (const auto& [id, c] : by_id) ids.push_back(id);

    const Integer qn = pow_int(q, static_cast<unsigned long>(n));
    Rational total = 0;
    const std::size_t l = ids.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << l); ++mask) {
        std::vector<int> J;
        for (std::size_t i = 0; i < l; ++i)
            if (mask & (std::size_t(1) << i)) J.push_back(ids[i]);
        auto it = strata.find(J);
        if (it == strata.end()) {
            std::string key = "{";
            for (std::size_t i = 0; i < J.size(); ++i) key += (i ? "," : "") + std::to_string(J[i]);
            key += "}";
            throw std::invalid_argument("denef_density: incomplete strata, missing count for J = " + key);
        }
        Rational term = make_rational(it->second, qn);
        for (int id : J) {
            const auto& c = by_id.at(id);
            Rational exponent = Rational(c.b) * (c.r + 1);
            if (den(exponent) != 1 || exponent <= 0)
                throw std::invalid_argument(
                    "denef_density: b_j (r_j + 1) must be a positive integer after clearing "
                    "denominators");
            Integer e = num(exponent);
            term *= make_rational(pow_int(q, static_cast<unsigned long>(c.b)) - 1,
                                  pow_int(q, e.convert_to<unsigned long>()) - 1);
        }
        total += term;
    }
    return total;
}

// lambda_v = L_v(1, Pic(X \ union D_i)) = (1 - 1/q)^{-rank} for the split
// (trivial Galois) case.
inline Rational convergence_factor(const Integer& q, int picard_rank)
{
    if (q < 2) throw std::invalid_argument("convergence_factor: q must be >= 2");
    if (picard_rank < 0) throw std::invalid_argument("convergence_factor: negative rank");
    Rational one_minus = make_rational(q - 1, q);
    Rational lam = 1;
    for (int i = 0; i < picard_rank; ++i) lam /= one_minus;
    return lam;
}

// Strata counts of the toric boundary configuration: for a subset J of the
// rigid ray ids, c_J = sum over cones sigma with rays(sigma) /\ ids = J of
// (q-1)^(dim - dim sigma).
inline StrataCounts toric_strata_counts(const Fan& fan, const std::vector<int>& rigid_ids,
                                        const Integer& q)
{
    StrataCounts counts;
    std::set<int> idset(rigid_ids.begin(), rigid_ids.end());
    const std::size_t l = rigid_ids.size();
    std::vector<int> sorted_ids(idset.begin(), idset.end());
    for (std::size_t mask = 0; mask < (std::size_t(1) << l); ++mask) {
        std::vector<int> J;
        for (std::size_t i = 0; i < l; ++i)
            if (mask & (std::size_t(1) << i)) J.push_back(sorted_ids[i]);
        counts[J] = 0;
    }
    for (const auto& face : fan_faces(fan)) {
        std::vector<int> J;
        for (int i : face)
            if (idset.count(i)) J.push_back(i);
        // only faces whose rigid part is exactly J and which are not cut away
        counts[J] += pow_int(q - 1, static_cast<unsigned long>(fan.dim - static_cast<int>(face.size())));
    }
    return counts;
}

struct LocalDensity {
    long place = 0; // prime, or 0 for the archimedean place
    Rational value; // exact in every case handled here (PL integrals are rational)

    bool archimedean() const { return place == 0; }
};

struct EulerProductResult {
    long truncation_prime = 0;                         // P
    double partial_value = 1.0;                        // product of exact factors, floated once
    double tail_bound = 0.0;                           // bound on |log(full/partial)|
    std::vector<std::pair<long, Rational>> factor_table; // (p, exact factor)

    double lower() const { return partial_value * std::exp(-tail_bound); }
    double upper() const { return partial_value * std::exp(tail_bound); }
};

inline std::vector<long> primes_up_to(long n)
{
    std::vector<long> primes;
    if (n < 2) return primes;
    std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
    for (long p = 2; p <= n; ++p) {
        if (comp[static_cast<std::size_t>(p)]) continue;
        primes.push_back(p);
        for (long k = p * p; k <= n; k += p) comp[static_cast<std::size_t>(k)] = true;
    }
    return primes;
}

// Finite part of the Tamagawa number: product over p <= P of
// lambda_p^{-1} d_p, with d_p from Denef's formula on the toric strata of the
// rigid components. Factors are kept exact; the product is floated once.
//
// Tail: each factor satisfies |factor - 1| <= C / p^{1+eps}. For split toric
// data with no rigid components the point count is a polynomial in p and the
// 1/p term cancels against lambda, giving eps = 1; rigid components of
// multiplicity r_j contribute terms of order p^{-(1+r_j)} on top of the
// generic p^{-3/2} cohomological bound, so eps = min(1/2, r_j) there.
// C = rank^2 + 2 rank over-approximates every configuration in scope. The
// reported bound is sum_{m > P} C m^{-1-eps} <= C / (eps P^eps).
inline EulerProductResult tau_finite(const Fan& fan, const PicardModel& pm,
                                     const RigidDivisorData& rigid, long P)
{
    if (P < 2) throw std::invalid_argument("tau_finite: truncation bound must be >= 2");
    rigid.validate();
    std::vector<int> ids;
    for (const auto& c : rigid.components) ids.push_back(c.id);
    const int quotient_rank = pm.rank - static_cast<int>(ids.size());
    if (quotient_rank < 0) throw std::invalid_argument("tau_finite: more rigid components than rank");

    EulerProductResult res;
    res.truncation_prime = P;
    Rational product = 1;
    for (long p : primes_up_to(P)) {
        Integer q(p);
        Rational d = denef_density(toric_strata_counts(fan, ids, q), q, fan.dim, rigid);
        Rational factor = d / convergence_factor(q, quotient_rank);
        res.factor_table.emplace_back(p, factor);
        product *= factor;
    }
    res.partial_value = to_double(product);

    double eps = rigid.empty() ? 1.0 : 0.5;
    for (const auto& c : rigid.components) eps = std::min(eps, to_double(c.r));
    const double C = static_cast<double>(pm.rank) * pm.rank + 2.0 * pm.rank;
    res.tail_bound = C / (eps * std::pow(static_cast<double>(P), eps));
    return res;
}

// d_p for the toric model at a single good prime (the anticanonical measure
// of the boundary configuration of the rigid components).
inline LocalDensity local_density(const Fan& fan, const RigidDivisorData& rigid, long p)
{
    if (p < 2) throw std::invalid_argument("local_density: prime must be >= 2");
    std::vector<int> ids;
    for (const auto& c : rigid.components) ids.push_back(c.id);
    Integer q(p);
    return LocalDensity{p, denef_density(toric_strata_counts(fan, ids, q), q, fan.dim, rigid)};
}

// Archimedean density of a PL function with positive ray values: the exact
// value of 2^dim * integral over N_R of e^{-phi(y)} dy, evaluated cone by
// cone (det / prod of ray values); the 2^dim counts the components of the
// real torus.
inline Rational tau_archimedean(const Fan& fan, const PLFunction& phi)
{
    validate_fan(fan);
    if (!fan_is_complete(fan)) throw std::invalid_argument("tau_archimedean: fan is not complete");
    if (!fan_is_smooth(fan)) throw std::invalid_argument("tau_archimedean: fan is not smooth");
    if (phi.ray_values.size() != fan.rays.size())
        throw std::invalid_argument("tau_archimedean: PL function does not match the fan");
    for (const auto& v : phi.ray_values)
        if (v <= 0)
            throw std::domain_error("tau_archimedean: divergence, a ray value is not positive");
    Rational total = 0;
    for (const auto& sigma : fan.max_cones) {
        Mat rows;
        Rational denom = 1;
        for (int i : sigma) {
            rows.push_back(fan.rays[static_cast<std::size_t>(i)]);
            denom *= phi.ray_values[static_cast<std::size_t>(i)];
        }
        total += Rational(abs_int(det(rows))) / denom;
    }
    return total * Rational(pow_int(2, static_cast<unsigned long>(fan.dim)));
}

// delta = #H^1(Gal, Pic(V,L)): 1 in the split case, everything else is out
// of scope.
inline Integer compute_delta(bool split)
{
    if (!split)
        throw std::invalid_argument("compute_delta: non-split Galois module out of scope");
    return 1;
}

} // namespace ratcount
