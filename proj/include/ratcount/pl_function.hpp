// Integral (and rational) piecewise linear functions on a complete fan.
// These encode equivariant line bundles; the anticanonical one has value 1 on
// every primitive ray generator.
#pragma once

#include "ratcount/fan.hpp"

#include <stdexcept>
#include <vector>

namespace ratcount {

struct PLFunction {
    Fan fan;                       // owning copy; fans are small
    QVec ray_values;               // value on each primitive ray generator
    std::vector<QVec> cone_forms;  // linear form per maximal cone
    bool convex = false;           // phi(y) = max over forms everywhere
    bool strictly_convex = false;  // equality only on the own cone (ample)

    const QVec& form(std::size_t max_cone_index) const { return cone_forms.at(max_cone_index); }

    // Evaluate at a lattice point: max over the forms when convex, otherwise
    // by locating a containing cone.
    Rational value(const QVec& y) const
    {
        if (convex) {
            bool first = true;
            Rational best = 0;
            for (const auto& m : cone_forms) {
                Rational v = dot(m, y);
                if (first || v > best) {
                    best = v;
                    first = false;
                }
            }
            return best;
        }
        for (std::size_t ci = 0; ci < fan.max_cones.size(); ++ci)
            if (cone_contains_direction(fan, fan.max_cones[ci], y)) return dot(cone_forms[ci], y);
        throw std::domain_error("PLFunction::value: point not covered by the fan");
    }
    Rational value(const Vec& y) const { return value(to_qvec(y)); }
};

// Build from ray values: the form of each maximal cone solves
// <m_sigma, e_rho> = value(rho) on its own rays. Shared faces agree by
// construction. Convexity means every form stays <= the ray values on
// foreign rays (so phi is the max of its pieces).
inline PLFunction pl_from_ray_values(const Fan& fan, QVec ray_values)
{
    validate_fan(fan);
    if (ray_values.size() != fan.rays.size())
        throw std::invalid_argument("pl_from_ray_values: one value per ray required");
    PLFunction phi;
    phi.fan = fan;
    phi.ray_values = std::move(ray_values);
    for (const auto& sigma : fan.max_cones) {
        if (static_cast<int>(sigma.size()) != fan.dim)
            throw std::invalid_argument("pl_from_ray_values: fan must have full-dimensional cones");
        Mat m;
        QVec rhs;
        for (int i : sigma) {
            m.push_back(fan.rays[static_cast<std::size_t>(i)]);
            rhs.push_back(phi.ray_values[static_cast<std::size_t>(i)]);
        }
        phi.cone_forms.push_back(solve(m, rhs));
    }
    phi.convex = true;
    phi.strictly_convex = true;
    for (std::size_t ci = 0; ci < fan.max_cones.size(); ++ci) {
        const auto& sigma = fan.max_cones[ci];
        for (std::size_t rho = 0; rho < fan.rays.size(); ++rho) {
            Rational v = dot(phi.cone_forms[ci], to_qvec(fan.rays[rho]));
            bool own = std::find(sigma.begin(), sigma.end(), static_cast<int>(rho)) != sigma.end();
            if (own) continue; // equals the ray value by construction
            if (v > phi.ray_values[rho]) phi.convex = false;
            if (v >= phi.ray_values[rho]) phi.strictly_convex = false;
        }
    }
    if (!phi.convex) phi.strictly_convex = false;
    return phi;
}

// The anticanonical PL function: value 1 on every ray.
inline PLFunction anticanonical_pl(const Fan& fan)
{
    return pl_from_ray_values(fan, QVec(fan.rays.size(), Rational(1)));
}

} // namespace ratcount
