// The Picard lattice of a smooth complete split toric variety, boundary
// divisor classes, the effective cone, and the invariants alpha, beta, gamma.
#pragma once

#include "ratcount/pl_function.hpp"

#include <stdexcept>
#include <vector>

namespace ratcount {

struct PicardModel {
    int rank = 0;
    Fan fan;
    std::vector<Vec> divisor_classes; // class of D_rho per ray, in a fixed basis
    Vec canonical_class;              // K = -sum of divisor classes
    RationalCone effective_cone;      // spanned by the divisor classes
};

// Divisor classes as a cokernel basis of M -> Z^rays, m |-> (<m, e_rho>).
// The basis is chosen so that the rays outside the first maximal cone map to
// unit vectors; the first cone's rays are expressed through the dual basis.
inline PicardModel build_picard(const Fan& fan)
{
    validate_fan(fan);
    if (!fan_is_complete(fan))
        throw std::invalid_argument("build_picard: fan is not complete");
    if (!fan_is_smooth(fan))
        throw std::invalid_argument("build_picard: fan is not smooth; resolve it first");

    PicardModel pm;
    pm.fan = fan;
    const int d = fan.dim;
    const int nrays = static_cast<int>(fan.rays.size());
    pm.rank = nrays - d;
    if (pm.rank < 0) throw std::logic_error("build_picard: fewer rays than the dimension");

    const auto& sigma0 = fan.max_cones.front();
    std::vector<bool> in_sigma0(static_cast<std::size_t>(nrays), false);
    for (int i : sigma0) in_sigma0[static_cast<std::size_t>(i)] = true;

    // basis positions for the rays outside sigma0, in ray order
    std::vector<int> pos(static_cast<std::size_t>(nrays), -1);
    int next = 0;
    for (int i = 0; i < nrays; ++i)
        if (!in_sigma0[static_cast<std::size_t>(i)]) pos[static_cast<std::size_t>(i)] = next++;

    // dual basis of the sigma0 rays: rows m_j with <m_j, e_{sigma0[k]}> = delta_jk
    Mat rays0;
    for (int i : sigma0) rays0.push_back(fan.rays[static_cast<std::size_t>(i)]);
    std::vector<QVec> dual_basis;
    for (int j = 0; j < d; ++j) {
        QVec rhs(static_cast<std::size_t>(d), Rational(0));
        rhs[static_cast<std::size_t>(j)] = 1;
        dual_basis.push_back(solve(rays0, rhs));
    }

    pm.divisor_classes.assign(static_cast<std::size_t>(nrays), Vec(static_cast<std::size_t>(pm.rank), Integer(0)));
    for (int i = 0; i < nrays; ++i)
        if (!in_sigma0[static_cast<std::size_t>(i)])
            pm.divisor_classes[static_cast<std::size_t>(i)][static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])] = 1;
    // D_{sigma0[j]} = - sum over foreign rays of <m_j, e_rho> D_rho  (mod principal)
    for (int j = 0; j < d; ++j) {
        Vec cls(static_cast<std::size_t>(pm.rank), Integer(0));
        for (int i = 0; i < nrays; ++i) {
            if (in_sigma0[static_cast<std::size_t>(i)]) continue;
            Rational c = dot(fan.rays[static_cast<std::size_t>(i)], dual_basis[static_cast<std::size_t>(j)]);
            if (den(c) != 1) throw std::logic_error("build_picard: non-integral pairing on a smooth fan");
            cls[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])] -= num(c);
        }
        pm.divisor_classes[static_cast<std::size_t>(sigma0[static_cast<std::size_t>(j)])] = cls;
    }

    pm.canonical_class.assign(static_cast<std::size_t>(pm.rank), Integer(0));
    for (const auto& cls : pm.divisor_classes)
        for (int k = 0; k < pm.rank; ++k) pm.canonical_class[static_cast<std::size_t>(k)] -= cls[static_cast<std::size_t>(k)];

    if (pm.rank >= 1)
        pm.effective_cone = RationalCone::from_generators(pm.rank, pm.divisor_classes);
    else
        throw std::invalid_argument("build_picard: rank zero Picard lattice is out of scope");
    return pm;
}

// Class of the line bundle of a PL function: sum of ray values times classes.
inline QVec pl_class(const PicardModel& pm, const PLFunction& phi)
{
    if (phi.ray_values.size() != pm.divisor_classes.size())
        throw std::invalid_argument("pl_class: PL function does not match the Picard model");
    QVec cls(static_cast<std::size_t>(pm.rank), Rational(0));
    for (std::size_t rho = 0; rho < pm.divisor_classes.size(); ++rho)
        for (int k = 0; k < pm.rank; ++k)
            cls[static_cast<std::size_t>(k)] += phi.ray_values[rho] * Rational(pm.divisor_classes[rho][static_cast<std::size_t>(k)]);
    return cls;
}

inline QVec anticanonical_class(const PicardModel& pm)
{
    QVec mk(static_cast<std::size_t>(pm.rank));
    for (int k = 0; k < pm.rank; ++k) mk[static_cast<std::size_t>(k)] = Rational(-pm.canonical_class[static_cast<std::size_t>(k)]);
    return mk;
}

// alpha: inf { t : t [L] + [K] effective }, exact.
inline Rational compute_alpha(const PicardModel& pm, const QVec& l_class)
{
    return min_shift(pm.effective_cone, l_class, to_qvec(pm.canonical_class));
}

// beta: rank of the L-Picard group in the split case, rank - (number of
// rigid components).
inline int compute_beta(const PicardModel& pm, int rigid_component_count)
{
    if (rigid_component_count < 0 || rigid_component_count > pm.rank)
        throw std::invalid_argument("compute_beta: rigid component count out of range");
    return pm.rank - rigid_component_count;
}

// gamma: X-function of the effective cone at the anticanonical class, in the
// full Picard lattice (the rigid-quotient bookkeeping is only defined here
// for zero rigid components; callers with explicit quotient data use
// x_function directly).
inline Rational compute_gamma(const PicardModel& pm)
{
    QVec mk = anticanonical_class(pm);
    if (!pm.effective_cone.strictly_contains(mk))
        throw std::domain_error("compute_gamma: anticanonical class is not interior, X-function diverges");
    return x_function(pm.effective_cone, mk);
}

} // namespace ratcount
