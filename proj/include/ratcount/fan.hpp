// Complete rational simplicial fans, their orbit combinatorics, and the
// 2-dimensional crepant-style resolution by boundary lattice points.
#pragma once

#include "ratcount/cone.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratcount {

struct Fan {
    int dim = 0;
    std::vector<Vec> rays;                  // primitive, pairwise distinct
    std::vector<std::vector<int>> max_cones; // ray-index sets; faces implied
};

namespace detail {

inline void check_fan_basic(const Fan& f)
{
    if (f.dim < 1) throw std::invalid_argument("Fan: dimension must be >= 1");
    std::set<Vec> seen;
    for (const auto& r : f.rays) {
        if (static_cast<int>(r.size()) != f.dim) throw std::invalid_argument("Fan: ray of wrong length");
        if (is_zero(r)) throw std::invalid_argument("Fan: zero ray");
        if (primitivize(r) != r) throw std::invalid_argument("Fan: ray is not primitive");
        if (!seen.insert(r).second) throw std::invalid_argument("Fan: duplicate ray");
    }
    if (f.max_cones.empty()) throw std::invalid_argument("Fan: no maximal cones");
    for (const auto& sigma : f.max_cones) {
        Mat rows;
        for (int i : sigma) {
            if (i < 0 || i >= static_cast<int>(f.rays.size()))
                throw std::invalid_argument("Fan: cone refers to a missing ray");
            rows.push_back(f.rays[static_cast<std::size_t>(i)]);
        }
        if (rank(rows) != static_cast<int>(sigma.size()))
            throw std::invalid_argument("Fan: cone rays are linearly dependent (non-simplicial)");
    }
}

} // namespace detail

inline void validate_fan(const Fan& f) { detail::check_fan_basic(f); }

// All faces of all maximal cones as sorted ray-index sets, including the
// zero cone (empty set). Simplicial cones make this pure subset enumeration.
inline std::set<std::vector<int>> fan_faces(const Fan& f)
{
    std::set<std::vector<int>> faces;
    faces.insert(std::vector<int>{});
    for (auto sigma : f.max_cones) {
        std::sort(sigma.begin(), sigma.end());
        const std::size_t n = sigma.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
            std::vector<int> face;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::size_t(1) << i)) face.push_back(sigma[i]);
            faces.insert(face);
        }
    }
    return faces;
}

inline bool fan_is_smooth(const Fan& f)
{
    for (const auto& sigma : f.max_cones) {
        if (static_cast<int>(sigma.size()) != f.dim) return false;
        Mat rows;
        for (int i : sigma) rows.push_back(f.rays[static_cast<std::size_t>(i)]);
        if (abs_int(det(rows)) != 1) return false;
    }
    return true;
}

// Membership of a rational direction in a simplicial full-dimensional cone.
inline bool cone_contains_direction(const Fan& f, const std::vector<int>& sigma, const QVec& x)
{
    Mat m(static_cast<std::size_t>(f.dim), Vec(static_cast<std::size_t>(f.dim)));
    for (int j = 0; j < f.dim; ++j)
        for (int i = 0; i < f.dim; ++i)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                f.rays[static_cast<std::size_t>(sigma[static_cast<std::size_t>(j)])][static_cast<std::size_t>(i)];
    QVec c = solve(m, x);
    return std::all_of(c.begin(), c.end(), [](const Rational& q) { return q >= 0; });
}

// Completeness: every wall ((dim-1)-face) bounds exactly two maximal cones,
// and random rational directions always land in some maximal cone.
inline bool fan_is_complete(const Fan& f, unsigned samples = 64)
{
    for (const auto& sigma : f.max_cones)
        if (static_cast<int>(sigma.size()) != f.dim) return false;
    std::map<std::vector<int>, int> wall_count;
    for (auto sigma : f.max_cones) {
        std::sort(sigma.begin(), sigma.end());
        for (std::size_t drop = 0; drop < sigma.size(); ++drop) {
            std::vector<int> wall;
            for (std::size_t i = 0; i < sigma.size(); ++i)
                if (i != drop) wall.push_back(sigma[i]);
            ++wall_count[wall];
        }
    }
    for (const auto& [wall, cnt] : wall_count)
        if (cnt != 2) return false;
    std::mt19937_64 rng(20240811);
    for (unsigned s = 0; s < samples; ++s) {
        QVec x(static_cast<std::size_t>(f.dim));
        for (auto& q : x)
            q = Rational(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 17));
        bool covered = false;
        for (const auto& sigma : f.max_cones)
            if (cone_contains_direction(f, sigma, x)) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Orbit strata over finite fields

struct StrataDescriptor {
    std::vector<int> ray_subset;  // J, sorted
    int orbit_dimension = -1;     // dim - |J| when the stratum exists
    bool exists = false;          // J spans a cone of the fan
};

inline StrataDescriptor strata_descriptor(const Fan& f, std::vector<int> J)
{
    std::sort(J.begin(), J.end());
    StrataDescriptor d;
    d.ray_subset = J;
    d.exists = fan_faces(f).count(J) > 0;
    if (d.exists) d.orbit_dimension = f.dim - static_cast<int>(J.size());
    return d;
}

// #D_J^o(F_q): (q-1)^(dim-|J|) when J spans a cone of the fan, else 0.
// J = {} is the open torus.
inline Integer strata_count(const Fan& f, std::vector<int> J, const Integer& q)
{
    if (q < 2) throw std::invalid_argument("strata_count: q must be >= 2");
    for (int i : J)
        if (i < 0 || i >= static_cast<int>(f.rays.size()))
            throw std::invalid_argument("strata_count: invalid ray index");
    std::sort(J.begin(), J.end());
    if (std::adjacent_find(J.begin(), J.end()) != J.end())
        throw std::invalid_argument("strata_count: repeated ray index");
    auto faces = fan_faces(f);
    if (!faces.count(J)) return 0;
    return pow_int(q - 1, static_cast<unsigned long>(f.dim - static_cast<int>(J.size())));
}

// #X(F_q) for the smooth complete toric variety of the fan: sum over all
// cones of (q-1)^(dim - dim sigma).
inline Integer count_points_mod_q(const Fan& f, const Integer& q)
{
    if (q < 2) throw std::invalid_argument("count_points_mod_q: q must be >= 2");
    Integer total = 0;
    for (const auto& face : fan_faces(f))
        total += pow_int(q - 1, static_cast<unsigned long>(f.dim - static_cast<int>(face.size())));
    return total;
}

// ---------------------------------------------------------------------------
// 2d resolution

namespace detail {

inline Integer det2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

// Primitive lattice points on the compact boundary of conv(sigma /\ N \ {0})
// for sigma = cone(a,b) with det(a,b) > 0, listed from a to b inclusive.
inline std::vector<Vec> boundary_chain(const Vec& a, const Vec& b)
{
    // candidate points: integer points of the fundamental parallelogram
    // {s a + t b : 0 <= s,t <= 1} (the Hilbert basis lives there)
    Integer d = det2(a, b);
    std::vector<Vec> pts;
    Integer xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (const Vec& v : {Vec{Integer(0), Integer(0)}, a, b, add(a, b)}) {
        xmin = std::min(xmin, v[0]);
        xmax = std::max(xmax, v[0]);
        ymin = std::min(ymin, v[1]);
        ymax = std::max(ymax, v[1]);
    }
    for (Integer x = xmin; x <= xmax; ++x) {
        for (Integer y = ymin; y <= ymax; ++y) {
            Vec p = {x, y};
            if (is_zero(p)) continue;
            // p = s a + t b with s = det(p,b)/d, t = det(a,p)/d
            Rational s(det2(p, b), d), t(det2(a, p), d);
            if (s < 0 || s > 1 || t < 0 || t > 1) continue;
            if (primitivize(p) != p) continue;
            pts.push_back(p);
        }
    }
    // sort counterclockwise from a to b
    std::sort(pts.begin(), pts.end(), [](const Vec& p, const Vec& q) {
        Integer c = det2(p, q);
        if (c != 0) return c > 0;
        return p < q; // distinct primitive points are never parallel here
    });
    // convex chain nearest the origin: keep strict right turns
    std::vector<Vec> chain;
    for (const auto& p : pts) {
        while (chain.size() >= 2) {
            const Vec& u = chain[chain.size() - 2];
            const Vec& v = chain[chain.size() - 1];
            Vec uv = {v[0] - u[0], v[1] - u[1]};
            Vec vp = {p[0] - v[0], p[1] - v[1]};
            if (det2(uv, vp) >= 0)
                chain.pop_back();
            else
                break;
        }
        chain.push_back(p);
    }
    // expand hull edges with their interior lattice points
    std::vector<Vec> full;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        const Vec& u = chain[i];
        const Vec& v = chain[i + 1];
        Vec step = {v[0] - u[0], v[1] - u[1]};
        Integer g = gcd_int(step[0], step[1]);
        full.push_back(u);
        if (g > 1) {
            Vec unit = {step[0] / g, step[1] / g};
            for (Integer k = 1; k < g; ++k) {
                Vec w = {u[0] + k * unit[0], u[1] + k * unit[1]};
                if (primitivize(w) != w)
                    throw std::logic_error("boundary_chain: non-primitive boundary point");
                full.push_back(w);
            }
        }
    }
    full.push_back(chain.back());
    if (full.front() != a || full.back() != b)
        throw std::logic_error("boundary_chain: chain does not join the generators");
    return full;
}

} // namespace detail

// Resolution of a complete 2d fan: inserts, for each singular cone, the
// primitive lattice points on the compact boundary of conv(sigma /\ N \ 0).
// Idempotent; the input rays are preserved.
inline Fan resolve_fan_2d(const Fan& f)
{
    validate_fan(f);
    if (f.dim != 2) throw std::invalid_argument("resolve_fan_2d: only dimension 2 is supported");
    Fan out;
    out.dim = 2;
    out.rays = f.rays;
    auto ray_index = [&out](const Vec& v) {
        for (std::size_t i = 0; i < out.rays.size(); ++i)
            if (out.rays[i] == v) return static_cast<int>(i);
        out.rays.push_back(v);
        return static_cast<int>(out.rays.size() - 1);
    };
    for (const auto& sigma : f.max_cones) {
        if (sigma.size() != 2) throw std::invalid_argument("resolve_fan_2d: fan is not complete");
        Vec a = f.rays[static_cast<std::size_t>(sigma[0])];
        Vec b = f.rays[static_cast<std::size_t>(sigma[1])];
        if (detail::det2(a, b) < 0) std::swap(a, b);
        auto chain = detail::boundary_chain(a, b);
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            if (abs_int(detail::det2(chain[i], chain[i + 1])) != 1)
                throw std::logic_error("resolve_fan_2d: resolved subcone is not unimodular");
            out.max_cones.push_back({ray_index(chain[i]), ray_index(chain[i + 1])});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Stock fans

inline Fan fan_projective_space(int n)
{
    if (n < 1) throw std::invalid_argument("fan_projective_space: n must be >= 1");
    Fan f;
    f.dim = n;
    for (int i = 0; i < n; ++i) {
        Vec e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(i)] = 1;
        f.rays.push_back(e);
    }
    f.rays.push_back(Vec(static_cast<std::size_t>(n), Integer(-1)));
    for (int drop = 0; drop <= n; ++drop) {
        std::vector<int> sigma;
        for (int i = 0; i <= n; ++i)
            if (i != drop) sigma.push_back(i);
        f.max_cones.push_back(sigma);
    }
    return f;
}

// Fan of the Hirzebruch surface F_m: rays (1,0),(0,1),(-1,-m),(0,-1).
// For m = 0 this is P1 x P1.
inline Fan fan_hirzebruch(long m)
{
    if (m < 0) throw std::invalid_argument("fan_hirzebruch: m must be >= 0");
    Fan f;
    f.dim = 2;
    f.rays = {Vec{Integer(1), Integer(0)}, Vec{Integer(0), Integer(1)},
              Vec{Integer(-1), Integer(-m)}, Vec{Integer(0), Integer(-1)}};
    f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    return f;
}

// Fan of the weighted projective plane P(1,1,m): rays (1,0),(0,1),(-1,-m).
inline Fan fan_weighted_plane(long m)
{
    if (m < 1) throw std::invalid_argument("fan_weighted_plane: m must be >= 1");
    Fan f;
    f.dim = 2;
    f.rays = {Vec{Integer(1), Integer(0)}, Vec{Integer(0), Integer(1)}, Vec{Integer(-1), Integer(-m)}};
    f.max_cones = {{0, 1}, {1, 2}, {2, 0}};
    return f;
}

// Fan of the cubic surface xyz = u^3: rays (-2,1),(1,-2),(1,1).
inline Fan fan_cubic_xyz_u3()
{
    Fan f;
    f.dim = 2;
    f.rays = {Vec{Integer(-2), Integer(1)}, Vec{Integer(1), Integer(-2)}, Vec{Integer(1), Integer(1)}};
    f.max_cones = {{1, 2}, {0, 2}, {0, 1}};
    return f;
}

inline Fan fan_product(const Fan& a, const Fan& b)
{
    Fan f;
    f.dim = a.dim + b.dim;
    for (const auto& r : a.rays) {
        Vec v = r;
        v.resize(static_cast<std::size_t>(f.dim), Integer(0));
        f.rays.push_back(v);
    }
    for (const auto& r : b.rays) {
        Vec v(static_cast<std::size_t>(a.dim), Integer(0));
        v.insert(v.end(), r.begin(), r.end());
        f.rays.push_back(v);
    }
    const int off = static_cast<int>(a.rays.size());
    for (const auto& sa : a.max_cones)
        for (const auto& sb : b.max_cones) {
            std::vector<int> sigma = sa;
            for (int i : sb) sigma.push_back(off + i);
            f.max_cones.push_back(sigma);
        }
    return f;
}

} // namespace ratcount
