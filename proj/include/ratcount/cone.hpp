// Rational polyhedral cones: duality, triangulation, the X-function and the
// parametric boundary shift behind the alpha invariant.
//
// Cones are kept in both representations. Conversion is an exhaustive search
// over generator subsets, which is exact and entirely adequate at the sizes
// this library meets (<= 12 generators, ambient dimension <= 7; hard cap 16).
#pragma once

#include "ratcount/linalg.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratcount {

constexpr int kMaxConeDim = 16;

struct SimplicialPiece {
    std::vector<Vec> rays;       // linearly independent
    Integer lattice_determinant; // index of the ray span in the ambient lattice
};

namespace detail {

inline std::string vec_str(const Vec& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

// All inner facet normals of cone(gens) when the cone is full-dimensional:
// candidate normals are kernels of (d-1)-subsets of generators, kept when one
// orientation supports every generator.
inline std::vector<Vec> facet_normals_full_dim(const std::vector<Vec>& gens, int dim)
{
    const std::size_t d = static_cast<std::size_t>(dim);
    std::set<Vec> found;
    auto try_subset = [&](const std::vector<std::size_t>& s) {
        Mat rows;
        for (auto i : s) rows.push_back(gens[i]);
        Vec u = hyperplane_normal(rows, d);
        if (u.empty()) return;
        bool ok_pos = true, ok_neg = true;
        for (const auto& g : gens) {
            Integer p = dot(u, g);
            if (p < 0) ok_pos = false;
            if (p > 0) ok_neg = false;
            if (!ok_pos && !ok_neg) return;
        }
        if (ok_pos) found.insert(u);
        else if (ok_neg) found.insert(negate(u));
    };
    if (d == 1) {
        try_subset({});
    } else {
        const std::size_t k = d - 1;
        if (gens.size() >= k) {
            std::vector<std::size_t> s(k);
            for (std::size_t i = 0; i < k; ++i) s[i] = i;
            while (true) {
                try_subset(s);
                std::size_t i = k;
                while (i > 0 && s[i - 1] == gens.size() - (k - i) - 1) --i;
                if (i == 0) break;
                ++s[i - 1];
                for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
            }
        }
    }
    return {found.begin(), found.end()};
}

} // namespace detail

class RationalCone {
  public:
    RationalCone() = default; // empty placeholder; build through the factories

    // Build from generators; facet description is derived (and vice versa can
    // be cross-checked by the caller through contains/equals).
    static RationalCone from_generators(int ambient_dim, std::vector<Vec> gens);

    // Build with both descriptions supplied; they are cross-validated.
    static RationalCone from_generators_and_facets(int ambient_dim, std::vector<Vec> gens,
                                                   std::vector<Vec> facets);

    int ambient_dim() const { return dim_; }
    const std::vector<Vec>& generators() const { return generators_; }
    const std::vector<Vec>& facets() const { return facets_; }
    bool pointed() const { return pointed_; }
    bool full_dimensional() const { return full_dim_; }

    bool contains(const Vec& x) const
    {
        for (const auto& u : facets_)
            if (dot(u, x) < 0) return false;
        return true;
    }
    bool contains(const QVec& x) const
    {
        for (const auto& u : facets_)
            if (dot(u, x) < 0) return false;
        return true;
    }
    // Strict interior; meaningful for full-dimensional cones.
    bool strictly_contains(const QVec& x) const
    {
        for (const auto& u : facets_)
            if (dot(u, x) <= 0) return false;
        return true;
    }

  private:
    int dim_ = 0;
    std::vector<Vec> generators_; // primitive; extreme rays when pointed
    std::vector<Vec> facets_;     // primitive inner normals (complete H-description)
    bool pointed_ = false;
    bool full_dim_ = false;

    friend RationalCone dual_cone(const RationalCone&);
};

RationalCone dual_cone(const RationalCone& c);
bool cones_equal(const RationalCone& a, const RationalCone& b);

inline RationalCone RationalCone::from_generators(int ambient_dim, std::vector<Vec> gens)
{
    if (ambient_dim < 1) throw std::invalid_argument("RationalCone: ambient dimension must be >= 1");
    if (ambient_dim > kMaxConeDim)
        throw std::invalid_argument("RationalCone: ambient dimension exceeds supported bound");
    for (auto& g : gens) {
        if (static_cast<int>(g.size()) != ambient_dim)
            throw std::invalid_argument("RationalCone: generator of wrong length");
        g = primitivize(std::move(g));
    }
    // drop zeros and duplicates, keep first-seen order
    std::vector<Vec> uniq;
    for (auto& g : gens) {
        if (is_zero(g)) continue;
        bool seen = false;
        for (const auto& h : uniq) seen = seen || h == g;
        if (!seen) uniq.push_back(std::move(g));
    }

    RationalCone c;
    c.dim_ = ambient_dim;
    const std::size_t d = static_cast<std::size_t>(ambient_dim);

    Mat rows(uniq.begin(), uniq.end());
    int r = uniq.empty() ? 0 : rank(rows);
    c.full_dim_ = (r == ambient_dim);

    if (uniq.empty()) {
        // the zero cone
        c.generators_ = {};
        c.facets_.clear();
        for (std::size_t i = 0; i < d; ++i) {
            Vec e(d, 0);
            e[i] = 1;
            c.facets_.push_back(e);
            c.facets_.push_back(negate(e));
        }
        c.pointed_ = true;
        return c;
    }

    if (c.full_dim_) {
        c.facets_ = detail::facet_normals_full_dim(uniq, ambient_dim);
    } else {
        // Facets within the span, plus a pair of opposite normals per
        // direction of the orthogonal complement.
        Mat span_basis = saturated_span_basis(rows, d); // r x d
        const std::size_t rr = span_basis.size();
        // coordinates of generators in the span basis (integral: basis is saturated)
        Mat bt(d, Vec(rr));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < rr; ++j) bt[i][j] = span_basis[j][i];
        // Solve span_basis^T * coord = g via Gram matrix (B B^T) coord = B g.
        Mat gram(rr, Vec(rr));
        for (std::size_t i = 0; i < rr; ++i)
            for (std::size_t j = 0; j < rr; ++j) gram[i][j] = dot(span_basis[i], span_basis[j]);
        std::vector<Vec> coords;
        for (const auto& g : uniq) {
            QVec rhs(rr);
            for (std::size_t i = 0; i < rr; ++i) rhs[i] = Rational(dot(span_basis[i], g));
            QVec x = solve(gram, rhs);
            Vec xi(rr);
            for (std::size_t i = 0; i < rr; ++i) {
                if (den(x[i]) != 1)
                    throw std::logic_error("RationalCone: non-integral span coordinates");
                xi[i] = num(x[i]);
            }
            coords.push_back(std::move(xi));
        }
        auto inner = detail::facet_normals_full_dim(coords, static_cast<int>(rr));
        for (const auto& u : inner) {
            // lift u back: w = sum_i y_i * span_basis_i with Gram y = u
            QVec y = solve(gram, to_qvec(u));
            QVec w(d, Rational(0));
            for (std::size_t i = 0; i < rr; ++i)
                for (std::size_t j = 0; j < d; ++j) w[j] += y[i] * Rational(span_basis[i][j]);
            c.facets_.push_back(primitive_direction(w));
        }
        Mat ortho = kernel_lattice_basis(rows);
        for (const auto& u : ortho) {
            c.facets_.push_back(u);
            c.facets_.push_back(negate(u));
        }
    }

    // pointedness: facet normals span the ambient space
    Mat fm(c.facets_.begin(), c.facets_.end());
    c.pointed_ = !c.facets_.empty() && rank(fm) == ambient_dim;

    // extreme rays (pointed case): keep generators lying on d-1 independent facets
    if (c.pointed_) {
        for (const auto& g : uniq) {
            Mat active;
            for (const auto& u : c.facets_)
                if (dot(u, g) == 0) active.push_back(u);
            if (rank(active) == ambient_dim - 1) c.generators_.push_back(g);
        }
        std::sort(c.generators_.begin(), c.generators_.end());
    } else {
        c.generators_ = uniq; // minimality is not defined without pointedness
    }
    return c;
}

inline RationalCone RationalCone::from_generators_and_facets(int ambient_dim, std::vector<Vec> gens,
                                                             std::vector<Vec> facets)
{
    RationalCone c = from_generators(ambient_dim, std::move(gens));
    for (const auto& u : facets)
        if (static_cast<int>(u.size()) != ambient_dim)
            throw std::invalid_argument("RationalCone: facet of wrong length");
    // cross-validation: the supplied inequalities must cut exactly the cone
    // spanned by the supplied generators.
    for (const auto& u : facets)
        for (const auto& g : c.generators())
            if (dot(u, g) < 0)
                throw std::invalid_argument("RationalCone: generators and facets disagree (generator " +
                                            detail::vec_str(g) + " violates facet " + detail::vec_str(u) + ")");
    RationalCone cut = dual_cone(from_generators(ambient_dim, facets));
    if (!cones_equal(cut, c))
        throw std::invalid_argument("RationalCone: generators and facets describe different cones");
    return c;
}

inline bool cones_equal(const RationalCone& a, const RationalCone& b)
{
    if (a.ambient_dim() != b.ambient_dim()) return false;
    for (const auto& g : a.generators())
        if (!b.contains(g)) return false;
    for (const auto& g : b.generators())
        if (!a.contains(g)) return false;
    // handle lineality: generator lists describe the cones entirely for the
    // representations produced by from_generators
    return true;
}

// {y : <y,x> >= 0 for all x in c}.
inline RationalCone dual_cone(const RationalCone& c)
{
    if (c.ambient_dim() < 1) throw std::invalid_argument("dual_cone: ambient dimension must be >= 1");
    if (c.pointed() && c.full_dimensional()) {
        // both descriptions flip roles: the minimal facet normals of c are
        // the extreme rays of the dual, and the extreme rays of c cut the
        // dual out as its minimal H-description
        RationalCone d;
        d.dim_ = c.ambient_dim();
        d.generators_ = c.facets();
        std::sort(d.generators_.begin(), d.generators_.end());
        d.facets_ = c.generators();
        d.pointed_ = true;
        d.full_dim_ = true;
        return d;
    }
    // facets of c = generators of the dual; for non-pointed duals the facet
    // list already contains the +/- pairs spanning the lineality space.
    return RationalCone::from_generators(c.ambient_dim(), c.facets());
}

namespace detail {

// Pulling triangulation of cone(rays) (full-dimensional, pointed; rays are
// the extreme rays). The pivot of each recursion step is the ray incident to
// the most facets (ties by position), which keeps the decomposition as
// coarse as the facet structure allows; a fixed pivot order may be supplied
// instead (used by the triangulation-independence tests).
inline void pull_triangulate(const std::vector<Vec>& rays, int dim,
                             const std::vector<int>* pivot_order,
                             std::vector<std::vector<Vec>>& out,
                             const std::vector<Vec>* known_facets = nullptr)
{
    const std::size_t d = static_cast<std::size_t>(dim);
    if (rays.size() < d) throw std::logic_error("pull_triangulate: too few rays");
    if (rays.size() == d) {
        out.push_back(rays);
        return;
    }
    std::vector<Vec> facets = known_facets ? *known_facets : facet_normals_full_dim(rays, dim);
    // pivot selection
    std::size_t pivot = 0;
    if (pivot_order) {
        for (int cand : *pivot_order) {
            if (cand >= 0 && cand < static_cast<int>(rays.size())) {
                pivot = static_cast<std::size_t>(cand);
                break;
            }
        }
    } else {
        std::size_t best = 0;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            std::size_t inc = 0;
            for (const auto& u : facets)
                if (dot(u, rays[i]) == 0) ++inc;
            if (inc > best) {
                best = inc;
                pivot = i;
            }
        }
    }
    const Vec& v0 = rays[pivot];
    for (const auto& u : facets) {
        if (dot(u, v0) == 0) continue; // facet contains the pivot
        // rays on this facet
        std::vector<Vec> fr;
        std::vector<int> sub_order;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (dot(u, rays[i]) == 0) {
                fr.push_back(rays[i]);
                if (pivot_order) sub_order.push_back(static_cast<int>(fr.size()) - 1);
            }
        }
        // facet cone is (d-1)-dimensional inside the hyperplane u=0; express
        // in coordinates of that hyperplane's lattice to recurse
        Mat rows(fr.begin(), fr.end());
        Mat basis = saturated_span_basis(rows, d); // (d-1) x d
        if (basis.size() != d - 1) throw std::logic_error("pull_triangulate: degenerate facet");
        Mat gram(d - 1, Vec(d - 1));
        for (std::size_t i = 0; i + 1 < d; ++i)
            for (std::size_t j = 0; j + 1 < d; ++j) gram[i][j] = dot(basis[i], basis[j]);
        std::vector<Vec> coords;
        for (const auto& g : fr) {
            QVec rhs(d - 1);
            for (std::size_t i = 0; i + 1 < d; ++i) rhs[i] = Rational(dot(basis[i], g));
            QVec x = solve(gram, rhs);
            Vec xi(d - 1);
            for (std::size_t i = 0; i + 1 < d; ++i) {
                if (den(x[i]) != 1) throw std::logic_error("pull_triangulate: non-integral facet coordinates");
                xi[i] = num(x[i]);
            }
            coords.push_back(std::move(xi));
        }
        std::vector<std::vector<Vec>> sub;
        if (d - 1 == 0)
            sub.push_back({});
        else
            pull_triangulate(coords, dim - 1, pivot_order ? &sub_order : nullptr, sub);
        // map coordinate pieces back to ambient rays by index lookup
        std::map<Vec, std::size_t> where;
        for (std::size_t i = 0; i < coords.size(); ++i) where[coords[i]] = i;
        for (const auto& piece : sub) {
            std::vector<Vec> cell;
            cell.push_back(v0);
            for (const auto& cv : piece) cell.push_back(fr[where.at(cv)]);
            out.push_back(std::move(cell));
        }
    }
}

} // namespace detail

// Triangulation of a pointed full-dimensional cone into simplicial pieces
// spanned by extreme rays. Deterministic; the optional order forces pivot
// choices (tests use it to produce a second, differently shaped
// triangulation of the same cone).
inline std::vector<SimplicialPiece> triangulate(const RationalCone& c,
                                                const std::vector<int>* pivot_order = nullptr)
{
    if (!c.pointed()) throw std::invalid_argument("triangulate: cone is not pointed");
    if (!c.full_dimensional()) throw std::invalid_argument("triangulate: cone is not full-dimensional");
    std::vector<std::vector<Vec>> cells;
    detail::pull_triangulate(c.generators(), c.ambient_dim(), pivot_order, cells, &c.facets());
    std::vector<SimplicialPiece> out;
    for (auto& cell : cells) {
        Mat m(cell.begin(), cell.end());
        Integer dt = abs_int(det(m));
        if (dt == 0) throw std::logic_error("triangulate: degenerate piece");
        out.push_back({std::move(cell), dt});
    }
    return out;
}

// X_c(s) = integral over the dual cone of e^{-<s,y>} dy, with the Lebesgue
// measure normalized by the dual lattice. Exact: sum over a triangulation of
// the dual of det / prod <s, ray_i>.
inline Rational x_function(const RationalCone& c, const QVec& s)
{
    if (c.ambient_dim() < 1) throw std::invalid_argument("x_function: ambient dimension must be >= 1");
    if (static_cast<int>(s.size()) != c.ambient_dim())
        throw std::invalid_argument("x_function: evaluation point of wrong length");
    if (!c.pointed() || !c.full_dimensional())
        throw std::invalid_argument("x_function: cone must be pointed and full-dimensional");
    RationalCone dual = dual_cone(c);
    for (const auto& rho : dual.generators()) {
        if (dot(rho, s) <= 0)
            throw std::domain_error("x_function: pole/divergence, the linear form <s, " +
                                    detail::vec_str(rho) + "> is not positive");
    }
    Rational total = 0;
    for (const auto& piece : triangulate(dual)) {
        Rational denom = 1;
        for (const auto& rho : piece.rays) denom *= dot(rho, s);
        total += Rational(piece.lattice_determinant) / denom;
    }
    return total;
}

// inf { t : t*l + k in cone }, attained; cone given by its facet normals.
// Requires l strictly inside the cone.
inline Rational min_shift(const RationalCone& effective, const QVec& l_class, const QVec& k_class)
{
    if (static_cast<int>(l_class.size()) != effective.ambient_dim() ||
        static_cast<int>(k_class.size()) != effective.ambient_dim())
        throw std::invalid_argument("min_shift: class vector of wrong length");
    if (effective.facets().empty()) throw std::invalid_argument("min_shift: cone has no facet description");
    bool first = true;
    Rational best = 0;
    for (const auto& u : effective.facets()) {
        Rational ul = dot(u, l_class);
        if (ul <= 0)
            throw std::domain_error("min_shift: L not interior (facet " + detail::vec_str(u) + ")");
        Rational t = -dot(u, k_class) / ul;
        if (first || t > best) {
            best = t;
            first = false;
        }
    }
    return best;
}

} // namespace ratcount
