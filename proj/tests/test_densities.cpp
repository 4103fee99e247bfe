#include <catch2/catch_amalgamated.hpp>

#include "ratcount/prediction.hpp"
#include "support/oracles.hpp"

using namespace ratcount;

namespace {

RigidDivisorData rigid_of(std::vector<std::pair<int, Rational>> comps)
{
    RigidDivisorData rd;
    for (auto& [id, r] : comps) rd.components.push_back({id, r, 1});
    return rd;
}

} // namespace

TEST_CASE("denef density with no rigid components is the normalized point count")
{
    Fan r = resolve_fan_2d(fan_cubic_xyz_u3());
    Integer q = 5;
    auto strata = toric_strata_counts(r, {}, q);
    Rational d = denef_density(strata, q, 2, RigidDivisorData::none());
    CHECK(d == Rational(61, 25));
}

TEST_CASE("denef density: full affine mass is 1")
{
    StrataCounts s;
    s[{}] = Integer(27); // q^n with q=3, n=3
    CHECK(denef_density(s, Integer(3), 3, RigidDivisorData::none()) == 1);
}

TEST_CASE("denef density: projective line with the two-point rigid divisor at q=3 is 5/6")
{
    Fan p1 = fan_projective_space(1);
    Integer q = 3;
    auto strata = toric_strata_counts(p1, {0, 1}, q);
    CHECK(strata.at({}) == Integer(2));
    CHECK(strata.at({0}) == Integer(1));
    CHECK(strata.at({0, 1}) == Integer(0));
    Rational d = denef_density(strata, q, 1, rigid_of({{0, Rational(1)}, {1, Rational(1)}}));
    CHECK(d == Rational(5, 6));
    CHECK(d == Rational(2, 3) * (Rational(1) + Rational(1, 4)));
}

TEST_CASE("denef density rejects incomplete strata and bad multiplicities")
{
    StrataCounts s;
    s[{}] = Integer(3);
    CHECK_THROWS_WITH(denef_density(s, Integer(3), 1, rigid_of({{0, Rational(1)}})),
                      Catch::Matchers::ContainsSubstring("incomplete strata"));
    s[{0}] = Integer(1);
    CHECK_THROWS_AS(denef_density(s, Integer(3), 1, rigid_of({{0, Rational(-1)}})),
                    std::invalid_argument);
    // non-integral exponent b (r+1)
    CHECK_THROWS_AS(denef_density(s, Integer(3), 1, rigid_of({{0, Rational(1, 2)}})),
                    std::invalid_argument);
}

TEST_CASE("denef density agrees exactly with the p-adic residue oracle")
{
    for (long p : {2L, 3L, 5L}) {
        Integer q(p);
        for (long r : {1L, 2L}) {
            // projective line, rigid divisor = both torus-fixed points
            {
                auto strata = toric_strata_counts(fan_projective_space(1), {0, 1}, q);
                Rational lib =
                    denef_density(strata, q, 1, rigid_of({{0, Rational(r)}, {1, Rational(r)}}));
                CHECK(lib == oracles::padic_volume(oracles::p1_two_points(r), p));
            }
            // projective line, one rigid point
            {
                auto strata = toric_strata_counts(fan_projective_space(1), {0}, q);
                Rational lib = denef_density(strata, q, 1, rigid_of({{0, Rational(r)}}));
                CHECK(lib == oracles::padic_volume(oracles::p1_one_point(r), p));
            }
            // projective plane, one rigid coordinate line
            {
                auto strata = toric_strata_counts(fan_projective_space(2), {0}, q);
                Rational lib = denef_density(strata, q, 2, rigid_of({{0, Rational(r)}}));
                CHECK(lib == oracles::padic_volume(oracles::p2_line(r), p));
            }
        }
    }
}

TEST_CASE("denef density decreases to the rigid-free mass as multiplicities grow")
{
    Fan p1 = fan_projective_space(1);
    Integer q = 3;
    auto strata = toric_strata_counts(p1, {0}, q);
    Rational limit = strata.at({}) == 0 ? Rational(0) : Rational(strata.at({}), 3);
    Rational prev = 0;
    bool first = true;
    for (long r : {1L, 2L, 4L, 8L}) {
        Rational d = denef_density(strata, q, 1, rigid_of({{0, Rational(r)}}));
        CHECK(d > limit);
        if (!first) CHECK(d < prev);
        prev = d;
        first = false;
    }
}

TEST_CASE("convergence factors")
{
    CHECK(convergence_factor(Integer(2), 1) == 2);
    CHECK(convergence_factor(Integer(2), 7) == 128);
    CHECK(convergence_factor(Integer(5), 0) == 1);
}

TEST_CASE("cubic Euler factors match the closed form (1 + 7/p + 1/p^2)(1 - 1/p)^7")
{
    Fan r = resolve_fan_2d(fan_cubic_xyz_u3());
    PicardModel pm = build_picard(r);
    auto ep = tau_finite(r, pm, RigidDivisorData::none(), 100);
    for (const auto& [p, factor] : ep.factor_table) {
        Rational pq(p);
        Rational expected =
            (Rational(1) + Rational(7) / pq + Rational(1) / (pq * pq)) * pow_rat(Rational(p - 1, p), 7);
        CHECK(factor == expected);
    }
    CHECK(ep.factor_table.size() == 25); // primes up to 100
    CHECK(ep.factor_table.front().second == Rational(19, 512));
}

TEST_CASE("projective line Euler product approaches 6/pi^2 within the tail bound")
{
    Fan p1 = fan_projective_space(1);
    PicardModel pm = build_picard(p1);
    auto ep = tau_finite(p1, pm, RigidDivisorData::none(), 10000);
    for (const auto& [p, factor] : ep.factor_table)
        CHECK(factor == Rational(1) - Rational(1, Integer(p) * p));
    const double target = 6.0 / (M_PI * M_PI);
    CHECK(ep.lower() <= target);
    CHECK(target <= ep.upper());
    CHECK(std::fabs(ep.partial_value - target) < 1e-4);
}

TEST_CASE("Euler factor bound |f - 1| <= C/p^{3/2} and tail monotonicity")
{
    for (const Fan& f : {fan_projective_space(1), fan_projective_space(2),
                         resolve_fan_2d(fan_cubic_xyz_u3())}) {
        PicardModel pm = build_picard(f);
        auto ep = tau_finite(f, pm, RigidDivisorData::none(), 1000);
        const double C = static_cast<double>(pm.rank) * pm.rank + 2.0 * pm.rank;
        for (const auto& [p, factor] : ep.factor_table) {
            double gap = std::fabs(to_double(factor) - 1.0);
            CHECK(gap <= C / std::pow(static_cast<double>(p), 1.5));
        }
        auto ep2 = tau_finite(f, pm, RigidDivisorData::none(), 4000);
        CHECK(ep2.tail_bound < ep.tail_bound);
        CHECK(ep.tail_bound >= 0);
    }
}

TEST_CASE("tau_finite rejects bad truncation")
{
    Fan p1 = fan_projective_space(1);
    PicardModel pm = build_picard(p1);
    CHECK_THROWS_AS(tau_finite(p1, pm, RigidDivisorData::none(), 1), std::invalid_argument);
}

TEST_CASE("archimedean densities")
{
    // resolved cubic with unit ray values: 4 * 9
    Fan r = resolve_fan_2d(fan_cubic_xyz_u3());
    CHECK(tau_archimedean(r, anticanonical_pl(r)) == 36);

    // projective line: 2 * (1 + 1) = 4 = integral of dx / max(1,|x|)^2
    Fan p1 = fan_projective_space(1);
    CHECK(tau_archimedean(p1, anticanonical_pl(p1)) == 4);

    // product multiplicativity: P1 x P1 anticanonical
    Fan p1p1 = fan_product(p1, p1);
    CHECK(tau_archimedean(p1p1, anticanonical_pl(p1p1)) == 16);
}

TEST_CASE("archimedean density is multiplicative under fan products")
{
    Fan p1 = fan_projective_space(1);
    Fan p2 = fan_projective_space(2);
    Fan prod = fan_product(p1, p2);
    Rational a = tau_archimedean(p1, anticanonical_pl(p1));
    Rational b = tau_archimedean(p2, anticanonical_pl(p2));
    CHECK(tau_archimedean(prod, anticanonical_pl(prod)) == a * b);
}

TEST_CASE("archimedean density rejects nonpositive ray values")
{
    Fan p1 = fan_projective_space(1);
    PLFunction phi = pl_from_ray_values(p1, {Rational(1), Rational(0)});
    CHECK_THROWS_AS(tau_archimedean(p1, phi), std::domain_error);
}

TEST_CASE("Monte Carlo quadrature agrees with the exact archimedean density")
{
    Fan r = resolve_fan_2d(fan_cubic_xyz_u3());
    PLFunction phi = anticanonical_pl(r);
    double mc = oracles::tau_archimedean_mc(phi, 0.25, 1000000);
    CHECK(std::fabs(mc - 36.0) / 36.0 < 0.02);

    Fan p1 = fan_projective_space(1);
    double mc1 = oracles::tau_archimedean_mc(anticanonical_pl(p1), 0.5, 500000);
    CHECK(std::fabs(mc1 - 4.0) / 4.0 < 0.02);
}

TEST_CASE("delta")
{
    CHECK(compute_delta(true) == 1);
    CHECK_THROWS_AS(compute_delta(false), std::invalid_argument);
}

TEST_CASE("assemble_constant")
{
    EulerProductResult unit;
    unit.truncation_prime = 2;
    unit.partial_value = 1.0;
    unit.tail_bound = 0.0;

    // alpha=1, beta=1, gamma=1, delta=1, tau=5 -> 5
    Interval c = assemble_constant(Rational(1), 1, Rational(1), Integer(1), unit, Rational(5));
    CHECK(c.contains(5.0));
    CHECK(c.hi - c.lo < 1e-10);

    // Tauberian identity: Theta=2, a=1, b=2 -> 2/(1*1!) = 2
    CHECK(tauberian_constant(Rational(2), Rational(1), 2) == 2);
    // Theta=720, a=1, b=7 -> 1
    CHECK(tauberian_constant(Rational(720), Rational(1), 7) == 1);
    // Theta=1, a=2, b=1 -> 1/2
    CHECK(tauberian_constant(Rational(1), Rational(2), 1) == Rational(1, 2));
    CHECK_THROWS_AS(tauberian_constant(Rational(1), Rational(1), 0), std::invalid_argument);
    CHECK_THROWS_AS(assemble_constant(Rational(0), 1, Rational(1), Integer(1), unit, Rational(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(assemble_constant(Rational(1), 0, Rational(1), Integer(1), unit, Rational(1)),
                    std::invalid_argument);
}

TEST_CASE("assemble_constant encloses the exact product when the tail vanishes")
{
    EulerProductResult ep;
    ep.truncation_prime = 2;
    ep.partial_value = 0.75;
    ep.tail_bound = 0.0;
    Interval c = assemble_constant(Rational(2), 3, Rational(1, 4), Integer(2), ep, Rational(8));
    // gamma alpha^{beta-1} delta tau_inf / (beta-1)! * partial
    double expect = to_double(Rational(1, 4) * 4 * 2 * 8 / Rational(2)) * 0.75;
    CHECK(c.contains(expect));
}
