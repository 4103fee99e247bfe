#include <catch2/catch_amalgamated.hpp>

#include "ratcount/fan.hpp"

using namespace ratcount;

TEST_CASE("fan validation")
{
    Fan f = fan_projective_space(2);
    CHECK_NOTHROW(validate_fan(f));
    CHECK(fan_is_smooth(f));
    CHECK(fan_is_complete(f));

    Fan bad = f;
    bad.rays[0] = Vec{Integer(2), Integer(0)};
    CHECK_THROWS_AS(validate_fan(bad), std::invalid_argument);

    Fan dup = f;
    dup.rays.push_back(dup.rays[0]);
    CHECK_THROWS_AS(validate_fan(dup), std::invalid_argument);
}

TEST_CASE("incomplete fan detected")
{
    Fan half;
    half.dim = 2;
    half.rays = {Vec{Integer(1), Integer(0)}, Vec{Integer(0), Integer(1)}};
    half.max_cones = {{0, 1}};
    CHECK_FALSE(fan_is_complete(half));
}

TEST_CASE("hirzebruch fans are smooth and complete")
{
    for (long m = 0; m <= 8; ++m) {
        Fan f = fan_hirzebruch(m);
        CHECK(fan_is_smooth(f));
        CHECK(fan_is_complete(f));
    }
}

TEST_CASE("resolve_fan_2d on P(1,1,2): one ray added, smooth")
{
    Fan w = fan_weighted_plane(2);
    CHECK_FALSE(fan_is_smooth(w));
    Fan r = resolve_fan_2d(w);
    CHECK(r.rays.size() == 4);
    CHECK(fan_is_smooth(r));
    CHECK(fan_is_complete(r));
    // the inserted ray is (0,-1): the resolved fan is the F_2 fan
    bool found = false;
    for (const auto& ray : r.rays) found = found || (ray == Vec{Integer(0), Integer(-1)});
    CHECK(found);
}

TEST_CASE("resolve_fan_2d on the cubic xyz=u^3 fan: 9 rays, 9 maximal cones")
{
    Fan c = fan_cubic_xyz_u3();
    CHECK_FALSE(fan_is_smooth(c));
    Fan r = resolve_fan_2d(c);
    CHECK(r.rays.size() == 9);
    CHECK(r.max_cones.size() == 9);
    CHECK(fan_is_smooth(r));
    CHECK(fan_is_complete(r));
}

TEST_CASE("resolve_fan_2d is idempotent and preserves input rays")
{
    Fan c = fan_cubic_xyz_u3();
    Fan r = resolve_fan_2d(c);
    Fan rr = resolve_fan_2d(r);
    CHECK(rr.rays.size() == r.rays.size());
    CHECK(rr.max_cones.size() == r.max_cones.size());
    for (const auto& ray : c.rays) {
        bool found = false;
        for (const auto& s : r.rays) found = found || s == ray;
        CHECK(found);
    }
    Fan smooth = fan_projective_space(2);
    Fan rs = resolve_fan_2d(smooth);
    CHECK(rs.rays.size() == 3);
    CHECK(rs.max_cones.size() == 3);
}

TEST_CASE("resolve_fan_2d rejects other dimensions")
{
    CHECK_THROWS_AS(resolve_fan_2d(fan_projective_space(3)), std::invalid_argument);
}

TEST_CASE("strata counts")
{
    Fan f = fan_projective_space(2);
    Integer q = 7;
    CHECK(strata_count(f, {}, q) == Integer(36));    // open torus (q-1)^2
    CHECK(strata_count(f, {0}, q) == Integer(6));    // 1-dim orbit
    CHECK(strata_count(f, {0, 1}, q) == Integer(1)); // fixed point
    // two rays that do not span a cone
    Fan h = fan_hirzebruch(1);
    CHECK(strata_count(h, {0, 2}, q) == 0);
    CHECK_THROWS_AS(strata_count(h, {0, 9}, q), std::invalid_argument);
    CHECK_THROWS_AS(strata_count(h, {0, 0}, q), std::invalid_argument);
}

TEST_CASE("point counts over F_q")
{
    for (Integer q : {Integer(2), Integer(3), Integer(5), Integer(9)}) {
        CHECK(count_points_mod_q(fan_projective_space(1), q) == q + 1);
        CHECK(count_points_mod_q(fan_projective_space(2), q) == q * q + q + 1);
    }
    // resolved cubic: q^2 + 7q + 1
    Fan r = resolve_fan_2d(fan_cubic_xyz_u3());
    for (Integer q : {Integer(2), Integer(3), Integer(5)})
        CHECK(count_points_mod_q(r, q) == q * q + 7 * q + 1);
    CHECK(count_points_mod_q(r, Integer(5)) == Integer(61));
}

TEST_CASE("orbit decomposition: strata sum to the point count")
{
    for (const Fan& f : {fan_projective_space(2), fan_hirzebruch(2), resolve_fan_2d(fan_cubic_xyz_u3())}) {
        Integer q = 5;
        Integer total = 0;
        for (const auto& face : fan_faces(f)) total += strata_count(f, face, q);
        CHECK(total == count_points_mod_q(f, q));
    }
}

TEST_CASE("fan products")
{
    Fan p1 = fan_projective_space(1);
    Fan p1p1 = fan_product(p1, p1);
    CHECK(p1p1.dim == 2);
    CHECK(p1p1.rays.size() == 4);
    CHECK(p1p1.max_cones.size() == 4);
    CHECK(fan_is_smooth(p1p1));
    CHECK(fan_is_complete(p1p1));
    Integer q = 3;
    CHECK(count_points_mod_q(p1p1, q) == (q + 1) * (q + 1));
}
