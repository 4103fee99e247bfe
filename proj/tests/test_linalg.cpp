#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ratcount/linalg.hpp"

using namespace ratcount;

TEST_CASE("rational parsing and printing")
{
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("2.5") == Rational(5, 2));
    CHECK(rational_to_string(Rational(-3, 7)) == "-3/7");
    CHECK(rational_to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("integer roots")
{
    CHECK(iroot_floor(Integer(1000), 3) == 10);
    CHECK(iroot_floor(Integer(999), 3) == 9);
    auto [r, ok] = exact_root(Rational(8, 27), 3);
    CHECK(ok);
    CHECK(r == Rational(2, 3));
    CHECK_FALSE(exact_root(Rational(2), 2).second);
    // random perfect powers round-trip
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        Integer a = 1 + (rng() % 1000);
        unsigned k = 1 + (rng() % 5);
        CHECK(iroot_floor(pow_int(a, k), k) == a);
    }
}

TEST_CASE("determinant and rank")
{
    Mat m = {{Integer(1), Integer(2)}, {Integer(3), Integer(4)}};
    CHECK(det(m) == -2);
    CHECK(rank(m) == 2);
    Mat sing = {{Integer(1), Integer(2)}, {Integer(2), Integer(4)}};
    CHECK(det(sing) == 0);
    CHECK(rank(sing) == 1);
    Mat m3 = {{Integer(2), Integer(0), Integer(1)},
              {Integer(1), Integer(1), Integer(0)},
              {Integer(0), Integer(3), Integer(1)}};
    CHECK(det(m3) == 5);
}

TEST_CASE("solve")
{
    Mat a = {{Integer(2), Integer(1)}, {Integer(1), Integer(3)}};
    QVec b = {Rational(5), Rational(10)};
    QVec x = solve(a, b);
    CHECK(x[0] == Rational(1));
    CHECK(x[1] == Rational(3));
    Mat s = {{Integer(1), Integer(1)}, {Integer(2), Integer(2)}};
    CHECK_THROWS_AS(solve(s, b), std::invalid_argument);
}

TEST_CASE("kernel lattice basis is saturated")
{
    // kernel of (1 1 1) is rank 2 and must be a saturated basis: the vector
    // (1,-1,0) and (0,1,-1) span it with index 1
    Mat a = {{Integer(1), Integer(1), Integer(1)}};
    Mat k = kernel_lattice_basis(a);
    REQUIRE(k.size() == 2);
    for (const auto& v : k) CHECK(dot(a[0], v) == 0);
    // saturation: determinant of the 2x2 minors gcd is 1
    Integer g = 0;
    for (int i = 0; i < 3; ++i) {
        Mat minor;
        for (const auto& v : k) {
            Vec row;
            for (int j = 0; j < 3; ++j)
                if (j != i) row.push_back(v[j]);
            minor.push_back(row);
        }
        g = gcd_int(g, det(minor));
    }
    CHECK(abs_int(g) == 1);

    // scaled constraints give the same (saturated) kernel lattice
    Mat a2 = {{Integer(2), Integer(2), Integer(2)}};
    Mat k2 = kernel_lattice_basis(a2);
    REQUIRE(k2.size() == 2);
}

TEST_CASE("hyperplane normal")
{
    Mat rows = {{Integer(1), Integer(0), Integer(0)}, {Integer(0), Integer(1), Integer(0)}};
    Vec n = hyperplane_normal(rows, 3);
    REQUIRE(!n.empty());
    CHECK(abs_int(n[2]) == 1);
    CHECK(n[0] == 0);
    CHECK(n[1] == 0);
}

TEST_CASE("primitivize")
{
    CHECK(primitivize(Vec{Integer(4), Integer(-6)}) == Vec{Integer(2), Integer(-3)});
    CHECK(primitivize_signed(Vec{Integer(-2), Integer(4)}) == Vec{Integer(1), Integer(-2)});
    CHECK(primitive_direction(QVec{Rational(1, 2), Rational(-3, 4)}) ==
          Vec{Integer(2), Integer(-3)});
}
