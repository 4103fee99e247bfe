#include <catch2/catch_amalgamated.hpp>

#include "ratcount/io.hpp"

#include <sstream>

using namespace ratcount;

TEST_CASE("variety JSON round trip: toric")
{
    auto spec = VarietySpec::toric(fan_cubic_xyz_u3(), std::nullopt, "cubic-xyz-u3");
    Json j = variety_to_json(spec);
    CHECK(j.at("schema") == kVarietySchema);
    auto back = variety_from_json(j);
    const auto& t = std::get<ToricSpec>(back.data);
    CHECK(t.fan.rays == fan_cubic_xyz_u3().rays);
    CHECK(t.fan.max_cones == fan_cubic_xyz_u3().max_cones);
}

TEST_CASE("variety JSON round trip: polarized toric")
{
    Fan f = fan_hirzebruch(2);
    QVec pol = {Rational(1), Rational(1), Rational(1), Rational(1, 2)};
    auto spec = VarietySpec::toric(f, pol, "f2");
    auto back = variety_from_json(variety_to_json(spec));
    const auto& t = std::get<ToricSpec>(back.data);
    REQUIRE(t.polarization_ray_values.has_value());
    CHECK((*t.polarization_ray_values)[3] == Rational(1, 2));
}

TEST_CASE("variety JSON shorthands")
{
    auto p = variety_from_json(Json{{"kind", "projective"}, {"n", 3}});
    CHECK(std::get<ProjectiveSpec>(p.data).n == 3);
    auto w = variety_from_json(Json{{"kind", "weighted"}, {"weights", {1, 1, 4}}});
    CHECK(std::get<WeightedSpec>(w.data).weights == std::vector<long>{1, 1, 4});
    CHECK_THROWS_AS(variety_from_json(Json{{"kind", "mystery"}}), std::invalid_argument);
}

TEST_CASE("weighted variety JSON carries its height model")
{
    auto spec = VarietySpec::weighted({1, 1, 3});
    Json j = variety_to_json(spec);
    REQUIRE(j.contains("height_model"));
    CHECK(j.at("height_model").at("normalization_degree") == "3");
    CHECK_NOTHROW(variety_from_json(j));

    // a tampered monomial family is rejected rather than mis-counted
    j["height_model"]["monomials"][0][0] = 99;
    CHECK_THROWS_AS(variety_from_json(j), std::invalid_argument);
}

TEST_CASE("prediction JSON round trip")
{
    auto pred = predict(VarietySpec::projective(1), 100);
    Json j = prediction_to_json(pred);
    auto back = prediction_from_json(j);
    CHECK(back.alpha == pred.alpha);
    CHECK(back.beta == pred.beta);
    CHECK(back.gamma == pred.gamma);
    CHECK(back.tau_inf == pred.tau_inf);
    CHECK(back.c.lo == Catch::Approx(pred.c.lo));
    CHECK(back.c.hi == Catch::Approx(pred.c.hi));
    CHECK(back.constant_available);
}

TEST_CASE("counts CSV round trip")
{
    CountCurve c = projective_curve(1, {10, 100, 1000});
    std::string csv = curve_to_csv(c);
    std::istringstream in(csv);
    CountCurve back = curve_from_csv(in);
    REQUIRE(back.samples.size() == c.samples.size());
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
        CHECK(back.samples[i].first == c.samples[i].first);
        CHECK(back.samples[i].second == c.samples[i].second);
    }
}

TEST_CASE("counts CSV rejects malformed input")
{
    std::istringstream bad("B,count\n10;4\n");
    CHECK_THROWS_AS(curve_from_csv(bad), std::invalid_argument);
    std::istringstream dec("B,count\n10,4\n5,7\n");
    CHECK_THROWS_AS(curve_from_csv(dec), std::invalid_argument);
}

TEST_CASE("factor CSV")
{
    Fan p1 = fan_projective_space(1);
    auto ep = tau_finite(p1, build_picard(p1), RigidDivisorData::none(), 10);
    std::string csv = factors_to_csv(ep);
    CHECK(csv.find("p,numerator,denominator") == 0);
    CHECK(csv.find("2,3,4") != std::string::npos); // factor at 2 is 3/4
}
