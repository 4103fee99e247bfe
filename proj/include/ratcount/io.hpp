// Serialization: variety specs and predictions as versioned JSON, count
// curves and Euler factor tables as CSV.
#pragma once

#include "ratcount/variety.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace ratcount {

using Json = nlohmann::json;

inline constexpr const char* kVarietySchema = "ratcount/variety-v1";
inline constexpr const char* kPredictionSchema = "ratcount/prediction-v1";
inline constexpr const char* kFitSchema = "ratcount/fit-v1";
inline constexpr const char* kReportSchema = "ratcount/report-v1";

// ---------------------------------------------------------------------------
// variety specs

inline Json variety_to_json(const VarietySpec& spec)
{
    Json j;
    j["schema"] = kVarietySchema;
    if (const auto* t = std::get_if<ToricSpec>(&spec.data)) {
        j["kind"] = "toric";
        j["dim"] = t->fan.dim;
        Json rays = Json::array();
        for (const auto& r : t->fan.rays) {
            Json row = Json::array();
            for (const auto& x : r) row.push_back(x.convert_to<long long>());
            rays.push_back(row);
        }
        j["rays"] = rays;
        j["max_cones"] = t->fan.max_cones;
        if (t->polarization_ray_values) {
            Json vals = Json::array();
            for (const auto& v : *t->polarization_ray_values) vals.push_back(rational_to_string(v));
            j["polarization"] = {{"ray_values", vals}};
        }
        j["name"] = spec.id;
    } else if (const auto* p = std::get_if<ProjectiveSpec>(&spec.data)) {
        j["kind"] = "projective";
        j["n"] = p->n;
    } else {
        const auto& w = std::get<WeightedSpec>(spec.data);
        j["kind"] = "weighted";
        j["weights"] = w.weights;
        // the height model is part of the wire format: the sections of the
        // Cartier multiple m(m+2) of -K, reported through the m-th root
        HeightModel hm = HeightModel::weighted_plane_anticanonical(weighted_m(w));
        Json monos = Json::array();
        for (const auto& mu : hm.monomials) {
            Json row = Json::array();
            for (const auto& e : mu) row.push_back(e.convert_to<long long>());
            monos.push_back(row);
        }
        j["height_model"] = {{"monomials", monos},
                             {"normalization_degree", rational_to_string(hm.normalization_degree)}};
    }
    return j;
}

inline VarietySpec variety_from_json(const Json& j)
{
    if (!j.contains("kind")) throw std::invalid_argument("variety JSON: missing kind");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "projective") return VarietySpec::projective(j.at("n").get<int>());
    if (kind == "weighted") {
        auto spec = VarietySpec::weighted(j.at("weights").get<std::vector<long>>());
        if (j.contains("height_model")) {
            // only the canonical anticanonical model is supported; reject
            // anything else loudly rather than mis-counting
            HeightModel hm =
                HeightModel::weighted_plane_anticanonical(weighted_m(std::get<WeightedSpec>(spec.data)));
            const auto& hj = j.at("height_model");
            std::vector<Vec> monos;
            for (const auto& row : hj.at("monomials")) {
                Vec mu;
                for (const auto& e : row) mu.push_back(Integer(e.get<long long>()));
                monos.push_back(std::move(mu));
            }
            Rational nd = parse_rational(hj.at("normalization_degree").get<std::string>());
            if (monos != hm.monomials || nd != hm.normalization_degree)
                throw std::invalid_argument(
                    "variety JSON: custom weighted height models are out of scope; the model must "
                    "be the degree m(m+2) anticanonical family");
        }
        return spec;
    }
    if (kind != "toric") throw std::invalid_argument("variety JSON: unknown kind '" + kind + "'");
    Fan f;
    f.dim = j.at("dim").get<int>();
    for (const auto& row : j.at("rays")) {
        Vec r;
        for (const auto& x : row) r.push_back(Integer(x.get<long long>()));
        f.rays.push_back(std::move(r));
    }
    f.max_cones = j.at("max_cones").get<std::vector<std::vector<int>>>();
    std::optional<QVec> pol;
    if (j.contains("polarization")) {
        QVec vals;
        for (const auto& s : j.at("polarization").at("ray_values"))
            vals.push_back(parse_rational(s.get<std::string>()));
        pol = std::move(vals);
    }
    std::string name = j.value("name", std::string("toric"));
    return VarietySpec::toric(std::move(f), std::move(pol), name);
}

// ---------------------------------------------------------------------------
// predictions

inline Json prediction_to_json(const AsymptoticPrediction& p)
{
    Json j;
    j["schema"] = kPredictionSchema;
    j["model_id"] = p.model_id;
    j["alpha"] = rational_to_string(p.alpha);
    j["beta"] = p.beta;
    j["gamma"] = rational_to_string(p.gamma);
    j["delta"] = p.delta.convert_to<long long>();
    j["tau_inf"] = rational_to_string(p.tau_inf);
    j["tau_finite"] = {{"truncation_prime", p.tau_finite.truncation_prime},
                       {"partial_value", p.tau_finite.partial_value},
                       {"tail_bound", p.tau_finite.tail_bound}};
    j["constant_available"] = p.constant_available;
    if (p.constant_available && p.c.valid()) j["c"] = {{"lo", p.c.lo}, {"hi", p.c.hi}};
    j["provenance"] = p.provenance;
    return j;
}

inline AsymptoticPrediction prediction_from_json(const Json& j)
{
    AsymptoticPrediction p;
    p.model_id = j.value("model_id", std::string());
    p.alpha = parse_rational(j.at("alpha").get<std::string>());
    p.beta = j.at("beta").get<int>();
    p.gamma = parse_rational(j.at("gamma").get<std::string>());
    p.delta = Integer(j.at("delta").get<long long>());
    p.tau_inf = parse_rational(j.at("tau_inf").get<std::string>());
    p.tau_finite.truncation_prime = j.at("tau_finite").at("truncation_prime").get<long>();
    p.tau_finite.partial_value = j.at("tau_finite").at("partial_value").get<double>();
    p.tau_finite.tail_bound = j.at("tau_finite").at("tail_bound").get<double>();
    p.constant_available = j.value("constant_available", true);
    if (j.contains("c")) {
        p.c.lo = j.at("c").at("lo").get<double>();
        p.c.hi = j.at("c").at("hi").get<double>();
    }
    if (j.contains("provenance"))
        p.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
    return p;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string curve_to_csv(const CountCurve& c)
{
    std::ostringstream os;
    os << "B,count\n";
    for (const auto& [B, N] : c.samples) os << rational_to_string(B) << ',' << N << '\n';
    return os.str();
}

inline CountCurve curve_from_csv(std::istream& in, std::string model_id = "csv")
{
    CountCurve c;
    c.model_id = std::move(model_id);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("counts CSV: malformed line '" + line + "'");
        std::string bs = line.substr(0, comma), ns = line.substr(comma + 1);
        if (first && bs == "B") {
            first = false;
            continue;
        }
        first = false;
        c.samples.emplace_back(parse_rational(bs), Integer(ns));
    }
    c.validate();
    return c;
}

inline std::string factors_to_csv(const EulerProductResult& ep)
{
    std::ostringstream os;
    os << "p,numerator,denominator\n";
    for (const auto& [p, f] : ep.factor_table) os << p << ',' << num(f) << ',' << den(f) << '\n';
    return os.str();
}

inline Json fit_to_json(const FitResult& f)
{
    return Json{{"schema", kFitSchema}, {"a", f.a},           {"b", f.b},
                {"log_c", f.log_c},     {"c", f.c()},         {"residual", f.residual},
                {"fixed_a", f.fixed_a}, {"fixed_b", f.fixed_b}};
}

inline Json report_to_json(const ComparisonReport& rep)
{
    Json verdicts = Json::array();
    for (const auto& v : rep.verdicts)
        verdicts.push_back({{"name", v.name},
                            {"status", v.status},
                            {"tolerance", v.tolerance},
                            {"observed", v.observed},
                            {"expected", v.expected},
                            {"note", v.note}});
    Json trend = Json::array();
    for (const auto& [B, t] : rep.trend) trend.push_back({{"B", B}, {"value", t}});
    return Json{{"schema", kReportSchema},
                {"prediction", prediction_to_json(rep.prediction)},
                {"verdicts", verdicts},
                {"trend", trend},
                {"fit_fixed", fit_to_json(rep.fit_fixed)},
                {"fit_free_a", fit_to_json(rep.fit_free_a)}};
}

inline void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace ratcount
