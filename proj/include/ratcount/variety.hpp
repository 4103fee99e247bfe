// Variety specifications (toric fans, projective spaces, weighted projective
// planes) and the prediction pipeline that turns one into an
// AsymptoticPrediction: resolve, Picard, alpha/beta/gamma, delta, tau.
#pragma once

#include "ratcount/compare.hpp"

#include <optional>
#include <string>
#include <variant>

namespace ratcount {

struct ToricSpec {
    Fan fan;
    std::optional<QVec> polarization_ray_values; // on the input fan; default anticanonical
};

struct ProjectiveSpec {
    int n = 1;
};

struct WeightedSpec {
    std::vector<long> weights; // (1, 1, m) in scope
};

struct VarietySpec {
    std::variant<ToricSpec, ProjectiveSpec, WeightedSpec> data;
    std::string id;

    static VarietySpec toric(Fan f, std::optional<QVec> pol = std::nullopt, std::string name = "toric")
    {
        return {ToricSpec{std::move(f), std::move(pol)}, std::move(name)};
    }
    static VarietySpec projective(int n)
    {
        return {ProjectiveSpec{n}, "projective-" + std::to_string(n)};
    }
    static VarietySpec weighted(std::vector<long> w)
    {
        std::string name = "weighted";
        for (long x : w) name += "-" + std::to_string(x);
        return {WeightedSpec{std::move(w)}, std::move(name)};
    }
};

inline long weighted_m(const WeightedSpec& ws)
{
    if (ws.weights.size() != 3 || ws.weights[0] != 1 || ws.weights[1] != 1 || ws.weights[2] < 2)
        throw std::invalid_argument("weighted spec: only P(1,1,m) with m >= 2 is supported");
    return ws.weights[2];
}

// Normalized toric data: the resolved fan and the polarization pulled back
// to it (values on inserted rays come from evaluating the input PL function).
struct ToricModel {
    Fan input_fan;
    Fan fan; // smooth complete
    PLFunction polarization;
    PicardModel picard;
};

inline ToricModel build_toric_model(const ToricSpec& spec)
{
    validate_fan(spec.fan);
    Fan resolved = spec.fan;
    if (!fan_is_smooth(resolved)) {
        if (resolved.dim != 2)
            throw std::invalid_argument(
                "predict: non-smooth fans are resolved only in dimension 2");
        resolved = resolve_fan_2d(resolved);
    }
    QVec input_values = spec.polarization_ray_values
                            ? *spec.polarization_ray_values
                            : QVec(spec.fan.rays.size(), Rational(1));
    if (input_values.size() != spec.fan.rays.size())
        throw std::invalid_argument("predict: polarization must give one value per input ray");
    PLFunction input_pl = pl_from_ray_values(spec.fan, input_values);
    QVec values;
    for (const auto& ray : resolved.rays) values.push_back(input_pl.value(ray));
    ToricModel tm;
    tm.input_fan = spec.fan;
    tm.fan = resolved;
    tm.polarization = pl_from_ray_values(resolved, values);
    tm.picard = build_picard(resolved);
    return tm;
}

inline ToricSpec toric_spec_of(const VarietySpec& spec)
{
    if (const auto* t = std::get_if<ToricSpec>(&spec.data)) return *t;
    if (const auto* p = std::get_if<ProjectiveSpec>(&spec.data)) {
        Fan f = fan_projective_space(p->n);
        QVec pol(f.rays.size(), Rational(0));
        pol[0] = 1; // O(1): the class of one boundary divisor
        return ToricSpec{std::move(f), std::move(pol)};
    }
    const auto& w = std::get<WeightedSpec>(spec.data);
    long m = weighted_m(w);
    return ToricSpec{fan_weighted_plane(m), std::nullopt}; // anticanonical of W
}

// Full prediction pipeline. For polarizations with alpha L + K = 0 in the
// Picard group the constant is assembled exactly (tau with the anticanonical
// measure); a nonzero shift whose section space moves (the P(1,1,m), m >= 3
// family) yields a fibration-style prediction carrying the exact exponent
// and log power beta = 1 but no constant.
inline AsymptoticPrediction predict(const VarietySpec& spec, long euler_truncation = 10000)
{
    ToricSpec ts = toric_spec_of(spec);
    ToricModel tm = build_toric_model(ts);

    AsymptoticPrediction out;
    out.model_id = spec.id;
    QVec l_class = pl_class(tm.picard, tm.polarization);
    out.alpha = compute_alpha(tm.picard, l_class);
    out.provenance["alpha"] = "exact (facet minimization over the effective cone)";

    // rigid shift D = alpha L + K as a class
    QVec shift(static_cast<std::size_t>(tm.picard.rank));
    bool zero_shift = true;
    for (int k = 0; k < tm.picard.rank; ++k) {
        shift[static_cast<std::size_t>(k)] =
            out.alpha * l_class[static_cast<std::size_t>(k)] +
            Rational(tm.picard.canonical_class[static_cast<std::size_t>(k)]);
        zero_shift = zero_shift && shift[static_cast<std::size_t>(k)] == 0;
    }

    if (zero_shift) {
        out.beta = compute_beta(tm.picard, 0);
        out.gamma = compute_gamma(tm.picard);
        out.delta = compute_delta(true);
        out.tau_finite = tau_finite(tm.fan, tm.picard, RigidDivisorData::none(), euler_truncation);
        out.tau_inf = tau_archimedean(tm.fan, anticanonical_pl(tm.fan));
        out.c = assemble_constant(out.alpha, out.beta, out.gamma, out.delta, out.tau_finite,
                                  out.tau_inf);
        out.constant_available = true;
        out.provenance["beta"] = "Picard rank (no rigid components)";
        out.provenance["gamma"] = "exact X-function value";
        out.provenance["tau"] = "anticanonical measure; Euler product truncated at " +
                                std::to_string(euler_truncation) + " with tail enclosure";
        return out;
    }

    if (std::holds_alternative<WeightedSpec>(spec.data)) {
        // P(1,1,m), m >= 3: the shift (m-2) C moves (its sections are the
        // degree-(m-2) forms on the base), so the variety fibers over P^1 and
        // the count is governed by the fibers: no log factor, no global
        // constant.
        out.beta = 1;
        out.constant_available = false;
        out.c = Interval::undefined();
        out.provenance["beta"] = "fibration over P^1 with rational-curve fibers (no log factor)";
        out.provenance["constant"] =
            "sum of fiber constants; not assembled (use the case-2 product machinery)";
        return out;
    }
    throw std::invalid_argument(
        "predict: alpha L + K is a nonzero class for this polarization; full constants are "
        "assembled only for the zero-shift and weighted fibration cases");
}

// ---------------------------------------------------------------------------
// enumeration dispatch

enum class Engine { Auto, Projective, Weighted, CubicSurface, TorusGrid };

struct EnumerationTask {
    VarietySpec spec;
    std::vector<long> bound_schedule; // increasing
    Engine engine = Engine::Auto;
    int threads = 1;
    std::optional<GridBox> box; // required by the grid engine

    void validate() const
    {
        if (bound_schedule.empty())
            throw std::invalid_argument("EnumerationTask: empty bound schedule");
        for (std::size_t i = 1; i < bound_schedule.size(); ++i)
            if (bound_schedule[i] <= bound_schedule[i - 1])
                throw std::invalid_argument("EnumerationTask: schedule must increase");
    }
};

inline bool is_cubic_xyz_fan(const Fan& f)
{
    if (f.dim != 2) return false;
    std::set<Vec> rays(f.rays.begin(), f.rays.end());
    Fan c = fan_cubic_xyz_u3();
    if (rays == std::set<Vec>(c.rays.begin(), c.rays.end())) return true;
    Fan r = resolve_fan_2d(c);
    return rays == std::set<Vec>(r.rays.begin(), r.rays.end());
}

inline CountCurve run_enumeration(const EnumerationTask& task)
{
    task.validate();
    Engine engine = task.engine;
    if (engine == Engine::Auto) {
        if (std::holds_alternative<ProjectiveSpec>(task.spec.data))
            engine = Engine::Projective;
        else if (std::holds_alternative<WeightedSpec>(task.spec.data))
            engine = Engine::Weighted;
        else if (is_cubic_xyz_fan(std::get<ToricSpec>(task.spec.data).fan))
            engine = Engine::CubicSurface;
        else
            engine = Engine::TorusGrid;
    }
    switch (engine) {
    case Engine::Projective:
        return projective_curve(std::get<ProjectiveSpec>(task.spec.data).n, task.bound_schedule);
    case Engine::Weighted:
        return weighted_torus_curve(weighted_m(std::get<WeightedSpec>(task.spec.data)),
                                    task.bound_schedule, task.threads);
    case Engine::CubicSurface: {
        if (!std::holds_alternative<ToricSpec>(task.spec.data) ||
            !is_cubic_xyz_fan(std::get<ToricSpec>(task.spec.data).fan))
            throw std::invalid_argument("run_enumeration: cubic engine needs the xyz=u^3 fan");
        CountCurve c = cubic_curve(task.bound_schedule, task.threads);
        c.model_id = task.spec.id;
        return c;
    }
    case Engine::TorusGrid: {
        if (!task.box)
            throw std::invalid_argument(
                "run_enumeration: the grid engine needs an explicit box (the caller owns "
                "completeness)");
        ToricModel tm = build_toric_model(toric_spec_of(task.spec));
        HeightModel model = HeightModel::toric(tm.polarization);
        CountCurve c;
        c.model_id = task.spec.id + "-grid";
        for (long B : task.bound_schedule)
            c.samples.emplace_back(Rational(B), torus_grid_enumerate(model, Rational(B), *task.box));
        c.validate();
        return c;
    }
    case Engine::Auto:
        break;
    }
    throw std::logic_error("run_enumeration: unreachable");
}

// Summary table used by the describe subcommand.
struct VarietyDescription {
    std::string id;
    int dim = 0;
    std::size_t input_rays = 0;
    std::size_t resolved_rays = 0;
    bool resolved = false;
    int picard_rank = 0;
    Rational alpha;
    int beta = 0;
    std::optional<Rational> gamma;
    std::optional<Rational> tau_inf;
};

inline VarietyDescription describe(const VarietySpec& spec)
{
    ToricSpec ts = toric_spec_of(spec);
    ToricModel tm = build_toric_model(ts);
    VarietyDescription d;
    d.id = spec.id;
    d.dim = tm.fan.dim;
    d.input_rays = ts.fan.rays.size();
    d.resolved_rays = tm.fan.rays.size();
    d.resolved = d.resolved_rays != d.input_rays;
    d.picard_rank = tm.picard.rank;
    QVec l_class = pl_class(tm.picard, tm.polarization);
    d.alpha = compute_alpha(tm.picard, l_class);
    AsymptoticPrediction p = predict(spec, 100); // cheap truncation for the table
    d.beta = p.beta;
    if (p.constant_available) {
        d.gamma = p.gamma;
        d.tau_inf = p.tau_inf;
    }
    return d;
}

} // namespace ratcount
