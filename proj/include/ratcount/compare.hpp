// Comparison of a prediction against an empirical count curve: exponent,
// log-power trend, and constant-enclosure verdicts, each citing its
// tolerance. Verdicts degrade to "inconclusive" on thin data, never to a
// false pass.
#pragma once

#include "ratcount/fit.hpp"
#include "ratcount/prediction.hpp"

#include <string>
#include <vector>

namespace ratcount {

struct Verdict {
    std::string name;
    std::string status; // "pass" | "fail" | "inconclusive"
    double tolerance = 0.0;
    double observed = 0.0;
    double expected = 0.0;
    std::string note;
};

struct CompareOptions {
    double exponent_tolerance = 0.10;  // |fitted a - alpha|
    double log_power_tolerance = 0.75; // |fitted b - beta|
    double constant_slack = 3.0;       // multiplicative
    std::size_t min_samples = 3;
};

struct ComparisonReport {
    AsymptoticPrediction prediction;
    CountCurve curve;
    FitResult fit_fixed;  // a and b pinned to the prediction
    FitResult fit_free_a; // b pinned, a free
    std::vector<Verdict> verdicts;
    std::vector<std::pair<double, double>> trend; // (B, N (beta-1)! / (B^alpha (log B)^{beta-1}))

    bool all_passed() const
    {
        for (const auto& v : verdicts)
            if (v.status == "fail") return false;
        return true;
    }
};

inline ComparisonReport compare(const AsymptoticPrediction& pred, const CountCurve& curve,
                                const CompareOptions& opt = {})
{
    if (curve.samples.empty()) throw std::invalid_argument("compare: empty curve");
    ComparisonReport rep;
    rep.prediction = pred;
    rep.curve = curve;

    const double alpha = to_double(pred.alpha);
    const double betad = static_cast<double>(pred.beta);
    const double fact = to_double(factorial(static_cast<unsigned>(pred.beta - 1)));
    for (const auto& [B, N] : curve.samples) {
        double bd = to_double(B);
        if (bd < 3 || N < 1) continue;
        double denom = std::pow(bd, alpha) * std::pow(std::log(bd), betad - 1.0);
        rep.trend.emplace_back(bd, to_double(N) * fact / denom);
    }

    std::size_t usable = 0;
    for (const auto& [B, N] : curve.samples)
        if (B >= 3 && N >= 1) ++usable;

    // exponent: fit with the log power pinned, exponent free
    Verdict ve{"exponent", "inconclusive", opt.exponent_tolerance, 0.0, alpha, ""};
    if (usable >= opt.min_samples) {
        rep.fit_free_a = fit_asymptotic(curve, std::nullopt, betad);
        ve.observed = rep.fit_free_a.a;
        ve.status = (std::fabs(ve.observed - alpha) <= opt.exponent_tolerance) ? "pass" : "fail";
    } else {
        ve.note = "too few samples";
    }
    rep.verdicts.push_back(ve);

    // log-power trend: fit with the exponent pinned, log power free
    Verdict vb{"log-power", "inconclusive", opt.log_power_tolerance, 0.0, betad, ""};
    if (usable >= std::max<std::size_t>(opt.min_samples, 5)) {
        FitResult fb = fit_asymptotic(curve, alpha, std::nullopt);
        vb.observed = fb.b;
        vb.status = (std::fabs(fb.b - betad) <= opt.log_power_tolerance) ? "pass" : "fail";
    } else {
        vb.note = "too few samples";
    }
    rep.verdicts.push_back(vb);

    // constant: both exponents pinned, compare e^{log c} with the enclosure
    Verdict vc{"constant", "inconclusive", opt.constant_slack, 0.0, 0.0, ""};
    if (usable >= opt.min_samples && pred.constant_available && pred.c.valid()) {
        rep.fit_fixed = fit_asymptotic(curve, alpha, betad);
        vc.observed = rep.fit_fixed.c();
        vc.expected = pred.c.mid();
        bool inside = vc.observed >= pred.c.lo / opt.constant_slack &&
                      vc.observed <= pred.c.hi * opt.constant_slack;
        vc.status = inside ? "pass" : "fail";
        vc.note = "enclosure [" + std::to_string(pred.c.lo) + ", " + std::to_string(pred.c.hi) +
                  "] with slack factor " + std::to_string(opt.constant_slack);
    } else if (!pred.constant_available || !pred.c.valid()) {
        vc.note = "no predicted constant for this model";
    } else {
        vc.note = "too few samples";
    }
    rep.verdicts.push_back(vc);
    return rep;
}

} // namespace ratcount
