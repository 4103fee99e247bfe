// ratcount: predict and verify point-count asymptotics for explicit
// varieties. Subcommands: describe, predict, enumerate, euler-product, fit,
// compare. File formats are documented in the README; all JSON carries a
// versioned schema id.

#include <CLI11.hpp>

#include "ratcount/io.hpp"

#include <iostream>

using namespace ratcount;

namespace {

VarietySpec load_variety(const std::string& path)
{
    return variety_from_json(Json::parse(read_file(path)));
}

std::vector<long> parse_bounds(const std::string& bounds, const std::string& geometric)
{
    std::vector<long> out;
    if (!bounds.empty()) {
        std::stringstream ss(bounds);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
    } else if (!geometric.empty()) {
        auto c1 = geometric.find(':');
        auto c2 = geometric.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw CLI::ValidationError("--geometric expects lo:hi:steps");
        double lo = std::stod(geometric.substr(0, c1));
        double hi = std::stod(geometric.substr(c1 + 1, c2 - c1 - 1));
        int steps = std::stoi(geometric.substr(c2 + 1));
        if (steps < 2 || lo < 1 || hi <= lo) throw CLI::ValidationError("--geometric expects 1 <= lo < hi, steps >= 2");
        double ratio = std::pow(hi / lo, 1.0 / (steps - 1));
        double b = lo;
        for (int i = 0; i < steps; ++i) {
            long v = static_cast<long>(std::llround(b));
            if (out.empty() || v > out.back()) out.push_back(v);
            b *= ratio;
        }
    }
    if (out.empty()) throw CLI::ValidationError("supply --bounds or --geometric");
    return out;
}

void emit(const std::string& out_path, const std::string& content)
{
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"rational point counting: predictions and empirical verification"};
    app.require_subcommand(1);

    std::string variety_path, out_path, counts_path, prediction_path;
    std::string bounds, geometric, engine = "auto", box_arg;
    long euler_bound = 10000;
    int threads = 1;
    double fix_a_val = 0, fix_b_val = 0;
    bool has_fix_a = false, has_fix_b = false;
    double exponent_tol = 0.10, constant_slack = 3.0;

    auto* cmd_describe = app.add_subcommand("describe", "invariant table of a variety spec");
    cmd_describe->add_option("--variety", variety_path, "variety spec JSON")->required();
    cmd_describe->add_option("--out", out_path, "write JSON here instead of a table");

    auto* cmd_predict = app.add_subcommand("predict", "asymptotic prediction JSON");
    cmd_predict->add_option("--variety", variety_path)->required();
    cmd_predict->add_option("--euler-bound", euler_bound, "Euler product truncation prime");
    cmd_predict->add_option("--out", out_path, "output path (default stdout)");

    auto* cmd_enum = app.add_subcommand("enumerate", "exact count curve as CSV");
    cmd_enum->add_option("--variety", variety_path)->required();
    cmd_enum->add_option("--bounds", bounds, "comma-separated height bounds");
    cmd_enum->add_option("--geometric", geometric, "geometric schedule lo:hi:steps");
    cmd_enum->add_option("--engine", engine, "auto|projective|weighted|cubic-surface|torus-grid");
    cmd_enum->add_option("--threads", threads, "worker threads (counts are thread-count independent)");
    cmd_enum->add_option("--box", box_arg, "torus-grid box as NUM:DEN (caller owns completeness)");
    cmd_enum->add_option("--out", out_path);

    auto* cmd_euler = app.add_subcommand("euler-product", "Euler factor table as CSV");
    cmd_euler->add_option("--variety", variety_path)->required();
    cmd_euler->add_option("--bound", euler_bound, "truncation prime");
    cmd_euler->add_option("--out", out_path);

    auto* cmd_fit = app.add_subcommand("fit", "least-squares fit of a count curve");
    cmd_fit->add_option("--counts", counts_path, "counts CSV")->required();
    auto* fa = cmd_fit->add_option("--fix-a", fix_a_val, "hold the exponent fixed");
    auto* fb = cmd_fit->add_option("--fix-b", fix_b_val, "hold the log power fixed");
    cmd_fit->add_option("--out", out_path);

    auto* cmd_cmp = app.add_subcommand("compare", "prediction vs curve report");
    cmd_cmp->add_option("--prediction", prediction_path, "prediction JSON")->required();
    cmd_cmp->add_option("--counts", counts_path, "counts CSV")->required();
    cmd_cmp->add_option("--exponent-tol", exponent_tol);
    cmd_cmp->add_option("--slack", constant_slack, "constant slack factor");
    cmd_cmp->add_option("--out", out_path, "write the JSON report here");

    CLI11_PARSE(app, argc, argv);
    has_fix_a = fa->count() > 0;
    has_fix_b = fb->count() > 0;

    try {
        if (*cmd_describe) {
            auto spec = load_variety(variety_path);
            auto d = describe(spec);
            Json j{{"schema", "ratcount/describe-v1"},
                   {"id", d.id},
                   {"dim", d.dim},
                   {"input_rays", d.input_rays},
                   {"resolved_rays", d.resolved_rays},
                   {"resolved", d.resolved},
                   {"picard_rank", d.picard_rank},
                   {"alpha", rational_to_string(d.alpha)},
                   {"beta", d.beta}};
            if (d.gamma) j["gamma"] = rational_to_string(*d.gamma);
            if (d.tau_inf) j["tau_inf"] = rational_to_string(*d.tau_inf);
            if (!out_path.empty()) {
                write_file(out_path, j.dump(2) + "\n");
            } else {
                std::cout << "variety        " << d.id << "\n"
                          << "dimension      " << d.dim << "\n"
                          << "rays           " << d.input_rays;
                if (d.resolved) std::cout << " (resolved to " << d.resolved_rays << ")";
                std::cout << "\npicard rank    " << d.picard_rank << "\n"
                          << "alpha          " << rational_to_string(d.alpha) << "\n"
                          << "beta           " << d.beta << "\n";
                if (d.gamma) std::cout << "gamma          " << rational_to_string(*d.gamma) << "\n";
                if (d.tau_inf) std::cout << "tau_inf        " << rational_to_string(*d.tau_inf) << "\n";
            }
        } else if (*cmd_predict) {
            auto pred = predict(load_variety(variety_path), euler_bound);
            emit(out_path, prediction_to_json(pred).dump(2) + "\n");
        } else if (*cmd_enum) {
            EnumerationTask task;
            task.spec = load_variety(variety_path);
            task.bound_schedule = parse_bounds(bounds, geometric);
            task.threads = threads;
            if (engine == "auto") task.engine = Engine::Auto;
            else if (engine == "projective") task.engine = Engine::Projective;
            else if (engine == "weighted") task.engine = Engine::Weighted;
            else if (engine == "cubic-surface") task.engine = Engine::CubicSurface;
            else if (engine == "torus-grid") task.engine = Engine::TorusGrid;
            else throw CLI::ValidationError("unknown engine '" + engine + "'");
            if (!box_arg.empty()) {
                auto colon = box_arg.find(':');
                if (colon == std::string::npos)
                    throw CLI::ValidationError("--box expects NUM:DEN");
                task.box = GridBox{std::stol(box_arg.substr(0, colon)),
                                   std::stol(box_arg.substr(colon + 1))};
            }
            emit(out_path, curve_to_csv(run_enumeration(task)));
        } else if (*cmd_euler) {
            auto spec = load_variety(variety_path);
            ToricModel tm = build_toric_model(toric_spec_of(spec));
            auto ep = tau_finite(tm.fan, tm.picard, RigidDivisorData::none(), euler_bound);
            emit(out_path, factors_to_csv(ep));
        } else if (*cmd_fit) {
            std::istringstream in(read_file(counts_path));
            CountCurve curve = curve_from_csv(in);
            std::optional<double> oa, ob;
            if (has_fix_a) oa = fix_a_val;
            if (has_fix_b) ob = fix_b_val;
            FitResult fr = fit_asymptotic(curve, oa, ob);
            emit(out_path, fit_to_json(fr).dump(2) + "\n");
        } else if (*cmd_cmp) {
            auto pred = prediction_from_json(Json::parse(read_file(prediction_path)));
            std::istringstream in(read_file(counts_path));
            CountCurve curve = curve_from_csv(in);
            CompareOptions opt;
            opt.exponent_tolerance = exponent_tol;
            opt.constant_slack = constant_slack;
            auto rep = compare(pred, curve, opt);
            std::cout << "verdicts for " << pred.model_id << ":\n";
            for (const auto& v : rep.verdicts) {
                std::cout << "  " << v.name << ": " << v.status << " (observed " << v.observed
                          << ", expected " << v.expected << ", tolerance " << v.tolerance << ")";
                if (!v.note.empty()) std::cout << "  [" << v.note << "]";
                std::cout << "\n";
            }
            std::cout << "trend of N (beta-1)! / (B^alpha (log B)^{beta-1}):\n";
            for (const auto& [B, t] : rep.trend) std::cout << "  B=" << B << "  " << t << "\n";
            if (!out_path.empty()) write_file(out_path, report_to_json(rep).dump(2) + "\n");
            if (!rep.all_passed()) return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
