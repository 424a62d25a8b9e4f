#include "nullgeo/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "nullgeo/experiments.hpp"
#include "nullgeo/serialization.hpp"

namespace nullgeo {

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    auto join = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    join(header);
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("csv row width does not match the header");
        join(row);
    }
    return out;
}

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) { return format_double(v); }

// Everything a pipeline produces: the plot-ready table, the full JSON rows,
// scalar summary values, the tolerance policy string, one human line for
// stdout, and the process exit code.
struct PipelineOutput {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    ordered_json json_rows = ordered_json::array();
    ordered_json summary = ordered_json::object();
    std::string provenance;
    std::string summary_line;
    int exit_code = 0;
};

PipelineOutput run_uniform(const ExperimentConfig& cfg, const std::vector<double>& ladder) {
    PipelineOutput out;
    out.header = {"j", "uniform", "gh_upper"};
    out.provenance =
        "uniform = sup |dhat_j - dhat_flat| over the sampled slab points; "
        "gh_upper = uniform / 2; measured values, no tolerance applied";
    auto rows =
        uniform_ladder(cfg.example, ladder, cfg.level, cfg.profile_lambda, cfg.samples, *cfg.seed);
    for (const auto& r : rows) {
        out.rows.push_back({fmt(r.j), fmt(r.uniform), fmt(r.gh_upper)});
        out.json_rows.push_back(
            {{"j", r.j}, {"uniform", r.uniform}, {"gh_upper", r.gh_upper}});
    }
    out.summary = {{"final_uniform", rows.back().uniform},
                   {"final_gh_upper", rows.back().gh_upper}};
    out.summary_line = "uniform: sup deviation " + fmt(rows.front().uniform) + " -> " +
                       fmt(rows.back().uniform) + " across j = " + fmt(ladder.front()) + " .. " +
                       fmt(ladder.back());
    return out;
}

PipelineOutput run_gh_to_limit(const ExperimentConfig& cfg, const std::vector<double>& ladder) {
    PipelineOutput out;
    out.header = {"j", "bound", "distortion", "covering"};
    out.provenance =
        "bound = distortion / 2 + covering radius of the explicit slab-to-limit "
        "correspondence on the sampled points; measured values, no tolerance applied";
    auto rows =
        gh_to_limit(cfg.example, ladder, cfg.level, cfg.profile_lambda, cfg.samples, *cfg.seed);
    for (const auto& r : rows) {
        out.rows.push_back({fmt(r.j), fmt(r.bound), fmt(r.distortion), fmt(r.covering)});
        out.json_rows.push_back({{"j", r.j},
                                 {"bound", r.bound},
                                 {"distortion", r.distortion},
                                 {"covering", r.covering}});
    }
    out.summary = {{"first_bound", rows.front().bound}, {"final_bound", rows.back().bound}};
    out.summary_line = "gh-to-limit: correspondence bound " + fmt(rows.front().bound) + " -> " +
                       fmt(rows.back().bound) + " across the ladder";
    return out;
}

PipelineOutput run_holder(const ExperimentConfig& cfg, const std::vector<double>& ladder) {
    PipelineOutput out;
    out.header = {"level", "constant", "slab_constant", "unbounded"};
    out.provenance =
        "constant = smallest C with d_sigma <= C * d_flat^alpha over the sampled pairs, "
        "alpha = (p - 2) / p; slab_constant is the same fit on slab null distances; "
        "unbounded flags a pair at flat distance zero with positive metric distance";
    int max_level = cfg.level;
    int min_level = max_level > 2 ? max_level - 2 : 0;
    auto res = holder_run(cfg.example, ladder.front(), cfg.profile_lambda, cfg.p, min_level,
                          max_level, cfg.samples, *cfg.seed);
    for (const auto& r : res.rows) {
        out.rows.push_back({std::to_string(r.level), fmt(r.constant), fmt(r.slab_constant),
                            r.unbounded ? "1" : "0"});
        out.json_rows.push_back({{"level", r.level},
                                 {"constant", r.constant},
                                 {"slab_constant", r.slab_constant},
                                 {"unbounded", r.unbounded}});
    }
    out.summary = {{"alpha", res.alpha},
                   {"p", res.p},
                   {"lp_norm", res.lp_norm},
                   {"j", ladder.front()},
                   {"final_constant", res.rows.back().constant},
                   {"final_slab_constant", res.rows.back().slab_constant}};
    out.summary_line = "holder: alpha " + fmt(res.alpha) + ", constant " +
                       fmt(res.rows.back().constant) + " (slab " +
                       fmt(res.rows.back().slab_constant) + ") at level " +
                       std::to_string(max_level) + ", lp norm " + fmt(res.lp_norm);
    return out;
}

PipelineOutput run_lower_bound(const ExperimentConfig& cfg, const std::vector<double>& ladder) {
    PipelineOutput out;
    out.header = {"j", "violation", "analytic", "margin", "ok"};
    out.provenance =
        "ok requires max (dhat_inf - dhat_j)+ <= analytic + 1e-12 with "
        "analytic = (1 - sqrt(1 - 1/j)) * slab diameter; the 1e-12 margin absorbs "
        "floating-point rounding in the exact scaling identity";
    auto rows = lower_bound_run(ladder, cfg.level, cfg.samples, *cfg.seed);
    bool all_ok = true;
    for (const auto& r : rows) {
        out.rows.push_back(
            {fmt(r.j), fmt(r.violation), fmt(r.analytic), fmt(r.margin), r.ok ? "1" : "0"});
        out.json_rows.push_back({{"j", r.j},
                                 {"violation", r.violation},
                                 {"analytic", r.analytic},
                                 {"margin", r.margin},
                                 {"ok", r.ok}});
        all_ok = all_ok && r.ok;
    }
    out.summary = {{"all_ok", all_ok}};
    out.summary_line = all_ok ? "lower-bound: every rung within the analytic budget"
                              : "lower-bound: FAIL, a rung exceeded the analytic budget";
    out.exit_code = all_ok ? 0 : 2;
    return out;
}

PipelineOutput run_swif(const ExperimentConfig& cfg, const std::vector<double>& ladder) {
    PipelineOutput out;
    out.header = {"j", "lambda", "kappa", "delta_hat", "H", "V", "Vp", "A", "bound"};
    out.provenance =
        "bound evaluates the closed-form flat estimate at H = 4 lambda + 4 delta_hat and "
        "delta = H / 2; delta_hat is the smallest schedule entry whose good set fits the "
        "volume target vol_limit / kappa + |vol_j - vol_limit|; no tolerance on the bound, "
        "feasible and hypothesis_ok report the good set and the scaling hypothesis per row";
    auto rows = swif_run(cfg.example, ladder, cfg.level, cfg.profile_lambda, cfg.lambda,
                         cfg.kappa, cfg.samples, *cfg.seed);
    int feasible = 0, hypothesis = 0;
    for (const auto& r : rows) {
        out.rows.push_back({fmt(r.j), fmt(r.lambda), fmt(r.kappa), fmt(r.delta_hat), fmt(r.H),
                            fmt(r.V), fmt(r.Vp), fmt(r.A), fmt(r.bound)});
        out.json_rows.push_back({{"j", r.j},
                                 {"lambda", r.lambda},
                                 {"kappa", r.kappa},
                                 {"delta_hat", r.delta_hat},
                                 {"H", r.H},
                                 {"V", r.V},
                                 {"Vp", r.Vp},
                                 {"A", r.A},
                                 {"bound", r.bound},
                                 {"excess_measured", r.excess_measured},
                                 {"volume_ratio", r.volume_ratio},
                                 {"floor_value", r.floor_value},
                                 {"hypothesis_ok", r.hypothesis_ok},
                                 {"feasible", r.feasible}});
        feasible += r.feasible ? 1 : 0;
        hypothesis += r.hypothesis_ok ? 1 : 0;
    }
    const int n = static_cast<int>(rows.size());
    out.summary = {{"first_bound", rows.front().bound},
                   {"final_bound", rows.back().bound},
                   {"feasible_rows", feasible},
                   {"hypothesis_rows", hypothesis},
                   {"rows_total", n}};
    out.summary_line = "swif: bound " + fmt(rows.front().bound) + " -> " +
                       fmt(rows.back().bound) + "; feasible " + std::to_string(feasible) + "/" +
                       std::to_string(n) + ", hypothesis " + std::to_string(hypothesis) + "/" +
                       std::to_string(n);
    out.exit_code = (feasible == n && hypothesis == n) ? 0 : 2;
    return out;
}

PipelineOutput run_oracle_check(const ExperimentConfig& cfg, const std::vector<double>& ladder) {
    PipelineOutput out;
    out.header = {"p_vertex", "p_time", "q_vertex", "q_time", "formula", "oracle", "diff", "tol",
                  "ok"};
    StaticSpacetime st;
    if (cfg.metric == "flat") {
        auto mesh = std::make_shared<const SpatialMesh>(make_disk_mesh(cfg.level));
        st = make_family_limit(mesh);
    } else {
        FamilyParams fp{ladder.front(), cfg.level, cfg.profile_lambda};
        st = make_family_spacetime(cfg.example, fp, make_family_mesh(cfg.example, fp));
    }
    auto res = oracle_check(st, cfg.oracle_pairs, *cfg.seed);
    out.provenance = res.tolerance_provenance;
    for (const auto& r : res.rows) {
        out.rows.push_back({std::to_string(r.p.vertex), fmt(r.p.time), std::to_string(r.q.vertex),
                            fmt(r.q.time), fmt(r.formula), fmt(r.oracle), fmt(r.diff), fmt(r.tol),
                            r.ok ? "1" : "0"});
        out.json_rows.push_back({{"p_vertex", r.p.vertex},
                                 {"p_time", r.p.time},
                                 {"q_vertex", r.q.vertex},
                                 {"q_time", r.q.time},
                                 {"formula", r.formula},
                                 {"oracle", r.oracle},
                                 {"diff", r.diff},
                                 {"tol", r.tol},
                                 {"ok", r.ok}});
    }
    out.summary = {{"max_diff", res.max_diff},
                   {"cell", res.cell},
                   {"rel_tol", res.rel_tol},
                   {"pairs", static_cast<int>(res.rows.size())},
                   {"pass", res.pass}};
    out.summary_line = "oracle-check: max |formula - oracle| = " + fmt(res.max_diff) + " over " +
                       std::to_string(res.rows.size()) + " pairs, per-pair tol = " +
                       fmt(res.rel_tol) + " * formula + " + fmt(res.cell) + " (one cell): " +
                       (res.pass ? "pass" : "FAIL");
    out.exit_code = res.pass ? 0 : 2;
    return out;
}

PipelineOutput run_pointwise(const ExperimentConfig& cfg, const std::vector<double>& ladder) {
    PipelineOutput out;
    out.header = {"j", "fraction"};
    out.provenance =
        "fraction of sampled slab pairs with |dhat_j - dhat_flat| <= eps, eps from the config; "
        "measured values, no tolerance applied";
    auto rows = pointwise_run(cfg.example, ladder, cfg.level, cfg.profile_lambda, cfg.eps,
                              cfg.samples, *cfg.seed);
    for (const auto& r : rows) {
        out.rows.push_back({fmt(r.j), fmt(r.fraction)});
        out.json_rows.push_back({{"j", r.j}, {"fraction", r.fraction}});
    }
    out.summary = {{"eps", cfg.eps}, {"final_fraction", rows.back().fraction}};
    out.summary_line = "pointwise: fraction within eps = " + fmt(cfg.eps) + ": " +
                       fmt(rows.front().fraction) + " -> " + fmt(rows.back().fraction);
    return out;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg) {
    auto findings = validate_config(cfg);
    if (!findings.empty()) {
        for (const auto& f : findings) std::cerr << "config: " << f << "\n";
        return 1;
    }

    ExperimentConfig resolved = cfg;
    if (resolved.j_ladder.empty()) resolved.j_ladder = default_ladder(resolved.example);
    const std::vector<double>& ladder = resolved.j_ladder;

    std::string out_dir = resolved.out_dir;
    if (const char* env = std::getenv("NULLGEO_OUT_DIR"); env && *env) out_dir = env;

    try {
        PipelineOutput out;
        if (resolved.pipeline == "uniform")
            out = run_uniform(resolved, ladder);
        else if (resolved.pipeline == "gh-to-limit")
            out = run_gh_to_limit(resolved, ladder);
        else if (resolved.pipeline == "holder")
            out = run_holder(resolved, ladder);
        else if (resolved.pipeline == "lower-bound")
            out = run_lower_bound(resolved, ladder);
        else if (resolved.pipeline == "swif")
            out = run_swif(resolved, ladder);
        else if (resolved.pipeline == "oracle-check")
            out = run_oracle_check(resolved, ladder);
        else if (resolved.pipeline == "pointwise")
            out = run_pointwise(resolved, ladder);
        else
            throw std::invalid_argument("unknown pipeline: " + resolved.pipeline);

        std::filesystem::create_directories(out_dir);
        const std::string base = out_dir + "/" + resolved.pipeline;
        write_file(base + ".csv", csv_table(out.header, out.rows));

        ordered_json record;
        record["pipeline"] = resolved.pipeline;
        record["status"] = out.exit_code == 0 ? "ok" : "invariant-failure";
        record["config"] = ordered_json::parse(config_to_json(resolved));
        record["tolerance_provenance"] = out.provenance;
        record["summary"] = out.summary;
        record["rows"] = out.json_rows;
        write_file(base + ".json", record.dump(2) + "\n");

        std::cout << out.summary_line << "\n";
        std::cout << "wrote " << base << ".csv and " << base << ".json\n";
        return out.exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::length_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace nullgeo
