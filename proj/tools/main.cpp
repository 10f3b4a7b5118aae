// Command-line front end: loads a scenario configuration, runs the requested
// study, and emits delimited tables plus a provenance manifest.
// Exit codes: 0 ok, 1 config error, 2 infeasible, 3 numerical failure.
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "risopt/config.hpp"
#include "risopt/errors.hpp"
#include "risopt/io.hpp"
#include "risopt/optimizer.hpp"
#include "risopt/studies.hpp"

namespace {

using namespace risopt;

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::string scheme = "all";
    int n_tl = 0;
    double delta = 0.0;  // 0: use the config's grid step
    std::uint64_t seed = 12345;
    int workers = 0;  // 0: all hardware threads
};

std::vector<Scheme> schemes_from(const std::string& name) {
    if (name == "ts") return {Scheme::ts};
    if (name == "es") return {Scheme::es};
    if (name == "ps") return {Scheme::ps};
    return {Scheme::ts, Scheme::es, Scheme::ps};
}

std::string out_path(const Options& opt, const std::string& name) {
    std::filesystem::create_directories(opt.out_dir);
    return (std::filesystem::path(opt.out_dir) / name).string();
}

double effective_delta(const Options& opt, const ScenarioConfig& cfg) {
    return opt.delta > 0.0 ? opt.delta : cfg.delta;
}

RunManifest manifest_base(const Options& opt, const std::string& command) {
    RunManifest m;
    m.command = command;
    m.config_path = opt.config_path;
    m.config_hash = fnv1a64(read_file(opt.config_path));
    return m;
}

void add_fit(RunManifest& m, const RectifierFit& fit) {
    m.fit_c = fit.model.c;
    m.fit_d = fit.model.d;
    m.fit_p_sat = fit.model.p_sat;
    m.fit_rms = fit.rms_residual_w;
}

void finish_manifest(const Options& opt, RunManifest m) {
    const std::string name = m.command + "_manifest.json";
    write_run_manifest(out_path(opt, name), m);
}

std::string flag(bool b) { return b ? "1" : "0"; }

int cmd_solve(const Options& opt) {
    const ScenarioConfig cfg = load_config(opt.config_path);
    if (opt.n_tl <= 0) throw config_error("solve needs --n-tl");
    ScenarioContext ctx(cfg, static_cast<unsigned>(opt.workers));
    const double delta = effective_delta(opt, cfg);

    std::vector<CsvRow> rows;
    bool all_feasible = true;
    for (Scheme scheme : schemes_from(opt.scheme)) {
        const SchemeSolution sol = grid_search(ctx, scheme, opt.n_tl, delta);
        std::cout << "scheme=" << scheme_name(scheme) << " n_tl=" << sol.n_tl
                  << " candidates=" << sol.candidate_count
                  << " feasible_candidates=" << sol.feasible_count << "\n";
        if (!sol.feasible) {
            std::cout << "  infeasible: no splitting ratio satisfies all bounds\n";
            all_feasible = false;
            rows.push_back({scheme_name(scheme), std::to_string(opt.n_tl), "0", "", "",
                            "", "", "", "", "", "", ""});
            continue;
        }
        const RhoEvaluation& ev = sol.best;
        int bind_eh = 0, bind_bt = 0, bind_dt = 0;
        for (const CodewordDiag& d : ev.diags) {
            bind_eh += d.eh == Binding::harvest;
            bind_bt += d.bt == Binding::harvest;
            bind_dt += d.dt == Binding::harvest;
        }
        const int n = ev.codebook_size;
        std::cout << "  rho=" << format_number(ev.rho)
                  << " objective_w=" << format_number(ev.alloc.objective)
                  << " consumption_w=" << format_number(ev.ris_consumption) << "\n"
                  << "  binding(harvest/snr): eh=" << bind_eh << "/" << (n - bind_eh)
                  << " bt=" << bind_bt << "/" << (n - bind_bt) << " dt=" << bind_dt
                  << "/" << (n - bind_dt) << "\n";
        rows.push_back({scheme_name(scheme), std::to_string(opt.n_tl), "1",
                        format_number(ev.rho),
                        scheme == Scheme::es ? std::to_string(ev.es_block_side) : "",
                        format_number(ev.alloc.objective),
                        format_number(ev.ris_consumption), std::to_string(bind_eh),
                        std::to_string(bind_bt), std::to_string(bind_dt),
                        std::to_string(sol.candidate_count),
                        std::to_string(sol.feasible_count)});
    }
    write_csv(out_path(opt, "solve.csv"),
              {"scheme", "n_tl", "feasible", "rho", "es_block_side", "objective_w",
               "consumption_w", "bind_harvest_eh", "bind_harvest_bt", "bind_harvest_dt",
               "candidates", "feasible_candidates"},
              rows);
    RunManifest m = manifest_base(opt, "solve");
    add_fit(m, ctx.fit());
    m.delta = delta;
    m.outputs = {"solve.csv"};
    finish_manifest(opt, m);
    return all_feasible ? 0 : 2;
}

int cmd_sweep_tiles(const Options& opt) {
    const ScenarioConfig cfg = load_config(opt.config_path);
    ScenarioContext ctx(cfg, static_cast<unsigned>(opt.workers));
    const double delta = effective_delta(opt, cfg);
    std::vector<CsvRow> rows;
    for (const TileSweepRow& r : sweep_tiles(ctx, schemes_from(opt.scheme), delta)) {
        CsvRow row{scheme_name(r.scheme), std::to_string(r.n_tl), flag(r.feasible)};
        if (r.feasible) {
            row.push_back(format_number(r.rho));
            row.push_back(r.scheme == Scheme::es ? std::to_string(r.es_block_side) : "");
            row.push_back(format_number(r.objective));
            row.push_back(format_number(r.consumption));
        } else {
            row.insert(row.end(), {"", "", "", ""});
        }
        row.push_back(std::to_string(r.candidate_count));
        row.push_back(std::to_string(r.feasible_count));
        if (r.bench.available) {
            row.push_back(format_number(r.bench.mean_objective));
            row.push_back(format_number(r.bench.mean_rho));
            row.push_back(format_number(r.bench.mean_consumption));
        } else {
            row.insert(row.end(), {"", "", ""});
        }
        rows.push_back(std::move(row));
    }
    write_csv(out_path(opt, "sweep_tiles.csv"),
              {"scheme", "n_tl", "feasible", "rho", "es_block_side", "objective_w",
               "consumption_w", "candidates", "feasible_candidates", "bench_objective_w",
               "bench_rho", "bench_consumption_w"},
              rows);
    RunManifest m = manifest_base(opt, "sweep_tiles");
    add_fit(m, ctx.fit());
    m.delta = delta;
    m.outputs = {"sweep_tiles.csv"};
    finish_manifest(opt, m);
    return 0;
}

int cmd_tradeoff(const Options& opt) {
    const ScenarioConfig cfg = load_config(opt.config_path);
    if (opt.n_tl <= 0) throw config_error("tradeoff needs --n-tl");
    ScenarioContext ctx(cfg, static_cast<unsigned>(opt.workers));
    const double delta = effective_delta(opt, cfg);
    std::vector<CsvRow> rows;
    for (const TradeoffRow& r : tradeoff_curves(ctx, schemes_from(opt.scheme), opt.n_tl,
                                                delta)) {
        rows.push_back({scheme_name(r.scheme), format_number(r.rho), flag(r.feasible),
                        format_number(r.branches.harvest_eh),
                        format_number(r.branches.harvest_bt),
                        format_number(r.branches.snr_bt),
                        format_number(r.branches.harvest_dt),
                        format_number(r.branches.snr_dt), format_number(r.p_eh_max),
                        format_number(r.p_bt_max), format_number(r.p_dt_max),
                        r.feasible ? format_number(r.objective) : "",
                        format_number(r.consumption)});
    }
    write_csv(out_path(opt, "tradeoff.csv"),
              {"scheme", "rho", "feasible", "harvest_eh_w", "harvest_bt_w", "snr_bt_w",
               "harvest_dt_w", "snr_dt_w", "p_eh_max_w", "p_bt_max_w", "p_dt_max_w",
               "objective_w", "consumption_w"},
              rows);
    RunManifest m = manifest_base(opt, "tradeoff");
    add_fit(m, ctx.fit());
    m.delta = delta;
    m.outputs = {"tradeoff.csv"};
    finish_manifest(opt, m);
    return 0;
}

int cmd_quantization_study(const Options& opt) {
    const ScenarioConfig cfg = load_config(opt.config_path);
    std::vector<CsvRow> rows;
    for (const QuantizationRow& r : quantization_table(cfg, {2, 3, 4}, opt.workers)) {
        rows.push_back({std::to_string(r.n_b), std::to_string(r.stats.n_tl),
                        format_number(r.stats.min_ratio),
                        format_number(r.stats.q10_ratio)});
    }
    write_csv(out_path(opt, "quantization.csv"),
              {"n_b", "n_tl", "min_ratio", "q10_ratio"}, rows);
    RunManifest m = manifest_base(opt, "quantization_study");
    m.outputs = {"quantization.csv"};
    finish_manifest(opt, m);
    return 0;
}

int cmd_insertion_loss_study(const Options& opt) {
    const ScenarioConfig cfg = load_config(opt.config_path);
    const double delta = effective_delta(opt, cfg);
    std::vector<CsvRow> rows;
    for (const InsertionLossRow& r :
         insertion_loss_study(cfg, {-0.3, -0.5, -0.7, -0.9}, delta, opt.workers)) {
        rows.push_back({format_number(r.beta0_db), std::to_string(r.n_tl),
                        flag(r.feasible), r.feasible ? format_number(r.rho) : "",
                        r.feasible ? format_number(r.objective) : ""});
    }
    write_csv(out_path(opt, "insertion_loss.csv"),
              {"beta0_db", "n_tl", "feasible", "rho", "objective_w"}, rows);
    RunManifest m = manifest_base(opt, "insertion_loss_study");
    m.delta = delta;
    m.outputs = {"insertion_loss.csv"};
    finish_manifest(opt, m);
    return 0;
}

int cmd_shape_decomposition(const Options& opt) {
    const ScenarioConfig cfg = load_config(opt.config_path);
    std::vector<CsvRow> rows;
    for (const ShapeRow& r : shape_decomposition(cfg, 0.5, opt.workers)) {
        rows.push_back({std::to_string(r.n_tl), format_number(r.inverse_term),
                        format_number(r.scale_term), format_number(r.product),
                        format_number(r.direct)});
    }
    write_csv(out_path(opt, "shape_decomposition.csv"),
              {"n_tl", "demand_inverse_w", "gain_scale", "factored_bound_w",
               "direct_bound_w"},
              rows);
    RunManifest m = manifest_base(opt, "shape_decomposition");
    m.outputs = {"shape_decomposition.csv"};
    finish_manifest(opt, m);
    return 0;
}

int cmd_fit_rectifier(const Options& opt) {
    const ScenarioConfig cfg = load_config(opt.config_path);
    const RectifierFit fit = fit_rectifier(load_measurements(cfg.rectifier_data));
    std::cout << "c_per_w=" << format_number(fit.model.c)
              << " d_w=" << format_number(fit.model.d)
              << " p_sat_w=" << format_number(fit.model.p_sat)
              << " rms_residual_w=" << format_number(fit.rms_residual_w) << "\n";
    write_csv(out_path(opt, "rectifier_fit.csv"),
              {"c_per_w", "d_w", "p_sat_w", "rms_residual_w"},
              {{format_number(fit.model.c), format_number(fit.model.d),
                format_number(fit.model.p_sat), format_number(fit.rms_residual_w)}});
    RunManifest m = manifest_base(opt, "fit_rectifier");
    add_fit(m, fit);
    m.outputs = {"rectifier_fit.csv"};
    finish_manifest(opt, m);
    return 0;
}

int cmd_validate_rectifier(const Options& opt) {
    const ScenarioConfig cfg = load_config(opt.config_path);
    const RectifierFit fit = fit_rectifier(load_measurements(cfg.rectifier_data));
    const RectifierValidation v =
        validate_rectifier(fit.model, 1e-6, 2e-3, 20, 1000000, opt.seed);
    std::vector<CsvRow> rows;
    for (const RectifierValidationRow& r : v.rows) {
        rows.push_back({format_number(r.p_avg), format_number(r.quadrature),
                        format_number(r.monte_carlo), format_number(r.rel_error)});
    }
    write_csv(out_path(opt, "rectifier_validation.csv"),
              {"p_avg_w", "quadrature_w", "monte_carlo_w", "rel_error"}, rows);
    std::cout << "max_rel_error=" << format_number(v.max_rel_error) << "\n";
    RunManifest m = manifest_base(opt, "validate_rectifier");
    add_fit(m, fit);
    m.has_seed = true;
    m.seed = opt.seed;
    m.outputs = {"rectifier_validation.csv"};
    finish_manifest(opt, m);
    if (v.max_rel_error > 0.005) {
        std::cerr << "quadrature/Monte-Carlo disagreement above 0.5%\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-sustainable RIS: splitting-ratio and transmit-power solver"};
    app.require_subcommand(1);

    Options opt;
    std::string command;
    auto add_common = [&](CLI::App* sub, bool needs_n_tl) {
        sub->add_option("--config", opt.config_path, "scenario configuration file")
            ->required();
        sub->add_option("--out", opt.out_dir, "output directory (default .)");
        sub->add_option("--scheme", opt.scheme, "ts, es, ps, or all (default all)")
            ->check(CLI::IsMember({"ts", "es", "ps", "all"}));
        if (needs_n_tl) sub->add_option("--n-tl", opt.n_tl, "number of tiles");
        sub->add_option("--delta", opt.delta, "splitting-ratio grid step (default: config)");
        sub->add_option("--seed", opt.seed, "random seed for Monte-Carlo commands");
        sub->add_option("--workers", opt.workers, "worker threads (default: all cores)");
        sub->callback([&command, sub] { command = sub->get_name(); });
    };
    add_common(app.add_subcommand("solve", "bounds and best ratio at one tile count"),
               true);
    add_common(app.add_subcommand("sweep-tiles", "three-panel sweep over tile counts"),
               false);
    add_common(app.add_subcommand("tradeoff", "branch bounds vs. splitting ratio"), true);
    add_common(app.add_subcommand("quantization-study",
                                  "normalized minimum tile gain vs. tile count"),
               false);
    add_common(app.add_subcommand("insertion-loss-study",
                                  "time-splitting sweep across insertion losses"),
               false);
    add_common(app.add_subcommand("shape-decomposition",
                                  "harvesting bound factored at ratio 0.5"),
               false);
    add_common(app.add_subcommand("fit-rectifier", "fit the rectifier measurements"),
               false);
    add_common(app.add_subcommand("validate-rectifier",
                                  "quadrature vs. Monte-Carlo rectifier average"),
               false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (command == "solve") return cmd_solve(opt);
        if (command == "sweep-tiles") return cmd_sweep_tiles(opt);
        if (command == "tradeoff") return cmd_tradeoff(opt);
        if (command == "quantization-study") return cmd_quantization_study(opt);
        if (command == "insertion-loss-study") return cmd_insertion_loss_study(opt);
        if (command == "shape-decomposition") return cmd_shape_decomposition(opt);
        if (command == "fit-rectifier") return cmd_fit_rectifier(opt);
        if (command == "validate-rectifier") return cmd_validate_rectifier(opt);
        std::cerr << "unknown command\n";
        return 1;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
