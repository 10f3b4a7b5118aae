#include "risopt/studies.hpp"

#include <cmath>
#include <random>

#include "risopt/errors.hpp"
#include "risopt/mathutil.hpp"

namespace risopt {

std::vector<TileSweepRow> sweep_tiles(ScenarioContext& ctx,
                                      const std::vector<Scheme>& schemes, double delta) {
    std::vector<TileSweepRow> rows;
    const std::vector<int> counts = feasible_tile_counts(ctx.config().n_uc);
    for (Scheme scheme : schemes) {
        for (int n_tl : counts) {
            const std::vector<RhoEvaluation> grid = evaluate_grid(ctx, scheme, n_tl, delta);
            const SchemeSolution sol = best_of(scheme, n_tl, grid);
            TileSweepRow row;
            row.scheme = scheme;
            row.n_tl = n_tl;
            row.feasible = sol.feasible;
            row.candidate_count = sol.candidate_count;
            row.feasible_count = sol.feasible_count;
            if (sol.feasible) {
                row.rho = sol.best.rho;
                row.es_block_side = sol.best.es_block_side;
                row.objective = sol.best.alloc.objective;
                row.consumption = sol.best.ris_consumption;
            }
            row.bench = benchmark_of(grid);
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<TradeoffRow> tradeoff_curves(ScenarioContext& ctx,
                                         const std::vector<Scheme>& schemes, int n_tl,
                                         double delta) {
    std::vector<TradeoffRow> rows;
    for (Scheme scheme : schemes) {
        for (const RhoEvaluation& ev : evaluate_grid(ctx, scheme, n_tl, delta)) {
            TradeoffRow row;
            row.scheme = scheme;
            row.rho = ev.rho;
            row.feasible = ev.feasible;
            row.branches = ev.branches;
            row.p_eh_max = ev.alloc.p_eh_max;
            row.p_bt_max = ev.alloc.p_bt_max;
            row.p_dt_max = ev.alloc.p_dt_max;
            row.objective = ev.alloc.objective;
            row.consumption = ev.ris_consumption;
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<QuantizationRow> quantization_table(const ScenarioConfig& cfg,
                                                const std::vector<int>& n_b_values,
                                                int workers) {
    const RisLayout layout = make_ris_layout(cfg.n_uc, cfg.lambda);
    std::vector<QuantizationRow> rows;
    for (int n_b : n_b_values) {
        for (const QuantizationStats& stats :
             quantization_study(layout, n_b, cfg.beta0, cfg.aoa_grid_step_deg, workers)) {
            rows.push_back(QuantizationRow{n_b, stats});
        }
    }
    return rows;
}

std::vector<InsertionLossRow> insertion_loss_study(const ScenarioConfig& cfg,
                                                   const std::vector<double>& beta0_db,
                                                   double delta, int workers) {
    std::vector<InsertionLossRow> rows;
    for (double db : beta0_db) {
        ScenarioConfig variant = cfg;
        variant.beta0 = db_to_linear(db);
        ScenarioContext ctx(variant, static_cast<unsigned>(workers));
        for (int n_tl : feasible_tile_counts(cfg.n_uc)) {
            const SchemeSolution sol = grid_search(ctx, Scheme::ts, n_tl, delta);
            InsertionLossRow row;
            row.beta0_db = db;
            row.n_tl = n_tl;
            row.feasible = sol.feasible;
            if (sol.feasible) {
                row.rho = sol.best.rho;
                row.objective = sol.best.alloc.objective;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<ShapeRow> shape_decomposition(const ScenarioConfig& cfg, double rho,
                                          int workers) {
    if (!(rho >= 0.0 && rho < 1.0))
        throw config_error("decomposition needs a ratio in [0, 1)");
    ScenarioConfig simplified = cfg;
    simplified.power.p_uc = 0.0;
    simplified.power.p_sh = 0.0;
    simplified.gamma = 0.0;
    ScenarioContext ctx(simplified, static_cast<unsigned>(workers),
                        /*ideal_tile_gain=*/true);
    const double demand_scale = simplified.power.p_sta / (1.0 - rho);
    const double gain_scale =
        ctx.g_inc() * simplified.g_tx * static_cast<double>(simplified.n_uc);

    std::vector<ShapeRow> rows;
    for (int n_tl : feasible_tile_counts(simplified.n_uc)) {
        ShapeRow row;
        row.n_tl = n_tl;
        row.inverse_term = psi_inverse(ctx.rectifier(), RectifierStage::deterministic,
                                       demand_scale / n_tl);
        row.scale_term = static_cast<double>(n_tl) / gain_scale;
        row.product = row.scale_term * row.inverse_term;
        const RhoEvaluation ev = evaluate_at_rho(ctx, Scheme::ts, n_tl, rho);
        row.direct = ev.alloc.p_eh.empty() ? 0.0 : ev.alloc.p_eh.front();
        rows.push_back(row);
    }
    return rows;
}

RectifierValidation validate_rectifier(const RectifierModel& model, double p_min,
                                       double p_max, int n_points, long n_samples,
                                       std::uint64_t seed) {
    if (!(p_min > 0.0 && p_max > p_min) || n_points < 2 || n_samples < 1)
        throw config_error("validation needs a positive power range and sample count");
    RectifierValidation out;
    const double log_ratio = std::log(p_max / p_min);
    for (int i = 0; i < n_points; ++i) {
        RectifierValidationRow row;
        row.p_avg = p_min * std::exp(log_ratio * i / (n_points - 1));
        row.quadrature = psi_bar_dt(model, row.p_avg);
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
        double sum = 0.0;
        for (long s = 0; s < n_samples; ++s) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            sum += psi(model, -row.p_avg * std::log1p(-u));
        }
        row.monte_carlo = sum / static_cast<double>(n_samples);
        row.rel_error = row.quadrature > 0.0
                            ? std::abs(row.quadrature - row.monte_carlo) / row.quadrature
                            : std::abs(row.monte_carlo);
        out.max_rel_error = std::max(out.max_rel_error, row.rel_error);
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace risopt
