#include "risopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "risopt/errors.hpp"
#include "risopt/parallel.hpp"

namespace risopt {

namespace {

constexpr double kFeasibilityTol = 1e-12;  // absolute slack on watts
constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_psi_inverse(const RectifierModel& m, RectifierStage stage, double demand) {
    try {
        return psi_inverse(m, stage, demand);
    } catch (const unreachable_demand&) {
        return kInf;  // saturation: no transmit power meets this demand
    }
}

// Required RF input per tile turned into a BS transmit power through the
// gain chain; 0 demands 0, a dead chain makes any positive demand infeasible.
double through_chain(double p_rf, double chain_gain) {
    if (p_rf == 0.0) return 0.0;
    return chain_gain > 0.0 ? p_rf / chain_gain : kInf;
}

struct LinkScalars {
    double g_tx, g_rx, g_inc, noise, p_max, ln_eps, snr_bt_min, p_thr;
};

LinkScalars link_scalars(ScenarioContext& ctx) {
    const ScenarioConfig& cfg = ctx.config();
    LinkScalars s;
    s.g_tx = cfg.g_tx;
    s.g_rx = cfg.g_rx;
    s.g_inc = ctx.g_inc();
    s.noise = cfg.noise_power;
    s.p_max = cfg.p_max;
    s.ln_eps = std::log(1.0 / (1.0 - cfg.epsilon));
    s.snr_bt_min = cfg.snr_bt_min;
    s.p_thr = ctx.p_thr();
    return s;
}

// min{p_max, p_thr / (g_inc g_tx g_tile_max)}; with no harvesting tiles the
// saturation constraint is vacuous.
double saturation_cap(const LinkScalars& s, bool harvest_empty, double g_tile_max) {
    if (harvest_empty) return s.p_max;
    const double denom = s.g_inc * s.g_tx * g_tile_max;
    if (!(denom > 0.0)) return s.p_max;
    return std::min(s.p_max, s.p_thr / denom);
}

// Feasibility against the per-stage caps, then the frame-averaged objective.
void finalize(RhoEvaluation& ev, double t_s) {
    const PowerAllocation& a = ev.alloc;
    bool ok = true;
    for (std::size_t b = 0; b < a.p_bt.size() && ok; ++b)
        ok = a.p_bt[b] <= a.p_bt_max + kFeasibilityTol &&
             a.p_dt[b] <= a.p_dt_max + kFeasibilityTol;
    for (std::size_t b = 0; b < a.p_eh.size() && ok; ++b)
        ok = a.p_eh[b] <= a.p_eh_max + kFeasibilityTol;
    ev.feasible = ok;
    if (!ok) {
        ev.alloc.objective = kInf;
        return;
    }
    const double n = static_cast<double>(ev.codebook_size);
    const double t_fr = ev.timing.t_fr;
    double sum = 0.0;
    for (std::size_t b = 0; b < a.p_bt.size(); ++b) {
        if (!a.p_eh.empty()) sum += ev.timing.t_eh / t_fr * a.p_eh[b];
        sum += n * (t_s / t_fr) * a.p_bt[b];
        sum += ev.timing.t_dt / t_fr * a.p_dt[b];
    }
    ev.alloc.objective = sum / n;
}

RhoEvaluation eval_ts(const ScenarioConfig& cfg, const LinkScalars& s,
                      const RectifierModel& model, double t_sf, const PlanCache& pc,
                      const TileCache& tc, int n_tl, double rho) {
    RhoEvaluation ev;
    ev.rho = rho;
    ev.timing = make_frame_timing(pc.t_fr, pc.t_bt, 1.0 - rho, cfg.t_s, cfg.n_est, t_sf);
    ev.codebook_size = pc.plan.size();

    const auto [g_min_it, g_max_it] =
        std::minmax_element(tc.tile_gains.begin(), tc.tile_gains.end());
    const double g_min = *g_min_it, g_max = *g_max_it;
    const double g_dc = dc_combining_gain(n_tl, cfg.gamma);
    const double h_sum = static_cast<double>(n_tl) * tc.harvest_per_tile;
    const double snr_dt_min = min_data_snr(ev.timing, cfg.r_min);
    const double chain = s.g_inc * s.g_tx * g_min;

    ev.alloc.p_eh_max = saturation_cap(s, false, g_max);
    ev.alloc.p_bt_max = s.p_max;
    ev.alloc.p_dt_max = s.p_max / s.ln_eps;

    const std::size_t n = static_cast<std::size_t>(ev.codebook_size);
    ev.alloc.p_eh.resize(n);
    ev.alloc.p_bt.resize(n);
    ev.alloc.p_dt.resize(n);
    ev.diags.resize(n);

    for (std::size_t b = 0; b < n; ++b) {
        const double e_c = ts_frame_energy(ev.timing, cfg.t_s, cfg.power.p_sta, h_sum,
                                           pc.reflect_power_total, pc.reflect_power[b]);
        double p_eh = 0.0;
        if (e_c > 0.0) {
            if (ev.timing.t_eh > 0.0) {
                const double demand = e_c / (ev.timing.t_eh * g_dc * n_tl);
                p_eh = through_chain(
                    safe_psi_inverse(model, RectifierStage::deterministic, demand), chain);
            } else {
                p_eh = kInf;  // consumption but no harvesting time
            }
            ev.diags[b].eh = Binding::harvest;
        }
        const double snr_denom = s.g_rx * s.g_tx * s.g_inc * pc.g_l[b];
        const double p_bt = s.snr_bt_min * s.noise / snr_denom;
        const double p_dt = snr_dt_min * s.noise / snr_denom;
        ev.diags[b].bt = Binding::snr;
        ev.diags[b].dt = Binding::snr;
        ev.alloc.p_eh[b] = p_eh;
        ev.alloc.p_bt[b] = p_bt;
        ev.alloc.p_dt[b] = p_dt;
        ev.branches.harvest_eh += p_eh;
        ev.branches.snr_bt += p_bt;
        ev.branches.snr_dt += p_dt;
    }
    ev.branches.harvest_eh /= static_cast<double>(n);
    ev.branches.snr_bt /= static_cast<double>(n);
    ev.branches.snr_dt /= static_cast<double>(n);

    finalize(ev, cfg.t_s);
    ev.ris_consumption =
        cfg.power.p_sta +
        (ev.timing.t_eh * h_sum +
         (cfg.t_s + ev.timing.t_dt / static_cast<double>(ev.codebook_size)) *
             pc.reflect_power_total) /
            ev.timing.t_fr;
    return ev;
}

// RF input demand inversions per codeword for element/power splitting; the
// demand is the active-interval consumption plus the inactive surcharge,
// spread over the harvesting tiles and the DC combining gain.
struct Inversions {
    std::vector<double> bt, dt;
};

Inversions invert_demands(const RectifierModel& model, const PlanCache& pc, double p_sta,
                          double h_sum, double p_tilde, double g_dc, int n_harvest) {
    const std::size_t n = pc.reflect_power.size();
    Inversions inv;
    inv.bt.resize(n);
    inv.dt.resize(n);
    for (std::size_t b = 0; b < n; ++b) {
        const double consumption = p_sta + h_sum + pc.reflect_power[b] + p_tilde;
        if (n_harvest == 0) {
            inv.bt[b] = inv.dt[b] = consumption > 0.0 ? kInf : 0.0;
            continue;
        }
        const double demand = consumption / (g_dc * static_cast<double>(n_harvest));
        inv.bt[b] = safe_psi_inverse(model, RectifierStage::deterministic, demand);
        inv.dt[b] = safe_psi_inverse(model, RectifierStage::data_averaged, demand);
    }
    return inv;
}

// Shared assembly for element and power splitting. Power splitting passes
// rho-dependent scale factors (reflection gains x rho, tile gains x 1-rho);
// element splitting passes 1 and encodes rho in the plan and tile sets.
RhoEvaluation assemble_es_ps(const ScenarioConfig& cfg, const LinkScalars& s,
                             const PlanCache& pc, const FrameTiming& ft, double rho,
                             int es_block_side, const Inversions& inv, int n_harvest,
                             double g_tile_min, double g_tile_max, double gl_scale,
                             double h_sum) {
    RhoEvaluation ev;
    ev.rho = rho;
    ev.es_block_side = es_block_side;
    ev.timing = ft;
    ev.codebook_size = pc.plan.size();

    const double snr_dt_min = min_data_snr(ft, cfg.r_min);
    const double chain = s.g_inc * s.g_tx * g_tile_min;
    const double cap = saturation_cap(s, n_harvest == 0, g_tile_max);
    ev.alloc.p_bt_max = cap;
    ev.alloc.p_dt_max = cap / s.ln_eps;
    ev.alloc.p_eh_max = 0.0;

    const std::size_t n = static_cast<std::size_t>(ev.codebook_size);
    ev.alloc.p_bt.resize(n);
    ev.alloc.p_dt.resize(n);
    ev.diags.resize(n);

    for (std::size_t b = 0; b < n; ++b) {
        const double h_bt = through_chain(inv.bt[b], chain);
        const double h_dt = through_chain(inv.dt[b], chain);
        const double gl = gl_scale * pc.g_l[b];
        const double snr_denom = s.g_rx * s.g_tx * s.g_inc * gl;
        const double s_bt =
            snr_denom > 0.0 ? s.snr_bt_min * s.noise / snr_denom : kInf;
        const double s_dt = snr_denom > 0.0 ? snr_dt_min * s.noise / snr_denom : kInf;
        ev.alloc.p_bt[b] = std::max(h_bt, s_bt);
        ev.alloc.p_dt[b] = std::max(h_dt, s_dt);
        ev.diags[b].bt = h_bt >= s_bt ? Binding::harvest : Binding::snr;
        ev.diags[b].dt = h_dt >= s_dt ? Binding::harvest : Binding::snr;
        ev.branches.harvest_bt += h_bt;
        ev.branches.snr_bt += s_bt;
        ev.branches.harvest_dt += h_dt;
        ev.branches.snr_dt += s_dt;
    }
    ev.branches.harvest_bt /= static_cast<double>(n);
    ev.branches.snr_bt /= static_cast<double>(n);
    ev.branches.harvest_dt /= static_cast<double>(n);
    ev.branches.snr_dt /= static_cast<double>(n);

    finalize(ev, cfg.t_s);
    ev.ris_consumption =
        cfg.power.p_sta +
        (cfg.t_s * (pc.reflect_power_total + static_cast<double>(ev.codebook_size) * h_sum) +
         ft.t_dt * (pc.reflect_power_total / static_cast<double>(ev.codebook_size) + h_sum)) /
            ft.t_fr;
    return ev;
}

// Smallest/largest combining gain over the harvesting tiles (the complement
// of the n x n reflecting block for element splitting).
void harvest_minmax(const TileCache& tc, int block_side, double* g_min, double* g_max) {
    const int ts = tc.part.tiles_side;
    double mn = kInf, mx = 0.0;
    for (int tz = 0; tz < ts; ++tz) {
        for (int ty = 0; ty < ts; ++ty) {
            if (tz < block_side && ty < block_side) continue;
            const double g = tc.tile_gains[static_cast<std::size_t>(tz * ts + ty)];
            mn = std::min(mn, g);
            mx = std::max(mx, g);
        }
    }
    *g_min = mn;
    *g_max = mx;
}

RhoEvaluation eval_es(ScenarioContext& ctx, const LinkScalars& s, int n_tl, int block_side) {
    const ScenarioConfig& cfg = ctx.config();
    const TileCache& tc = ctx.tiles(n_tl);
    if (block_side < 1 || block_side > tc.part.tiles_side)
        throw config_error("element splitting: block side out of range");
    const PlanCache& pc = ctx.plan(block_side * tc.part.cells_side);
    const FrameTiming ft =
        make_frame_timing(pc.t_fr, pc.t_bt, 0.0, cfg.t_s, cfg.n_est, ctx.t_sf());
    const int n_harvest = n_tl - block_side * block_side;

    double g_min = 0.0, g_max = 0.0;
    double g_dc = 1.0;
    if (n_harvest > 0) {
        harvest_minmax(tc, block_side, &g_min, &g_max);
        g_dc = dc_combining_gain(n_harvest, cfg.gamma);
    }
    const double h_sum = static_cast<double>(n_harvest) * tc.harvest_per_tile;
    const double p_tilde = inactive_surcharge(cfg.power.p_sta, pc.plan.size(), cfg.t_resp,
                                              cfg.t_delay, cfg.t_s, ft.t_dt);
    const Inversions inv = invert_demands(ctx.rectifier(), pc, cfg.power.p_sta, h_sum,
                                          p_tilde, g_dc, n_harvest);
    const double rho =
        static_cast<double>(block_side) * block_side / static_cast<double>(n_tl);
    return assemble_es_ps(cfg, s, pc, ft, rho, block_side, inv, n_harvest, g_min, g_max,
                          1.0, h_sum);
}

struct PsCommon {
    const PlanCache* pc = nullptr;
    FrameTiming ft;
    double g_min_base = 0.0, g_max_base = 0.0;
    double h_sum = 0.0;
    Inversions inv;
};

PsCommon ps_common(ScenarioContext& ctx, int n_tl) {
    const ScenarioConfig& cfg = ctx.config();
    const TileCache& tc = ctx.tiles(n_tl);
    PsCommon c;
    c.pc = &ctx.full_plan();
    c.ft = make_frame_timing(c.pc->t_fr, c.pc->t_bt, 0.0, cfg.t_s, cfg.n_est, ctx.t_sf());
    const auto [mn, mx] = std::minmax_element(tc.tile_gains.begin(), tc.tile_gains.end());
    c.g_min_base = *mn;
    c.g_max_base = *mx;
    c.h_sum = static_cast<double>(n_tl) * tc.harvest_per_tile;
    const double g_dc = dc_combining_gain(n_tl, cfg.gamma);
    const double p_tilde = inactive_surcharge(cfg.power.p_sta, c.pc->plan.size(),
                                              cfg.t_resp, cfg.t_delay, cfg.t_s, c.ft.t_dt);
    c.inv = invert_demands(ctx.rectifier(), *c.pc, cfg.power.p_sta, c.h_sum, p_tilde, g_dc,
                           n_tl);
    return c;
}

RhoEvaluation eval_ps(const ScenarioConfig& cfg, const LinkScalars& s, const PsCommon& c,
                      int n_tl, double rho) {
    return assemble_es_ps(cfg, s, *c.pc, c.ft, rho, 0, c.inv, n_tl,
                          (1.0 - rho) * c.g_min_base, (1.0 - rho) * c.g_max_base, rho,
                          c.h_sum);
}

}  // namespace

std::vector<double> rho_candidates(Scheme scheme, int n_tl, double delta) {
    std::vector<double> out;
    if (scheme == Scheme::es) {
        const int ts = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_tl))));
        if (ts * ts != n_tl) throw config_error("element splitting needs a square tile count");
        for (int b = 1; b <= ts; ++b)
            out.push_back(static_cast<double>(b) * b / static_cast<double>(n_tl));
        return out;
    }
    if (!(delta > 0.0 && delta <= 1.0)) throw config_error("delta must be in (0, 1]");
    for (long k = 0;; ++k) {
        const double rho = static_cast<double>(k) * delta;
        if (rho >= 1.0 - 1e-12) break;
        out.push_back(rho);
    }
    out.push_back(1.0);
    return out;
}

RhoEvaluation evaluate_at_rho(ScenarioContext& ctx, Scheme scheme, int n_tl, double rho) {
    const LinkScalars s = link_scalars(ctx);
    switch (scheme) {
        case Scheme::ts:
            return eval_ts(ctx.config(), s, ctx.rectifier(), ctx.t_sf(), ctx.full_plan(),
                           ctx.tiles(n_tl), n_tl, rho);
        case Scheme::es: {
            const int block = static_cast<int>(std::lround(
                std::sqrt(rho * static_cast<double>(n_tl))));
            if (std::abs(static_cast<double>(block) * block / static_cast<double>(n_tl) -
                         rho) > 1e-9)
                throw config_error("element splitting: rho is not a realizable ratio");
            return eval_es(ctx, s, n_tl, block);
        }
        case Scheme::ps:
            return eval_ps(ctx.config(), s, ps_common(ctx, n_tl), n_tl, rho);
    }
    throw config_error("unknown scheme");
}

std::vector<RhoEvaluation> evaluate_grid(ScenarioContext& ctx, Scheme scheme, int n_tl,
                                         double delta) {
    const LinkScalars s = link_scalars(ctx);
    const std::vector<double> rhos = rho_candidates(scheme, n_tl, delta);
    std::vector<RhoEvaluation> out(rhos.size());
    switch (scheme) {
        case Scheme::ts: {
            const PlanCache& pc = ctx.full_plan();
            const TileCache& tc = ctx.tiles(n_tl);
            const ScenarioConfig& cfg = ctx.config();
            const RectifierModel& model = ctx.rectifier();
            const double t_sf = ctx.t_sf();
            parallel_for(rhos.size(), ctx.workers(), [&](std::size_t i) {
                out[i] = eval_ts(cfg, s, model, t_sf, pc, tc, n_tl, rhos[i]);
            });
            break;
        }
        case Scheme::es:
            for (std::size_t i = 0; i < rhos.size(); ++i)
                out[i] = eval_es(ctx, s, n_tl, static_cast<int>(i) + 1);
            break;
        case Scheme::ps: {
            const PsCommon c = ps_common(ctx, n_tl);
            const ScenarioConfig& cfg = ctx.config();
            for (std::size_t i = 0; i < rhos.size(); ++i)
                out[i] = eval_ps(cfg, s, c, n_tl, rhos[i]);
            break;
        }
    }
    return out;
}

SchemeSolution best_of(Scheme scheme, int n_tl, const std::vector<RhoEvaluation>& grid) {
    SchemeSolution sol;
    sol.scheme = scheme;
    sol.n_tl = n_tl;
    sol.candidate_count = static_cast<int>(grid.size());
    for (const RhoEvaluation& ev : grid) {
        if (!ev.feasible) continue;
        ++sol.feasible_count;
        // Strict comparison keeps the earliest (smallest-rho) optimum on ties.
        if (!sol.feasible || ev.alloc.objective < sol.best.alloc.objective) {
            sol.best = ev;
            sol.feasible = true;
        }
    }
    return sol;
}

SchemeSolution grid_search(ScenarioContext& ctx, Scheme scheme, int n_tl, double delta) {
    return best_of(scheme, n_tl, evaluate_grid(ctx, scheme, n_tl, delta));
}

BenchmarkResult benchmark_of(const std::vector<RhoEvaluation>& grid) {
    BenchmarkResult r;
    for (const RhoEvaluation& ev : grid) {
        if (!ev.feasible) continue;
        ++r.feasible_count;
        r.mean_objective += ev.alloc.objective;
        r.mean_rho += ev.rho;
        r.mean_consumption += ev.ris_consumption;
    }
    if (r.feasible_count > 0) {
        r.available = true;
        r.mean_objective /= r.feasible_count;
        r.mean_rho /= r.feasible_count;
        r.mean_consumption /= r.feasible_count;
    }
    return r;
}

BenchmarkResult random_rho_benchmark(ScenarioContext& ctx, Scheme scheme, int n_tl,
                                     double delta) {
    return benchmark_of(evaluate_grid(ctx, scheme, n_tl, delta));
}

}  // namespace risopt
