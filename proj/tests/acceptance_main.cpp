// Acceptance gate: one pass/fail line per criterion, wall-clock budgets
// enforced, nonzero exit on any failure. Tolerances are pinned here and are
// not tunable from outside.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "risopt/consumption.hpp"
#include "risopt/gains.hpp"
#include "risopt/geometry.hpp"
#include "risopt/mathutil.hpp"
#include "risopt/optimizer.hpp"
#include "risopt/rectifier.hpp"
#include "risopt/scenario.hpp"
#include "risopt/studies.hpp"

using namespace risopt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pinned tolerances.
constexpr double kMcRelTol = 0.005;          // quadrature vs Monte-Carlo
constexpr double kInverseRelTol = 1e-8;      // rectifier inverse round-trip
constexpr double kQuantileFloor = 0.9;       // normalized tile-gain 0.1-quantile
constexpr double kCombineRelTol = 1e-9;      // coherent-combining identity
constexpr double kLinearityRelTol = 1e-12;   // power-splitting scaling identity
constexpr double kFactorRelTol = 1e-9;       // harvesting-bound factorization
constexpr double kCurveEqualRelTol = 1e-9;   // single-cell-tile loss invariance
constexpr double kMonotoneSlack = 1e-12;     // relative slack on monotonicity
constexpr double kSweepDelta = 0.01;         // ratio grid step for the sweeps
constexpr std::uint64_t kMcSeed = 20240731;  // Monte-Carlo seed

struct Outcome {
    bool ok = true;
    std::string detail;
};

void fail(Outcome& o, const std::string& detail) {
    if (o.ok) {
        o.ok = false;
        o.detail = detail;
    }
}

std::string fmt(const char* format, ...) {
    char buf[256];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

std::string config_path(const char* name) {
    return std::string(TEST_SOURCE_DIR) + "/configs/" + name;
}

ScenarioContext& scenario1_ctx() {
    static std::unique_ptr<ScenarioContext> ctx;
    if (!ctx)
        ctx = std::make_unique<ScenarioContext>(load_config(config_path("scenario1.cfg")),
                                                0);
    return *ctx;
}

bool rel_close(double a, double b, double tol) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 || std::abs(a - b) <= tol * scale;
}

// a "non-decreasing into" b with relative slack; infinities compare exactly.
bool step_up(double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return b >= a;
    return b >= a - kMonotoneSlack * std::max(std::abs(a), std::abs(b));
}

// ---------------------------------------------------------------------------

Outcome criterion_1() {
    Outcome o;
    for (int n_b = 1; n_b <= 6 && o.ok; ++n_b) {
        for (unsigned i = 0; i < (1u << n_b); ++i) {
            if (n_on(i, n_b) != __builtin_popcount(i)) {
                fail(o, fmt("n_on(%u, %d) != popcount", i, n_b));
                break;
            }
        }
    }
    return o;
}

Outcome criterion_2() {
    Outcome o;
    const std::vector<int> expected{1, 4, 9, 25, 36, 100, 225, 900};
    std::vector<int> oracle;
    for (int k = 1; k <= 30; ++k)
        if (30 % k == 0) oracle.push_back(k * k);
    if (oracle != expected) fail(o, "divisor oracle disagrees with the pinned set");
    if (feasible_tile_counts(900) != expected)
        fail(o, "feasible_tile_counts(900) mismatch");
    return o;
}

Outcome criterion_3() {
    Outcome o;
    const RectifierModel& model = scenario1_ctx().rectifier();
    const RectifierValidation v =
        validate_rectifier(model, 1e-6, 2e-3, 20, 1000000, kMcSeed);
    if (!(v.max_rel_error <= kMcRelTol))
        fail(o, fmt("max relative error %.3g > %.3g", v.max_rel_error, kMcRelTol));
    else
        o.detail = fmt("max relative error %.2g", v.max_rel_error);
    return o;
}

Outcome criterion_4() {
    Outcome o;
    const RectifierModel& m = scenario1_ctx().rectifier();
    if (psi(m, 0.0) != 0.0) fail(o, "psi(0) is not exactly 0");
    const double lo = 1e-6, hi = scenario1_ctx().p_thr();
    const int n = 50;
    double prev = 0.0;
    for (int i = 0; i < n && o.ok; ++i) {
        const double x = lo * std::exp(std::log(hi / lo) * i / (n - 1));
        const double y_det = psi(m, x);
        if (!(y_det > prev)) fail(o, fmt("psi not strictly increasing at %.6g W", x));
        prev = y_det;
        const double back_det = psi_inverse(m, RectifierStage::deterministic, y_det);
        if (!rel_close(back_det, x, kInverseRelTol))
            fail(o, fmt("deterministic round-trip off at %.6g W", x));
        const double y_dt = psi_bar_dt(m, x);
        const double back_dt = psi_inverse(m, RectifierStage::data_averaged, y_dt);
        if (!rel_close(back_dt, x, kInverseRelTol))
            fail(o, fmt("data-averaged round-trip off at %.6g W", x));
    }
    return o;
}

Outcome criterion_5() {
    Outcome o;
    const RisLayout layout = make_ris_layout(900, 0.01);
    const std::vector<QuantizationStats> stats =
        quantization_study(layout, 3, db_to_linear(-0.5), 1.0, 0);
    if (stats.size() != 8) fail(o, "expected one row per feasible tile count");
    double worst = 1.0;
    for (const QuantizationStats& s : stats) {
        worst = std::min(worst, s.q10_ratio);
        if (!(s.q10_ratio >= kQuantileFloor))
            fail(o, fmt("0.1-quantile %.4f < %.2f at n_tl=%d", s.q10_ratio,
                        kQuantileFloor, s.n_tl));
    }
    if (o.ok) o.detail = fmt("worst 0.1-quantile %.4f", worst);
    return o;
}

Outcome criterion_6() {
    Outcome o;
    ScenarioContext& ctx = scenario1_ctx();
    const ScenarioConfig& cfg = ctx.config();
    const RisLayout& layout = ctx.layout();
    const ReflectingPatch patch = full_patch(layout);
    const std::vector<double>& psi_inc = ctx.incident_field();

    const CodebookPlan plan = plan_codebook(cfg.area, layout.n_uc);
    const double ideal = static_cast<double>(layout.n_uc) * layout.n_uc;
    for (int b = 0; b < plan.size() && o.ok; ++b) {
        const Vec3 center = plan.subarea_center(b);
        const double g =
            patch_gain(layout, patch, psi_inc, nullptr, cfg.n_b, cfg.lambda, center, center);
        if (!rel_close(g, ideal, kCombineRelTol))
            fail(o, fmt("unquantized gain %.6g != %g at codeword %d", g, ideal, b));
    }

    for (int n_tl : {25, 36, 100, 225}) {
        const int per_tile = layout.n_uc / n_tl;
        for (int az = -75; az <= 75 && o.ok; az += 15) {
            for (int el = -75; el <= 75; el += 15) {
                const std::vector<double> inc =
                    incident_phases(layout, aoa_unit_vector(az, el), cfg.lambda);
                for (double g :
                     tile_gain_factors(layout, n_tl, inc, cfg.n_b, cfg.beta0, false)) {
                    if (!(g <= per_tile * (1.0 + kLinearityRelTol))) {
                        fail(o, fmt("tile gain %.6g exceeds %d cells (az %d, el %d)", g,
                                    per_tile, az, el));
                        break;
                    }
                }
            }
        }
    }

    const std::vector<RhoEvaluation> grid = evaluate_grid(ctx, Scheme::ps, 36, 0.25);
    const BranchAverages& mid = grid[2].branches;
    for (std::size_t i = 1; i + 1 < grid.size() && o.ok; ++i) {
        const double rho = grid[i].rho;
        const BranchAverages& br = grid[i].branches;
        if (!rel_close(br.harvest_bt * (1.0 - rho), mid.harvest_bt * 0.5,
                       kLinearityRelTol) ||
            !rel_close(br.harvest_dt * (1.0 - rho), mid.harvest_dt * 0.5,
                       kLinearityRelTol) ||
            !rel_close(br.snr_bt * rho, mid.snr_bt * 0.5, kLinearityRelTol) ||
            !rel_close(br.snr_dt * rho, mid.snr_dt * 0.5, kLinearityRelTol))
            fail(o, fmt("power-splitting bounds not linear at rho=%.2f", rho));
    }
    return o;
}

Outcome criterion_7() {
    Outcome o;
    ScenarioContext& ctx = scenario1_ctx();
    const int n_tl = 36;
    for (Scheme scheme : {Scheme::ts, Scheme::es, Scheme::ps}) {
        const std::vector<RhoEvaluation> grid =
            evaluate_grid(ctx, scheme, n_tl, kSweepDelta);
        for (std::size_t i = 1; i < grid.size() && o.ok; ++i) {
            const BranchAverages& a = grid[i - 1].branches;
            const BranchAverages& b = grid[i].branches;
            bool harvest_ok = true, snr_ok = true;
            if (scheme == Scheme::ts) {
                harvest_ok = step_up(a.harvest_eh, b.harvest_eh);
                snr_ok = step_up(b.snr_dt, a.snr_dt) && step_up(b.snr_bt, a.snr_bt);
            } else {
                harvest_ok = step_up(a.harvest_bt, b.harvest_bt) &&
                             step_up(a.harvest_dt, b.harvest_dt);
                snr_ok = step_up(b.snr_bt, a.snr_bt) && step_up(b.snr_dt, a.snr_dt);
            }
            if (!harvest_ok)
                fail(o, fmt("%s harvesting bound decreases at rho=%.3f",
                            scheme_name(scheme), grid[i].rho));
            if (!snr_ok)
                fail(o, fmt("%s reflection bound increases at rho=%.3f",
                            scheme_name(scheme), grid[i].rho));
        }
    }
    return o;
}

// Scenario-1 sweep shared between the optimizer-soundness and the
// scheme-comparison criteria (same config, same grid step, deterministic).
struct SweepStore {
    bool ready = false;
    std::vector<int> counts;
    std::array<std::vector<SchemeSolution>, 3> sols;   // [ts, es, ps]
    std::array<std::vector<BenchmarkResult>, 3> bench;
};

std::array<std::vector<SchemeSolution>, 3> sweep_all(
    ScenarioContext& ctx, const std::vector<int>& counts,
    std::array<std::vector<BenchmarkResult>, 3>* bench_out, Outcome* soundness) {
    const std::array<Scheme, 3> schemes{Scheme::ts, Scheme::es, Scheme::ps};
    std::array<std::vector<SchemeSolution>, 3> sols;
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        for (int n_tl : counts) {
            const std::vector<RhoEvaluation> grid =
                evaluate_grid(ctx, schemes[s], n_tl, kSweepDelta);
            const SchemeSolution sol = best_of(schemes[s], n_tl, grid);
            const BenchmarkResult bench = benchmark_of(grid);
            if (soundness && sol.feasible) {
                for (const RhoEvaluation& ev : grid) {
                    if (ev.feasible && sol.best.alloc.objective > ev.alloc.objective) {
                        fail(*soundness,
                             fmt("%s n_tl=%d: optimum above a feasible sample",
                                 scheme_name(schemes[s]), n_tl));
                        break;
                    }
                }
                if (bench.available && sol.best.alloc.objective > bench.mean_objective)
                    fail(*soundness, fmt("%s n_tl=%d: optimum above the benchmark",
                                         scheme_name(schemes[s]), n_tl));
            }
            sols[s].push_back(sol);
            if (bench_out) (*bench_out)[s].push_back(bench);
        }
    }
    return sols;
}

SweepStore g_s1;

Outcome criterion_8() {
    Outcome o;
    ScenarioContext& ctx = scenario1_ctx();
    g_s1.counts = feasible_tile_counts(ctx.config().n_uc);
    g_s1.sols = sweep_all(ctx, g_s1.counts, &g_s1.bench, &o);
    g_s1.ready = true;
    return o;
}

Outcome criterion_9() {
    Outcome o;
    const ScenarioConfig cfg = load_config(config_path("scenario1.cfg"));
    for (const ShapeRow& r : shape_decomposition(cfg, 0.5, 0)) {
        if (!rel_close(r.direct, r.product, kFactorRelTol)) {
            fail(o, fmt("n_tl=%d: direct %.9g vs factored %.9g", r.n_tl, r.direct,
                        r.product));
            break;
        }
    }
    return o;
}

Outcome criterion_10a() {
    Outcome o;
    if (!g_s1.ready) {
        fail(o, "scenario-1 sweep unavailable");
        return o;
    }
    const std::vector<SchemeSolution>& ts = g_s1.sols[0];
    const std::vector<SchemeSolution>& es = g_s1.sols[1];
    const std::vector<SchemeSolution>& ps = g_s1.sols[2];
    int mutual = 0;
    for (std::size_t i = 0; i < g_s1.counts.size() && o.ok; ++i) {
        const int n_tl = g_s1.counts[i];
        if ((es[i].feasible || ps[i].feasible) && !ts[i].feasible)
            fail(o, fmt("time splitting infeasible at n_tl=%d where others work", n_tl));
        if (ts[i].feasible && es[i].feasible &&
            !(ts[i].best.alloc.objective < es[i].best.alloc.objective))
            fail(o, fmt("time splitting not strictly best vs element at n_tl=%d", n_tl));
        if (ts[i].feasible && ps[i].feasible &&
            !(ts[i].best.alloc.objective < ps[i].best.alloc.objective))
            fail(o, fmt("time splitting not strictly best vs power at n_tl=%d", n_tl));
        if (ts[i].feasible && es[i].feasible && ps[i].feasible) ++mutual;
    }
    if (o.ok && mutual == 0) fail(o, "no tile count is feasible for all three schemes");
    if (o.ok) o.detail = fmt("%d mutually-feasible tile counts", mutual);
    return o;
}

Outcome criterion_10b() {
    Outcome o;
    ScenarioContext ctx(load_config(config_path("scenario2.cfg")), 0);
    const std::vector<int> counts = feasible_tile_counts(ctx.config().n_uc);
    const auto sols = sweep_all(ctx, counts, nullptr, nullptr);
    const auto pattern = [&](const std::vector<SchemeSolution>& s, const char* name) {
        int feasible = 0;
        bool has_9 = false;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (!s[i].feasible) continue;
            ++feasible;
            if (counts[i] == 9) has_9 = true;
        }
        if (feasible == 0) fail(o, fmt("%s feasible nowhere", name));
        if (feasible == static_cast<int>(counts.size()))
            fail(o, fmt("%s feasible everywhere (no restriction)", name));
        if (!has_9) fail(o, fmt("%s infeasible at n_tl=9", name));
        return feasible;
    };
    const int n_ps = pattern(sols[2], "power splitting");
    const int n_ts = pattern(sols[0], "time splitting");
    if (o.ok)
        o.detail = fmt("power splitting %d/%d, time splitting %d/%d tile counts", n_ps,
                       static_cast<int>(counts.size()), n_ts,
                       static_cast<int>(counts.size()));
    return o;
}

Outcome criterion_10c() {
    Outcome o;
    ScenarioContext ctx(load_config(config_path("scenario3.cfg")), 0);
    const std::vector<int> counts = feasible_tile_counts(ctx.config().n_uc);
    const auto sols = sweep_all(ctx, counts, nullptr, nullptr);
    int compared = 0;
    for (std::size_t i = 0; i < counts.size() && o.ok; ++i) {
        if (counts[i] == 9) continue;  // the one allowed exception
        if (!sols[2][i].feasible) continue;
        const double ps = sols[2][i].best.alloc.objective;
        if (sols[0][i].feasible) {
            ++compared;
            if (!(ps <= sols[0][i].best.alloc.objective * (1.0 + kMonotoneSlack)))
                fail(o, fmt("power splitting above time splitting at n_tl=%d",
                            counts[i]));
        }
        if (sols[1][i].feasible) {
            ++compared;
            if (!(ps <= sols[1][i].best.alloc.objective * (1.0 + kMonotoneSlack)))
                fail(o, fmt("power splitting above element splitting at n_tl=%d",
                            counts[i]));
        }
    }
    if (o.ok && compared == 0) fail(o, "no mutually-feasible comparison points");
    if (o.ok) o.detail = fmt("%d comparisons", compared);
    return o;
}

Outcome criterion_10d() {
    Outcome o;
    const ScenarioConfig cfg = load_config(config_path("scenario1.cfg"));
    const std::vector<double> losses{-0.3, -0.5, -0.7, -0.9};
    const std::vector<InsertionLossRow> rows =
        insertion_loss_study(cfg, losses, kSweepDelta, 0);
    const std::size_t n_counts = feasible_tile_counts(cfg.n_uc).size();
    if (rows.size() != losses.size() * n_counts) {
        fail(o, "unexpected study shape");
        return o;
    }
    const auto row = [&](std::size_t l, std::size_t j) -> const InsertionLossRow& {
        return rows[l * n_counts + j];
    };
    for (std::size_t j = 0; j < n_counts && o.ok; ++j) {
        const int n_tl = row(0, j).n_tl;
        for (std::size_t l = 1; l < losses.size() && o.ok; ++l) {
            const InsertionLossRow& lighter = row(l - 1, j);
            const InsertionLossRow& heavier = row(l, j);
            if (heavier.feasible && !lighter.feasible)
                fail(o, fmt("less loss infeasible where more loss works at n_tl=%d",
                            n_tl));
            if (!lighter.feasible || !heavier.feasible) continue;
            if (n_tl < cfg.n_uc) {
                if (!(heavier.objective > lighter.objective))
                    fail(o, fmt("curves not strictly ordered at n_tl=%d (%.2f dB)",
                                n_tl, losses[l]));
            } else if (!rel_close(heavier.objective, lighter.objective,
                                  kCurveEqualRelTol)) {
                fail(o, fmt("single-cell tiles should ignore insertion loss (n_tl=%d)",
                            n_tl));
            }
        }
    }
    return o;
}

// ---------------------------------------------------------------------------

struct Criterion {
    const char* name;
    const char* summary;
    double budget_s;
    std::function<Outcome()> fn;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"1", "active-diode count equals the popcount oracle", 1.0, criterion_1},
        {"2", "realizable tile counts match the divisor oracle", 1.0, criterion_2},
        {"3", "rectifier quadrature agrees with seeded Monte-Carlo", 30.0, criterion_3},
        {"4", "rectifier inverse round-trips on a log grid", 1.0, criterion_4},
        {"5", "quantized tile-gain 0.1-quantile stays above 0.9", 120.0, criterion_5},
        {"6", "coherent-combining identities hold", 10.0, criterion_6},
        {"7", "branch bounds are monotone in the splitting ratio", 120.0, criterion_7},
        {"8", "grid search is sound against rescan and benchmark", 600.0, criterion_8},
        {"9", "dedicated-harvesting bound factors exactly", 10.0, criterion_9},
        {"10a", "time splitting wins scenario 1", 600.0, criterion_10a},
        {"10b", "scenario 2 restricts the feasible tile counts", 600.0, criterion_10b},
        {"10c", "power splitting wins scenario 3", 600.0, criterion_10c},
        {"10d", "insertion-loss curves are ordered", 600.0, criterion_10d},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            fail(o, std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (o.ok && elapsed > c.budget_s)
            fail(o, fmt("exceeded the %.0f s budget", c.budget_s));
        std::string note;
        if (!o.detail.empty()) note = " — " + o.detail;
        std::printf("[%s] criterion %s: %s%s (%.2f s)\n", o.ok ? "PASS" : "FAIL",
                    c.name, c.summary, note.c_str(), elapsed);
        std::fflush(stdout);
        if (!o.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
