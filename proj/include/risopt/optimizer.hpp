#pragma once
// Per-codeword transmit-power bounds for each splitting scheme and the grid
// search over the splitting ratio, plus the random-ratio benchmark. All
// powers are average transmit powers at the BS in watts; +inf marks a bound
// that cannot be met (infeasibility is a verdict, not an error).
#include <vector>

#include "risopt/consumption.hpp"
#include "risopt/frame.hpp"
#include "risopt/scenario.hpp"

namespace risopt {

// Which constraint produced a codeword's lower bound.
enum class Binding { none, harvest, snr };

struct CodewordDiag {
    Binding eh = Binding::none;
    Binding bt = Binding::none;
    Binding dt = Binding::none;
};

struct PowerAllocation {
    std::vector<double> p_eh;  // [B] dedicated-harvesting stage (time splitting only)
    std::vector<double> p_bt;  // [B]
    std::vector<double> p_dt;  // [B]
    double p_eh_max = 0.0;
    double p_bt_max = 0.0;
    double p_dt_max = 0.0;
    double objective = 0.0;  // frame-averaged BS transmit power [W]
};

// Codeword-averaged values of the two lower-bound branches per stage, for
// the harvesting/reflection trade-off curves.
struct BranchAverages {
    double harvest_eh = 0.0;
    double harvest_bt = 0.0;
    double snr_bt = 0.0;
    double harvest_dt = 0.0;
    double snr_dt = 0.0;
};

struct RhoEvaluation {
    double rho = 0.0;
    int es_block_side = 0;  // element splitting only
    bool feasible = false;
    FrameTiming timing;
    int codebook_size = 0;
    PowerAllocation alloc;
    BranchAverages branches;
    std::vector<CodewordDiag> diags;
    double ris_consumption = 0.0;  // frame-averaged RIS consumption [W]
};

struct SchemeSolution {
    Scheme scheme = Scheme::ts;
    int n_tl = 0;
    bool feasible = false;
    RhoEvaluation best;  // meaningful only when feasible
    int candidate_count = 0;
    int feasible_count = 0;
};

struct BenchmarkResult {
    bool available = false;
    double mean_objective = 0.0;
    double mean_rho = 0.0;
    double mean_consumption = 0.0;
    int feasible_count = 0;
};

// Splitting-ratio samples: {0, delta, 2*delta, ..., 1} for time and power
// splitting; the exact realizable set {n^2 / n_tl} for element splitting.
std::vector<double> rho_candidates(Scheme scheme, int n_tl, double delta);

// Bounds, feasibility, objective, and consumption at one splitting ratio.
// For element splitting rho must be one of the realizable ratios.
RhoEvaluation evaluate_at_rho(ScenarioContext& ctx, Scheme scheme, int n_tl, double rho);

// All candidate evaluations, ordered by rho ascending.
std::vector<RhoEvaluation> evaluate_grid(ScenarioContext& ctx, Scheme scheme, int n_tl,
                                         double delta);

// Smallest-objective feasible candidate (ties resolve to the smallest rho).
SchemeSolution best_of(Scheme scheme, int n_tl, const std::vector<RhoEvaluation>& grid);
SchemeSolution grid_search(ScenarioContext& ctx, Scheme scheme, int n_tl, double delta);

// Mean objective/ratio/consumption over the feasible candidates (a uniformly
// random choice of the splitting ratio from its feasible domain).
BenchmarkResult benchmark_of(const std::vector<RhoEvaluation>& grid);
BenchmarkResult random_rho_benchmark(ScenarioContext& ctx, Scheme scheme, int n_tl,
                                     double delta);

}  // namespace risopt
