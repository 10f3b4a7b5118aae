#pragma once
// Scenario context: everything derived from one configuration that the
// optimizer and the studies reuse across splitting schemes, tile counts, and
// splitting-ratio samples. Codebook plans (keyed by the reflecting block
// width) and tile partitions are built lazily and cached.
#include <map>
#include <memory>
#include <vector>

#include "risopt/config.hpp"
#include "risopt/gains.hpp"
#include "risopt/geometry.hpp"
#include "risopt/rectifier.hpp"

namespace risopt {

// Per-codeword data of one codebook plan. The reflecting patch is the square
// block of width_cells x width_cells cells anchored at the low-(y,z) corner;
// the full aperture is the special case width_cells = sqrt(n_uc).
struct PlanCache {
    int width_cells = 0;
    CodebookPlan plan;
    double t_fr = 0.0;  // frame duration for this plan's subarea size
    double t_bt = 0.0;  // beam-training time for this plan's codebook size
    // Worst-case reflection gain per codeword: min over the subarea sample
    // grid of g_ref(l) * |sum of patch phasors|^2 (no splitting factors).
    std::vector<double> g_l;
    // PIN-diode power per codeword, p_uc * (active diodes over the patch).
    std::vector<double> reflect_power;
    double reflect_power_total = 0.0;  // sum over all codewords
};

// Tile partition plus the combining gains of every tile under the scenario's
// incident field (no splitting factors; power splitting scales by 1 - rho at
// the point of use).
struct TileCache {
    TilePartition part;
    std::vector<double> tile_gains;
    double harvest_per_tile = 0.0;  // combining-network power per tile [W]
};

class ScenarioContext {
  public:
    // ideal_tile_gain bypasses quantization and insertion loss in the tile
    // gains (every tile gain becomes exactly cells-per-tile); used by the
    // harvesting-bound decomposition study.
    ScenarioContext(const ScenarioConfig& cfg, unsigned workers, bool ideal_tile_gain = false);

    const ScenarioConfig& config() const { return cfg_; }
    const RisLayout& layout() const { return layout_; }
    const RectifierModel& rectifier() const { return fit_.model; }
    const RectifierFit& fit() const { return fit_; }
    unsigned workers() const { return workers_; }

    double g_inc() const { return g_inc_; }  // BS-RIS free-space gain
    double t_sf() const { return t_sf_; }    // fading coherence time
    double p_thr() const { return p_thr_; }  // rectifier saturation threshold [W]
    const std::vector<double>& incident_field() const { return psi_inc_; }

    const PlanCache& plan(int width_cells);
    const PlanCache& full_plan() { return plan(layout_.side); }
    const TileCache& tiles(int n_tl);

  private:
    ScenarioConfig cfg_;
    unsigned workers_ = 1;
    bool ideal_tile_gain_ = false;
    RisLayout layout_;
    RectifierFit fit_;
    std::vector<double> psi_inc_;
    double g_inc_ = 0.0;
    double t_sf_ = 0.0;
    double p_thr_ = 0.0;
    std::map<int, std::unique_ptr<PlanCache>> plans_;
    std::map<int, std::unique_ptr<TileCache>> tile_caches_;
};

}  // namespace risopt
