#include "risopt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "risopt/consumption.hpp"
#include "risopt/errors.hpp"
#include "risopt/frame.hpp"
#include "risopt/parallel.hpp"

namespace risopt {

ScenarioContext::ScenarioContext(const ScenarioConfig& cfg, unsigned workers,
                                 bool ideal_tile_gain)
    : cfg_(cfg),
      workers_(resolve_workers(workers)),
      ideal_tile_gain_(ideal_tile_gain),
      layout_(make_ris_layout(cfg.n_uc, cfg.lambda)),
      fit_(fit_rectifier(load_measurements(cfg.rectifier_data))) {
    const Vec3 u = aoa_unit_vector(cfg_.bs_azimuth_deg, cfg_.bs_elevation_deg);
    psi_inc_ = incident_phases(layout_, u, cfg_.lambda);
    g_inc_ = free_space_gain(cfg_.lambda, cfg_.d_inc);
    t_sf_ = fading_coherence_time(cfg_.lambda, cfg_.v);
    p_thr_ = psi_inverse(fit_.model, RectifierStage::deterministic,
                         cfg_.p_thr_fraction * fit_.model.p_sat);
}

const PlanCache& ScenarioContext::plan(int width_cells) {
    if (width_cells < 1 || width_cells > layout_.side)
        throw config_error("plan: reflecting block width out of range");
    auto it = plans_.find(width_cells);
    if (it != plans_.end()) return *it->second;

    auto pc = std::make_unique<PlanCache>();
    pc->width_cells = width_cells;
    const int n_uc_r = width_cells * width_cells;
    pc->plan = plan_codebook(cfg_.area, n_uc_r);

    ReflectingPatch patch;
    if (width_cells == layout_.side) {
        patch = full_patch(layout_);
    } else {
        patch.cells.reserve(static_cast<std::size_t>(n_uc_r));
        for (int iz = 0; iz < width_cells; ++iz)
            for (int iy = 0; iy < width_cells; ++iy)
                patch.cells.push_back(layout_.cell_index(iy, iz));
    }

    pc->t_fr = frame_duration(cfg_.kappa, cfg_.v, pc->plan.c_y, pc->plan.c_z);
    pc->t_bt = beam_training_time(cfg_.t_s, cfg_.t_resp, pc->plan.size(), cfg_.t_delay);

    const int n_codewords = pc->plan.size();
    pc->g_l.assign(static_cast<std::size_t>(n_codewords), 0.0);
    pc->reflect_power.assign(static_cast<std::size_t>(n_codewords), 0.0);

    parallel_for(static_cast<std::size_t>(n_codewords), workers_, [&](std::size_t b) {
        const Vec3 target = pc->plan.subarea_center(static_cast<int>(b));
        std::vector<std::uint8_t> indices =
            codeword_phase_indices(layout_, patch, psi_inc_, cfg_.lambda, target, cfg_.n_b);

        double diodes = 0.0;
        for (const std::uint8_t idx : indices) diodes += n_on(idx, cfg_.n_b);
        pc->reflect_power[b] = cfg_.power.p_uc * diodes;

        const std::vector<std::uint8_t>* used =
            cfg_.ideal_codeword_phases ? nullptr : &indices;
        double worst = std::numeric_limits<double>::infinity();
        for (const Vec3& l :
             pc->plan.sample_points(static_cast<int>(b), cfg_.subarea_samples)) {
            const double gain = patch_gain(layout_, patch, psi_inc_, used, cfg_.n_b,
                                           cfg_.lambda, target, l);
            worst = std::min(worst, free_space_gain(cfg_.lambda, norm(l)) * gain);
        }
        pc->g_l[b] = worst;
    });

    for (double p : pc->reflect_power) pc->reflect_power_total += p;

    const PlanCache& ref = *pc;
    plans_.emplace(width_cells, std::move(pc));
    return ref;
}

const TileCache& ScenarioContext::tiles(int n_tl) {
    auto it = tile_caches_.find(n_tl);
    if (it != tile_caches_.end()) return *it->second;

    auto tc = std::make_unique<TileCache>();
    tc->part = make_tile_partition(layout_, n_tl);
    tc->tile_gains = tile_gain_factors(layout_, n_tl, psi_inc_, cfg_.n_b, cfg_.beta0,
                                       ideal_tile_gain_);
    tc->harvest_per_tile =
        static_cast<double>(tc->part.cells_per_tile - 1) * cfg_.n_b * cfg_.power.p_sh;

    const TileCache& ref = *tc;
    tile_caches_.emplace(n_tl, std::move(tc));
    return ref;
}

}  // namespace risopt
