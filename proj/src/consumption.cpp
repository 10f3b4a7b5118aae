#include "risopt/consumption.hpp"

#include <numeric>

#include "risopt/errors.hpp"

namespace risopt {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::ts: return "ts";
        case Scheme::es: return "es";
        case Scheme::ps: return "ps";
    }
    return "?";
}

RectifierStage rectifier_stage_for(Stage stage) {
    return stage == Stage::dt ? RectifierStage::data_averaged : RectifierStage::deterministic;
}

int n_on(unsigned idx, int n_b) {
    if (n_b < 1 || idx >= (1u << n_b))
        throw config_error("n_on: phase index out of range for the bit width");
    int count = static_cast<int>(idx);
    for (int k = 1; k <= n_b; ++k) count -= static_cast<int>(idx >> k);
    return count;
}

TileConsumption tile_powers(const RisLayout& layout, const TilePartition& part,
                            const ReflectingPatch& patch,
                            const std::vector<std::uint8_t>& indices,
                            const PowerModelParams& params) {
    if (indices.size() != patch.cells.size())
        throw config_error("tile_powers: one phase index per patch cell required");
    TileConsumption tp;
    tp.reflect.assign(static_cast<std::size_t>(part.n_tl), 0.0);
    tp.harvest.assign(static_cast<std::size_t>(part.n_tl),
                      static_cast<double>(part.cells_per_tile - 1) * params.n_b * params.p_sh);
    for (std::size_t i = 0; i < patch.cells.size(); ++i) {
        const int m = part.tile_of_cell(layout, patch.cells[i]);
        tp.reflect[static_cast<std::size_t>(m)] +=
            params.p_uc * static_cast<double>(n_on(indices[i], params.n_b));
    }
    return tp;
}

StageTileSets stage_tile_sets(Scheme scheme, Stage stage, int n_tl,
                              const std::vector<int>& es_block) {
    std::vector<int> all(static_cast<std::size_t>(n_tl));
    std::iota(all.begin(), all.end(), 0);
    StageTileSets sets;
    switch (scheme) {
        case Scheme::ts:
            if (stage == Stage::eh) {
                sets.harvesting = all;
            } else {
                sets.reflecting = all;
            }
            break;
        case Scheme::es: {
            if (stage == Stage::eh)
                throw config_error("element splitting has no dedicated harvesting stage");
            sets.reflecting = es_block;
            std::vector<char> in_block(static_cast<std::size_t>(n_tl), 0);
            for (int m : es_block) in_block[static_cast<std::size_t>(m)] = 1;
            for (int m = 0; m < n_tl; ++m)
                if (!in_block[static_cast<std::size_t>(m)]) sets.harvesting.push_back(m);
            break;
        }
        case Scheme::ps:
            if (stage == Stage::eh)
                throw config_error("power splitting has no dedicated harvesting stage");
            sets.reflecting = all;
            sets.harvesting = all;
            break;
    }
    return sets;
}

double total_consumption(double p_sta, const StageTileSets& sets, const TileConsumption& tp) {
    double total = p_sta;
    for (int m : sets.harvesting) total += tp.harvest[static_cast<std::size_t>(m)];
    for (int m : sets.reflecting) total += tp.reflect[static_cast<std::size_t>(m)];
    return total;
}

double inactive_surcharge(double p_sta, int codebook_size, double t_resp, double t_delay,
                          double t_s, double t_dt) {
    const double active = t_s * static_cast<double>(codebook_size) + t_dt;
    if (!(active > 0.0)) throw config_error("inactive_surcharge: no active time in the frame");
    const double e_c = p_sta * (t_resp * static_cast<double>(codebook_size + 1) + t_delay);
    return e_c / active;
}

double harvested_power(const RectifierModel& model, RectifierStage stage, double g_dc,
                       int n_harvesting_tiles, double g_chain, double p_tx) {
    if (n_harvesting_tiles < 1)
        throw config_error("harvested_power: harvesting tile set is empty");
    return g_dc * static_cast<double>(n_harvesting_tiles) *
           psi_stage(model, stage, g_chain * p_tx);
}

double ts_frame_energy(const FrameTiming& ft, double t_s, double p_sta,
                       double harvest_sum_all_tiles, double bt_reflect_power_sum,
                       double dt_reflect_selected) {
    return ft.t_fr * p_sta + ft.t_eh * harvest_sum_all_tiles + t_s * bt_reflect_power_sum +
           ft.t_dt * dt_reflect_selected;
}

}  // namespace risopt
