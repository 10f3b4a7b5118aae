#pragma once
// RIS power consumption (PIN diodes, RF combining phase shifters, static
// controller) and harvested power, per splitting scheme and frame stage.
#include <cstdint>
#include <vector>

#include "risopt/frame.hpp"
#include "risopt/gains.hpp"
#include "risopt/geometry.hpp"
#include "risopt/rectifier.hpp"

namespace risopt {

enum class Scheme { ts, es, ps };
enum class Stage { eh, bt, dt };

const char* scheme_name(Scheme s);

// eh and bt see the deterministic transmit power; dt is exponentially faded.
RectifierStage rectifier_stage_for(Stage stage);

struct PowerModelParams {
    double p_sta = 0.0;  // static controller power [W]
    double p_uc = 0.0;   // per active PIN diode [W]
    double p_sh = 0.0;   // per phase-shifter bit [W]
    int n_b = 0;         // phase resolution [bits]
};

// Number of active PIN diodes for a phase index: i - sum_k floor(i / 2^k).
int n_on(unsigned idx, int n_b);

// Per-tile consumption for one codeword. Tiles not covered by the patch have
// zero reflection power; every tile carries the same combining-network power.
struct TileConsumption {
    std::vector<double> reflect;  // [n_tl] sum of P_uc * N_on over the tile's cells
    std::vector<double> harvest;  // [n_tl] (|C_m| - 1) * n_b * P_sh
};

TileConsumption tile_powers(const RisLayout& layout, const TilePartition& part,
                            const ReflectingPatch& patch,
                            const std::vector<std::uint8_t>& indices,
                            const PowerModelParams& params);

// Which tiles reflect and which harvest in a given scheme and stage.
struct StageTileSets {
    std::vector<int> reflecting;
    std::vector<int> harvesting;
};

// es_block: reflecting tiles of the element-splitting scheme (ignored for
// TS/PS). TS has no harvesting outside its dedicated stage; PS uses every
// tile in both roles.
StageTileSets stage_tile_sets(Scheme scheme, Stage stage, int n_tl,
                              const std::vector<int>& es_block);

// p_sta + harvesting-network power over the harvesting set + PIN-diode power
// over the reflecting set.
double total_consumption(double p_sta, const StageTileSets& sets, const TileConsumption& tp);

// Static energy of the inactive intervals (reconfiguration gaps and training
// feedback) spread over the active time: P~_sta = E~_c / (t_s |B| + t_dt).
double inactive_surcharge(double p_sta, int codebook_size, double t_resp, double t_delay,
                          double t_s, double t_dt);

// g_dc * n_h * Psi_q(g_chain * p_tx), where g_chain collects the gains between
// the transmit power and a tile's rectifier input.
double harvested_power(const RectifierModel& model, RectifierStage stage, double g_dc,
                       int n_harvesting_tiles, double g_chain, double p_tx);

// Energy consumed per frame under time splitting when codeword b' serves the
// data stage: static power all frame, combining network during harvesting,
// every codeword reflecting for one symbol period t_s during training, b'
// during data. The reflect arguments are powers in watts (summed over tiles,
// and over codewords for the training term).
double ts_frame_energy(const FrameTiming& ft, double t_s, double p_sta,
                       double harvest_sum_all_tiles, double bt_reflect_power_sum,
                       double dt_reflect_selected);

}  // namespace risopt
