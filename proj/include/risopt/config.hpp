#pragma once
// Scenario configuration: flat "key = value" text with unit-suffixed key
// names. dB and dBm fields are converted to linear/watts exactly once here;
// everything downstream is SI. Unknown, duplicate, and missing keys are
// rejected with the offending field named.
#include <string>

#include "risopt/consumption.hpp"
#include "risopt/geometry.hpp"

namespace risopt {

struct ScenarioConfig {
    // Optimization grid
    double delta = 0.0;  // splitting-ratio grid step

    // Aperture and codebook
    int n_uc = 0;
    int n_b = 0;
    double lambda = 0.0;  // [m]
    CoverageArea area;
    double beta0 = 1.0;  // per-bit insertion loss, linear

    // Harvesting
    double gamma = 0.0;           // DC combining loss exponent
    double epsilon = 0.0;         // data-stage saturation outage tolerance
    double p_thr_fraction = 0.0;  // saturation threshold as a fraction of p_sat
    std::string rectifier_data;   // measurement file, resolved against the config dir

    // Link budget
    double snr_bt_min = 0.0;  // linear
    double g_tx = 1.0;        // linear
    double g_rx = 1.0;        // linear
    double d_inc = 0.0;       // BS-RIS distance [m]
    double bs_azimuth_deg = 0.0;
    double bs_elevation_deg = 0.0;
    double noise_power = 0.0;  // [W]
    double p_max = 0.0;        // [W]
    double r_min = 0.0;        // [bit/s/Hz]

    // Frame timing
    double v = 0.0;  // [m/s]
    double kappa = 0.0;
    double t_resp = 0.0;   // [s]
    double t_delay = 0.0;  // [s]
    double t_s = 0.0;      // [s]
    double n_est = 0.0;    // pilot symbols per fading block

    // RIS power model
    PowerModelParams power;

    // Resolution knobs (optional keys)
    int subarea_samples = 5;
    double aoa_grid_step_deg = 1.0;
    bool ideal_codeword_phases = false;
};

// Parse config text; relative rectifier_data paths resolve against base_dir.
ScenarioConfig parse_config(const std::string& text, const std::string& base_dir);

ScenarioConfig load_config(const std::string& path);

}  // namespace risopt
