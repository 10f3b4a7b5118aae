#pragma once
// Nonlinear rectifier model: a saturating logistic RF->DC characteristic
// anchored so that zero input gives zero output. Two operating
// characteristics are exposed:
//  * deterministic (constant-envelope stages: energy harvesting, training)
//  * data-averaged (Gaussian data symbols -> exponentially distributed
//    instantaneous power; the DC output is the expectation over that law)
#include <string>
#include <vector>

#include "risopt/quadrature.hpp"

namespace risopt {

struct RectifierModel {
    double c = 0.0;      // logistic steepness [1/W]
    double d = 0.0;      // logistic midpoint [W]
    double p_sat = 0.0;  // saturation DC power [W]
    double omega = 0.0;  // zero-input offset 1/(1 + e^(c*d)), cached
};

// Which characteristic to evaluate/invert.
enum class RectifierStage { deterministic, data_averaged };

// Build a model from raw parameters (validates and caches omega).
RectifierModel make_rectifier_model(double c, double d, double p_sat);

// DC output for deterministic RF input power p_rf (>= 0). psi(0) == 0.
double psi(const RectifierModel& m, double p_rf);

// DC output averaged over an exponential input-power distribution with the
// given mean (96-node Gauss-Laguerre).
double psi_bar_dt(const RectifierModel& m, double p_avg);

// Dispatch on stage: deterministic psi or the data-averaged characteristic.
double psi_stage(const RectifierModel& m, RectifierStage stage, double p);

// Inverse of psi_stage by bisection to 1e-10 relative tolerance. The bracket
// grows geometrically from d; demands the characteristic cannot reach (it
// saturates at p_sat) throw unreachable_demand.
double psi_inverse(const RectifierModel& m, RectifierStage stage, double p_dc);

// One-time sanity check of the Gauss-Laguerre averaging against an adaptive
// trapezoid reference (1e-8 * p_sat absolute). Throws numerical_error.
void verify_dt_quadrature(const RectifierModel& m);

// Measured (RF in, DC out) pairs, stored in watts.
struct MeasurementSet {
    std::vector<double> p_rf_w;
    std::vector<double> p_dc_w;
};

// Load a two-column delimited text file whose header names the units, e.g.
// "rf_input_mw,dc_output_uw". Recognized suffixes: _w, _mw, _uw, _nw.
MeasurementSet load_measurements(const std::string& path);

struct RectifierFit {
    RectifierModel model;
    double rms_residual_w = 0.0;
};

// Least-squares fit of (c, d, p_sat) to the measurements: multi-start
// Nelder-Mead over log-parameters from a coarse scale grid.
RectifierFit fit_rectifier(const MeasurementSet& data);

}  // namespace risopt
