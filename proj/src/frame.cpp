#include "risopt/frame.hpp"

#include <cmath>
#include <limits>

#include "risopt/errors.hpp"
#include "risopt/mathutil.hpp"

namespace risopt {

double frame_duration(double kappa, double v_mps, double c_y, double c_z) {
    if (!(kappa > 0.0)) throw config_error("frame_duration: kappa must be positive");
    if (!(v_mps > 0.0)) throw config_error("frame_duration: speed must be positive");
    return kappa / v_mps * std::sqrt(c_y * c_y + c_z * c_z);
}

double fading_coherence_time(double lambda, double v_mps) {
    if (!(v_mps > 0.0)) throw config_error("fading_coherence_time: speed must be positive");
    return 3.0 * lambda / (4.0 * std::sqrt(PI) * v_mps);
}

double beam_training_time(double t_s, double t_resp, int codebook_size, double t_delay) {
    if (codebook_size < 1) throw config_error("beam_training_time: empty codebook");
    return (t_s + t_resp) * static_cast<double>(codebook_size) + t_delay + t_resp;
}

FrameTiming make_frame_timing(double t_fr, double t_bt, double eh_fraction, double t_s,
                              double n_est, double t_sf) {
    if (eh_fraction < 0.0 || eh_fraction > 1.0)
        throw config_error("make_frame_timing: harvesting fraction must be in [0, 1]");
    FrameTiming ft;
    ft.t_fr = t_fr;
    ft.t_bt = t_bt;
    ft.t_eh = eh_fraction * t_fr;
    ft.t_dt = t_fr - ft.t_eh - t_bt;
    // Each fading block of the data stage loses n_est pilot symbols.
    ft.t_dt_eff = ft.t_dt * (1.0 - n_est * t_s / t_sf);
    return ft;
}

double data_rate(const FrameTiming& ft, double snr) {
    if (ft.t_dt_eff <= 0.0) return 0.0;
    return ft.t_dt_eff / ft.t_fr * std::log2(1.0 + snr);
}

double min_data_snr(const FrameTiming& ft, double r_min) {
    if (r_min <= 0.0) return 0.0;
    if (ft.t_dt_eff <= 0.0) return std::numeric_limits<double>::infinity();
    return std::exp2(r_min * ft.t_fr / ft.t_dt_eff) - 1.0;
}

}  // namespace risopt
