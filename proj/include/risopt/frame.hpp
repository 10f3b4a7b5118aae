#pragma once
// Frame timing: how long a beam stays valid, how the frame splits into beam
// training, optional dedicated harvesting, and data stages, and the minimum
// data-stage SNR implied by a rate target once channel-estimation overhead is
// taken out.
#include <vector>

namespace risopt {

// Time a served location needs to cross the subarea diagonal, scaled by the
// fraction kappa of that crossing the beam is trusted for.
double frame_duration(double kappa, double v_mps, double c_y, double c_z);

// Small-scale fading coherence time, 3 * lambda / (4 * sqrt(pi) * v).
double fading_coherence_time(double lambda, double v_mps);

// Sweep of the whole codebook plus scheduling overheads:
// (t_s + t_resp) * codebook_size + t_delay + t_resp.
double beam_training_time(double t_s, double t_resp, int codebook_size, double t_delay);

struct FrameTiming {
    double t_fr = 0.0;      // frame duration [s]
    double t_bt = 0.0;      // beam-training stage [s]
    double t_eh = 0.0;      // dedicated harvesting stage [s] (time splitting only)
    double t_dt = 0.0;      // data stage [s]; <= 0 means the frame cannot fit it
    double t_dt_eff = 0.0;  // data time net of per-coherence-block estimation [s]
};

// Assemble the stage durations. eh_fraction is the share of the frame spent
// harvesting only (1 - rho under time splitting, 0 otherwise). The data stage
// gets the rest; it may come out non-positive, which callers treat as an
// infeasible split.
FrameTiming make_frame_timing(double t_fr, double t_bt, double eh_fraction, double t_s,
                              double n_est, double t_sf);

// Achievable rate [bit/s/Hz] of the data stage at a given SNR.
double data_rate(const FrameTiming& ft, double snr);

// Smallest data-stage SNR meeting r_min; +inf when no data time is left.
double min_data_snr(const FrameTiming& ft, double r_min);

}  // namespace risopt
