#pragma once
// Link gains of the RIS-assisted channel: free-space pathloss, coherent
// reflection gain of a configured cell patch, per-tile RF-combining gain of
// the harvesting network, and DC combining gain. Phases follow a plane-wave
// incident model and an exact spherical model toward the served location.
#include <cstdint>
#include <vector>

#include "risopt/geometry.hpp"

namespace risopt {

// lambda^2 / (16 pi^2 d^2)
double free_space_gain(double lambda, double distance);

// Unit vector toward the transmitter: azimuth rotates in the x-y plane,
// elevation toward +z. Must point into the half-space the RIS faces (x > 0).
Vec3 aoa_unit_vector(double azimuth_deg, double elevation_deg);

// Per-cell phase advance of the incident plane wave, k * (u . r_cell).
std::vector<double> incident_phases(const RisLayout& layout, const Vec3& u_aoa, double lambda);

// Cells configured for reflection (the whole aperture, or the ES corner block).
struct ReflectingPatch {
    std::vector<int> cells;
};

ReflectingPatch full_patch(const RisLayout& layout);
ReflectingPatch es_corner_patch(const RisLayout& layout, int n_tl, int n);

// Quantized codeword phases: the profile that would cancel the incident phase
// plus the spherical phase toward `target`, rounded to the 2^n_b-level grid.
std::vector<std::uint8_t> codeword_phase_indices(const RisLayout& layout,
                                                 const ReflectingPatch& patch,
                                                 const std::vector<double>& psi_inc,
                                                 double lambda, const Vec3& target, int n_b);

// |sum over the patch of e^{j(psi_inc + psi_ref(location) + omega)}|^2.
// With `indices` null the profile is the ideal (continuous) one for `target`,
// which makes the gain exactly |patch|^2 at the target itself.
double patch_gain(const RisLayout& layout, const ReflectingPatch& patch,
                  const std::vector<double>& psi_inc,
                  const std::vector<std::uint8_t>* indices, int n_b, double lambda,
                  const Vec3& target, const Vec3& location);

// |T_h|^(-gamma): DC combining loss of summing n_h tile outputs.
double dc_combining_gain(int n_harvesting_tiles, double gamma);

// Per-tile RF combining gain |sum sqrt(beta_n) e^{j(delta_hat + psi_inc)}|^2 / |C_m|.
// The first cell of each tile is the lossless reference; every other cell
// carries the per-bit insertion loss beta_0^n_b. delta_hat quantizes -psi_inc
// to n_b bits. `ideal` bypasses both losses (gain = cells per tile).
std::vector<double> tile_gain_factors(const RisLayout& layout, int n_tl,
                                      const std::vector<double>& psi_inc, int n_b,
                                      double beta0_linear, bool ideal);

// Worst normalized tile gain (min over tiles / max over tiles) swept over a
// grid of arrival directions; reports the minimum and the lower 0.1-quantile
// over the sweep for each tile count.
struct QuantizationStats {
    int n_tl = 0;
    double min_ratio = 0.0;
    double q10_ratio = 0.0;
};

std::vector<QuantizationStats> quantization_study(const RisLayout& layout, int n_b,
                                                  double beta0_linear, double step_deg,
                                                  unsigned workers);

}  // namespace risopt
