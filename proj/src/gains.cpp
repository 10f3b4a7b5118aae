#include "risopt/gains.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "risopt/errors.hpp"
#include "risopt/mathutil.hpp"
#include "risopt/parallel.hpp"

namespace risopt {

double free_space_gain(double lambda, double distance) {
    if (!(lambda > 0.0)) throw config_error("free_space_gain: wavelength must be positive");
    if (!(distance > 0.0)) throw config_error("free_space_gain: distance must be positive");
    return lambda * lambda / (16.0 * PI * PI * distance * distance);
}

Vec3 aoa_unit_vector(double azimuth_deg, double elevation_deg) {
    const double az = azimuth_deg * PI / 180.0;
    const double el = elevation_deg * PI / 180.0;
    Vec3 u;
    u.x = std::cos(el) * std::cos(az);
    u.y = std::cos(el) * std::sin(az);
    u.z = std::sin(el);
    // Require a strictly positive inward component; grazing incidence (|angle|
    // = 90 deg) leaves cos() at rounding-noise level and is degenerate.
    if (!(u.x > 1e-12))
        throw config_error("arrival direction must lie in the half-space the RIS faces");
    return u;
}

std::vector<double> incident_phases(const RisLayout& layout, const Vec3& u_aoa, double lambda) {
    if (!(u_aoa.x > 0.0))
        throw config_error("arrival direction must lie in the half-space the RIS faces");
    const double k = TWO_PI / lambda;
    std::vector<double> psi(static_cast<std::size_t>(layout.n_uc));
    for (int iz = 0; iz < layout.side; ++iz) {
        const double z = layout.cell_z(iz);
        for (int iy = 0; iy < layout.side; ++iy) {
            const double y = layout.cell_y(iy);
            psi[static_cast<std::size_t>(layout.cell_index(iy, iz))] =
                k * (u_aoa.y * y + u_aoa.z * z);
        }
    }
    return psi;
}

ReflectingPatch full_patch(const RisLayout& layout) {
    ReflectingPatch patch;
    patch.cells.resize(static_cast<std::size_t>(layout.n_uc));
    for (int n = 0; n < layout.n_uc; ++n) patch.cells[static_cast<std::size_t>(n)] = n;
    return patch;
}

ReflectingPatch es_corner_patch(const RisLayout& layout, int n_tl, int n) {
    const TilePartition part = make_tile_partition(layout, n_tl);
    if (n < 1 || n > part.tiles_side)
        throw config_error("es_corner_patch: block side must be in [1, sqrt(n_tl)]");
    const int w = n * part.cells_side;  // block width in cells
    ReflectingPatch patch;
    patch.cells.reserve(static_cast<std::size_t>(w) * w);
    for (int iz = 0; iz < w; ++iz)
        for (int iy = 0; iy < w; ++iy) patch.cells.push_back(layout.cell_index(iy, iz));
    return patch;
}

namespace {

// Spherical phase toward `loc` relative to the aperture center:
// k * (|loc| - |loc - r_cell|).
inline double reflected_phase(const RisLayout& layout, int cell, const Vec3& loc,
                              double k, double loc_norm) {
    const int iy = cell % layout.side;
    const int iz = cell / layout.side;
    const double dy = loc.y - layout.cell_y(iy);
    const double dz = loc.z - layout.cell_z(iz);
    const double dist = std::sqrt(loc.x * loc.x + dy * dy + dz * dz);
    return k * (loc_norm - dist);
}

}  // namespace

std::vector<std::uint8_t> codeword_phase_indices(const RisLayout& layout,
                                                 const ReflectingPatch& patch,
                                                 const std::vector<double>& psi_inc,
                                                 double lambda, const Vec3& target, int n_b) {
    if (n_b < 1 || n_b > 8) throw config_error("codeword quantization needs 1..8 bits");
    const double k = TWO_PI / lambda;
    const double target_norm = norm(target);
    std::vector<std::uint8_t> idx(patch.cells.size());
    for (std::size_t i = 0; i < patch.cells.size(); ++i) {
        const int cell = patch.cells[i];
        const double ideal = -(psi_inc[static_cast<std::size_t>(cell)] +
                               reflected_phase(layout, cell, target, k, target_norm));
        idx[i] = static_cast<std::uint8_t>(quantize_phase_index(ideal, n_b));
    }
    return idx;
}

double patch_gain(const RisLayout& layout, const ReflectingPatch& patch,
                  const std::vector<double>& psi_inc,
                  const std::vector<std::uint8_t>* indices, int n_b, double lambda,
                  const Vec3& target, const Vec3& location) {
    const double k = TWO_PI / lambda;
    const double loc_norm = norm(location);
    std::complex<double> sum{0.0, 0.0};
    if (indices) {
        const double step = TWO_PI / static_cast<double>(1L << n_b);
        for (std::size_t i = 0; i < patch.cells.size(); ++i) {
            const int cell = patch.cells[i];
            const double phase = psi_inc[static_cast<std::size_t>(cell)] +
                                 reflected_phase(layout, cell, location, k, loc_norm) +
                                 step * static_cast<double>((*indices)[i]);
            sum += std::complex<double>(std::cos(phase), std::sin(phase));
        }
    } else {
        const double target_norm = norm(target);
        for (std::size_t i = 0; i < patch.cells.size(); ++i) {
            const int cell = patch.cells[i];
            const double phase = reflected_phase(layout, cell, location, k, loc_norm) -
                                 reflected_phase(layout, cell, target, k, target_norm);
            sum += std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    return std::norm(sum);
}

double dc_combining_gain(int n_harvesting_tiles, double gamma) {
    if (n_harvesting_tiles < 1)
        throw config_error("dc_combining_gain: need at least one harvesting tile");
    if (gamma < 0.0) throw config_error("dc_combining_gain: gamma must be >= 0");
    return std::pow(static_cast<double>(n_harvesting_tiles), -gamma);
}

namespace {

// Residual phasor of each cell after its combining phase (-psi_inc quantized
// to n_b bits) is applied to the incident field: e^{j(delta_hat + psi_inc)}.
std::vector<std::complex<double>> residual_phasors(const std::vector<double>& psi_inc,
                                                   int n_b) {
    std::vector<std::complex<double>> ph(psi_inc.size());
    for (std::size_t c = 0; c < psi_inc.size(); ++c) {
        const double residual = phase_from_index(quantize_phase_index(-psi_inc[c], n_b), n_b) +
                                psi_inc[c];
        ph[c] = std::complex<double>(std::cos(residual), std::sin(residual));
    }
    return ph;
}

// Tile combining sums for one residual field. Returns |sum|^2 per tile
// (without the 1/|C_m| normalization). The per-cell weight is 1 for the
// tile's first (lowest-index) cell and sqrt(beta0^n_b) otherwise.
std::vector<double> tile_sums_squared(const RisLayout& layout, const TilePartition& part,
                                      const std::vector<std::complex<double>>& cell_phasors,
                                      double sqrt_beta) {
    std::vector<std::complex<double>> acc(static_cast<std::size_t>(part.n_tl), {0.0, 0.0});
    std::vector<std::complex<double>> first(static_cast<std::size_t>(part.n_tl), {0.0, 0.0});
    std::vector<char> seen(static_cast<std::size_t>(part.n_tl), 0);
    for (int cell = 0; cell < layout.n_uc; ++cell) {
        const std::complex<double> ph = cell_phasors[static_cast<std::size_t>(cell)];
        const std::size_t m = static_cast<std::size_t>(part.tile_of_cell(layout, cell));
        acc[m] += ph;
        if (!seen[m]) {  // cells are visited in index order, so this is the first cell
            seen[m] = 1;
            first[m] = ph;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(part.n_tl));
    for (std::size_t m = 0; m < out.size(); ++m) {
        const std::complex<double> sum = first[m] + sqrt_beta * (acc[m] - first[m]);
        out[m] = std::norm(sum);
    }
    return out;
}

}  // namespace

std::vector<double> tile_gain_factors(const RisLayout& layout, int n_tl,
                                      const std::vector<double>& psi_inc, int n_b,
                                      double beta0_linear, bool ideal) {
    const TilePartition part = make_tile_partition(layout, n_tl);
    if (ideal) {
        return std::vector<double>(static_cast<std::size_t>(n_tl),
                                   static_cast<double>(part.cells_per_tile));
    }
    if (!(beta0_linear > 0.0) || beta0_linear > 1.0)
        throw config_error("per-bit insertion loss must be in (0, 1]");
    const double sqrt_beta = std::sqrt(std::pow(beta0_linear, n_b));
    std::vector<double> gains =
        tile_sums_squared(layout, part, residual_phasors(psi_inc, n_b), sqrt_beta);
    for (double& g : gains) g /= static_cast<double>(part.cells_per_tile);
    return gains;
}

std::vector<QuantizationStats> quantization_study(const RisLayout& layout, int n_b,
                                                  double beta0_linear, double step_deg,
                                                  unsigned workers) {
    if (!(step_deg > 0.0)) throw config_error("quantization_study: step must be positive");
    const double sqrt_beta = std::sqrt(std::pow(beta0_linear, n_b));
    // Directions are sampled as (incidence angle from the surface normal,
    // in-plane orientation), the standard parameterization of an arrival
    // direction at a planar array; 90 deg incidence is grazing and excluded.
    std::vector<double> thetas;
    for (double a = 0.0; a < 90.0 - 1e-9; a += step_deg) thetas.push_back(a);
    std::vector<double> phis;
    for (double a = 0.0; a < 360.0 - 1e-9; a += step_deg) phis.push_back(a);

    std::vector<int> tile_counts = feasible_tile_counts(layout.n_uc);
    std::vector<TilePartition> parts;
    parts.reserve(tile_counts.size());
    for (int n_tl : tile_counts) parts.push_back(make_tile_partition(layout, n_tl));

    const std::size_t n_dir = thetas.size() * phis.size();
    // ratios[p][dir]: worst/best tile gain for partition p at that direction.
    std::vector<std::vector<double>> ratios(parts.size(), std::vector<double>(n_dir, 0.0));

    parallel_for(n_dir, workers, [&](std::size_t dir) {
        const double th = thetas[dir / phis.size()] * PI / 180.0;
        const double ph = phis[dir % phis.size()] * PI / 180.0;
        const Vec3 u{std::cos(th), std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph)};
        // The pitch is lambda/2, so k * pitch = pi regardless of wavelength.
        const std::vector<double> psi = incident_phases(layout, u, 2.0 * layout.pitch);
        const std::vector<std::complex<double>> phasors = residual_phasors(psi, n_b);
        for (std::size_t p = 0; p < parts.size(); ++p) {
            const std::vector<double> sums =
                tile_sums_squared(layout, parts[p], phasors, sqrt_beta);
            const auto [mn, mx] = std::minmax_element(sums.begin(), sums.end());
            ratios[p][dir] = *mx > 0.0 ? *mn / *mx : 0.0;
        }
    });

    // The quantile is taken under the uniform distribution over directions,
    // i.e. each grid sample carries its solid-angle weight sin(theta).
    std::vector<double> weights(n_dir);
    double total_weight = 0.0;
    for (std::size_t dir = 0; dir < n_dir; ++dir) {
        weights[dir] = std::sin(thetas[dir / phis.size()] * PI / 180.0);
        total_weight += weights[dir];
    }

    std::vector<QuantizationStats> stats(parts.size());
    std::vector<std::size_t> order(n_dir);
    for (std::size_t p = 0; p < parts.size(); ++p) {
        const std::vector<double>& r = ratios[p];
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&r](std::size_t a, std::size_t b) { return r[a] < r[b]; });
        stats[p].n_tl = tile_counts[p];
        stats[p].min_ratio = r[order.front()];
        double acc = 0.0;
        for (std::size_t dir : order) {
            acc += weights[dir];
            if (acc >= 0.1 * total_weight) {
                stats[p].q10_ratio = r[dir];
                break;
            }
        }
    }
    return stats;
}

}  // namespace risopt
