#include "risopt/geometry.hpp"

#include <algorithm>

#include "risopt/errors.hpp"
#include "risopt/mathutil.hpp"

namespace risopt {

namespace {

int exact_sqrt(int n) {
    if (n < 1) return -1;
    const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    return r * r == n ? r : -1;
}

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

RisLayout make_ris_layout(int n_uc, double lambda) {
    const int side = exact_sqrt(n_uc);
    if (side < 1) throw config_error("RIS cell count must be a positive perfect square");
    if (!(lambda > 0.0)) throw config_error("wavelength must be positive");
    RisLayout layout;
    layout.n_uc = n_uc;
    layout.side = side;
    layout.pitch = 0.5 * lambda;
    return layout;
}

std::vector<int> feasible_tile_counts(int n_uc) {
    const int side = exact_sqrt(n_uc);
    if (side < 1) throw config_error("RIS cell count must be a positive perfect square");
    std::vector<int> counts;
    for (int k = 1; k <= side; ++k)
        if (side % k == 0) counts.push_back(k * k);
    return counts;  // ascending since k ascends
}

TilePartition make_tile_partition(const RisLayout& layout, int n_tl) {
    const int tiles_side = exact_sqrt(n_tl);
    if (tiles_side < 1 || layout.side % tiles_side != 0)
        throw config_error("tile count must be a squared divisor of the RIS side");
    TilePartition part;
    part.n_tl = n_tl;
    part.tiles_side = tiles_side;
    part.cells_side = layout.side / tiles_side;
    part.cells_per_tile = part.cells_side * part.cells_side;
    return part;
}

double min_ref_distance(const CoverageArea& area) {
    if (!(area.size_y > 0.0) || !(area.size_z > 0.0))
        throw config_error("coverage area extents must be positive");
    const double y = clamp(0.0, area.center.y - 0.5 * area.size_y,
                           area.center.y + 0.5 * area.size_y);
    const double z = clamp(0.0, area.center.z - 0.5 * area.size_z,
                           area.center.z + 0.5 * area.size_z);
    return std::sqrt(area.center.x * area.center.x + y * y + z * z);
}

double beam_width(int n_uc_r) {
    if (n_uc_r < 1) throw config_error("beam_width: need at least one reflecting cell");
    const double u = 2.782 / (PI * std::sqrt(static_cast<double>(n_uc_r)));
    if (u > 1.0) throw config_error("beam_width: aperture too small for the arccos form");
    return std::abs(PI / 2.0 - std::acos(u)) + std::abs(PI / 2.0 - std::acos(-u));
}

double beam_width_simplified(int n_uc_r) {
    if (n_uc_r < 1) throw config_error("beam_width: need at least one reflecting cell");
    return 2.0 * 2.782 / (PI * std::sqrt(static_cast<double>(n_uc_r)));
}

Vec3 CodebookPlan::subarea_center(int b) const {
    const int iy = b % n_y;
    const int iz = b / n_y;
    Vec3 p;
    p.x = area.center.x;
    p.y = area.center.y - 0.5 * area.size_y + (iy + 0.5) * c_y;
    p.z = area.center.z - 0.5 * area.size_z + (iz + 0.5) * c_z;
    return p;
}

std::vector<Vec3> CodebookPlan::sample_points(int b, int k) const {
    if (k < 1) throw config_error("sample grid resolution must be >= 1");
    if (k == 1) return {subarea_center(b)};
    const int iy = b % n_y;
    const int iz = b / n_y;
    const double y0 = area.center.y - 0.5 * area.size_y + iy * c_y;
    const double z0 = area.center.z - 0.5 * area.size_z + iz * c_z;
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(k) * k);
    for (int jz = 0; jz < k; ++jz) {
        for (int jy = 0; jy < k; ++jy) {
            Vec3 p;
            p.x = area.center.x;
            p.y = y0 + c_y * static_cast<double>(jy) / static_cast<double>(k - 1);
            p.z = z0 + c_z * static_cast<double>(jz) / static_cast<double>(k - 1);
            pts.push_back(p);
        }
    }
    return pts;
}

CodebookPlan plan_codebook(const CoverageArea& area, int n_uc_r) {
    if (exact_sqrt(n_uc_r) < 1)
        throw config_error("codebook: reflecting cell count must be a perfect square");
    CodebookPlan plan;
    plan.area = area;
    plan.n_uc_r = n_uc_r;
    plan.d_ref_min = min_ref_distance(area);
    // Beams of (simplified) width at the closest distance, sqrt(2) overlap:
    // ceil(pi * sqrt(0.5 N) * extent / (2.782 * d_min)) per axis.
    const double scale = PI * std::sqrt(0.5 * static_cast<double>(n_uc_r)) /
                         (2.782 * plan.d_ref_min);
    plan.n_z = static_cast<int>(std::ceil(scale * area.size_z));
    plan.n_y = static_cast<int>(std::ceil(scale * area.size_y));
    plan.n_z = std::max(plan.n_z, 1);
    plan.n_y = std::max(plan.n_y, 1);
    plan.c_y = area.size_y / plan.n_y;
    plan.c_z = area.size_z / plan.n_z;
    return plan;
}

std::vector<int> es_reflecting_tiles(const RisLayout& layout, int n_tl, int n) {
    const TilePartition part = make_tile_partition(layout, n_tl);
    if (n < 1 || n > part.tiles_side)
        throw config_error("es_reflecting_tiles: block side must be in [1, sqrt(n_tl)]");
    std::vector<int> tiles;
    tiles.reserve(static_cast<std::size_t>(n) * n);
    for (int tz = 0; tz < n; ++tz)
        for (int ty = 0; ty < n; ++ty) tiles.push_back(tz * part.tiles_side + ty);
    return tiles;
}

}  // namespace risopt
