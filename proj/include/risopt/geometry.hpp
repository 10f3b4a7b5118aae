#pragma once
// RIS aperture geometry and codebook planning. The RIS is a square grid of
// unit cells in the x = 0 plane, centered on the origin, facing +x, with
// half-wavelength pitch. The coverage area is an axis-aligned rectangle in a
// plane parallel to the RIS.
#include <cmath>
#include <vector>

namespace risopt {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline double norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

struct CoverageArea {
    Vec3 center;         // rectangle center [m]
    double size_y = 0.0; // extent along y [m]
    double size_z = 0.0; // extent along z [m]
};

struct RisLayout {
    int n_uc = 0;        // unit cells (perfect square)
    int side = 0;        // sqrt(n_uc)
    double pitch = 0.0;  // element spacing [m]

    // Cell n = iz * side + iy; coordinates are centered on the origin.
    double cell_y(int iy) const { return (iy - 0.5 * (side - 1)) * pitch; }
    double cell_z(int iz) const { return (iz - 0.5 * (side - 1)) * pitch; }
    int cell_index(int iy, int iz) const { return iz * side + iy; }
};

RisLayout make_ris_layout(int n_uc, double lambda);

// Tile counts that partition the aperture into equal square tiles:
// {k^2 : k divides sqrt(n_uc)}, ascending.
std::vector<int> feasible_tile_counts(int n_uc);

// Square tiling bookkeeping for a feasible tile count.
struct TilePartition {
    int n_tl = 0;
    int tiles_side = 0;      // sqrt(n_tl)
    int cells_side = 0;      // cells per tile edge
    int cells_per_tile = 0;  // cells_side^2

    int tile_of_cell(const RisLayout& layout, int cell) const {
        const int iy = cell % layout.side;
        const int iz = cell / layout.side;
        return (iz / cells_side) * tiles_side + (iy / cells_side);
    }
};

TilePartition make_tile_partition(const RisLayout& layout, int n_tl);

// Shortest distance from the RIS (origin) to the coverage rectangle: the
// origin's projection onto the rectangle's plane, clamped to the rectangle.
double min_ref_distance(const CoverageArea& area);

// Half-power beam width of a square aperture of n_uc_r cells: exact arccos
// form and its small-angle simplification 2*2.782/(pi*sqrt(N)).
double beam_width(int n_uc_r);
double beam_width_simplified(int n_uc_r);

struct CodebookPlan {
    CoverageArea area;
    int n_uc_r = 0;        // reflecting cells the codebook is sized for
    double d_ref_min = 0.0;
    int n_y = 0, n_z = 0;  // subarea grid
    double c_y = 0.0, c_z = 0.0;  // subarea sizes recomputed from n_y, n_z

    int size() const { return n_y * n_z; }

    // Codeword b = iz * n_y + iy targets the center of its subarea.
    Vec3 subarea_center(int b) const;

    // k x k uniform sample grid over the subarea, including the four corners
    // and (for odd k) the center. k == 1 degenerates to the center alone.
    std::vector<Vec3> sample_points(int b, int k) const;
};

// Size the codebook so neighboring beams spaced by the simplified beam width
// at the closest approach distance cover the rectangle.
CodebookPlan plan_codebook(const CoverageArea& area, int n_uc_r);

// Tile indices of the n x n block anchored at the corner with the smallest
// (y, z) coordinates: the reflecting set of the element-splitting scheme.
std::vector<int> es_reflecting_tiles(const RisLayout& layout, int n_tl, int n);

}  // namespace risopt
