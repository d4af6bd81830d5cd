#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace flatscan {

enum class ShapeKind { cubical, simplicial };

/// One cell of a finite complex. Cubical d-cells carry 2^d vertex ids in
/// lexicographic corner order; simplices carry d+1 sorted vertex ids.
struct Cell {
    int dim = 0;
    std::vector<std::int32_t> vertices;
};

/// A finite filtered-complex-ready shape: vertex coordinates plus cells
/// closed under faces. Cell ids are grouped by dimension (all vertices
/// first, then edges, ...), and cells[i] for i < vertex count is the 0-cell
/// of vertex i.
struct Shape {
    ShapeKind kind = ShapeKind::cubical;
    int ambient_dim = 2;
    Eigen::MatrixXd vertices;                       ///< one row per vertex
    std::vector<Cell> cells;                        ///< includes the 0-cells
    std::vector<std::vector<std::int32_t>> faces;   ///< codim-1 face ids per cell
    double bounding_radius = 0.0;                   ///< max vertex norm
    std::vector<int> grid_dims;                     ///< {H,W} or {D,H,W} when grid-built

    std::int32_t vertex_count() const { return static_cast<std::int32_t>(vertices.rows()); }
    std::int32_t cell_count() const { return static_cast<std::int32_t>(cells.size()); }
    int top_dim() const;
};

/// Cubical complex over the occupied entries of a binary grid: closed unit
/// squares/cubes with shared faces, vertex coordinates centered so the grid
/// center sits at the origin. dims is {H,W} or {D,H,W}; occupancy is
/// row-major (depth-major in 3D).
Shape make_grid_shape(const std::vector<int>& dims, const std::vector<std::uint8_t>& occupancy);

/// Parse the `grid H W` / `grid3 D H W` text format (0/1 tokens). Malformed
/// input raises error with the offending line number.
Shape load_grid(std::istream& in);
Shape load_grid(const std::string& text);

/// Re-emit the grid text for a grid-built shape; inverse of load_grid on the
/// occupancy.
std::string serialize_grid(const Shape& shape);

/// Simplicial complex from triangles: all edges and vertices of each
/// triangle are included, coordinates recentered to the vertex centroid.
Shape make_simplicial_shape(const Eigen::MatrixXd& vertices,
                            const std::vector<std::array<std::int32_t, 3>>& triangles,
                            bool recenter = true);

/// Parse an OFF triangle mesh (header, counts, vertex and face lines).
Shape load_off(std::istream& in);
Shape load_off(const std::string& text);

/// Alternating sum of cell counts.
int euler_characteristic(const Shape& shape);

/// Half the maximal cell diameter; the default slice thickness.
double default_slice_epsilon(const Shape& shape);

/// Every face of every cell present (exhaustive closure check, test support).
bool closed_under_faces(const Shape& shape);

// Shape generators used by the demos and tests. 2D generators produce
// axis-aligned (L-infinity) rasters: the discrete complexes then carry the
// exact component counts of their smooth counterparts under height and
// axis-aligned tubular filtrations, without boundary-staircase artifacts.
Shape make_ring_grid(int size, double outer, double inner);
Shape make_filled_ring_grid(int size, double outer);
Shape make_box_grid(int size, double half_width);
Shape make_punctured_box_grid(int size, double half_width, int hole_row, int hole_col);
// 3D generators use Euclidean radii.
Shape make_ball_grid(int size, double radius);
Shape make_shell_grid(int size, double inner, double outer);

/// Triangulated annulus between two concentric ellipses (outer = scale *
/// inner), with ring vertices at the union of `base_n` uniform angles and
/// the given planted parameter values. Ambient dimension 2.
Shape make_ellipse_annulus_mesh(double a_inner, double b_inner, double scale,
                                int base_n, const std::vector<double>& planted_params = {});

}  // namespace flatscan
