#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "flatscan/flat.hpp"
#include "flatscan/shape.hpp"

namespace flatscan {

/// Lower-star extension of a vertex function: per-cell values (max over the
/// cell's vertices) plus the processing order sorted by
/// (value, dimension, cell id). Faces never follow their cofaces.
struct FiltrationValues {
    std::vector<double> values;        ///< per cell id
    std::vector<std::int32_t> order;   ///< cell ids, ascending (value, dim, id)
};

FiltrationValues lower_star(const Shape& shape,
                            const std::function<double(std::int32_t)>& vertex_value);

/// Lower-star of precomputed per-vertex values.
FiltrationValues lower_star(const Shape& shape, const std::vector<double>& vertex_values);

/// Lower-star of the distance-to-flat function x -> dist(x, p).
FiltrationValues flat_filtration(const Shape& shape, const Flat& p);

/// Lower-star of the height function x -> x . v.
FiltrationValues height_filtration(const Shape& shape, const Eigen::VectorXd& v);

/// Subcomplex of cells with filtration value <= threshold, reindexed.
Shape sublevel_shape(const Shape& shape, const FiltrationValues& filt, double threshold);

/// Discrete stand-in for the level set X intersect P: the epsilon-sublevel
/// subcomplex of the distance-to-flat filtration. epsilon <= 0 selects the
/// default (half the maximal cell diameter).
Shape slice(const Shape& shape, const Flat& p, double epsilon = -1.0);

/// Per-vertex distance-to-flat values (support for stability probes).
std::vector<double> vertex_distances(const Shape& shape, const Flat& p);

}  // namespace flatscan
