#pragma once

#include <vector>

#include "flatscan/shape.hpp"

namespace flatscan {

/// Betti numbers beta_0 .. beta_max_degree over the two-element field, from
/// ranks of the boundary matrices.
std::vector<int> betti(const Shape& shape, int max_degree);

/// Rank over GF(2) of a sparse matrix given as columns of row indices.
int gf2_rank(std::vector<std::vector<std::int32_t>> columns);

}  // namespace flatscan
