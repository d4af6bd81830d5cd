#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "flatscan/persistence.hpp"

namespace flatscan {

/// Distance value plus, when finite, an optimal matching. Pairs are indices
/// into the two diagrams' point vectors; -1 stands for the diagonal.
struct DiagramDistanceReport {
    double value = 0.0;
    std::optional<std::vector<std::pair<int, int>>> matching;
};

/// Exact bottleneck distance with sup-norm ground metric: binary search over
/// the finite set of point-point and point-diagonal gaps with a bipartite
/// feasibility matching at each candidate. Essential points match only
/// essential points (cost |birth difference|); mismatched essential counts
/// give +infinity.
DiagramDistanceReport bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

/// Exact p-Wasserstein distance (q = infinity ground metric) by minimum-cost
/// perfect matching on the diagonal-augmented bipartite graph.
DiagramDistanceReport wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                                  double p);

}  // namespace flatscan
