#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "flatscan/filtration.hpp"
#include "flatscan/shape.hpp"

namespace flatscan {

constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

/// Multiset of (birth, death) pairs in one homological degree; death is
/// +infinity for essential classes and zero-persistence pairs are dropped.
struct PersistenceDiagram {
    int degree = 0;
    std::vector<std::pair<double, double>> points;

    std::size_t essential_count() const {
        std::size_t n = 0;
        for (const auto& p : points) {
            if (p.second == kInfiniteDeath) ++n;
        }
        return n;
    }
    /// Sort points by (birth, death); normal form for comparisons and output.
    void normalize();
};

/// Degree-0 diagram by union-find over vertices and edges in filtration
/// order, elder rule with ties broken by cell id. One essential point per
/// connected component.
PersistenceDiagram pd0_union_find(const Shape& shape, const FiltrationValues& filt);

/// Diagrams for degrees 0..max_degree by boundary-matrix column reduction in
/// filtration order with the clearing optimization. Degree 0 matches
/// pd0_union_find exactly.
std::vector<PersistenceDiagram> pd_reduction(const Shape& shape, const FiltrationValues& filt,
                                             int max_degree);

}  // namespace flatscan
