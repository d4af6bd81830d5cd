#pragma once

#include <string>

#include "flatscan/persistence.hpp"
#include "flatscan/transform.hpp"

namespace flatscan {

/// Diagram JSON: {"degree": k, "points": [[b, d], ...]} with "inf" for
/// essential deaths, points sorted by (birth, death), numbers written with
/// 17 significant digits so output is byte-deterministic and round-trips
/// losslessly.
std::string diagram_to_json(const PersistenceDiagram& d);
PersistenceDiagram diagram_from_json(const std::string& text);

std::string dpht_result_to_json(const DphtResult& r);
DphtResult dpht_result_from_json(const std::string& text);

/// True when the two results were produced over the same flat list
/// (exact equality after the 17-digit round trip).
bool same_flat_lists(const DphtResult& a, const DphtResult& b);

}  // namespace flatscan
