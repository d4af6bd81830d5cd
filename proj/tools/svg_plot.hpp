#pragma once

#include <string>

#include "flatscan/transform.hpp"

namespace flatscan {

/// Static SVG for a scan result: one persistence-diagram panel per degree
/// per flat (axes, diagonal, essential strip), plus an Euler-curve panel per
/// flat when curves are present. Byte-deterministic for fixed input.
std::string render_result_svg(const DphtResult& result);

/// Single-diagram SVG (one panel).
std::string render_diagram_svg(const PersistenceDiagram& diagram);

}  // namespace flatscan
