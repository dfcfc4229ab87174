#pragma once

#include <array>
#include <vector>

#include "superclose/core.hpp"

namespace superclose {

/// Counterclockwise vertex loop.
using Polygon = std::vector<Vec2>;
using Triangle = std::array<Vec2, 3>;

inline constexpr double kVertexMergeTolerance = 1e-12;

double signed_area(const Polygon& poly) noexcept;

/// Sutherland–Hodgman intersection of a convex subject polygon with a convex
/// clip polygon, both counterclockwise. Consecutive vertices closer than
/// `merge_tolerance` are merged; degenerate results come back empty.
Polygon clip_convex(const Polygon& subject, const Polygon& clip,
                    double merge_tolerance = kVertexMergeTolerance);

/// Fan triangulation from the first vertex.
std::vector<Triangle> fan_triangulate(const Polygon& poly);

}  // namespace superclose
