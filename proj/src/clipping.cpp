#include "superclose/clipping.hpp"

namespace superclose {

double signed_area(const Polygon& poly) noexcept {
  double twice = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) twice += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * twice;
}

namespace {

void merge_close_vertices(Polygon& poly, double tol) {
  Polygon out;
  out.reserve(poly.size());
  for (const Vec2& p : poly) {
    if (out.empty() || norm(p - out.back()) > tol) out.push_back(p);
  }
  while (out.size() > 1 && norm(out.front() - out.back()) <= tol) out.pop_back();
  poly = std::move(out);
}

}  // namespace

Polygon clip_convex(const Polygon& subject, const Polygon& clip, double merge_tolerance) {
  Polygon output = subject;
  const std::size_t nc = clip.size();
  for (std::size_t c = 0; c < nc && !output.empty(); ++c) {
    const Vec2 c0 = clip[c];
    const Vec2 edge = clip[(c + 1) % nc] - c0;
    const Polygon input = std::move(output);
    output.clear();
    const std::size_t n = input.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& s = input[i];
      const Vec2& e = input[(i + 1) % n];
      const double ds = cross(edge, s - c0);
      const double de = cross(edge, e - c0);
      const bool s_in = ds >= 0.0;
      const bool e_in = de >= 0.0;
      if (s_in) output.push_back(s);
      if (s_in != e_in) {
        const double t = ds / (ds - de);
        output.push_back(s + t * (e - s));
      }
    }
    merge_close_vertices(output, merge_tolerance);
  }
  if (output.size() < 3) output.clear();
  return output;
}

std::vector<Triangle> fan_triangulate(const Polygon& poly) {
  std::vector<Triangle> tris;
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) tris.push_back({poly[0], poly[i], poly[i + 1]});
  return tris;
}

}  // namespace superclose
