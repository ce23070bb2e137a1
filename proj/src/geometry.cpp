#include "hrnr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "geometry_internal.hpp"

namespace hrnr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double dist_to_segment(cplx z, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - a);
  const double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

/// Andrew's monotone chain; drops collinear and repeated points.
std::vector<cplx> convex_hull(std::vector<cplx> pts) {
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<cplx> hull(2 * pts.size());
  std::size_t k = 0;
  for (const cplx p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    const cplx p = pts[i - 1];
    while (k >= t && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

struct Caliper {
  double diameter = 0.0;
  std::size_t far_a = 0;
  std::size_t far_b = 0;
  double width = 0.0;
};

/// Diameter and minimum width of a CCW convex polygon (≥ 3 vertices).
Caliper calipers(const std::vector<cplx>& h) {
  const std::size_t n = h.size();
  Caliper c;
  c.width = std::numeric_limits<double>::infinity();
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = h[i];
    const cplx b = h[(i + 1) % n];
    const cplx e = b - a;
    const double len = std::abs(e);
    auto height = [&](std::size_t idx) { return cross(e, h[idx % n] - a); };
    while (height(j + 1) > height(j)) j = (j + 1) % n;
    if (len > 0.0) c.width = std::min(c.width, height(j) / len);
    for (const std::size_t end : {i, (i + 1) % n}) {
      const double d = std::abs(h[j % n] - h[end]);
      if (d > c.diameter) {
        c.diameter = d;
        c.far_a = end;
        c.far_b = j % n;
      }
    }
  }
  return c;
}

/// Merges consecutive vertices closer than tol, including the wrap-around pair.
std::vector<cplx> dedup_loop(const std::vector<cplx>& v, double tol) {
  std::vector<cplx> uniq;
  uniq.reserve(v.size());
  for (const cplx z : v)
    if (uniq.empty() || std::abs(z - uniq.back()) > tol) uniq.push_back(z);
  while (uniq.size() > 1 && std::abs(uniq.back() - uniq.front()) <= tol) uniq.pop_back();
  return uniq;
}

/// Removes near-collinear vertices of a deduplicated CCW polygon.
std::vector<cplx> clean_polygon(std::vector<cplx> v) {
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    std::vector<cplx> out;
    out.reserve(v.size());
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const cplx prev = out.empty() ? v[(i + n - 1) % n] : out.back();
      const cplx cur = v[i];
      const cplx next = v[(i + 1) % n];
      const cplx e1 = cur - prev;
      const cplx e2 = next - cur;
      const double l1 = std::abs(e1);
      const double l2 = std::abs(e2);
      // Straight-through vertices only; a sharp tip of a sliver has a
      // small cross product too but points backwards.
      const bool straight = cross(e1, e2) <= 1e-12 * l1 * l2 && (e1 * std::conj(e2)).real() > 0.0;
      if (straight) {
        changed = true;
        continue;
      }
      out.push_back(cur);
    }
    v = std::move(out);
  }
  return v;
}

std::vector<HalfPlane> region_halfplanes(const ConvexRegion& r) {
  std::vector<HalfPlane> hp;
  auto add = [&](cplx normal, cplx through) {
    hp.emplace_back(std::arg(normal), (std::conj(normal) * through).real());
  };
  const auto& p = r.points();
  switch (r.kind()) {
    case ConvexRegion::Kind::Empty:
      break;
    case ConvexRegion::Kind::Point:
      for (const cplx n : {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)}) add(n, p[0]);
      break;
    case ConvexRegion::Kind::Segment: {
      const cplx d = (p[1] - p[0]) / std::abs(p[1] - p[0]);
      add(cplx(0, 1) * d, p[0]);
      add(cplx(0, -1) * d, p[0]);
      add(d, p[1]);
      add(-d, p[0]);
      break;
    }
    case ConvexRegion::Kind::Polygon:
      for (std::size_t i = 0; i < p.size(); ++i) {
        const cplx e = p[(i + 1) % p.size()] - p[i];
        add(cplx(0, -1) * e / std::abs(e), p[i]);
      }
      break;
  }
  return hp;
}

double max_abs(std::span<const cplx> pts) {
  double m = 0.0;
  for (const cplx z : pts) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

namespace detail {

void clip_loop(std::vector<cplx>& loop, const HalfPlane& h, double eps) {
  if (loop.empty()) return;
  std::vector<cplx> out;
  out.reserve(loop.size() + 1);
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = loop[i];
    const cplx b = loop[(i + 1) % n];
    const double fa = h.violation(a);
    const double fb = h.violation(b);
    const bool in_a = fa <= eps;
    const bool in_b = fb <= eps;
    if (in_a) out.push_back(a);
    if (in_a && !in_b && fa < 0.0) {
      out.push_back(a + (fa / (fa - fb)) * (b - a));
    } else if (!in_a && in_b && fb < 0.0) {
      out.push_back(a + (fa / (fa - fb)) * (b - a));
    }
  }
  loop = std::move(out);
}

ClipRun clip_family(std::span<const HalfPlane> constraints, const GeometryOptions& opts) {
  const std::size_t m = constraints.size();
  if (m == 0) throw UnboundedRegionError("no constraints");
  std::vector<std::size_t> sorted(m);
  std::iota(sorted.begin(), sorted.end(), 0);
  std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
    return constraints[a].theta < constraints[b].theta;
  });

  auto gap_after = [&](std::size_t pos) {
    const double a = constraints[sorted[pos]].theta;
    const double b = constraints[sorted[(pos + 1) % m]].theta;
    return pos + 1 == m ? b + kTwoPi - a : b - a;
  };
  double max_gap = 0.0;
  for (std::size_t i = 0; i < m; ++i) max_gap = std::max(max_gap, gap_after(i));
  if (max_gap >= std::numbers::pi) {
    throw UnboundedRegionError("half-plane angles leave a gap of " +
                               std::to_string(max_gap) + " rad (>= pi)");
  }

  // Opening subfamily with gaps < pi; its intersection is bounded and
  // fits inside the starting box, which is then redundant.
  std::vector<std::size_t> opening{sorted[0]};
  {
    const double start = constraints[sorted[0]].theta;
    double cur = start;
    while (true) {
      const double to_start = normalize_angle(start - cur);
      if (opening.size() > 1 && to_start > 0.0 && to_start < std::numbers::pi - 1e-9) break;
      std::size_t best = m;
      double best_d = -1.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double d = normalize_angle(constraints[i].theta - cur);
        if (d > 0.0 && d < std::numbers::pi - 1e-9 && d > best_d) {
          best_d = d;
          best = i;
        }
      }
      if (best == m) break;
      opening.push_back(best);
      cur = constraints[best].theta;
      if (opening.size() > m + 2) break;
    }
  }
  std::vector<double> angles;
  double max_c = 0.0;
  for (const std::size_t i : opening) {
    angles.push_back(constraints[i].theta);
    max_c = std::max(max_c, std::abs(constraints[i].offset));
  }
  std::sort(angles.begin(), angles.end());
  double open_gap = angles.front() + kTwoPi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) open_gap = std::max(open_gap, angles[i] - angles[i - 1]);
  if (open_gap >= std::numbers::pi) open_gap = max_gap;

  double all_c = 0.0;
  for (const auto& h : constraints) all_c = std::max(all_c, std::abs(h.offset));
  const double radius = std::max(max_c, all_c) / std::cos(0.5 * std::max(open_gap, max_gap));
  const double half = 1.5 * radius + 1.0;

  ClipRun run;
  run.scale = std::max(1.0, all_c);
  run.order = opening;
  std::vector<char> used(m, 0);
  for (const std::size_t i : opening) used[i] = 1;
  for (const std::size_t i : sorted)
    if (!used[i]) run.order.push_back(i);

  run.loop = {cplx(-half, -half), cplx(half, -half), cplx(half, half), cplx(-half, half)};
  const double eps = opts.clip_rel * std::max(1.0, radius);
  for (std::size_t pos = 0; pos < run.order.size(); ++pos) {
    clip_loop(run.loop, constraints[run.order[pos]], eps);
    if (run.loop.empty()) {
      run.emptied_at = pos;
      break;
    }
  }
  return run;
}

std::optional<FarkasTriple> farkas(const HalfPlane& a, const HalfPlane& b) {
  // Opposite normals only.
  const double d = normalize_angle(b.theta - a.theta);
  if (std::abs(d - std::numbers::pi) > 1e-12) return std::nullopt;
  return FarkasTriple{{0, 0, 0}, {0.5, 0.5, 0.0}, 0.5 * (a.offset + b.offset), 2};
}

std::optional<FarkasTriple> farkas(const HalfPlane& a, const HalfPlane& b,
                                   const HalfPlane& c) {
  double w1 = std::sin(c.theta - b.theta);
  double w2 = std::sin(a.theta - c.theta);
  double w3 = std::sin(b.theta - a.theta);
  const double tiny = 1e-14;
  if (w1 < 0 && w2 < 0 && w3 < 0) {
    w1 = -w1;
    w2 = -w2;
    w3 = -w3;
  }
  if (!(w1 > tiny && w2 > tiny && w3 > tiny)) return std::nullopt;
  const double s = w1 + w2 + w3;
  return FarkasTriple{{0, 0, 0}, {w1 / s, w2 / s, w3 / s},
                      (w1 * a.offset + w2 * b.offset + w3 * c.offset) / s, 3};
}

}  // namespace detail

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

HalfPlane::HalfPlane(double theta_in, double offset_in)
    : theta(normalize_angle(theta_in)), offset(offset_in) {}

double HalfPlane::violation(cplx z) const {
  return z.real() * std::cos(theta) + z.imag() * std::sin(theta) - offset;
}

ConvexRegion ConvexRegion::empty() { return {}; }
ConvexRegion ConvexRegion::point(cplx z) { return ConvexRegion(Kind::Point, {z}); }
ConvexRegion ConvexRegion::segment(cplx a, cplx b) { return ConvexRegion(Kind::Segment, {a, b}); }
ConvexRegion ConvexRegion::polygon(std::vector<cplx> vertices) {
  if (vertices.size() < 3) throw ArgumentError("polygon needs at least 3 vertices");
  return ConvexRegion(Kind::Polygon, std::move(vertices));
}

double ConvexRegion::support(double theta) const {
  if (is_empty()) throw EmptyRegionError("support of an empty region");
  const cplx rot = std::polar(1.0, -theta);
  double s = -std::numeric_limits<double>::infinity();
  for (const cplx z : points_) s = std::max(s, (rot * z).real());
  return s;
}

double ConvexRegion::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      d = std::max(d, std::abs(points_[i] - points_[j]));
  return d;
}

double ConvexRegion::area() const {
  if (kind_ != Kind::Polygon) return 0.0;
  double a = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i)
    a += cross(points_[i], points_[(i + 1) % points_.size()]);
  return 0.5 * a;
}

const char* kind_name(ConvexRegion::Kind kind) {
  switch (kind) {
    case ConvexRegion::Kind::Empty: return "empty";
    case ConvexRegion::Kind::Point: return "point";
    case ConvexRegion::Kind::Segment: return "segment";
    case ConvexRegion::Kind::Polygon: return "polygon";
  }
  return "unknown";
}

cplx EllipseDisc::boundary_point(double t) const {
  return center + std::polar(1.0, rotation) * cplx(semi_major * std::cos(t), semi_minor * std::sin(t));
}

std::vector<cplx> EllipseDisc::sample(int count) const {
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) pts.push_back(boundary_point(kTwoPi * j / count));
  return pts;
}

EllipseDisc ellipse_from_foci(cplx f1, cplx f2, double minor_len) {
  EllipseDisc e;
  e.center = 0.5 * (f1 + f2);
  e.semi_minor = 0.5 * minor_len;
  const double c = 0.5 * std::abs(f1 - f2);
  e.semi_major = std::hypot(e.semi_minor, c);
  e.rotation = f1 == f2 ? 0.0 : std::arg(f1 - f2);
  e.foci = {f1, f2};
  return e;
}

EllipseDisc ellipse_from_axes(cplx center, double semi_major, double semi_minor,
                              double rotation) {
  EllipseDisc e;
  e.center = center;
  e.semi_major = semi_major;
  e.semi_minor = semi_minor;
  e.rotation = rotation;
  const double c = std::sqrt(std::max(0.0, semi_major * semi_major - semi_minor * semi_minor));
  const cplx off = std::polar(c, rotation);
  e.foci = {center + off, center - off};
  return e;
}

double ellipse_support(const EllipseDisc& e, double theta) {
  const double ct = std::cos(theta - e.rotation);
  const double st = std::sin(theta - e.rotation);
  return (std::polar(1.0, -theta) * e.center).real() +
         std::sqrt(e.semi_major * e.semi_major * ct * ct + e.semi_minor * e.semi_minor * st * st);
}

ConvexRegion ellipse_region(const EllipseDisc& e, int samples, const GeometryOptions& opts) {
  const double scale = std::max(1.0, std::abs(e.center) + e.semi_major);
  if (2.0 * e.semi_major <= opts.point_rel * scale) return ConvexRegion::point(e.center);
  if (e.semi_minor <= opts.segment_rel * e.semi_major) {
    const cplx off = std::polar(e.semi_major, e.rotation);
    return ConvexRegion::segment(e.center - off, e.center + off);
  }
  return ConvexRegion::polygon(e.sample(samples));
}

ConvexRegion classify_points(std::span<const cplx> points, double scale,
                             const GeometryOptions& opts) {
  if (points.empty()) return ConvexRegion::empty();
  const double point_tol = opts.point_rel * scale;
  // Near-duplicates make zero-length hull edges that upset the calipers.
  std::vector<cplx> hull = dedup_loop(convex_hull({points.begin(), points.end()}), 1e-3 * point_tol);
  auto centroid = [&] {
    cplx c{};
    for (const cplx z : hull) c += z;
    return c / static_cast<double>(hull.size());
  };
  if (hull.size() == 1) return ConvexRegion::point(hull[0]);
  if (hull.size() == 2) {
    if (std::abs(hull[1] - hull[0]) <= point_tol) return ConvexRegion::point(centroid());
    return ConvexRegion::segment(hull[0], hull[1]);
  }
  const Caliper c = calipers(hull);
  if (c.diameter <= point_tol) return ConvexRegion::point(centroid());
  auto as_segment = [&] {
    // Extremes along the diameter direction.
    const cplx dir = (hull[c.far_b] - hull[c.far_a]) / c.diameter;
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const double t = (hull[i] * std::conj(dir)).real();
      if (t < (hull[lo] * std::conj(dir)).real()) lo = i;
      if (t > (hull[hi] * std::conj(dir)).real()) hi = i;
    }
    return ConvexRegion::segment(hull[lo], hull[hi]);
  };
  if (c.width <= opts.segment_rel * c.diameter) return as_segment();
  std::vector<cplx> cleaned = clean_polygon(hull);
  if (cleaned.size() < 3) return as_segment();
  return ConvexRegion::polygon(std::move(cleaned));
}

ConvexRegion halfplane_intersection(std::span<const HalfPlane> constraints,
                                    const GeometryOptions& opts) {
  const detail::ClipRun run = detail::clip_family(constraints, opts);
  if (run.loop.empty()) return ConvexRegion::empty();
  return classify_points(run.loop, run.scale, opts);
}

ConvexRegion intersect(const ConvexRegion& a, const ConvexRegion& b, double scale,
                       const GeometryOptions& opts) {
  if (a.is_empty() || b.is_empty()) return ConvexRegion::empty();
  const ConvexRegion& clipped = a.points().size() >= b.points().size() ? a : b;
  const ConvexRegion& clipper = &clipped == &a ? b : a;
  std::vector<cplx> loop = clipped.points();
  const double eps = opts.clip_rel * scale;
  for (const auto& h : region_halfplanes(clipper)) {
    detail::clip_loop(loop, h, eps);
    if (loop.empty()) return ConvexRegion::empty();
  }
  return classify_points(loop, scale, opts);
}

double distance_to_region(const ConvexRegion& r, cplx z) {
  const auto& p = r.points();
  switch (r.kind()) {
    case ConvexRegion::Kind::Empty:
      return std::numeric_limits<double>::infinity();
    case ConvexRegion::Kind::Point:
      return std::abs(z - p[0]);
    case ConvexRegion::Kind::Segment:
      return dist_to_segment(z, p[0], p[1]);
    case ConvexRegion::Kind::Polygon: {
      bool inside = true;
      double d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < p.size(); ++i) {
        const cplx a = p[i];
        const cplx b = p[(i + 1) % p.size()];
        if (cross(b - a, z - a) < 0.0) inside = false;
        d = std::min(d, dist_to_segment(z, a, b));
      }
      return inside ? 0.0 : d;
    }
  }
  return std::numeric_limits<double>::infinity();
}

bool region_contains(const ConvexRegion& r, cplx z, double tol) {
  return !r.is_empty() && distance_to_region(r, z) <= tol;
}

double hausdorff_distance(const ConvexRegion& a, const ConvexRegion& b) {
  if (a.is_empty() || b.is_empty()) {
    throw EmptyRegionError("Hausdorff distance with an empty region");
  }
  double h = 0.0;
  for (const cplx z : a.points()) h = std::max(h, distance_to_region(b, z));
  for (const cplx z : b.points()) h = std::max(h, distance_to_region(a, z));
  return h;
}

ConvexRegion convex_hull_regions(std::span<const HullPart> parts, const GeometryOptions& opts) {
  if (parts.empty()) throw ArgumentError("convex_hull_regions: empty part list");
  std::vector<cplx> pts;
  for (const auto& part : parts) {
    if (const auto* r = std::get_if<ConvexRegion>(&part)) {
      pts.insert(pts.end(), r->points().begin(), r->points().end());
    } else {
      const ConvexRegion er = ellipse_region(std::get<EllipseDisc>(part), opts.hull_samples, opts);
      pts.insert(pts.end(), er.points().begin(), er.points().end());
    }
  }
  return classify_points(pts, std::max(1.0, max_abs(pts)), opts);
}

bool nesting_check(std::span<const EllipseDisc> discs, const GeometryOptions& opts,
                   double nest_tol) {
  double scale = 1.0;
  for (const auto& e : discs) scale = std::max(scale, std::abs(e.center) + e.semi_major);
  for (std::size_t j = 0; j + 1 < discs.size(); ++j) {
    for (int s = 0; s < opts.nest_samples; ++s) {
      const double th = kTwoPi * s / opts.nest_samples;
      if (ellipse_support(discs[j + 1], th) > ellipse_support(discs[j], th) + nest_tol * scale) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace hrnr
