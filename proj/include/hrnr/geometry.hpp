#pragma once

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "hrnr/errors.hpp"

namespace hrnr {

using cplx = std::complex<double>;

/// {z : Re(e^{-iθ} z) ≤ offset}, θ normalized to [0, 2π).
struct HalfPlane {
  double theta = 0.0;
  double offset = 0.0;

  HalfPlane() = default;
  HalfPlane(double theta, double offset);
  /// Re(e^{-iθ} z) − offset; positive outside.
  double violation(cplx z) const;
};

double normalize_angle(double theta);

/// Thresholds used when collapsing numerically degenerate regions.
struct GeometryOptions {
  /// Collapse to Segment when width ≤ segment_rel · diameter.
  double segment_rel = 1e-8;
  /// Collapse to Point when diameter ≤ point_rel · scale.
  double point_rel = 1e-8;
  /// Clipping slack, relative to scale.
  double clip_rel = 1e-13;
  int hull_samples = 256;
  int nest_samples = 512;
};

class ConvexRegion {
 public:
  enum class Kind { Empty, Point, Segment, Polygon };

  ConvexRegion() = default;
  static ConvexRegion empty();
  static ConvexRegion point(cplx z);
  static ConvexRegion segment(cplx a, cplx b);
  /// Counterclockwise, strictly convex, ≥ 3 vertices (not re-validated).
  static ConvexRegion polygon(std::vector<cplx> vertices);

  Kind kind() const noexcept { return kind_; }
  bool is_empty() const noexcept { return kind_ == Kind::Empty; }
  /// Empty: none; Point: one; Segment: two endpoints; Polygon: CCW vertices.
  const std::vector<cplx>& points() const noexcept { return points_; }

  /// max Re(e^{-iθ} z) over the region. Throws EmptyRegionError when empty.
  double support(double theta) const;
  double diameter() const;
  double area() const;

  bool operator==(const ConvexRegion&) const = default;

 private:
  ConvexRegion(Kind k, std::vector<cplx> pts) : kind_(k), points_(std::move(pts)) {}
  Kind kind_ = Kind::Empty;
  std::vector<cplx> points_;
};

const char* kind_name(ConvexRegion::Kind kind);

/// Closed elliptical disc. semi_major ≥ semi_minor ≥ 0, major axis along
/// e^{i·rotation}.
struct EllipseDisc {
  cplx center{};
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double rotation = 0.0;
  std::pair<cplx, cplx> foci{};

  /// Point at parameter t on the boundary.
  cplx boundary_point(double t) const;
  /// `count` equally spaced boundary points, counterclockwise.
  std::vector<cplx> sample(int count) const;
};

/// Ellipse with foci f1, f2 and minor axis of length minor_len.
EllipseDisc ellipse_from_foci(cplx f1, cplx f2, double minor_len);

/// Ellipse from center, semi-axes and rotation; foci derived.
EllipseDisc ellipse_from_axes(cplx center, double semi_major, double semi_minor,
                              double rotation);

double ellipse_support(const EllipseDisc& e, double theta);

/// The ellipse as a region: Point / Segment when degenerate, otherwise the
/// sampled boundary polygon.
ConvexRegion ellipse_region(const EllipseDisc& e, int samples,
                            const GeometryOptions& opts = {});

/// Collapse a vertex cloud into the smallest matching region class.
ConvexRegion classify_points(std::span<const cplx> points, double scale,
                             const GeometryOptions& opts = {});

/// Intersection of a finite half-plane family whose angles leave no gap ≥ π.
///
/// Computed by successive clipping of a bounding box in angular order.
/// Throws UnboundedRegionError when the angular gap is ≥ π.
ConvexRegion halfplane_intersection(std::span<const HalfPlane> constraints,
                                    const GeometryOptions& opts = {});

/// Intersection of two convex regions.
ConvexRegion intersect(const ConvexRegion& a, const ConvexRegion& b, double scale,
                       const GeometryOptions& opts = {});

double distance_to_region(const ConvexRegion& r, cplx z);
bool region_contains(const ConvexRegion& r, cplx z, double tol);

/// Symmetric Hausdorff distance. Throws EmptyRegionError if either is empty.
double hausdorff_distance(const ConvexRegion& a, const ConvexRegion& b);

using HullPart = std::variant<ConvexRegion, EllipseDisc>;

/// Convex hull of regions and ellipses (ellipses sampled at hull_samples).
/// Throws ArgumentError on an empty list.
ConvexRegion convex_hull_regions(std::span<const HullPart> parts,
                                 const GeometryOptions& opts = {});

/// True iff each disc's support is dominated by its predecessor's, up to
/// nest_tol, at nest_samples uniform angles.
bool nesting_check(std::span<const EllipseDisc> discs, const GeometryOptions& opts = {},
                   double nest_tol = 1e-9);

struct EllipseFit {
  EllipseDisc ellipse;
  /// Max point-to-boundary distance divided by the semi-major axis.
  double residual = 0.0;
};

/// Direct least-squares ellipse fit. Throws FitError on degenerate input.
EllipseFit ellipse_fit(std::span<const cplx> points);

/// Euclidean distance from z to the boundary curve of e.
double distance_to_ellipse_boundary(const EllipseDisc& e, cplx z);

}  // namespace hrnr
