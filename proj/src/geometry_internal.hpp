#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "hrnr/geometry.hpp"

namespace hrnr::detail {

/// Sutherland–Hodgman step; points with violation ≤ eps are kept.
void clip_loop(std::vector<cplx>& loop, const HalfPlane& h, double eps);

struct ClipRun {
  std::vector<cplx> loop;
  /// Constraint indices in the order they were applied.
  std::vector<std::size_t> order;
  /// Position in `order` at which the loop vanished.
  std::optional<std::size_t> emptied_at;
  double scale = 1.0;
};

ClipRun clip_family(std::span<const HalfPlane> constraints, const GeometryOptions& opts);

/// Convex weights w with Σ w_i e^{iθ_i} = 0 and value = Σ w_i c_i.
/// A negative value certifies that the half-planes have no common point.
struct FarkasTriple {
  std::array<std::size_t, 3> indices;
  std::array<double, 3> weights;
  double value;
  int count;
};

std::optional<FarkasTriple> farkas(const HalfPlane& a, const HalfPlane& b);
std::optional<FarkasTriple> farkas(const HalfPlane& a, const HalfPlane& b, const HalfPlane& c);

}  // namespace hrnr::detail
