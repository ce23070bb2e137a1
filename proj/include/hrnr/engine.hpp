#pragma once

#include <optional>
#include <vector>

#include "hrnr/geometry.hpp"
#include "hrnr/linalg.hpp"

namespace hrnr {

/// Descending eigenvalues λ_1(θ) ≥ … ≥ λ_n(θ) of Re(e^{-iθ}A).
struct SupportSample {
  double theta = 0.0;
  std::vector<double> values;
};

struct EngineOptions {
  int grid = 720;
  /// Tolerance relative to range_scale(A).
  double tol = 1e-9;
  /// Offset of the uniform angle grid θ_i = theta0 + 2πi/grid.
  double theta0 = 0.0;
  GeometryOptions geometry{};
};

/// Proof that Λ_k(A) is empty: convex weights on two or three grid
/// directions whose normals cancel while the weighted offsets are negative.
struct EmptinessCertificate {
  enum class Kind {
    /// λ_k(θ) < λ_{n−k+1}(θ) − tol: the strip at θ is inverted.
    OppositePair,
    /// Three half-planes of the grid family with no common point.
    HalfPlaneTriple,
  };
  Kind kind = Kind::OppositePair;
  /// θ* of the inverted strip, or the first angle of the triple.
  double theta = 0.0;
  std::vector<double> angles;
  std::vector<double> weights;
  /// Weighted offset sum (negative); for OppositePair ½(λ_k − λ_{n−k+1}).
  double margin = 0.0;
};

struct RangeResult {
  ConvexRegion region;
  int k = 1;
  int grid_size = 0;
  double tol = 0.0;
  std::optional<EmptinessCertificate> certificate;
};

SupportSample support_spectrum(const ComplexMatrix& a, double theta);

/// The grid spectra reused by every k.
class SupportGrid {
 public:
  SupportGrid(const ComplexMatrix& a, int grid, double theta0 = 0.0);

  std::size_t dimension() const noexcept { return n_; }
  int grid() const noexcept { return static_cast<int>(samples_.size()); }
  const std::vector<SupportSample>& samples() const noexcept { return samples_; }
  double scale() const noexcept { return scale_; }

 private:
  std::size_t n_ = 0;
  double scale_ = 1.0;
  std::vector<SupportSample> samples_;
};

/// Outer polygonal approximation of Λ_k(A) from the uniform angle grid.
RangeResult rank_k_range(const ComplexMatrix& a, int k, const EngineOptions& opts = {});
RangeResult rank_k_range(const SupportGrid& grid, int k, const EngineOptions& opts = {});

/// Λ_1 … Λ_n from one set of eigendecompositions.
std::vector<RangeResult> all_rank_k_ranges(const ComplexMatrix& a, const EngineOptions& opts = {});

/// min over grid angles of λ_k(θ) − Re(e^{-iθ}z).
double membership_margin(const ComplexMatrix& a, int k, cplx z, const EngineOptions& opts = {});
double membership_margin(const SupportGrid& grid, int k, cplx z);

/// membership_margin ≥ −tol·scale.
bool membership(const ComplexMatrix& a, int k, cplx z, const EngineOptions& opts = {});

/// [λ_{n−k+1}, λ_k] for a descending spectrum.
ConvexRegion hermitian_range(const std::vector<double>& eigs, int k, double tol = 0.0);

/// Intersection of the convex hulls of all (n−k+1)-subsets of eigs.
/// Throws CapacityError when eigs.size() > subset_cap.
ConvexRegion normal_range(const std::vector<cplx>& eigs, int k, std::size_t subset_cap = 14,
                          const GeometryOptions& opts = {});

/// x*Ax for the unit eigenvector of λ_k(θ) at each grid angle.
std::vector<cplx> boundary_points(const ComplexMatrix& a, int k, const EngineOptions& opts = {});

/// Worst-case outer-approximation error of the grid polygon: a region of
/// diameter ≤ 2·scale is off by at most scale·π/grid.
double discretization_bound(double scale, int grid);

}  // namespace hrnr
