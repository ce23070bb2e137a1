#include "hrnr/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "geometry_internal.hpp"

namespace hrnr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_k(std::size_t n, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw ArgumentError("k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
}

void check_grid(int grid) {
  if (grid < 8) throw ArgumentError("grid = " + std::to_string(grid) + " must be >= 8");
}

std::vector<HalfPlane> family(const SupportGrid& g, int k, double lift) {
  std::vector<HalfPlane> hp;
  hp.reserve(g.samples().size());
  for (const auto& s : g.samples()) hp.emplace_back(s.theta, s.values[k - 1] + lift);
  return hp;
}

// Smallest-value Farkas combination that includes the constraint whose
// clipping emptied the loop; all others come from the prefix before it.
EmptinessCertificate triple_certificate(const std::vector<HalfPlane>& hp,
                                        const detail::ClipRun& run, double lift) {
  const std::size_t last = run.order[*run.emptied_at];
  EmptinessCertificate best;
  best.kind = EmptinessCertificate::Kind::HalfPlaneTriple;
  best.margin = std::numeric_limits<double>::infinity();
  auto consider = [&](const detail::FarkasTriple& f, std::initializer_list<std::size_t> idx) {
    const double raw = f.value - lift;
    if (raw >= best.margin) return;
    best.margin = raw;
    best.angles.clear();
    best.weights.clear();
    std::size_t j = 0;
    for (const std::size_t i : idx) {
      best.angles.push_back(hp[i].theta);
      best.weights.push_back(f.weights[j++]);
    }
    best.theta = best.angles.front();
  };
  const std::size_t prefix = *run.emptied_at;
  for (std::size_t a = 0; a < prefix; ++a) {
    const std::size_t ia = run.order[a];
    if (auto f = detail::farkas(hp[ia], hp[last])) consider(*f, {ia, last});
    for (std::size_t b = a + 1; b < prefix; ++b) {
      const std::size_t ib = run.order[b];
      if (auto f = detail::farkas(hp[ia], hp[ib], hp[last])) consider(*f, {ia, ib, last});
    }
  }
  return best;
}

}  // namespace

SupportSample support_spectrum(const ComplexMatrix& a, double theta) {
  return {theta, eigvalsh(hermitian_part(a, theta))};
}

SupportGrid::SupportGrid(const ComplexMatrix& a, int grid, double theta0) {
  if (!a.is_square()) throw DimensionError("support grid needs a square matrix");
  check_grid(grid);
  n_ = a.rows();
  scale_ = range_scale(a);
  samples_.reserve(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    const double theta = normalize_angle(theta0 + kTwoPi * i / grid);
    samples_.push_back(support_spectrum(a, theta));
  }
}

RangeResult rank_k_range(const ComplexMatrix& a, int k, const EngineOptions& opts) {
  if (!a.is_square()) throw DimensionError("rank_k_range needs a square matrix");
  check_k(a.rows(), k);
  return rank_k_range(SupportGrid(a, opts.grid, opts.theta0), k, opts);
}

RangeResult rank_k_range(const SupportGrid& grid, int k, const EngineOptions& opts) {
  const std::size_t n = grid.dimension();
  check_k(n, k);
  RangeResult out;
  out.k = k;
  out.grid_size = grid.grid();
  out.tol = opts.tol * grid.scale();

  // λ_k(θ+π) = −λ_{n−k+1}(θ): an inverted strip is a two-line proof.
  double worst = std::numeric_limits<double>::infinity();
  const SupportSample* worst_at = nullptr;
  for (const auto& s : grid.samples()) {
    const double gap = s.values[k - 1] - s.values[n - k];
    if (gap < worst) {
      worst = gap;
      worst_at = &s;
    }
  }
  if (worst < -out.tol) {
    EmptinessCertificate cert;
    cert.kind = EmptinessCertificate::Kind::OppositePair;
    cert.theta = worst_at->theta;
    cert.angles = {worst_at->theta, normalize_angle(worst_at->theta + std::numbers::pi)};
    cert.weights = {0.5, 0.5};
    cert.margin = 0.5 * worst;
    out.region = ConvexRegion::empty();
    out.certificate = std::move(cert);
    return out;
  }

  std::vector<HalfPlane> hp = family(grid, k, 0.0);
  detail::ClipRun run = detail::clip_family(hp, opts.geometry);
  if (!run.loop.empty()) {
    out.region = classify_points(run.loop, grid.scale(), opts.geometry);
    return out;
  }
  // Near-ties are resolved toward a nonempty region.
  hp = family(grid, k, out.tol);
  run = detail::clip_family(hp, opts.geometry);
  if (!run.loop.empty()) {
    out.region = classify_points(run.loop, grid.scale(), opts.geometry);
    return out;
  }
  out.region = ConvexRegion::empty();
  out.certificate = triple_certificate(hp, run, out.tol);
  return out;
}

std::vector<RangeResult> all_rank_k_ranges(const ComplexMatrix& a, const EngineOptions& opts) {
  const SupportGrid grid(a, opts.grid, opts.theta0);
  std::vector<RangeResult> out;
  out.reserve(grid.dimension());
  for (std::size_t k = 1; k <= grid.dimension(); ++k) {
    out.push_back(rank_k_range(grid, static_cast<int>(k), opts));
  }
  return out;
}

double membership_margin(const ComplexMatrix& a, int k, cplx z, const EngineOptions& opts) {
  if (!a.is_square()) throw DimensionError("membership needs a square matrix");
  check_k(a.rows(), k);
  check_grid(opts.grid);
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < opts.grid; ++i) {
    const double theta = normalize_angle(opts.theta0 + kTwoPi * i / opts.grid);
    const SupportSample s = support_spectrum(a, theta);
    margin = std::min(margin, s.values[k - 1] - (std::polar(1.0, -theta) * z).real());
  }
  return margin;
}

double membership_margin(const SupportGrid& grid, int k, cplx z) {
  check_k(grid.dimension(), k);
  double margin = std::numeric_limits<double>::infinity();
  for (const SupportSample& s : grid.samples())
    margin = std::min(margin, s.values[k - 1] - (std::polar(1.0, -s.theta) * z).real());
  return margin;
}

bool membership(const ComplexMatrix& a, int k, cplx z, const EngineOptions& opts) {
  return membership_margin(a, k, z, opts) >= -opts.tol * range_scale(a);
}

ConvexRegion hermitian_range(const std::vector<double>& eigs, int k, double tol) {
  check_k(eigs.size(), k);
  const double hi = eigs[static_cast<std::size_t>(k) - 1];
  const double lo = eigs[eigs.size() - static_cast<std::size_t>(k)];
  if (hi < lo - tol) return ConvexRegion::empty();
  if (hi - lo <= tol) return ConvexRegion::point(0.5 * (hi + lo));
  return ConvexRegion::segment(lo, hi);
}

ConvexRegion normal_range(const std::vector<cplx>& eigs, int k, std::size_t subset_cap,
                          const GeometryOptions& opts) {
  const std::size_t n = eigs.size();
  if (n > subset_cap) {
    throw CapacityError("normal_range: " + std::to_string(n) + " eigenvalues exceed cap " +
                        std::to_string(subset_cap));
  }
  check_k(n, k);
  double scale = 1.0;
  for (const cplx z : eigs) scale = std::max(scale, std::abs(z));

  const std::size_t m = n - static_cast<std::size_t>(k) + 1;
  std::vector<char> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m), 1);
  std::optional<ConvexRegion> acc;
  std::vector<cplx> subset;
  do {
    subset.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) subset.push_back(eigs[i]);
    const ConvexRegion hull = classify_points(subset, scale, opts);
    acc = acc ? intersect(*acc, hull, scale, opts) : hull;
    if (acc->is_empty()) break;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return *acc;
}

std::vector<cplx> boundary_points(const ComplexMatrix& a, int k, const EngineOptions& opts) {
  if (!a.is_square()) throw DimensionError("boundary_points needs a square matrix");
  check_k(a.rows(), k);
  check_grid(opts.grid);
  const std::size_t n = a.rows();
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(opts.grid));
  for (int i = 0; i < opts.grid; ++i) {
    const double theta = normalize_angle(opts.theta0 + kTwoPi * i / opts.grid);
    const HermitianEigen e = eigh(hermitian_part(a, theta));
    const auto col = static_cast<std::size_t>(k - 1);
    cplx q{};
    for (std::size_t r = 0; r < n; ++r) {
      cplx ax{};
      for (std::size_t c = 0; c < n; ++c) ax += a(r, c) * e.vectors(c, col);
      q += std::conj(e.vectors(r, col)) * ax;
    }
    pts.push_back(q);
  }
  return pts;
}

double discretization_bound(double scale, int grid) {
  return scale * std::numbers::pi / grid;
}

}  // namespace hrnr
