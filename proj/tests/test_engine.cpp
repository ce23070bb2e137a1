#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hrnr/engine.hpp"
#include "hrnr/structured.hpp"
#include "test_support.hpp"

using namespace hrnr;
using namespace hrnr::test;

namespace {

ComplexMatrix random_diagonal(Rng& rng, std::size_t n, std::vector<cplx>* eigs = nullptr) {
  std::vector<cplx> d(n);
  for (auto& z : d) z = gaussian_c(rng);
  if (eigs) *eigs = d;
  return ComplexMatrix::diagonal(std::span<const cplx>(d));
}

}  // namespace

TEST_CASE("support_spectrum examples") {
  const ComplexMatrix d{{1, 0}, {0, cplx(0, 1)}};
  CHECK(max_abs_diff(support_spectrum(d, 0).values, {1, 0}) < 1e-15);
  const ComplexMatrix j{{0, 1}, {0, 0}};
  for (double t : {0.0, 0.7, 2.0}) CHECK(max_abs_diff(support_spectrum(j, t).values, {0.5, -0.5}) < 1e-14);
  CHECK(max_abs_diff(support_spectrum(ComplexMatrix::identity(2) * cplx(3), kPi).values, {-3, -3}) < 1e-14);
}

TEST_CASE("support grid matches an Eigen reference") {
  Rng rng(31);
  const ComplexMatrix a = random_matrix(rng, 5, 5);
  const SupportGrid g(a, 16);
  for (const auto& s : g.samples())
    for (int k = 1; k <= 5; ++k) CHECK(std::abs(s.values[k - 1] - ref_lambda(a, k, s.theta)) < 1e-10);
}

TEST_CASE("rank_k_range examples") {
  SUBCASE("scalar matrix gives a point for every k") {
    const cplx l0(1.5, -0.5);
    const ComplexMatrix a = ComplexMatrix::identity(4) * l0;
    for (int k = 1; k <= 4; ++k) {
      const RangeResult r = rank_k_range(a, k);
      REQUIRE(r.region.kind() == ConvexRegion::Kind::Point);
      CHECK(std::abs(r.region.points()[0] - l0) < 1e-9);
    }
  }
  SUBCASE("Hermitian diagonal") {
    const std::vector<double> d{4, 3, 2, 1};
    const RangeResult r = rank_k_range(ComplexMatrix::diagonal(d), 2);
    REQUIRE(r.region.kind() == ConvexRegion::Kind::Segment);
    CHECK(hausdorff_distance(r.region, ConvexRegion::segment(2, 3)) < 1e-9);
  }
  SUBCASE("shift disc") {
    const RangeResult r = rank_k_range(shift_matrix(5), 2);
    const ConvexRegion disc = ellipse_region(ellipse_from_axes(0, 0.5, 0.5, 0), 720);
    CHECK(hausdorff_distance(r.region, disc) < 2e-3);
  }
  SUBCASE("diag(1, -1) at k = 2 is empty with an opposite pair at 0") {
    const std::vector<double> d{1, -1};
    const RangeResult r = rank_k_range(ComplexMatrix::diagonal(d), 2);
    CHECK(r.region.is_empty());
    REQUIRE(r.certificate);
    CHECK(r.certificate->kind == EmptinessCertificate::Kind::OppositePair);
    CHECK(std::abs(std::sin(r.certificate->theta)) < 1e-12);
  }
}

TEST_CASE("rank_k_range argument checks") {
  const ComplexMatrix a = ComplexMatrix::identity(3);
  CHECK_THROWS_AS(rank_k_range(a, 0), ArgumentError);
  CHECK_THROWS_AS(rank_k_range(a, 4), ArgumentError);
  EngineOptions o;
  o.grid = 4;
  CHECK_THROWS_AS(rank_k_range(a, 1, o), ArgumentError);
  CHECK_THROWS_AS(rank_k_range(ComplexMatrix(2, 3), 1), DimensionError);
}

TEST_CASE("every Empty result carries a certificate") {
  Rng rng(32);
  for (int t = 0; t < 30; ++t) {
    const auto n = static_cast<std::size_t>(2 + t % 5);
    for (const auto& r : all_rank_k_ranges(random_matrix(rng, n, n))) {
      if (r.region.is_empty()) CHECK(r.certificate.has_value());
    }
  }
}

TEST_CASE("all_rank_k_ranges equals per-k calls and nests") {
  Rng rng(33);
  const ComplexMatrix a = random_matrix(rng, 5, 5);
  const auto all = all_rank_k_ranges(a);
  for (int k = 1; k <= 5; ++k) CHECK(all[k - 1].region == rank_k_range(a, k).region);
  const SupportGrid g(a, 720);
  for (const auto& s : g.samples())
    for (std::size_t k = 1; k < 5; ++k) CHECK(s.values[k] <= s.values[k - 1]);
  for (std::size_t k = 1; k < all.size() && !all[k].region.is_empty(); ++k)
    for (int i = 0; i < 64; ++i) {
      const double th = 2 * kPi * i / 64;
      CHECK(all[k].region.support(th) <= all[k - 1].region.support(th) + 1e-9);
    }
}

TEST_CASE("membership examples") {
  const std::vector<double> d{4, 3, 2, 1};
  const ComplexMatrix a = ComplexMatrix::diagonal(d);
  CHECK(membership(a, 2, 2.5));
  // Λ_2 is the segment [2, 3]; its support across the real axis is 0.
  CHECK(std::abs(membership_margin(a, 2, 2.5)) < 1e-12);
  CHECK_FALSE(membership(a, 2, 3.5));
  CHECK(membership(shift_matrix(5), 1, 0));
  CHECK(membership_margin(shift_matrix(5), 1, 0) == doctest::Approx(std::cos(kPi / 6)));
}

TEST_CASE("membership agrees with the computed region") {
  Rng rng(34);
  const ComplexMatrix a = random_matrix(rng, 4, 4);
  const RangeResult r = rank_k_range(a, 1);
  for (int t = 0; t < 200; ++t) {
    const cplx z = gaussian_c(rng) * 1.5;
    const double dist = distance_to_region(r.region, z);
    if (dist > 1e-6) CHECK_FALSE(membership(a, 1, z));
    if (dist == 0.0 && membership_margin(a, 1, z) > 1e-6) CHECK(membership(a, 1, z));
  }
}

TEST_CASE("hermitian_range examples") {
  CHECK(hermitian_range({4, 3, 2, 1}, 2) == ConvexRegion::segment(2, 3));
  CHECK(hermitian_range({2, 2, 2}, 2) == ConvexRegion::point(2));
  CHECK(hermitian_range({1, 0}, 2).is_empty());
  CHECK_THROWS_AS(hermitian_range({1, 0}, 3), ArgumentError);
}

TEST_CASE("normal_range examples") {
  const std::vector<cplx> quad{1, cplx(0, 1), -1, cplx(0, -1)};
  const ConvexRegion p = normal_range(quad, 2);
  REQUIRE(p.kind() == ConvexRegion::Kind::Point);
  CHECK(std::abs(p.points()[0]) < 1e-12);
  const ConvexRegion sq = normal_range(quad, 1);
  CHECK(sq.kind() == ConvexRegion::Kind::Polygon);
  CHECK(sq.area() == doctest::Approx(2.0));
  const std::vector<cplx> line{0, 1, 2};
  const ConvexRegion one = normal_range(line, 2);
  REQUIRE(one.kind() == ConvexRegion::Kind::Point);
  CHECK(std::abs(one.points()[0] - cplx(1)) < 1e-12);
  CHECK_THROWS_AS(normal_range(std::vector<cplx>(15, 0.0), 1), CapacityError);
}

TEST_CASE("normal_range agrees with the engine on diagonal matrices") {
  Rng rng(35);
  for (int t = 0; t < 20; ++t) {
    std::vector<cplx> eigs;
    const auto n = static_cast<std::size_t>(2 + t % 5);
    const ComplexMatrix a = random_diagonal(rng, n, &eigs);
    const double bound = discretization_bound(range_scale(a), 720);
    for (int k = 1; k <= static_cast<int>(n); ++k) {
      const ConvexRegion oracle = normal_range(eigs, k);
      const ConvexRegion got = rank_k_range(a, k).region;
      CHECK(oracle.is_empty() == got.is_empty());
      if (!oracle.is_empty() && !got.is_empty()) CHECK(hausdorff_distance(oracle, got) <= 2 * bound);
    }
  }
}

TEST_CASE("Hermitian matrices give the eigenvalue interval") {
  Rng rng(36);
  for (int t = 0; t < 20; ++t) {
    const auto n = static_cast<std::size_t>(1 + t % 8);
    const ComplexMatrix h = random_hermitian(rng, n);
    const auto ev = ref_eigvalsh(h);
    for (int k = 1; k <= static_cast<int>(n); ++k) {
      const ConvexRegion want = hermitian_range(ev, k, 1e-9);
      const ConvexRegion got = rank_k_range(h, k).region;
      REQUIRE(got.kind() == want.kind());
      if (!got.is_empty()) CHECK(hausdorff_distance(got, want) <= 1e-8);
    }
  }
}

TEST_CASE("boundary_points examples") {
  const ComplexMatrix j{{0, 1}, {0, 0}};
  for (const cplx z : boundary_points(j, 1)) CHECK(std::abs(std::abs(z) - 0.5) < 1e-12);
  const std::vector<double> d{4, 3, 2, 1};
  for (const cplx z : boundary_points(ComplexMatrix::diagonal(d), 1)) CHECK(std::abs(z.imag()) < 1e-12);
  for (const cplx z : boundary_points(ComplexMatrix::identity(3) * cplx(3), 1)) CHECK(std::abs(z - cplx(3)) < 1e-12);
}

TEST_CASE("boundary points lie on the rank-1 range") {
  Rng rng(37);
  const ComplexMatrix a = random_matrix(rng, 4, 4);
  const ConvexRegion w = rank_k_range(a, 1).region;
  for (const cplx z : boundary_points(a, 1)) CHECK(distance_to_region(w, z) < 1e-9);
}

TEST_CASE("translation and scaling equivariance on a rotated grid") {
  Rng rng(38);
  for (int t = 0; t < 20; ++t) {
    const auto n = static_cast<std::size_t>(2 + t % 4);
    const ComplexMatrix a = random_matrix(rng, n, n);
    const cplx al = gaussian_c(rng), be = gaussian_c(rng);
    const ComplexMatrix b = a * al + ComplexMatrix::identity(n) * be;
    EngineOptions rot;
    rot.theta0 = normalize_angle(std::arg(al));
    for (int k = 1; k <= static_cast<int>(n); ++k) {
      const ConvexRegion ra = rank_k_range(a, k).region;
      const ConvexRegion rb = rank_k_range(b, k, rot).region;
      CHECK(ra.kind() == rb.kind());
      if (ra.is_empty() || ra.kind() != rb.kind()) continue;
      std::vector<cplx> mapped;
      for (const cplx v : ra.points()) mapped.push_back(al * v + be);
      const double scale = range_scale(b);
      for (const cplx v : rb.points()) {
        double best = INFINITY;
        for (const cplx m : mapped) best = std::min(best, std::abs(m - v));
        CHECK(best <= 1e-8 * scale);
      }
    }
  }
}

TEST_CASE("unitary invariance") {
  Rng rng(39);
  for (int t = 0; t < 15; ++t) {
    const auto n = static_cast<std::size_t>(2 + t % 5);
    const ComplexMatrix a = random_matrix(rng, n, n);
    const ComplexMatrix u = random_unitary(rng, n);
    const ComplexMatrix b = u.adjoint() * a * u;
    for (int k = 1; k <= static_cast<int>(n); ++k) {
      const ConvexRegion ra = rank_k_range(a, k).region;
      const ConvexRegion rb = rank_k_range(b, k).region;
      CHECK(ra.is_empty() == rb.is_empty());
      if (!ra.is_empty() && !rb.is_empty()) CHECK(hausdorff_distance(ra, rb) <= 1e-7 * range_scale(a));
    }
  }
}

TEST_CASE("discretization bound") {
  CHECK(discretization_bound(2.0, 720) == doctest::Approx(2.0 * kPi / 720));
}
