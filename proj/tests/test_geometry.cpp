#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hrnr/geometry.hpp"
#include "test_support.hpp"

using namespace hrnr;
using namespace hrnr::test;

namespace {

ConvexRegion square(cplx offset = 0) {
  return ConvexRegion::polygon({cplx(-1, -1) + offset, cplx(1, -1) + offset, cplx(1, 1) + offset,
                                cplx(-1, 1) + offset});
}

std::vector<HalfPlane> uniform_family(int count, const std::function<double(double)>& offset) {
  std::vector<HalfPlane> hp;
  for (int i = 0; i < count; ++i) {
    const double t = 2 * kPi * i / count;
    hp.emplace_back(t, offset(t));
  }
  return hp;
}

}  // namespace

TEST_CASE("half-plane angles are normalized") {
  const HalfPlane h(-kPi / 2, 1.0);
  CHECK(h.theta == doctest::Approx(3 * kPi / 2));
  CHECK(normalize_angle(4 * kPi + 0.5) == doctest::Approx(0.5));
  CHECK(h.violation(cplx(0, -3)) == doctest::Approx(2.0));
}

TEST_CASE("ellipse_from_foci examples") {
  const EllipseDisc disc = ellipse_from_foci(0, 0, 1);
  CHECK(disc.semi_major == doctest::Approx(0.5));
  CHECK(disc.semi_minor == doctest::Approx(0.5));
  CHECK(std::abs(disc.center) < 1e-15);

  const EllipseDisc e = ellipse_from_foci(1, -1, 2);
  CHECK(e.semi_major == doctest::Approx(std::sqrt(2.0)));
  CHECK(e.semi_minor == doctest::Approx(1.0));
  CHECK(std::abs(std::sin(e.rotation)) < 1e-15);

  const ConvexRegion seg = ellipse_region(ellipse_from_foci(1, -1, 0), 64);
  REQUIRE(seg.kind() == ConvexRegion::Kind::Segment);
  CHECK(hausdorff_distance(seg, ConvexRegion::segment(-1, 1)) < 1e-14);
}

TEST_CASE("ellipse_from_foci round-trips its foci") {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const cplx f1 = gaussian_c(rng), f2 = gaussian_c(rng);
    const EllipseDisc e = ellipse_from_foci(f1, f2, std::abs(uniform(rng, 0, 3)));
    const auto [g1, g2] = e.foci;
    const double d = std::min(std::abs(g1 - f1) + std::abs(g2 - f2), std::abs(g1 - f2) + std::abs(g2 - f1));
    CHECK(d <= 1e-12);
    const double c2 = e.semi_major * e.semi_major - e.semi_minor * e.semi_minor;
    CHECK(std::abs(std::norm(g1 - e.center) - c2) <= 1e-12 * std::max(1.0, c2));
    CHECK(e.semi_major >= e.semi_minor);
  }
}

TEST_CASE("ellipse_support examples") {
  const EllipseDisc unit = ellipse_from_axes(0, 1, 1, 0);
  for (double t : {0.0, 1.0, 2.5}) CHECK(ellipse_support(unit, t) == doctest::Approx(1.0));
  const EllipseDisc e = ellipse_from_axes(0, 2, 1, 0);
  CHECK(ellipse_support(e, 0) == doctest::Approx(2.0));
  CHECK(ellipse_support(e, kPi / 2) == doctest::Approx(1.0));
  CHECK(ellipse_support(ellipse_from_axes(3, 2, 1, 0), 0) == doctest::Approx(5.0));
}

TEST_CASE("ellipse_support matches the sampled boundary") {
  Rng rng(22);
  for (int t = 0; t < 20; ++t) {
    const EllipseDisc e = ellipse_from_axes(gaussian_c(rng), 2.0, uniform(rng, 0.1, 2.0), uniform(rng, 0, kPi));
    const auto pts = e.sample(4000);
    const double th = uniform(rng, 0, 2 * kPi);
    double best = -INFINITY;
    for (const cplx z : pts) best = std::max(best, (std::polar(1.0, -th) * z).real());
    CHECK(std::abs(best - ellipse_support(e, th)) < 1e-5);
  }
}

TEST_CASE("halfplane_intersection examples") {
  const std::vector<HalfPlane> sq{{0, 1}, {kPi / 2, 1}, {kPi, 1}, {3 * kPi / 2, 1}};
  const ConvexRegion r = halfplane_intersection(sq);
  REQUIRE(r.kind() == ConvexRegion::Kind::Polygon);
  CHECK(hausdorff_distance(r, square()) < 1e-12);

  const std::vector<HalfPlane> bad{{0, -1}, {kPi, 0}, {kPi / 2, 10}, {3 * kPi / 2, 10}};
  CHECK(halfplane_intersection(bad).is_empty());

  const ConvexRegion disc = halfplane_intersection(uniform_family(360, [](double) { return 1.0; }));
  CHECK(std::abs(disc.area() - kPi) < 1e-3);
}

TEST_CASE("halfplane_intersection rejects an angular gap of pi") {
  const std::vector<HalfPlane> half{{0, 1}, {kPi / 2, 1}, {kPi, 1}};
  CHECK_THROWS_AS(halfplane_intersection(half), UnboundedRegionError);
}

TEST_CASE("halfplane_intersection degenerate outputs") {
  // Strip of zero width -> segment; two inverted pairs meeting at a point.
  const std::vector<HalfPlane> seg{{0, 1}, {kPi, -1}, {kPi / 2, 2}, {3 * kPi / 2, 2}};
  CHECK(halfplane_intersection(seg).kind() == ConvexRegion::Kind::Segment);
  const std::vector<HalfPlane> pt{{0, 1}, {kPi, -1}, {kPi / 2, 0}, {3 * kPi / 2, 0}};
  const ConvexRegion p = halfplane_intersection(pt);
  REQUIRE(p.kind() == ConvexRegion::Kind::Point);
  CHECK(std::abs(p.points()[0] - cplx(1)) < 1e-12);
}

TEST_CASE("halfplane_intersection output satisfies every constraint") {
  Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    const cplx c = gaussian_c(rng);
    const double a = uniform(rng, 0.5, 2.0), b = uniform(rng, 0.1, 0.5);
    const EllipseDisc e = ellipse_from_axes(c, a, b, uniform(rng, 0, kPi));
    auto hp = uniform_family(64 + t, [&](double th) { return ellipse_support(e, th) + uniform(rng, 0, 0.2); });
    const ConvexRegion r = halfplane_intersection(hp);
    REQUIRE(!r.is_empty());
    for (const cplx v : r.points())
      for (const auto& h : hp) CHECK(h.violation(v) <= 1e-9);
  }
}

TEST_CASE("redundant constraints leave the region unchanged") {
  Rng rng(24);
  for (int t = 0; t < 30; ++t) {
    auto hp = uniform_family(48, [&](double) { return uniform(rng, 0.8, 1.2); });
    const ConvexRegion r = halfplane_intersection(hp);
    const double th = uniform(rng, 0, 2 * kPi);
    hp.emplace_back(th, r.support(th) + uniform(rng, 0, 0.5));
    CHECK(hausdorff_distance(r, halfplane_intersection(hp)) <= 1e-12);
  }
}

TEST_CASE("region_contains examples") {
  CHECK(region_contains(square(), 0, 0));
  CHECK(region_contains(ConvexRegion::point(2), 2, 0));
  CHECK_FALSE(region_contains(ConvexRegion::point(2), 2.1, 1e-6));
  CHECK_FALSE(region_contains(ConvexRegion::segment(-1, 1), cplx(0, 0.5), 1e-6));
  CHECK_FALSE(region_contains(ConvexRegion::empty(), 0, 1.0));
}

TEST_CASE("hausdorff_distance examples") {
  CHECK(hausdorff_distance(square(), square()) == 0.0);
  CHECK(hausdorff_distance(ConvexRegion::point(0), ConvexRegion::point(cplx(3, 4))) == doctest::Approx(5.0));
  CHECK(hausdorff_distance(square(), square(0.1)) == doctest::Approx(0.1));
  CHECK_THROWS_AS(hausdorff_distance(square(), ConvexRegion::empty()), EmptyRegionError);
}

TEST_CASE("hausdorff_distance is symmetric and matches a brute-force oracle") {
  Rng rng(25);
  for (int t = 0; t < 20; ++t) {
    const ConvexRegion a = halfplane_intersection(uniform_family(7, [&](double) { return uniform(rng, 0.5, 1.5); }));
    const ConvexRegion b = halfplane_intersection(uniform_family(9, [&](double) { return uniform(rng, 0.5, 1.5); }));
    const double d = hausdorff_distance(a, b);
    CHECK(d == doctest::Approx(hausdorff_distance(b, a)));
    // Directed distances attained at vertices for convex polygons.
    double brute = 0;
    for (const cplx v : a.points()) brute = std::max(brute, distance_to_region(b, v));
    for (const cplx v : b.points()) brute = std::max(brute, distance_to_region(a, v));
    CHECK(std::abs(d - brute) < 1e-12);
  }
}

TEST_CASE("convex_hull_regions examples") {
  const std::vector<HullPart> tri{ConvexRegion::point(0), ConvexRegion::point(1), ConvexRegion::point(cplx(0, 1))};
  const ConvexRegion t = convex_hull_regions(tri);
  REQUIRE(t.kind() == ConvexRegion::Kind::Polygon);
  CHECK(t.points().size() == 3);
  CHECK(t.area() == doctest::Approx(0.5));

  const EllipseDisc d = ellipse_from_axes(0, 1, 1, 0);
  const std::vector<HullPart> one{d};
  CHECK(hausdorff_distance(convex_hull_regions(one), ellipse_region(d, 256)) < 1e-12);

  const std::vector<HullPart> stadium{d, ellipse_from_axes(4, 1, 1, 0)};
  CHECK(convex_hull_regions(stadium).support(0) == doctest::Approx(5.0));
  CHECK_THROWS_AS(convex_hull_regions(std::vector<HullPart>{}), ArgumentError);
}

TEST_CASE("intersect of overlapping squares") {
  const ConvexRegion r = intersect(square(), square(1.0), 2.0);
  CHECK(r.area() == doctest::Approx(2.0));
  CHECK(intersect(square(), square(5.0), 6.0).is_empty());
  const ConvexRegion touch = intersect(square(), square(2.0), 3.0);
  CHECK(touch.kind() == ConvexRegion::Kind::Segment);
}

TEST_CASE("nesting_check examples") {
  const std::vector<EllipseDisc> circles{ellipse_from_axes(0, 1, 1, 0), ellipse_from_axes(0, 0.5, 0.5, 0)};
  CHECK(nesting_check(circles));
  const std::vector<EllipseDisc> confocal{ellipse_from_foci(1, -1, 2), ellipse_from_foci(1, -1, 1)};
  CHECK(nesting_check(confocal));
  const std::vector<EllipseDisc> apart{ellipse_from_axes(0, 1, 1, 0), ellipse_from_axes(4, 1, 1, 0)};
  CHECK_FALSE(nesting_check(apart));
}

TEST_CASE("ellipse_fit examples") {
  std::vector<cplx> circle;
  for (int i = 0; i < 12; ++i) circle.push_back(std::polar(2.0, 2 * kPi * i / 12));
  const EllipseFit c = ellipse_fit(circle);
  CHECK(c.residual <= 1e-9);
  CHECK(c.ellipse.semi_major == doctest::Approx(2.0));
  CHECK(c.ellipse.semi_minor == doctest::Approx(2.0));

  const EllipseDisc e = ellipse_from_axes(0, 2, 1, kPi / 6);
  const EllipseFit f = ellipse_fit(e.sample(12));
  CHECK(std::abs(f.ellipse.semi_major - 2) < 1e-6);
  CHECK(std::abs(f.ellipse.semi_minor - 1) < 1e-6);
  CHECK(std::abs(std::sin(f.ellipse.rotation - kPi / 6)) < 1e-6);

  std::vector<cplx> sq;
  for (int i = 0; i < 10; ++i) {
    const double s = -1 + 0.2 * i;
    sq.insert(sq.end(), {cplx(s, -1), cplx(1, s), cplx(-s, 1), cplx(-1, -s)});
  }
  CHECK(ellipse_fit(sq).residual >= 0.01);

  std::vector<cplx> line;
  for (int i = 0; i < 8; ++i) line.push_back(cplx(i, 2.0 * i));
  CHECK_THROWS_AS(ellipse_fit(line), FitError);
}

TEST_CASE("classify_points collapses degenerate clouds") {
  const std::vector<cplx> same{1, 1.0 + 1e-12, 1};
  CHECK(classify_points(same, 1.0).kind() == ConvexRegion::Kind::Point);
  const std::vector<cplx> line{0, 1, 2, cplx(1, 1e-12)};
  CHECK(classify_points(line, 2.0).kind() == ConvexRegion::Kind::Segment);
  const std::vector<cplx> tri{0, 1, cplx(0, 1), cplx(0.2, 0.2)};
  CHECK(classify_points(tri, 1.0).points().size() == 3);
}

TEST_CASE("support and diameter of basic regions") {
  CHECK(square().support(kPi / 4) == doctest::Approx(std::sqrt(2.0)));
  CHECK(square().diameter() == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(ConvexRegion::segment(0, 2).support(kPi) == doctest::Approx(0.0));
  CHECK_THROWS_AS(ConvexRegion::empty().support(0), EmptyRegionError);
}
