#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <string>

#include "hrnr/commands.hpp"
#include "test_support.hpp"

using namespace hrnr;
using namespace hrnr::test;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string env_or(const char* name, const char* fallback) {
  const char* v = std::getenv(name);
  return v ? v : fallback;
}

std::string data(const std::string& file) { return env_or("HRNR_DATA", "tests/data") + "/" + file; }

Run run(const std::string& args) {
  const std::string cmd = env_or("HRNR_CLI", "hrnr") + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hrnr_test_" + name)).string();
}

MatrixDocument doc_of(const ComplexMatrix& a) {
  MatrixDocument d;
  d.matrix = a;
  return d;
}

}  // namespace

TEST_CASE("compute: shift uses the closed route") {
  const Run r = run("compute " + data("shift5.json") + " --k 2");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["route"] == "closed:Shift");
  CHECK(j["kind"] == "polygon");
  CHECK(j.contains("ellipse"));
  CHECK(j["ellipse"]["semi_major"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("compute: example matrix falls back to the generic engine") {
  const Run r = run("compute " + data("example6.json") + " --k 2");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["route"] == "generic");
  CHECK(j["kind"] == "polygon");
}

TEST_CASE("compute: k = n on a non-scalar matrix is empty with exit 2") {
  const Run r = run("compute " + data("diag4.json") + " --k 4 --route generic");
  CHECK(r.code == 2);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "empty");
  CHECK(j.contains("certificate_theta"));
}

TEST_CASE("compute: errors exit 1 and name the problem") {
  const Run bad = run("compute " + data("bad_shape.json"));
  CHECK(bad.code == 1);
  CHECK(bad.out.find("entries") != std::string::npos);
  CHECK(run("compute " + data("shift5.json") + " --k 9").code == 1);
  CHECK(run("compute /nonexistent.json").code == 1);
  CHECK(run("compute " + data("shift5.json") + " --route sideways").code == 1);
  CHECK(run("").code == 1);
}

TEST_CASE("compute: closed route on a generic matrix fails") {
  CHECK(run("compute " + data("example6.json") + " --route closed").code == 1);
}

TEST_CASE("compute: --out writes the document") {
  const std::string path = temp_path("region.json");
  REQUIRE(run("compute " + data("quadratic2.json") + " --out " + path).code == 0);
  const RegionDocument doc = parse_region_json(read_text_file(path));
  CHECK(doc.k == 1);
  CHECK(doc.grid == 720);
  CHECK(doc.region.kind() == ConvexRegion::Kind::Polygon);
  std::filesystem::remove(path);
}

TEST_CASE("verify examples") {
  const Run q = run("verify " + data("quadratic2.json") + " --k 1");
  CHECK(q.code == 0);
  CHECK(q.out.find("PASS") != std::string::npos);

  const MatrixDocument d = read_matrix_file(data("quadratic2.json"));
  CommandOptions o;
  const VerifyReport rep = cmd_verify(d, o);
  CHECK(rep.pass);
  CHECK(rep.distance <= 1e-3);

  const VerifyReport s7 = [] {
    CommandOptions o7;
    o7.k = 3;
    return cmd_verify(doc_of(shift_matrix(7)), o7);
  }();
  CHECK(s7.pass);

  CHECK_THROWS_AS(cmd_verify(read_matrix_file(data("example6.json")), o), NoClosedFormError);
  CHECK(run("verify " + data("example6.json")).code == 1);
}

TEST_CASE("curve: deterministic SVG with one path per distinct range") {
  const std::string a = temp_path("a.svg"), b = temp_path("b.svg");
  REQUIRE(run("curve " + data("example6.json") + " --out " + a).code == 0);
  REQUIRE(run("curve " + data("example6.json") + " --out " + b).code == 0);
  const std::string sa = read_text_file(a);
  CHECK(sa == read_text_file(b));
  CHECK(sa.find("<path id=\"k1\"") != std::string::npos);
  CHECK(sa.find("<path id=\"k3\"") != std::string::npos);
  CHECK(sa.find("<path id=\"k4\"") == std::string::npos);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("curve: closed forms draw foci, Hermitian input draws strokes, scalar input one dot") {
  const std::string quad = cmd_curve(read_matrix_file(data("quadratic2.json")), {});
  CHECK(quad.find("<circle") != std::string::npos);

  const std::string herm = cmd_curve(read_matrix_file(data("diag4.json")), {});
  CHECK(herm.find("fill=\"none\"") != std::string::npos);
  CHECK(herm.find(" Z\"") == std::string::npos);

  const std::string dot = cmd_curve(read_matrix_file(data("scalar3.json")), {});
  std::size_t paths = 0;
  for (std::size_t p = dot.find("<path"); p != std::string::npos; p = dot.find("<path", p + 1)) ++paths;
  CHECK(paths == 1);
}

TEST_CASE("member examples") {
  const Run in = run("member " + data("diag4.json") + " --k 2 --point 2.5 --route generic");
  CHECK(in.code == 0);
  CHECK(in.out.rfind("in margin", 0) == 0);
  CHECK(run("member " + data("diag4.json") + " --k 2 --point 3.5").code == 3);
  const MemberResult m = cmd_member(read_matrix_file(data("shift5.json")), 0, {});
  CHECK(m.inside);
  CHECK(m.margin == doctest::Approx(std::cos(kPi / 6)));
  CHECK(run("member " + data("diag4.json") + " --point 1+").code == 1);
}

TEST_CASE("parse_point forms") {
  CHECK(parse_point("0.5-2i") == cplx(0.5, -2));
  CHECK(parse_point("3") == cplx(3, 0));
  CHECK(parse_point("-i") == cplx(0, -1));
  CHECK(parse_point("2j") == cplx(0, 2));
  CHECK(parse_point(" 1e-3 + 2.5e+1i ") == cplx(1e-3, 25));
  CHECK_THROWS_AS(parse_point("abc"), ParseError);
  CHECK_THROWS_AS(parse_point(""), ParseError);
}

TEST_CASE("matrix JSON validation names fields") {
  auto msg = [](const std::string& text) {
    try {
      parse_matrix_json(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(msg(R"({"m":1,"entries":[[1,0]]})").find("'n'") != std::string::npos);
  CHECK(msg(R"({"n":1,"m":1,"entries":[[1]]})").find("entries") != std::string::npos);
  CHECK(msg(R"({"n":1,"m":1,"entries":[[1,0]],"meta":{"r":"x"}})").find("meta.r") != std::string::npos);
  CHECK(msg("not json").find("JSON") != std::string::npos);
  const MatrixDocument d = parse_matrix_json(R"({"n":1,"m":2,"entries":[[1,2],[3,4]],"meta":{"name":"x","r":1}})");
  CHECK(d.matrix(0, 1) == cplx(3, 4));
  CHECK(d.name == "x");
  CHECK(d.r == 1u);
  CHECK(parse_matrix_json(matrix_to_json(d)).matrix == d.matrix);
}

TEST_CASE("region documents round-trip exactly") {
  Rng rng(61);
  const ComplexMatrix a = random_matrix(rng, 4, 4);
  for (int k = 1; k <= 4; ++k) {
    CommandOptions o;
    o.k = k;
    o.route = Route::Generic;
    const ComputeResult res = cmd_compute(doc_of(a), o);
    const std::string text = region_to_json(res.document);
    const RegionDocument back = parse_region_json(text);
    CHECK(back.region == res.document.region);
    CHECK(region_to_json(back) == text);
    if (res.document.region.is_empty()) CHECK(back.certificate.has_value());
  }
  CommandOptions o;
  const ComputeResult closed = cmd_compute(doc_of(shift_matrix(5)), o);
  const std::string text = region_to_json(closed.document);
  CHECK(region_to_json(parse_region_json(text)) == text);
}

TEST_CASE("generic and closed routes agree through cmd_compute") {
  for (std::size_t n : {3u, 4u, 6u}) {
    for (int k = 1; k <= static_cast<int>(n); ++k) {
      CommandOptions g, c;
      g.k = c.k = k;
      g.route = Route::Generic;
      c.route = Route::Closed;
      const auto rg = cmd_compute(doc_of(shift_matrix(n)), g).document.region;
      const auto rc = cmd_compute(doc_of(shift_matrix(n)), c).document.region;
      CHECK(rg.is_empty() == rc.is_empty());
      if (!rg.is_empty()) CHECK(hausdorff_distance(rg, rc) <= 5 * discretization_bound(1.0, 720));
    }
  }
}

TEST_CASE("classify subcommand prints the detected class") {
  const Run r = run("classify " + data("shift5.json"));
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["detected_class"] == "Shift");
}
