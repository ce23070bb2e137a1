// hrnr: higher rank numerical ranges from the command line.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <json.hpp>

#include "hrnr/commands.hpp"

namespace {

struct Flags {
  std::string input;
  std::string out;
  std::string route = "auto";
  std::string point;
  int k = 1;
  int grid = 720;
  double tol = 1e-9;
  int r = 0;
  int hull_samples = 256;
  int nest_samples = 512;
};

void add_common(CLI::App* cmd, Flags& f, bool with_k) {
  cmd->add_option("input", f.input, "matrix JSON file")->required();
  if (with_k) cmd->add_option("--k", f.k, "rank k (1-based)")->capture_default_str();
  cmd->add_option("--grid", f.grid, "number of angles")->capture_default_str()->check(CLI::Range(8, 1 << 22));
  cmd->add_option("--tol", f.tol, "tolerance relative to max(1, |A|_2)")->capture_default_str();
  cmd->add_option("--route", f.route, "auto | generic | closed")->capture_default_str();
  cmd->add_option("--r", f.r, "block split, overrides meta.r");
  cmd->add_option("--hull-samples", f.hull_samples, "boundary samples per ellipse")->capture_default_str();
  cmd->add_option("--nest-samples", f.nest_samples, "angles for nesting checks")->capture_default_str();
}

hrnr::CommandOptions options(const Flags& f) {
  hrnr::CommandOptions o;
  o.k = f.k;
  o.grid = f.grid;
  o.tol = f.tol;
  o.route = hrnr::parse_route(f.route);
  if (f.r > 0) o.r = static_cast<std::size_t>(f.r);
  o.geometry.hull_samples = f.hull_samples;
  o.geometry.nest_samples = f.nest_samples;
  return o;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    hrnr::write_text_file(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher rank numerical ranges of complex matrices"};
  app.require_subcommand(1);
  Flags f;

  auto* compute = app.add_subcommand("compute", "compute the rank-k numerical range");
  add_common(compute, f, true);
  compute->add_option("--out", f.out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "compare the closed form with the generic engine");
  add_common(verify, f, true);

  auto* curve = app.add_subcommand("curve", "render every nonempty rank-k range as SVG");
  add_common(curve, f, false);
  curve->add_option("--out", f.out, "SVG file")->required();

  auto* member = app.add_subcommand("member", "test whether a point lies in the rank-k range");
  add_common(member, f, true);
  member->add_option("--point", f.point, "point such as 0.5-2i")->required();

  auto* cls = app.add_subcommand("classify", "report the detected block structure");
  cls->add_option("input", f.input, "matrix JSON file")->required();
  cls->add_option("--r", f.r, "block split, overrides meta.r");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? hrnr::kExitOk : hrnr::kExitError;
  }

  try {
    const hrnr::MatrixDocument doc = hrnr::read_matrix_file(f.input);
    if (*compute) {
      const auto res = hrnr::cmd_compute(doc, options(f));
      emit(hrnr::region_to_json(res.document), f.out);
      return res.exit_code;
    }
    if (*verify) {
      const auto rep = hrnr::cmd_verify(doc, options(f));
      std::printf("route %s k %d closed %s generic %s hausdorff %.3e threshold %.3e %s\n",
                  rep.route.c_str(), rep.k, hrnr::kind_name(rep.closed.kind()),
                  hrnr::kind_name(rep.generic.kind()), rep.distance, rep.threshold,
                  rep.pass ? "PASS" : "FAIL");
      return rep.pass ? hrnr::kExitOk : hrnr::kExitError;
    }
    if (*curve) {
      emit(hrnr::cmd_curve(doc, options(f)), f.out);
      return hrnr::kExitOk;
    }
    if (*member) {
      const auto res = hrnr::cmd_member(doc, hrnr::parse_point(f.point), options(f));
      std::printf("%s margin %.12g\n", res.inside ? "in" : "out", res.margin);
      return res.inside ? hrnr::kExitOk : hrnr::kExitNonMember;
    }
    if (*cls) {
      std::optional<std::size_t> r = doc.r;
      if (f.r > 0) r = static_cast<std::size_t>(f.r);
      const auto rep = hrnr::classify(doc.matrix, r);
      nlohmann::json j;
      j["detected_class"] = hrnr::class_name(rep.detected_class);
      j["flags"] = nlohmann::json::array();
      for (const auto c : rep.flags) j["flags"].push_back(hrnr::class_name(c));
      j["residuals"] = rep.residuals;
      j["theorem_hypotheses"] = rep.theorem_hypotheses;
      if (rep.block) j["r"] = rep.block->swapped ? rep.block->n - rep.block->r : rep.block->r;
      if (rep.zeta) j["zeta"] = {rep.zeta->real(), rep.zeta->imag()};
      if (rep.singular_data) j["singular_values"] = rep.singular_data->s;
      emit(j.dump(2), "");
      return hrnr::kExitOk;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return hrnr::kExitError;
  }
  return hrnr::kExitError;
}
