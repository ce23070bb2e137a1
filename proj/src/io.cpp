#include "hrnr/io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace hrnr {

namespace {

using nlohmann::json;

json complex_pair(cplx z) { return json::array({z.real(), z.imag()}); }

double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError("field '" + field + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError("field '" + field + "' must be finite");
  return v;
}

cplx complex_at(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) throw ParseError("field '" + field + "' must be [re, im]");
  return {number_at(j[0], field + "[0]"), number_at(j[1], field + "[1]")};
}

const json& member(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::size_t positive_at(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    throw ParseError("field '" + field + "' must be a positive integer");
  }
  return static_cast<std::size_t>(j.get<long long>());
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

const char* certificate_kind(EmptinessCertificate::Kind k) {
  return k == EmptinessCertificate::Kind::OppositePair ? "opposite_pair" : "halfplane_triple";
}

}  // namespace

MatrixDocument parse_matrix_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("matrix document must be a JSON object");
  const std::size_t n = positive_at(member(j, "n", "matrix"), "n");
  const std::size_t m = positive_at(member(j, "m", "matrix"), "m");
  const json& entries = member(j, "entries", "matrix");
  if (!entries.is_array()) throw ParseError("field 'entries' must be an array");
  if (entries.size() != n * m) {
    throw ParseError("field 'entries' has " + std::to_string(entries.size()) + " items, expected n*m = " +
                     std::to_string(n * m));
  }
  std::vector<cplx> values;
  values.reserve(n * m);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    values.push_back(complex_at(entries[i], "entries[" + std::to_string(i) + "]"));
  }
  MatrixDocument doc;
  doc.matrix = ComplexMatrix(n, m, std::move(values));
  if (const auto it = j.find("meta"); it != j.end()) {
    if (!it->is_object()) throw ParseError("field 'meta' must be an object");
    if (const auto nm = it->find("name"); nm != it->end()) {
      if (!nm->is_string()) throw ParseError("field 'meta.name' must be a string");
      doc.name = nm->get<std::string>();
    }
    if (const auto r = it->find("r"); r != it->end() && !r->is_null()) {
      doc.r = positive_at(*r, "meta.r");
    }
  }
  return doc;
}

MatrixDocument read_matrix_file(const std::string& path) {
  return parse_matrix_json(read_text_file(path));
}

std::string matrix_to_json(const MatrixDocument& doc) {
  json entries = json::array();
  for (const cplx z : doc.matrix.entries()) entries.push_back(complex_pair(z));
  json meta = json::object();
  meta["name"] = doc.name;
  if (doc.r) meta["r"] = *doc.r;
  json j;
  j["n"] = doc.matrix.rows();
  j["m"] = doc.matrix.cols();
  j["entries"] = std::move(entries);
  j["meta"] = std::move(meta);
  return j.dump();
}

std::string region_to_json(const RegionDocument& doc) {
  json j;
  j["kind"] = kind_name(doc.region.kind());
  j["k"] = doc.k;
  j["grid"] = doc.grid;
  json data = json::array();
  for (const cplx z : doc.region.points()) data.push_back(complex_pair(z));
  j["data"] = std::move(data);
  j["route"] = doc.route;
  j["tolerances"] = {{"tol", doc.tol}, {"segment_rel", doc.segment_rel}, {"point_rel", doc.point_rel}};
  if (doc.certificate) {
    const auto& c = *doc.certificate;
    j["certificate_theta"] = c.theta;
    j["certificate"] = {{"kind", certificate_kind(c.kind)},
                        {"angles", c.angles},
                        {"weights", c.weights},
                        {"margin", c.margin}};
  }
  if (doc.ellipse) {
    const auto& e = *doc.ellipse;
    j["ellipse"] = {{"center", complex_pair(e.center)},
                    {"semi_major", e.semi_major},
                    {"semi_minor", e.semi_minor},
                    {"rotation", e.rotation},
                    {"foci", json::array({complex_pair(e.foci.first), complex_pair(e.foci.second)})}};
  }
  return j.dump();
}

RegionDocument parse_region_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("region document must be a JSON object");
  RegionDocument doc;
  const json& kind = member(j, "kind", "region");
  if (!kind.is_string()) throw ParseError("field 'kind' must be a string");
  const std::string kn = kind.get<std::string>();
  const json& data = member(j, "data", "region");
  if (!data.is_array()) throw ParseError("field 'data' must be an array");
  std::vector<cplx> pts;
  for (std::size_t i = 0; i < data.size(); ++i) pts.push_back(complex_at(data[i], "data[" + std::to_string(i) + "]"));
  auto expect = [&](bool ok) {
    if (!ok) throw ParseError("field 'data' does not match kind '" + kn + "'");
  };
  if (kn == "empty") {
    expect(pts.empty());
    doc.region = ConvexRegion::empty();
  } else if (kn == "point") {
    expect(pts.size() == 1);
    doc.region = ConvexRegion::point(pts[0]);
  } else if (kn == "segment") {
    expect(pts.size() == 2);
    doc.region = ConvexRegion::segment(pts[0], pts[1]);
  } else if (kn == "polygon") {
    expect(pts.size() >= 3);
    doc.region = ConvexRegion::polygon(std::move(pts));
  } else {
    throw ParseError("field 'kind' has unknown value '" + kn + "'");
  }
  const json& k = member(j, "k", "region");
  if (!k.is_number_integer()) throw ParseError("field 'k' must be an integer");
  doc.k = k.get<int>();
  const json& grid = member(j, "grid", "region");
  if (!grid.is_number_integer()) throw ParseError("field 'grid' must be an integer");
  doc.grid = grid.get<int>();
  const json& route = member(j, "route", "region");
  if (!route.is_string()) throw ParseError("field 'route' must be a string");
  doc.route = route.get<std::string>();
  if (const auto t = j.find("tolerances"); t != j.end()) {
    doc.tol = number_at(member(*t, "tol", "tolerances"), "tolerances.tol");
    doc.segment_rel = number_at(member(*t, "segment_rel", "tolerances"), "tolerances.segment_rel");
    doc.point_rel = number_at(member(*t, "point_rel", "tolerances"), "tolerances.point_rel");
  }
  if (const auto c = j.find("certificate"); c != j.end()) {
    EmptinessCertificate cert;
    const std::string ck = member(*c, "kind", "certificate").get<std::string>();
    if (ck == "opposite_pair") {
      cert.kind = EmptinessCertificate::Kind::OppositePair;
    } else if (ck == "halfplane_triple") {
      cert.kind = EmptinessCertificate::Kind::HalfPlaneTriple;
    } else {
      throw ParseError("field 'certificate.kind' has unknown value '" + ck + "'");
    }
    cert.theta = number_at(member(j, "certificate_theta", "region"), "certificate_theta");
    cert.angles = member(*c, "angles", "certificate").get<std::vector<double>>();
    cert.weights = member(*c, "weights", "certificate").get<std::vector<double>>();
    cert.margin = number_at(member(*c, "margin", "certificate"), "certificate.margin");
    doc.certificate = std::move(cert);
  } else if (const auto ct = j.find("certificate_theta"); ct != j.end()) {
    EmptinessCertificate cert;
    cert.theta = number_at(*ct, "certificate_theta");
    doc.certificate = std::move(cert);
  }
  if (const auto e = j.find("ellipse"); e != j.end()) {
    EllipseDisc el;
    el.center = complex_at(member(*e, "center", "ellipse"), "ellipse.center");
    el.semi_major = number_at(member(*e, "semi_major", "ellipse"), "ellipse.semi_major");
    el.semi_minor = number_at(member(*e, "semi_minor", "ellipse"), "ellipse.semi_minor");
    el.rotation = number_at(member(*e, "rotation", "ellipse"), "ellipse.rotation");
    const json& foci = member(*e, "foci", "ellipse");
    if (!foci.is_array() || foci.size() != 2) throw ParseError("field 'ellipse.foci' must hold two points");
    el.foci = {complex_at(foci[0], "ellipse.foci[0]"), complex_at(foci[1], "ellipse.foci[1]")};
    doc.ellipse = el;
  }
  return doc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace hrnr
