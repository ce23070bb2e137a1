#include "hrnr/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace hrnr {

namespace {

constexpr const char* kColors[] = {"#c0392b", "#2463b4", "#111111", "#1e8449",
                                   "#8e44ad", "#d35400", "#16a085", "#7f8c8d"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  std::string s(buf);
  if (s == "-0") s = "0";  // no negative zero
  return s;
}

// SVG y grows downwards.
std::string xy(cplx z) { return fmt(z.real()) + " " + fmt(-z.imag()); }

}  // namespace

std::string render_svg(const std::vector<SvgLayer>& layers) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  auto grow = [&](cplx z) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, -z.imag());
    y1 = std::max(y1, -z.imag());
  };
  for (const auto& l : layers) {
    for (const cplx z : l.region.points()) grow(z);
    for (const cplx z : l.foci) grow(z);
  }
  if (!(x0 <= x1)) x0 = x1 = y0 = y1 = 0.0;
  double span = std::max(x1 - x0, y1 - y0);
  if (span <= 0.0) span = 1.0;
  const double margin = 0.05 * span;
  const double w = (x1 - x0) + 2 * margin;
  const double h = (y1 - y0) + 2 * margin;
  const double stroke = 0.004 * span;
  const double dot = 0.01 * span;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + fmt(x0 - margin) +
         " " + fmt(y0 - margin) + " " + fmt(w) + " " + fmt(h) + "\">\n";
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    const std::string color = kColors[static_cast<std::size_t>(l.k - 1) % std::size(kColors)];
    const auto& p = l.region.points();
    std::string d;
    std::string style;
    switch (l.region.kind()) {
      case ConvexRegion::Kind::Empty:
        continue;
      case ConvexRegion::Kind::Point: {
        const cplx c = p[0];
        d = "M " + xy(c - dot) + " a " + fmt(dot) + " " + fmt(dot) + " 0 1 0 " + fmt(2 * dot) +
            " 0 a " + fmt(dot) + " " + fmt(dot) + " 0 1 0 " + fmt(-2 * dot) + " 0 Z";
        style = "fill=\"" + color + "\" stroke=\"none\"";
        break;
      }
      case ConvexRegion::Kind::Segment:
        d = "M " + xy(p[0]) + " L " + xy(p[1]);
        style = "fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + fmt(stroke) + "\"";
        break;
      case ConvexRegion::Kind::Polygon:
        d = "M " + xy(p[0]);
        for (std::size_t j = 1; j < p.size(); ++j) d += " L " + xy(p[j]);
        d += " Z";
        style = "fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + fmt(stroke) + "\"";
        break;
    }
    out += "  <path id=\"k" + std::to_string(l.k) + "\" d=\"" + d + "\" " + style + "/>\n";
    for (const cplx f : l.foci) {
      out += "  <circle cx=\"" + fmt(f.real()) + "\" cy=\"" + fmt(-f.imag()) + "\" r=\"" + fmt(0.6 * dot) +
             "\" fill=\"" + color + "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace hrnr
