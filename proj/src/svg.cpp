#include "pft/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pft {
namespace {

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string threshold_svg(const std::vector<curve_point>& curve,
                          double gamma_max, double eta_max,
                          const std::string& title) {
  if (gamma_max <= 0 || eta_max <= 0)
    throw std::invalid_argument("axis ranges must be positive");
  constexpr double W = 640, H = 480;
  constexpr double ml = 80, mr = 30, mt = 50, mb = 70;  // margins
  const double pw = W - ml - mr, ph = H - mt - mb;

  auto px = [&](double g) { return ml + pw * g / gamma_max; };
  auto py = [&](double e) { return H - mb - ph * e / eta_max; };

  std::vector<curve_point> pts = curve;
  std::sort(pts.begin(), pts.end(), [](const curve_point& a,
                                       const curve_point& b) {
    return a.gamma != b.gamma ? a.gamma < b.gamma : a.eta < b.eta;
  });

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
    << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
    << "\">\n";
  s << "<rect width=\"" << W << "\" height=\"" << H
    << "\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"28\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"16\">"
    << title << "</text>\n";

  // Shaded convergent region: origin, along the curve, back to the axes.
  if (pts.size() >= 2) {
    s << "<polygon fill=\"#cfe6cf\" stroke=\"none\" points=\"";
    s << fmt(px(0)) << "," << fmt(py(0));
    for (const auto& p : pts)
      s << " " << fmt(px(p.gamma)) << "," << fmt(py(p.eta));
    s << " " << fmt(px(pts.back().gamma)) << "," << fmt(py(0));
    s << "\"/>\n";
  }

  // Axes.
  s << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(H - mb) << "\" x2=\""
    << fmt(W - mr) << "\" y2=\"" << fmt(H - mb)
    << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  s << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(H - mb) << "\" x2=\""
    << fmt(ml) << "\" y2=\"" << fmt(mt)
    << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double g = gamma_max * i / 4.0;
    const double e = eta_max * i / 4.0;
    s << "<line x1=\"" << fmt(px(g)) << "\" y1=\"" << fmt(H - mb)
      << "\" x2=\"" << fmt(px(g)) << "\" y2=\"" << fmt(H - mb + 6)
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << fmt(px(g)) << "\" y=\"" << fmt(H - mb + 22)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">"
      << fmt(g, "%.2g") << "</text>\n";
    s << "<line x1=\"" << fmt(ml - 6) << "\" y1=\"" << fmt(py(e))
      << "\" x2=\"" << fmt(ml) << "\" y2=\"" << fmt(py(e))
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << fmt(ml - 10) << "\" y=\"" << fmt(py(e) + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"12\">"
      << fmt(e, "%.2g") << "</text>\n";
  }
  s << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << fmt(H - 18)
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"15\">\xce\xb3 (loss per timestep)</text>\n";
  s << "<text x=\"22\" y=\"" << fmt(mt + ph / 2)
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"15\" transform=\"rotate(-90 22 "
    << fmt(mt + ph / 2)
    << ")\">\xce\xb7 (depolarisation per timestep)</text>\n";

  // Threshold curve and its sample points.
  if (!pts.empty()) {
    s << "<polyline fill=\"none\" stroke=\"#1a6b1a\" stroke-width=\"2\" "
         "points=\"";
    bool first = true;
    for (const auto& p : pts) {
      if (!first) s << " ";
      first = false;
      s << fmt(px(p.gamma)) << "," << fmt(py(p.eta));
    }
    s << "\"/>\n";
    for (const auto& p : pts)
      s << "<circle cx=\"" << fmt(px(p.gamma)) << "\" cy=\""
        << fmt(py(p.eta)) << "\" r=\"3.5\" fill=\"#1a6b1a\"/>\n";
  }
  s << "<text x=\"" << fmt(ml + pw * 0.35) << "\" y=\""
    << fmt(H - mb - ph * 0.25)
    << "\" font-family=\"sans-serif\" font-size=\"13\" "
       "fill=\"#1a5b1a\">convergent</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace pft
