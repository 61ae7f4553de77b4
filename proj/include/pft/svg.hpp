#pragma once
#include <string>
#include <vector>

namespace pft {

struct curve_point {
  double gamma = 0, eta = 0;
};

// Hand-rolled deterministic SVG of a threshold curve over the (gamma, eta)
// plane: the region below the curve (convergent noise) is shaded, axes carry
// gamma and eta labels with tick marks.
std::string threshold_svg(const std::vector<curve_point>& curve,
                          double gamma_max, double eta_max,
                          const std::string& title);

}  // namespace pft
