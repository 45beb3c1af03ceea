#pragma once

#include <string>
#include <vector>

#include "lpot/curve.hpp"

namespace lpot {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite trigonometric table of a boundary density,
/// a0 + sum_m cos[m] cos(mt) + sin[m] sin(mt).
struct DensitySpec {
  double a0 = 1.0;
  std::vector<double> cos_coeffs;  // index m, entry 0 unused
  std::vector<double> sin_coeffs;

  double operator()(double t) const;
  std::string to_json() const;
  static DensitySpec from_json(const std::string& text);
};

/// Named two-boundary study geometry with its test density.
struct PerforationPreset {
  std::string name;
  Curve outer;
  Curve inner;
  int n_outer = 128;
  int n_inner = 128;
  DensitySpec density;
};

/// Shipped presets: "concentric" (radius-2 and radius-1 circles, even test
/// density so the central symmetry of the hole is visible in the series),
/// "generic" (ellipse outer, off-center inner circle, parity-breaking test
/// density).
PerforationPreset perforation_preset(const std::string& name);

/// Single test curves by name: "circle", "ellipse", "kite".
Curve named_curve(const std::string& name);

}  // namespace lpot
