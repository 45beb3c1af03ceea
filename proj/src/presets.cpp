#include "lpot/presets.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

namespace lpot {

double DensitySpec::operator()(double t) const {
  double v = a0;
  for (std::size_t m = 1; m < cos_coeffs.size(); ++m)
    v += cos_coeffs[m] * std::cos(static_cast<double>(m) * t);
  for (std::size_t m = 1; m < sin_coeffs.size(); ++m)
    v += sin_coeffs[m] * std::sin(static_cast<double>(m) * t);
  return v;
}

std::string DensitySpec::to_json() const {
  nlohmann::json j;
  j["a0"] = a0;
  j["cos"] = cos_coeffs;
  j["sin"] = sin_coeffs;
  return j.dump();
}

DensitySpec DensitySpec::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  DensitySpec d;
  if (j.contains("a0")) d.a0 = j.at("a0").get<double>();
  if (j.contains("cos")) d.cos_coeffs = j.at("cos").get<std::vector<double>>();
  if (j.contains("sin")) d.sin_coeffs = j.at("sin").get<std::vector<double>>();
  return d;
}

PerforationPreset perforation_preset(const std::string& name) {
  if (name == "concentric") {
    DensitySpec density;
    density.a0 = 1.0;
    density.cos_coeffs = {0.0, 0.0, 0.5, 0.0, 0.25, 0.0, 0.125};
    return PerforationPreset{name, Curve::circle(2.0), Curve::circle(1.0), 128, 128,
                             density};
  }
  if (name == "generic") {
    DensitySpec density;
    density.a0 = 1.0;
    density.cos_coeffs = {0.0, 0.5, 0.3, 0.25, 0.15, 1.0 / 6.0, 0.0};
    density.sin_coeffs = {0.0, 0.4, 1.0 / 3.0, 0.0, 0.2, 0.0, 1.0 / 7.0};
    return PerforationPreset{name, Curve::ellipse(2.0, 1.0),
                             Curve::circle(0.5, {0.2, 0.0}), 128, 128, density};
  }
  throw ConfigError("unknown perforation preset '" + name +
                    "' (available: concentric, generic)");
}

Curve named_curve(const std::string& name) {
  if (name == "circle") return Curve::circle(1.0);
  if (name == "ellipse") return Curve::ellipse(2.0, 1.0);
  if (name == "kite") return Curve::kite();
  throw ConfigError("unknown curve '" + name + "' (available: circle, ellipse, kite)");
}

}  // namespace lpot
