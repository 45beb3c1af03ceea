#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lpot/perforated.hpp"
#include "lpot/presets.hpp"
#include "lpot/shape.hpp"

namespace lpot {

// ---------------------------------------------------------------------------
// Operator identity suite
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerifyConfig {
  int n_spectra = 256;   // circle eigenvalue checks
  int n_boundary = 128;  // jump / adjointness / Gauss checks
  unsigned seed = 20250810;
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  void write(std::ostream& os) const;
};

/// Jump formulas, adjointness, Gauss identity, circle spectra, potential
/// harmonicity. Randomized densities use the seed recorded in the report.
VerifyReport run_verify(const VerifyConfig& config);

// ---------------------------------------------------------------------------
// Shape study
// ---------------------------------------------------------------------------

struct ShapeStudyConfig {
  OpKind kind = OpKind::V;
  std::string family = "dilation";  // "dilation" | "cos2" | "custom"
  Curve reference = Curve::circle(1.0);
  /// Image table of the base map; identity on the reference when absent.
  std::optional<TrigTable> base_image;
  std::optional<TrigTable> custom_direction;
  std::vector<double> t_list{1e-2, 5e-3, 2.5e-3};
  std::vector<double> taylor_t_list{0.2, 0.1, 0.05};
  std::vector<int> calderon_sweep{64, 128, 256};
  int N = 128;
};

struct ShapeStudyResult {
  ShapeStudyConfig config;
  ShapeStudyReport fd;
  std::vector<std::pair<int, double>> calderon_rows;  // (N, residual)

  void write_csv(std::ostream& os) const;
};

/// Direction table of a named perturbation family on a reference curve:
/// "dilation" is the curve itself, "cos2" the radial cos(2t) modulation.
TrigTable family_direction(const std::string& family, const Curve& reference);

ShapeStudyResult run_shape_study(const ShapeStudyConfig& config);

// ---------------------------------------------------------------------------
// Perforation study
// ---------------------------------------------------------------------------

struct PerforationStudyConfig {
  std::string preset_name = "generic";
  Curve outer = Curve::ellipse(2.0, 1.0);
  Curve inner = Curve::circle(0.5, {0.2, 0.0});
  int n_outer = 128;
  int n_inner = 128;
  DensitySpec density;
  std::vector<OpKind> kinds{OpKind::V, OpKind::K, OpKind::Kprime, OpKind::W};
  std::vector<Corner> corners{Corner::oi, Corner::io};
  std::vector<int> K_list{0, 1, 2, 3};
  std::vector<double> eps_list{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> equivalence_eps{0.1, -0.1, 0.05, -0.05};

  static PerforationStudyConfig from_preset(const std::string& name);
};

struct EquivalenceRow {
  OpKind kind;
  double eps = 0.0;
  double max_abs_diff = 0.0;
};

struct PerforationStudyResult {
  PerforationStudyConfig config;
  std::vector<TruncationRow> rows;
  std::vector<EquivalenceRow> equivalence;

  void write_csv(std::ostream& os) const;
};

/// Truncation-order study over all configured (kind, corner) families plus
/// block/direct equivalence at the configured eps values. Cells run
/// concurrently; the row order is fixed by the configuration.
PerforationStudyResult run_perforation_study(const PerforationStudyConfig& config);

// ---------------------------------------------------------------------------
// JSON configs
// ---------------------------------------------------------------------------

VerifyConfig parse_verify_config(const std::string& json_text);
ShapeStudyConfig parse_shape_config(const std::string& json_text);
PerforationStudyConfig parse_perforation_config(const std::string& json_text);

OpKind parse_kind(const std::string& s);

}  // namespace lpot
