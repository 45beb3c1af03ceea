#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lpot/studies.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lpot::ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw lpot::ConfigError("cannot open output file '" + path + "'");
  return out;
}

int cmd_verify(const std::string& config_path, const std::string& out_path) {
  lpot::VerifyConfig cfg;
  if (!config_path.empty()) cfg = lpot::parse_verify_config(read_file(config_path));
  const lpot::VerifyReport report = lpot::run_verify(cfg);
  if (out_path.empty()) {
    report.write(std::cout);
  } else {
    auto out = open_out(out_path);
    report.write(out);
  }
  return report.all_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_shape_study(const std::string& config_path, const std::string& preset,
                    const std::string& out_path) {
  lpot::ShapeStudyConfig cfg;
  if (!config_path.empty()) {
    cfg = lpot::parse_shape_config(read_file(config_path));
  } else if (!preset.empty()) {
    cfg.family = preset;
    (void)lpot::family_direction(cfg.family, cfg.reference);  // validate name
  }
  const lpot::ShapeStudyResult result = lpot::run_shape_study(cfg);
  if (out_path.empty()) {
    result.write_csv(std::cout);
  } else {
    auto out = open_out(out_path);
    result.write_csv(out);
  }
  return kExitOk;
}

int cmd_perforation_study(const std::string& config_path, const std::string& preset,
                          const std::string& out_path) {
  lpot::PerforationStudyConfig cfg =
      config_path.empty() ? lpot::PerforationStudyConfig::from_preset(
                                preset.empty() ? "generic" : preset)
                          : lpot::parse_perforation_config(read_file(config_path));
  const lpot::PerforationStudyResult result = lpot::run_perforation_study(cfg);
  if (out_path.empty()) {
    result.write_csv(std::cout);
  } else {
    auto out = open_out(out_path);
    result.write_csv(out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laplace layer-potential operators, shape pull-backs, and "
               "small-hole expansions"};
  app.require_subcommand(1);

  std::string config_path, out_path, preset;

  CLI::App* verify = app.add_subcommand("verify", "run the operator identity suite");
  verify->add_option("--config", config_path, "JSON config path");
  verify->add_option("--out", out_path, "report output path (default stdout)");

  CLI::App* shape = app.add_subcommand("shape-study", "boundary-perturbation smoothness study");
  shape->add_option("--config", config_path, "JSON config path");
  shape->add_option("--preset", preset, "perturbation family: dilation or cos2");
  shape->add_option("--out", out_path, "CSV output path (default stdout)");

  CLI::App* perf = app.add_subcommand("perforation-study",
                                      "hole-expansion truncation and equivalence study");
  perf->add_option("--config", config_path, "JSON config path");
  perf->add_option("--preset", preset, "geometry preset: concentric or generic");
  perf->add_option("--out", out_path, "CSV output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(config_path, out_path);
    if (shape->parsed()) return cmd_shape_study(config_path, preset, out_path);
    if (perf->parsed()) return cmd_perforation_study(config_path, preset, out_path);
  } catch (const lpot::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const lpot::GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitConfigError;
}
