// Command-line driver for the reconstruction pipeline.

#include <CLI11.hpp>

#include <iostream>

#include "scatdesign/config.hpp"
#include "scatdesign/pipeline.hpp"

int main(int argc, char** argv) {
  using namespace scatdesign;
  CLI::App app{"Build a potential on a ball whose scattering amplitude approximates a target"};
  std::string config_path;
  std::string sweep;
  bool verify_tail = false;
  bool export_fields = false;
  app.add_option("--config", config_path, "configuration file (key = value lines)")->required();
  app.add_option("--delta-sweep", sweep, "comma-separated delta values to sweep");
  app.add_flag("--verify-tail", verify_tail, "re-check the truncation tail on a finer sphere rule");
  app.add_flag("--export-fields", export_fields, "write h, u and q field tables");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::config_error);
  }

  ScatteringConfig cfg;
  try {
    cfg = load_config(config_path);
    if (!sweep.empty()) cfg.delta_sweep = parse_delta_list(sweep);
    cfg.verify_tail = cfg.verify_tail || verify_tail;
    cfg.export_fields = cfg.export_fields || export_fields;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return static_cast<int>(ExitCode::config_error);
  }

  const PipelineResult result = run_pipeline(cfg);
  try {
    export_report(result, cfg.output_dir);
  } catch (const std::exception& e) {
    std::cerr << "export failed: " << e.what() << '\n';
  }
  write_summary(std::cout, result);
  if (!result.report.failed_stage.empty()) {
    std::cerr << "stage '" << result.report.failed_stage << "' failed: " << result.report.message << '\n';
  }
  return static_cast<int>(result.report.exit_code());
}
