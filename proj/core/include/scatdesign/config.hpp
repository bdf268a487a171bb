#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scatdesign/specfun.hpp"

namespace scatdesign {

/// Validation failure carrying every problem found, one message per entry.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  [[nodiscard]] const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

struct ScatteringConfig {
  double k = 1.0;
  specfun::UnitVector alpha{0.0, 0.0};  // +z
  double R = 1.0;
  double epsilon = 0.05;
  int L_max = 8;
  std::optional<double> delta;  // nullopt: automatic rule
  int n_radial = 24;
  int sphere_degree = 2 * 8 + 4;
  double solver_tol = 1e-8;
  int max_iterations = 500;
  std::string target = "preset:Y00";  // preset:<name> or coeffs:<path>
  std::filesystem::path output_dir = "out";
  std::vector<double> delta_sweep;
  bool verify_tail = false;
  bool export_fields = false;
  double mollify_width = 0.0;  // > 0 adds a smoothed q_delta export
};

/// Parses "key = value" lines ('#' starts a comment, vectors as "x, y, z").
/// Relative paths are resolved against base_dir. Throws ConfigError.
ScatteringConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ScatteringConfig load_config(const std::filesystem::path& path);

/// Re-checks invariants of an already constructed config; throws ConfigError.
void validate_config(const ScatteringConfig& cfg);

/// Parses "d1,d2,..." into positive reals; throws ConfigError.
std::vector<double> parse_delta_list(const std::string& text);

}  // namespace scatdesign
