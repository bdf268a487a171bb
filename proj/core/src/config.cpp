#include "scatdesign/config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace scatdesign {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string join_issues(const std::vector<std::string>& issues) {
  std::string msg = "invalid configuration:";
  for (const auto& i : issues) msg += "\n  " + i;
  return msg;
}

std::optional<double> to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<int> to_int(const std::string& s) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::optional<bool> to_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  return std::nullopt;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

void check_invariants(const ScatteringConfig& c, std::vector<std::string>& issues) {
  if (!(c.k > 0.0)) issues.push_back(fmt::format("k: must be > 0 (got {})", c.k));
  if (!(c.R > 0.0)) issues.push_back(fmt::format("R: must be > 0 (got {})", c.R));
  if (!(c.epsilon > 0.0)) issues.push_back(fmt::format("epsilon: must be > 0 (got {})", c.epsilon));
  if (c.L_max < 0 || c.L_max > specfun::kMaxDegree / 2) {
    issues.push_back(fmt::format("L_max: must lie in [0, {}] (got {})", specfun::kMaxDegree / 2, c.L_max));
  }
  if (c.delta && !(*c.delta > 0.0)) issues.push_back(fmt::format("delta: must be > 0 or auto (got {})", *c.delta));
  if (c.n_radial < 1) issues.push_back(fmt::format("n_radial: must be >= 1 (got {})", c.n_radial));
  if (c.sphere_degree < 2 * c.L_max) {
    issues.push_back(fmt::format("sphere_degree: must be >= 2 * L_max = {} (got {})", 2 * c.L_max, c.sphere_degree));
  }
  if (!(c.solver_tol > 0.0)) issues.push_back(fmt::format("solver_tol: must be > 0 (got {})", c.solver_tol));
  if (c.max_iterations < 1) issues.push_back(fmt::format("max_iterations: must be >= 1 (got {})", c.max_iterations));
  if (c.mollify_width < 0.0) issues.push_back("mollify_width: must be >= 0");
  for (double d : c.delta_sweep) {
    if (!(d > 0.0)) issues.push_back(fmt::format("delta_sweep: entries must be > 0 (got {})", d));
  }
  const bool preset = c.target.rfind("preset:", 0) == 0;
  const bool coeffs = c.target.rfind("coeffs:", 0) == 0;
  if (!preset && !coeffs) {
    issues.push_back("target: expected 'preset:<Y00|Y21|gaussian-cap>' or 'coeffs:<path>' (got '" + c.target + "')");
  } else if (preset) {
    const std::string name = c.target.substr(7);
    if (name != "Y00" && name != "Y21" && name != "gaussian-cap" && name != "zero") {
      issues.push_back("target: unknown preset '" + name + "'");
    }
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

std::vector<double> parse_delta_list(const std::string& text) {
  std::vector<double> out;
  std::vector<std::string> issues;
  for (const auto& part : split(text, ',')) {
    const auto v = to_double(part);
    if (!v || !(*v > 0.0)) {
      issues.push_back("delta list: '" + part + "' is not a positive number");
    } else {
      out.push_back(*v);
    }
  }
  if (!issues.empty()) throw ConfigError(issues);
  return out;
}

ScatteringConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  ScatteringConfig cfg;
  std::vector<std::string> issues;
  std::map<std::string, std::size_t> seen;
  bool sphere_degree_given = false;
  bool k_given = false, R_given = false, target_given = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      issues.push_back(fmt::format("line {}: expected 'key = value'", line_no));
      continue;
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (auto it = seen.find(key); it != seen.end()) {
      issues.push_back(fmt::format("line {}: {}: duplicate key (first set on line {})", line_no, key, it->second));
      continue;
    }
    seen[key] = line_no;
    auto bad = [&](const char* what) {
      issues.push_back(fmt::format("line {}: {}: {} (got '{}')", line_no, key, what, value));
    };
    auto real = [&](double& dst) {
      if (auto v = to_double(value)) dst = *v; else bad("expected a real number");
    };
    auto integer = [&](int& dst) {
      if (auto v = to_int(value)) dst = *v; else bad("expected an integer");
    };
    auto flag = [&](bool& dst) {
      if (auto v = to_bool(value)) dst = *v; else bad("expected true or false");
    };

    if (key == "k") {
      real(cfg.k);
      k_given = true;
    } else if (key == "R") {
      real(cfg.R);
      R_given = true;
    } else if (key == "epsilon") {
      real(cfg.epsilon);
    } else if (key == "L_max") {
      integer(cfg.L_max);
    } else if (key == "n_radial") {
      integer(cfg.n_radial);
    } else if (key == "sphere_degree") {
      integer(cfg.sphere_degree);
      sphere_degree_given = true;
    } else if (key == "solver_tol") {
      real(cfg.solver_tol);
    } else if (key == "max_iterations") {
      integer(cfg.max_iterations);
    } else if (key == "delta") {
      if (value == "auto") {
        cfg.delta.reset();
      } else if (auto v = to_double(value)) {
        cfg.delta = *v;
      } else {
        bad("expected a positive real or 'auto'");
      }
    } else if (key == "alpha") {
      const auto parts = split(value, ',');
      std::array<double, 3> v{};
      bool ok = parts.size() == 3;
      for (std::size_t i = 0; ok && i < 3; ++i) {
        if (auto d = to_double(parts[i])) v[i] = *d; else ok = false;
      }
      if (!ok) {
        bad("expected a comma-separated triple");
      } else if (std::abs(norm(v) - 1.0) > 1e-6) {
        bad("must be a unit vector");
      } else {
        cfg.alpha = specfun::UnitVector::from_cartesian(v);
      }
    } else if (key == "target") {
      cfg.target = value;
      target_given = true;
      if (value.rfind("coeffs:", 0) == 0) {
        std::filesystem::path p = value.substr(7);
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        cfg.target = "coeffs:" + p.string();
      }
    } else if (key == "output_dir") {
      std::filesystem::path p = value;
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      cfg.output_dir = p;
    } else if (key == "delta_sweep") {
      try {
        cfg.delta_sweep = parse_delta_list(value);
      } catch (const ConfigError&) {
        bad("expected a comma-separated list of positive reals");
      }
    } else if (key == "verify_tail") {
      flag(cfg.verify_tail);
    } else if (key == "export_fields") {
      flag(cfg.export_fields);
    } else if (key == "mollify_width") {
      real(cfg.mollify_width);
    } else {
      issues.push_back(fmt::format("line {}: {}: unknown key", line_no, key));
    }
  }
  if (!k_given) issues.push_back("k: required key missing");
  if (!R_given) issues.push_back("R: required key missing");
  if (!target_given) issues.push_back("target: required key missing");
  if (!sphere_degree_given) cfg.sphere_degree = 2 * cfg.L_max + 4;
  check_invariants(cfg, issues);
  if (!issues.empty()) throw ConfigError(issues);
  return cfg;
}

ScatteringConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file " + path.string()});
  return parse_config(in, path.parent_path());
}

void validate_config(const ScatteringConfig& cfg) {
  std::vector<std::string> issues;
  check_invariants(cfg, issues);
  if (!issues.empty()) throw ConfigError(issues);
}

}  // namespace scatdesign
