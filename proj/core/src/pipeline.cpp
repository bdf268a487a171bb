#include "scatdesign/pipeline.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "scatdesign/field_io.hpp"
#include "scatdesign/synthesis.hpp"

namespace scatdesign {

using io::format_real;

ExitCode ReconstructionReport::exit_code() const {
  if (failed_stage == "forward" || (failed_stage.empty() && !solver.converged)) return ExitCode::solver_failure;
  return pass ? ExitCode::pass : ExitCode::residual_fail;
}

TargetFunction make_target(const ScatteringConfig& cfg, std::shared_ptr<const SphereRule> rule) {
  std::optional<sht::AngularCoefficients> coeffs;
  if (cfg.target.rfind("coeffs:", 0) == 0) {
    coeffs = sht::read_coefficients(std::filesystem::path(cfg.target.substr(7)));
  } else {
    const std::string name = cfg.target.substr(7);
    if (name == "Y00") {
      coeffs = sht::AngularCoefficients(0);
      coeffs->at(0, 0) = 1.0;
    } else if (name == "Y21") {
      coeffs = sht::AngularCoefficients(2);
      coeffs->at(2, 1) = 1.0;
    } else if (name == "zero") {
      coeffs = sht::AngularCoefficients(0);
    } else if (name == "gaussian-cap") {
      // Smooth cap centred on +z; not band-limited, so truncation matters.
      return {sample_on(rule, [](const specfun::UnitVector& b) {
                return cplx(std::exp(2.0 * (std::cos(b.theta()) - 1.0)), 0.0);
              }),
              std::nullopt};
    } else {
      throw std::invalid_argument("unknown target preset '" + name + "'");
    }
  }
  return {sht::synthesize(*coeffs, std::move(rule)), coeffs};
}

namespace {

template <typename F>
bool run_stage(ReconstructionReport& report, const char* name, F&& body) {
  try {
    body();
    return true;
  } catch (const std::exception& e) {
    report.failed_stage = name;
    report.message = e.what();
    return false;
  }
}

}  // namespace

PipelineResult run_pipeline(const ScatteringConfig& cfg) {
  validate_config(cfg);
  PipelineResult result;
  result.config = cfg;
  auto& report = result.report;
  auto& art = result.artifacts;
  report.epsilon = cfg.epsilon;

  std::shared_ptr<const SphereRule> rule;
  TargetFunction target;
  if (!run_stage(report, "target", [&] {
        rule = make_sphere_rule(cfg.sphere_degree);
        target = make_target(cfg, rule);
        art.target = target.samples;
      })) {
    return result;
  }

  sht::AngularCoefficients f_L;
  if (!run_stage(report, "truncate", [&] {
        const auto choice = sht::choose_L(target.samples, cfg.epsilon, cfg.L_max);
        report.L = choice.L;
        report.target_norm = choice.total_norm;
        report.tail_norm = choice.tail_norm;
        report.tail_ok = choice.attained;
        f_L = sht::analyze(target.samples, choice.L);
        art.target_coefficients = f_L;
        if (cfg.verify_tail) {
          const auto fine = make_sphere_rule(cfg.sphere_degree + 8);
          const auto fine_target = make_target(cfg, fine);
          const SphereSamples fine_fL = sht::synthesize(f_L, fine);
          SphereSamples tail = fine_target.samples;
          for (std::size_t j = 0; j < tail.size(); ++j) tail.values[j] -= fine_fL.values[j];
          report.tail_norm_verified = norm_s2(tail);
        }
      })) {
    return result;
  }

  BallField h;
  if (!run_stage(report, "synthesis", [&] {
        auto radial = std::make_shared<const RadialRule>(make_radial_rule(cfg.n_radial, cfg.R));
        art.grid = make_ball_grid(radial, rule);
        const auto profiles = synthesis::radial_profiles(f_L, cfg.k, radial);
        h = synthesis::assemble_h(profiles, art.grid);
        art.h = h;
        report.h_norm = h.norm_l2();
        report.h_max = h.max_abs();
        const auto A_h = synthesis::amplitude_from_h(h, cfg.k, rule);
        report.synthesis_residual = forward::residual_norm(A_h, sht::synthesize(f_L, rule));
      })) {
    return result;
  }

  std::optional<VolumeOperator> op;
  reconstruction::Regularized reg;
  if (!run_stage(report, "regularize", [&] {
        op.emplace(art.grid, cfg.k);
        report.delta_auto = !cfg.delta.has_value();
        report.delta = cfg.delta.value_or(reconstruction::default_delta(h));
        const BallField u = reconstruction::scattering_field_from_h(h, *op, cfg.alpha);
        report.min_abs_u = reconstruction::zero_set(u, report.delta).min_abs_u;
        reg = reconstruction::regularize(h, *op, cfg.alpha, report.delta);
        art.u = reg.u_delta;
        art.q = reg.q_delta;
        art.zero_set = reg.report;
        report.zero_set_fraction = reg.report.fraction;
        report.excised_nodes = reg.report.nodes_in_N.size();
        report.min_abs_u_delta = reg.min_abs_u_delta;
        report.tube_integral = reg.tube_integral;
        report.u_delta_lower_bound = reg.lower_bound;
        report.reclassified = reg.reclassified;
        BallField diff = h;
        for (std::size_t n = 0; n < diff.size(); ++n) diff.values[n] -= reg.h_delta.values[n];
        report.h_change = diff.norm_l2();
        const auto im = reconstruction::imaginary_part_diagnostic(reg.q_delta);
        report.max_im_q = im.max_imag;
        report.im_q_nonpositive = im.nonpositive;
        std::vector<char> kept(h.size(), 1);
        for (auto n : reg.report.nodes_in_N) kept[n] = 0;
        report.closure_residual = forward::lippmann_schwinger_residual(reg.q_delta, reg.u_delta, *op, cfg.alpha, kept);
      })) {
    return result;
  }

  const GmresOptions solver_options{cfg.solver_tol, cfg.max_iterations};
  forward::ScatteringSolution solution;
  if (!run_stage(report, "forward", [&] {
        solution = forward::solve_scattering(reg.q_delta, *op, cfg.alpha, solver_options);
        report.solver = solution.stats;
        art.u_solver = solution.u;
      })) {
    return result;
  }

  run_stage(report, "verify", [&] {
    const auto A = forward::amplitude_from_q(reg.q_delta, solution.u, cfg.k, rule);
    art.amplitude = A;
    report.final_residual = forward::residual_norm(A, target.samples);
    report.pass = solution.stats.converged && report.final_residual < cfg.epsilon;
    if (!solution.stats.converged) {
      report.message = fmt::format("forward solver stopped after {} iterations at relative residual {}",
                                   solution.stats.iterations, format_real(solution.stats.final_residual));
    } else if (!report.pass) {
      report.message = report.tail_ok
                           ? "residual above epsilon: increase resolution (n_radial, sphere_degree) or lower delta"
                           : "truncation tail above epsilon/2: increase resolution (L_max, sphere_degree)";
    }
  });

  for (double d : cfg.delta_sweep) {
    DeltaSweepRow row;
    row.delta = d;
    const bool ok = run_stage(report, "delta-sweep", [&] {
      const auto r = reconstruction::regularize(h, *op, cfg.alpha, d);
      row.fraction = r.report.fraction;
      BallField diff = h;
      for (std::size_t n = 0; n < diff.size(); ++n) diff.values[n] -= r.h_delta.values[n];
      row.h_change = diff.norm_l2();
      const auto s = forward::solve_scattering(r.q_delta, *op, cfg.alpha, solver_options);
      row.iterations = s.stats.iterations;
      row.converged = s.stats.converged;
      row.residual = forward::residual_norm(forward::amplitude_from_q(r.q_delta, s.u, cfg.k, rule), target.samples);
    });
    if (!ok) {
      // A sweep entry that cannot be regularized is recorded, not fatal.
      report.failed_stage.clear();
      row.residual = std::numeric_limits<double>::quiet_NaN();
    }
    report.sweep.push_back(row);
  }
  return result;
}

void write_summary(std::ostream& out, const PipelineResult& result) {
  const auto& r = result.report;
  const auto& c = result.config;
  const Vec3 a = c.alpha.cartesian();
  out << "# reconstruction summary\n";
  out << "k = " << format_real(c.k) << '\n';
  out << "alpha = " << format_real(a[0]) << ", " << format_real(a[1]) << ", " << format_real(a[2]) << '\n';
  out << "R = " << format_real(c.R) << '\n';
  out << "epsilon = " << format_real(c.epsilon) << '\n';
  out << "target = " << c.target << '\n';
  out << "n_radial = " << c.n_radial << '\n';
  out << "sphere_degree = " << c.sphere_degree << '\n';
  out << "L_max = " << c.L_max << '\n';
  out << "L = " << r.L << '\n';
  out << "target_norm = " << format_real(r.target_norm) << '\n';
  out << "tail_norm = " << format_real(r.tail_norm) << '\n';
  out << "tail_below_half_epsilon = " << (r.tail_ok ? "true" : "false") << '\n';
  if (r.tail_norm_verified) out << "tail_norm_verified = " << format_real(*r.tail_norm_verified) << '\n';
  out << "synthesis_residual = " << format_real(r.synthesis_residual) << '\n';
  out << "h_norm = " << format_real(r.h_norm) << '\n';
  out << "h_max = " << format_real(r.h_max) << '\n';
  out << "delta = " << format_real(r.delta) << '\n';
  out << "delta_auto = " << (r.delta_auto ? "true" : "false") << '\n';
  out << "min_abs_u = " << format_real(r.min_abs_u) << '\n';
  out << "zero_set_fraction = " << format_real(r.zero_set_fraction) << '\n';
  out << "excised_nodes = " << r.excised_nodes << '\n';
  out << "reclassified_nodes = " << r.reclassified << '\n';
  out << "tube_integral = " << format_real(r.tube_integral) << '\n';
  out << "u_delta_lower_bound = " << format_real(r.u_delta_lower_bound) << '\n';
  out << "min_abs_u_delta = " << format_real(r.min_abs_u_delta) << '\n';
  out << "h_change = " << format_real(r.h_change) << '\n';
  out << "max_im_q = " << format_real(r.max_im_q) << '\n';
  out << "im_q_nonpositive = " << (r.im_q_nonpositive ? "true" : "false") << '\n';
  out << "closure_residual = " << format_real(r.closure_residual) << '\n';
  out << "solver_iterations = " << r.solver.iterations << '\n';
  out << "solver_residual = " << format_real(r.solver.final_residual) << '\n';
  out << "solver_converged = " << (r.solver.converged ? "true" : "false") << '\n';
  out << "final_residual = " << format_real(r.final_residual) << '\n';
  out << "pass = " << (r.pass ? "true" : "false") << '\n';
  if (!r.failed_stage.empty()) out << "failed_stage = " << r.failed_stage << '\n';
  if (!r.message.empty()) out << "message = " << r.message << '\n';
}

void export_report(const PipelineResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto& r = result.report;
  const auto& a = result.artifacts;
  const auto& c = result.config;
  auto open = [&](const char* name) {
    std::ofstream out(dir / name);
    if (!out) throw std::runtime_error("cannot open " + (dir / name).string() + " for writing");
    return out;
  };
  {
    auto out = open("summary.txt");
    write_summary(out, result);
  }
  if (a.target_coefficients) {
    auto out = open("target_coefficients.txt");
    sht::write_coefficients(out, *a.target_coefficients);
  }
  if (a.amplitude && a.target) {
    auto out = open("amplitude.txt");
    io::write_amplitude_table(out, *a.amplitude, *a.target, r.final_residual);
  }
  if (a.zero_set) {
    auto out = open("zero_set.txt");
    io::write_zero_set_summary(out, *a.zero_set);
  }
  if (!r.sweep.empty()) {
    auto out = open("delta_sweep.txt");
    out << "# columns: delta fraction h_change residual iterations converged\n";
    for (const auto& row : r.sweep) {
      out << format_real(row.delta) << ' ' << format_real(row.fraction) << ' ' << format_real(row.h_change) << ' '
          << format_real(row.residual) << ' ' << row.iterations << ' ' << (row.converged ? 1 : 0) << '\n';
    }
  }
  if (c.export_fields) {
    const Vec3 al = c.alpha.cartesian();
    const io::HeaderEntries header{
        {"k", format_real(c.k)},
        {"alpha", format_real(al[0]) + ", " + format_real(al[1]) + ", " + format_real(al[2])},
        {"R", format_real(c.R)},
        {"delta", format_real(r.delta)}};
    if (a.h) io::write_ball_field(dir / "h.txt", *a.h, header);
    if (a.u) io::write_ball_field(dir / "u.txt", *a.u, header);
    if (a.q) io::write_ball_field(dir / "q.txt", *a.q, header);
    if (a.u_solver) io::write_ball_field(dir / "u_solver.txt", *a.u_solver, header);
    if (a.q && c.mollify_width > 0.0) {
      auto smooth_header = header;
      smooth_header.emplace_back("mollify_width", format_real(c.mollify_width));
      io::write_ball_field(dir / "q_mollified.txt", reconstruction::mollify(*a.q, c.mollify_width), smooth_header);
    }
  }
}

}  // namespace scatdesign
