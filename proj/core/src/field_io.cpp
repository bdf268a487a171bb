#include "scatdesign/field_io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <ostream>
#include <stdexcept>

namespace scatdesign::io {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_real(double v) {
  if (v == 0.0) return "0";  // folds -0 into 0
  return fmt::format("{:.12e}", v);
}

void write_ball_field(std::ostream& out, const BallField& field, const HeaderEntries& extra) {
  const auto& g = *field.grid;
  out << "# grid n_radial = " << g.radial->size() << '\n';
  out << "# grid sphere_degree = " << g.angular->degree << '\n';
  out << "# grid R = " << format_real(g.R()) << '\n';
  out << "# grid nodes = " << g.size() << '\n';
  for (const auto& [key, value] : extra) out << "# " << key << " = " << value << '\n';
  out << "# columns: x y z re im\n";
  for (std::size_t n = 0; n < g.size(); ++n) {
    const Vec3& p = g.nodes[n];
    out << format_real(p[0]) << ' ' << format_real(p[1]) << ' ' << format_real(p[2]) << ' '
        << format_real(field.values[n].real()) << ' ' << format_real(field.values[n].imag()) << '\n';
  }
}

void write_ball_field(const std::filesystem::path& path, const BallField& field, const HeaderEntries& extra) {
  auto out = open_for_write(path);
  write_ball_field(out, field, extra);
}

void write_amplitude_table(std::ostream& out, const SphereSamples& A, const SphereSamples& f, double residual) {
  if (!A.rule->compatible(*f.rule)) throw RuleMismatch("write_amplitude_table: rules differ");
  out << "# columns: theta phi reA imA reF imF\n";
  for (std::size_t j = 0; j < A.size(); ++j) {
    const auto& dir = A.rule->nodes[j];
    out << format_real(dir.theta()) << ' ' << format_real(dir.phi()) << ' ' << format_real(A.values[j].real()) << ' '
        << format_real(A.values[j].imag()) << ' ' << format_real(f.values[j].real()) << ' '
        << format_real(f.values[j].imag()) << '\n';
  }
  out << "# residual_norm = " << format_real(residual) << '\n';
}

void write_amplitude_table(const std::filesystem::path& path, const SphereSamples& A, const SphereSamples& f,
                           double residual) {
  auto out = open_for_write(path);
  write_amplitude_table(out, A, f, residual);
}

void write_zero_set_summary(std::ostream& out, const reconstruction::ZeroSetReport& report) {
  out << "delta = " << format_real(report.delta) << '\n';
  out << "total_nodes = " << report.total_nodes << '\n';
  out << "excised_nodes = " << report.nodes_in_N.size() << '\n';
  out << "fraction = " << format_real(report.fraction) << '\n';
  out << "min_abs_u = " << format_real(report.min_abs_u) << '\n';
  out << "excised_node_indices =";
  for (auto n : report.nodes_in_N) out << ' ' << n;
  out << '\n';
}

}  // namespace scatdesign::io
