#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>

#include "scatdesign/quadrature.hpp"
#include "scatdesign/reconstruction.hpp"

namespace scatdesign::io {

using HeaderEntries = std::vector<std::pair<std::string, std::string>>;

/// "# key = value" header lines (grid descriptor first), then "x y z re im" rows.
void write_ball_field(std::ostream& out, const BallField& field, const HeaderEntries& extra = {});
void write_ball_field(const std::filesystem::path& path, const BallField& field, const HeaderEntries& extra = {});

/// Rows "theta phi reA imA reF imF", then "# residual_norm = <value>".
void write_amplitude_table(std::ostream& out, const SphereSamples& A, const SphereSamples& f, double residual);
void write_amplitude_table(const std::filesystem::path& path, const SphereSamples& A, const SphereSamples& f,
                           double residual);

void write_zero_set_summary(std::ostream& out, const reconstruction::ZeroSetReport& report);

/// Round-trip formatting used by every data file.
std::string format_real(double v);

}  // namespace scatdesign::io
