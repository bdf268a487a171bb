#include "scatdesign/sht.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace scatdesign::sht {

using specfun::HarmonicIndex;

AngularCoefficients::AngularCoefficients(int degree) : L(degree) {
  if (degree < 0) throw std::invalid_argument("AngularCoefficients: negative degree");
  coeffs.assign(static_cast<std::size_t>(HarmonicIndex::count(degree)), 0.0);
}

double AngularCoefficients::energy() const {
  double e = 0.0;
  for (const auto& c : coeffs) e += std::norm(c);
  return e;
}

AngularCoefficients AngularCoefficients::truncated(int new_L) const {
  AngularCoefficients out(new_L);
  const std::size_t n = std::min(out.coeffs.size(), coeffs.size());
  for (std::size_t i = 0; i < n; ++i) out.coeffs[i] = coeffs[i];
  return out;
}

AngularCoefficients analyze(const SphereSamples& f, int L) {
  if (L < 0) throw std::invalid_argument("analyze: negative degree");
  if (!f.rule || f.rule->degree < L) {
    throw std::invalid_argument(fmt::format(
        "analyze: sphere rule of degree {} cannot resolve L = {}", f.rule ? f.rule->degree : -1, L));
  }
  AngularCoefficients out(L);
  const auto& rule = *f.rule;
  std::vector<cplx> y(out.coeffs.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    specfun::sph_harm_all(L, rule.nodes[j], y);
    const cplx fw = rule.weights[j] * f.values[j];
    for (std::size_t i = 0; i < y.size(); ++i) out.coeffs[i] += fw * std::conj(y[i]);
  }
  return out;
}

SphereSamples synthesize(const AngularCoefficients& c, std::shared_ptr<const SphereRule> rule) {
  CVector values(rule->size(), 0.0);
  std::vector<cplx> y(c.coeffs.size());
  for (std::size_t j = 0; j < rule->size(); ++j) {
    specfun::sph_harm_all(c.L, rule->nodes[j], y);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) sum += c.coeffs[i] * y[i];
    values[j] = sum;
  }
  return {std::move(rule), std::move(values)};
}

TruncationChoice choose_L(const SphereSamples& f, double eps, int L_max) {
  if (!(eps > 0.0)) throw std::invalid_argument("choose_L: eps must be > 0");
  if (L_max < 0) throw std::invalid_argument("choose_L: L_max must be >= 0");
  const AngularCoefficients all = analyze(f, L_max);
  TruncationChoice choice;
  choice.total_norm = norm_s2(f);
  for (int L = 0; L <= L_max; ++L) {
    // Direct residual avoids the cancellation in sqrt(||f||^2 - ||f_L||^2).
    const SphereSamples fL = synthesize(all.truncated(L), f.rule);
    SphereSamples r = f;
    for (std::size_t j = 0; j < r.size(); ++j) r.values[j] -= fL.values[j];
    const double tail = norm_s2(r);
    choice.L = L;
    choice.tail_norm = tail;
    if (tail < 0.5 * eps) {
      choice.attained = true;
      return choice;
    }
  }
  choice.attained = false;
  return choice;
}

void write_coefficients(std::ostream& out, const AngularCoefficients& c) {
  out << "# L=" << c.L << '\n';
  for (int l = 0; l <= c.L; ++l) {
    for (int m = -l; m <= l; ++m) {
      const cplx v = c.at(l, m);
      out << fmt::format("{} {} {:.17g} {:.17g}\n", l, m, v.real(), v.imag());
    }
  }
}

void write_coefficients(const std::filesystem::path& path, const AngularCoefficients& c) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_coefficients(out, c);
}

AngularCoefficients read_coefficients(std::istream& in) {
  std::string line;
  int L = -1;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.rfind("# L=", 0) == 0) {
      L = std::stoi(line.substr(4));
      break;
    }
    throw std::invalid_argument(fmt::format("coefficients line {}: expected header '# L=<int>'", line_no));
  }
  if (L < 0) throw std::invalid_argument("coefficients: missing or negative '# L=' header");
  AngularCoefficients c(L);
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    int l = 0, m = 0;
    double re = 0.0, im = 0.0;
    if (!(ls >> l >> m >> re >> im)) {
      throw std::invalid_argument(fmt::format("coefficients line {}: expected 'l m re im'", line_no));
    }
    if (l < 0 || l > L || std::abs(m) > l) {
      throw std::invalid_argument(fmt::format("coefficients line {}: index ({}, {}) outside L={}", line_no, l, m, L));
    }
    c.at(l, m) = {re, im};
  }
  return c;
}

AngularCoefficients read_coefficients(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coefficient file " + path.string());
  return read_coefficients(in);
}

}  // namespace scatdesign::sht
