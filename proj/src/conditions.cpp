#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cmoment/error.hpp"
#include "cmoment/solver.hpp"

namespace cmoment {

namespace {

// z = e^{i pi/4} w: c zbar^i z^j becomes c e^{i pi (j-i)/4} wbar^i w^j.
BivarPoly to_rotated_frame(const BivarPoly& p) {
  BivarPoly::Terms terms;
  for (const auto& [m, c] : p.terms()) {
    terms[m] = c * std::polar(1.0, std::numbers::pi * (m.z - m.zbar) / 4.0);
  }
  return BivarPoly(std::move(terms));
}

ConditionResidual condition(std::string name, Complex value, std::initializer_list<Complex> involved,
                            double tol) {
  double largest = 0.0;
  for (const Complex& g : involved) largest = std::max(largest, std::abs(g));
  const double residual = std::abs(value) / (1.0 + largest);
  return {std::move(name), residual, residual <= tol};
}

std::vector<ConditionResidual> direct_entries(const MomentSource& t, CubicRegion region, double a,
                                              double b, double tol) {
  auto g = [&](int i, int j) { return t.moment(i, j); };
  const Complex g01 = g(0, 1), g10 = g(1, 0), g02 = g(0, 2), g20 = g(2, 0), g11 = g(1, 1);
  const Complex g12 = g(1, 2), g21 = g(2, 1), g22 = g(2, 2);
  std::vector<ConditionResidual> out;
  switch (region) {
    case CubicRegion::kOrigin:
      out.push_back(condition("g01 = 0", g01, {g01}, tol));
      out.push_back(condition("g02 = 0", g02, {g02}, tol));
      out.push_back(condition("g11 = 0", g11, {g11}, tol));
      out.push_back(condition("g12 = 0", g12, {g12}, tol));
      out.push_back(condition("g22 = 0", g22, {g22}, tol));
      break;
    case CubicRegion::kImagAxis3:
      out.push_back(condition("Re g01 = 0", g01.real(), {g01}, tol));
      out.push_back(condition("g11 + g02 = 0", g11 + g02, {g11, g02}, tol));
      out.push_back(condition("g12 = a g01 + b g10", g12 - a * g01 - b * g10, {g12, g01}, tol));
      break;
    case CubicRegion::kSevenImag:
      out.push_back(condition("Re g12 = b Re g01", g12.real() - b * g01.real(), {g12, g01}, tol));
      out.push_back(condition("g22 = 2b Re g20 + (a+b) g11",
                              g22 - 2 * b * g20.real() - (a + b) * g11, {g22, g20, g11}, tol));
      break;
    case CubicRegion::kCircle5:
      out.push_back(condition("g12 = b g01", g12 - b * g01, {g12, g01}, tol));
      out.push_back(condition("a g11 + 2b Re g02 = 0", a * g11 + 2 * b * g02.real(), {g11, g02},
                              tol));
      out.push_back(condition("g22 = b g11", g22 - b * g11, {g22, g11}, tol));
      break;
    case CubicRegion::kSevenReal:
      out.push_back(condition("Im g12 = b Im g01", g12.imag() - b * g01.imag(), {g12, g01}, tol));
      out.push_back(condition("g22 + 2b Re g20 + (a-b) g11 = 0",
                              g22 + 2 * b * g20.real() + (a - b) * g11, {g22, g20, g11}, tol));
      break;
    case CubicRegion::kRealAxis3:
      out.push_back(condition("g01 = g10", g01 - g10, {g01}, tol));
      out.push_back(condition("g02 = g11", g02 - g11, {g02, g11}, tol));
      out.push_back(condition("a g01 + b g10 + g12 = 0", a * g01 + b * g10 + g12, {g01, g12}, tol));
      break;
    case CubicRegion::kAxes5:
      out.push_back(condition("g21 + a g01 + b g10 = 0", g21 + a * g01 + b * g10, {g21, g01}, tol));
      out.push_back(condition("g20 = g02", g20 - g02, {g20}, tol));
      out.push_back(condition("g22 + a g20 + b g11 = 0", g22 + a * g20 + b * g11,
                              {g22, g20, g11}, tol));
      break;
  }
  return out;
}

// The two rotated seven-zero regions, written directly on the (t, u) data.
std::vector<ConditionResidual> rotated_seven_entries(const MomentSource& t, CubicRegion region,
                                                     double tt, double u, double tol) {
  const Complex g01 = t.moment(0, 1), g02 = t.moment(0, 2), g11 = t.moment(1, 1);
  const Complex g12 = t.moment(1, 2), g22 = t.moment(2, 2);
  std::vector<ConditionResidual> out;
  if (region == CubicRegion::kSevenImag) {
    out.push_back(condition("Re g12 - Im g12 = u (Re g01 - Im g01)",
                            g12.real() - g12.imag() - u * (g01.real() - g01.imag()), {g12, g01},
                            tol));
    out.push_back(condition("g22 = (t+u) g11 - 2u Im g02",
                            g22 - (tt + u) * g11 + 2 * u * g02.imag(), {g22, g11, g02}, tol));
  } else {
    out.push_back(condition("Re g12 + Im g12 = u (Re g01 + Im g01)",
                            g12.real() + g12.imag() - u * (g01.real() + g01.imag()), {g12, g01},
                            tol));
    out.push_back(condition("g22 = (u-t) g11 + 2u Im g02",
                            g22 - (u - tt) * g11 - 2 * u * g02.imag(), {g22, g11, g02}, tol));
  }
  return out;
}

}  // namespace

MomentTable rotate_to_direct(const MomentTable& omega) {
  return MomentTable::from_function(omega.degree(), [&](int i, int j) {
    return std::polar(1.0, std::numbers::pi * (j - i) / 4.0) * omega.moment(i, j);
  });
}

std::optional<CubicParams> match_harmonic_cubic(const BivarPoly& charpoly) {
  const double tol = 1e-9 * (1.0 + charpoly.max_abs_coefficient());
  if (std::abs(charpoly.coefficient({0, 3}) - 1.0) > tol) return std::nullopt;
  for (const auto& [m, c] : charpoly.terms()) {
    const bool allowed = m == Monomial{0, 3} || m == Monomial{0, 1} || m == Monomial{1, 0};
    if (!allowed && std::abs(c) > tol) return std::nullopt;
  }
  const Complex c01 = charpoly.coefficient({0, 1});
  const Complex c10 = charpoly.coefficient({1, 0});
  if (std::abs(c10) <= tol) return std::nullopt;  // analytic, not harmonic
  if (std::abs(c10.imag()) > tol) return std::nullopt;
  if (std::abs(c01.imag()) <= tol) return CubicParams::direct(c01.real(), c10.real());
  if (std::abs(c01.real()) <= tol) return CubicParams::from_tu(-c01.imag(), -c10.real());
  return std::nullopt;
}

CubicConditionReport check_cubic_conditions(const MomentTable& omega, const CubicParams& params,
                                            double tol) {
  CubicConditionReport report;
  report.params = params;
  report.region = classify_cubic(params.a, params.b);
  const int level = report.region.matrix_level;
  if (omega.degree() < 2 * level) {
    throw Error(ErrorCode::kInvalidInput, std::string("region ") + report.region.label +
                                              " needs moments of degree " +
                                              std::to_string(2 * level) + ", table has " +
                                              std::to_string(omega.degree()));
  }
  report.h_frame = params.rotated ? to_rotated_frame(report.region.h) : report.region.h;

  for (const auto& mult : report.region.multipliers) {
    const BivarPoly mh =
        (params.rotated ? to_rotated_frame(mult) : mult) * report.h_frame;
    if (mh.degree() > omega.degree()) {
      throw Error(ErrorCode::kInvalidInput, "table too short for Lambda(" + to_string(mult) + " h)");
    }
    double largest = 0.0;
    for (const auto& [m, c] : mh.terms()) {
      largest = std::max(largest, std::abs(omega.moment(m.zbar, m.z)));
    }
    const double residual = std::abs(riesz(omega, mh)) / (1.0 + largest);
    report.riesz.push_back({"Lambda((" + to_string(mult) + ") h)", residual, residual <= tol});
  }

  const bool seven = report.region.region == CubicRegion::kSevenImag ||
                     report.region.region == CubicRegion::kSevenReal;
  if (params.rotated && seven) {
    report.entries = rotated_seven_entries(omega, report.region.region, params.t(), params.u(), tol);
  } else if (params.rotated) {
    report.entries =
        direct_entries(rotate_to_direct(omega), report.region.region, params.a, params.b, tol);
  } else {
    report.entries = direct_entries(omega, report.region.region, params.a, params.b, tol);
  }

  auto all_pass = [](const std::vector<ConditionResidual>& v) {
    return std::all_of(v.begin(), v.end(), [](const ConditionResidual& c) { return c.pass; });
  };
  report.riesz_pass = all_pass(report.riesz);
  report.entries_pass = all_pass(report.entries);
  report.agree = report.riesz_pass == report.entries_pass;

  report.psd = psd_check(MomentMatrix::build(omega, level));
  if (omega.degree() >= 3) {
    report.relation = is_characteristic(omega, params.charpoly(), omega.degree() - 3);
  }
  report.verdict = report.riesz_pass && report.entries_pass && report.psd->is_psd &&
                   (!report.relation || report.relation->is_member);
  return report;
}

}  // namespace cmoment
