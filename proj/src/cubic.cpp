#include <cmath>
#include <numbers>

#include "cmoment/analysis.hpp"

namespace cmoment {

namespace {

const BivarPoly kZ = BivarPoly::z();
const BivarPoly kZbar = BivarPoly::zbar();
const BivarPoly kOne = BivarPoly::constant(1.0);

}  // namespace

BivarPoly CubicParams::charpoly() const {
  if (rotated) {
    return BivarPoly::monomial(0, 3) - Complex(0.0, t()) * kZ - Complex(u()) * kZbar;
  }
  return BivarPoly::monomial(0, 3) + Complex(a) * kZ + Complex(b) * kZbar;
}

Complex CubicParams::frame_rotation() const {
  return rotated ? std::polar(1.0, -std::numbers::pi / 4) : Complex(1.0);
}

const char* to_string(CubicRegion region) {
  switch (region) {
    case CubicRegion::kOrigin: return "origin";
    case CubicRegion::kImagAxis3: return "imaginary-axis-3";
    case CubicRegion::kSevenImag: return "seven-b<a<2b";
    case CubicRegion::kCircle5: return "circle-5";
    case CubicRegion::kSevenReal: return "seven-b<-a<2b";
    case CubicRegion::kRealAxis3: return "real-axis-3";
    case CubicRegion::kAxes5: return "axes-5";
  }
  return "unknown";
}

RegionInfo classify_cubic(double a, double b) {
  const BivarPoly zzbar = BivarPoly::monomial(1, 1);
  const std::vector<BivarPoly> three_point_multipliers{kOne, kZ, kZ * kZ};

  auto imag_axis = [&](std::string label) {
    return RegionInfo{CubicRegion::kImagAxis3, std::move(label), 3, kZ + kZbar, 2,
                      three_point_multipliers};
  };
  auto real_axis = [&](std::string label) {
    return RegionInfo{CubicRegion::kRealAxis3, std::move(label), 3, kZ - kZbar, 2,
                      three_point_multipliers};
  };

  if (b > 0) {
    if (a >= 2 * b) return imag_axis("Table 1, 2b <= a");
    if (a > b) {
      return RegionInfo{CubicRegion::kSevenImag, "Table 1, b < a < 2b", 7,
                        (kZ + kZbar) * (zzbar - Complex(b) * kOne), 3, {kOne, kZ}};
    }
    if (a >= -b) {
      return RegionInfo{CubicRegion::kCircle5, "Table 1, -b <= a <= b", 5,
                        BivarPoly::monomial(1, 2) - Complex(b) * kZ, 3, {kOne, kZ, kZbar}};
    }
    if (a > -2 * b) {
      return RegionInfo{CubicRegion::kSevenReal, "Table 1, b < -a < 2b", 7,
                        (kZ - kZbar) * (zzbar - Complex(b) * kOne), 3, {kOne, kZ}};
    }
    return real_axis("Table 1, a <= -2b");
  }
  if (b < 0) {
    if (a >= -b) return imag_axis("Table 2, -b <= a");
    if (a > b) {
      return RegionInfo{CubicRegion::kAxes5, "Table 2, |a| < -b", 5,
                        BivarPoly::monomial(1, 2) + Complex(a) * kZbar + Complex(b) * kZ, 3,
                        {kOne, kZ, kZbar}};
    }
    return real_axis("Table 2, a <= b");
  }
  if (a > 0) return imag_axis("b = 0, a > 0");
  if (a < 0) return real_axis("b = 0, a < 0");
  return RegionInfo{CubicRegion::kOrigin, "a = b = 0", 1, kZ, 2,
                    {kOne, kZ, kZbar, zzbar, BivarPoly::monomial(2, 1)}};
}

ZeroSet harmonic_cubic_zeros(const CubicParams& params) {
  const double a = params.a;
  const double b = params.b;
  std::vector<Complex> found{Complex(0.0)};
  // y = 0 branch
  if (const double r = -a - b; r > 0) {
    found.emplace_back(std::sqrt(r), 0.0);
    found.emplace_back(-std::sqrt(r), 0.0);
  }
  // x = 0 branch
  if (const double r = a - b; r > 0) {
    found.emplace_back(0.0, std::sqrt(r));
    found.emplace_back(0.0, -std::sqrt(r));
  }
  // xy != 0 branch
  if (const double rx = (2 * b - a) / 4, ry = (a + 2 * b) / 4; rx > 0 && ry > 0) {
    const double x = std::sqrt(rx);
    const double y = std::sqrt(ry);
    for (double sx : {1.0, -1.0}) {
      for (double sy : {1.0, -1.0}) found.emplace_back(sx * x, sy * y);
    }
  }

  const double tol = dedup_tolerance(found);
  const Complex rotation = params.frame_rotation();
  ZeroSet zeros;
  for (const Complex& z : found) {
    bool duplicate = false;
    for (const Complex& kept : zeros.points) {
      if (std::abs(kept - z * rotation) < tol) duplicate = true;
    }
    if (!duplicate) {
      zeros.points.push_back(z * rotation);
      zeros.multiplicities.push_back(1);
    }
  }
  return zeros;
}

}  // namespace cmoment
