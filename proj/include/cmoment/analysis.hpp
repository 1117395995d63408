#ifndef CMOMENT_ANALYSIS_HPP
#define CMOMENT_ANALYSIS_HPP

// Characteristic-polynomial analysis: zero sets, the truncation level xi,
// minimal analytic characteristic polynomials and Lagrange interpolation.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmoment/polynomial.hpp"
#include "cmoment/rdis.hpp"

namespace cmoment {

struct ZeroSet {
  std::vector<Complex> points;
  std::vector<int> multiplicities;  // parallel to points, all 1 for simple roots

  std::size_t count() const { return points.size(); }
};

// Two roots merge when closer than 1e-7 * (1 + largest magnitude).
double dedup_tolerance(std::span<const Complex> points);

// Harmonic cubic z^3 + a z + b zbar, or the rotated family
// w^3 = i t w + u wbar which becomes z^3 + t z + u zbar under w = e^{-i pi/4} z.
struct CubicParams {
  double a = 0.0;
  double b = 0.0;
  bool rotated = false;

  static CubicParams direct(double a, double b) { return {a, b, false}; }
  static CubicParams from_tu(double t, double u) { return {t, u, true}; }

  double t() const { return a; }
  double u() const { return b; }

  // Characteristic polynomial in the frame of the data:
  // z^3 + a z + b zbar, or w^3 - i t w - u wbar when rotated.
  BivarPoly charpoly() const;

  // Multiplier taking zeros of z^3 + a z + b zbar into the data frame.
  Complex frame_rotation() const;
};

enum class CubicRegion {
  kOrigin,        // a = b = 0: only the root 0
  kImagAxis3,     // 0, +-i sqrt(a-b)
  kSevenImag,     // b < a < 2b
  kCircle5,       // b > 0, |a| <= b: 0 and four roots on |z|^2 = b
  kSevenReal,     // b < -a < 2b
  kRealAxis3,     // 0, +-sqrt(-a-b)
  kAxes5,         // b < 0, |a| < -b
};

struct RegionInfo {
  CubicRegion region;
  std::string label;     // table row it corresponds to
  int zero_count;        // number of distinct zeros in the region
  BivarPoly h;           // normal form generator, unrotated frame
  int matrix_level;      // M(2) or M(3) in the conditions
  std::vector<BivarPoly> multipliers;  // Lambda(m h) = 0 for each m
};

RegionInfo classify_cubic(double a, double b);
const char* to_string(CubicRegion region);

// Real solutions of x(x^2-3y^2+a+b) = 0, y(y^2-3x^2-a+b) = 0, rotated back
// into the data frame when params.rotated.
ZeroSet harmonic_cubic_zeros(const CubicParams& params);

// Companion-matrix roots, Newton-polished and deduplicated with
// multiplicities. Throws kZeroPolynomial for constants.
ZeroSet analytic_roots(const UniPoly& q);

// Monic product of (z - lambda)^multiplicity.
UniPoly product_from_roots(const ZeroSet& zeros);
UniPoly product_from_roots(std::span<const Complex> roots);

struct XiData {
  int d_h = 0;
  std::vector<Monomial> top_monomials;  // A_h
  int c1 = 0;                 // largest z-power in A_h
  int c1_bar = 0;             // largest zbar-power in A_h
  std::optional<int> c2;      // nullopt stands for -infinity
  std::optional<int> c2_bar;
  int c = 0;                  // max(c1, c1_bar)
  int alpha_c1 = 0;           // min(r - c1, c1 - c2)
  int alpha_c1_bar = 0;       // min(r - c1_bar, c1_bar - c2_bar)
  int alpha_c = 0;
  int r = 0;
  int xi = 0;                 // 2r - 2 - alpha_c
};

// Needs h != 0 (kEmptyPolynomial) with z- and zbar-degree below r.
XiData compute_xi(const BivarPoly& h, int r);

// 2r - 2 when h vanishes, otherwise compute_xi(h, r).xi.
int truncation_level(const BivarPoly& h, int r);

struct MinimalPolynomial {
  UniPoly poly;
  ZeroSet roots;
  MembershipReport membership;
};

// Smallest monic divisor of the (analytic) charpoly of s that passes
// is_characteristic at the given level. Throws kNotAnalytic or
// kNotCharacteristic. When M(level) is PSD the result must have simple roots
// (kInvariantViolation otherwise).
MinimalPolynomial minimal_analytic_charpoly(const Rdis& s, int level);

// L_j(z) = prod_{i != j} (z - lambda_i) / (lambda_j - lambda_i).
// Throws kDuplicateRoots.
std::vector<BivarPoly> lagrange_basis(const ZeroSet& zeros);

}  // namespace cmoment

#endif  // CMOMENT_ANALYSIS_HPP
