#ifndef CMOMENT_SOLVER_HPP
#define CMOMENT_SOLVER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmoment/analysis.hpp"
#include "cmoment/measure.hpp"
#include "cmoment/moment_matrix.hpp"

namespace cmoment {

// Z^{k+1} = rhs, rhs of total degree <= k. The characteristic polynomial is
// z^{k+1} - rhs.
struct ColumnRelation {
  int k = 0;
  BivarPoly rhs;

  BivarPoly charpoly() const { return BivarPoly::monomial(0, k + 1) - rhs; }
};

enum class SolveStatus { kSolved, kInfeasible, kIndeterminate };
const char* to_string(SolveStatus status);

struct Certificate {
  std::string test;    // short name, e.g. "psd M(4)"
  std::string detail;  // human-readable evidence
  double value = 0.0;  // eigenvalue or residual
};

struct SolveReport {
  SolveStatus status = SolveStatus::kIndeterminate;
  std::optional<AtomicMeasure> measure;
  std::optional<Certificate> failed_test;

  std::string route;  // "rsft", "rdis", "harmonic-cubic", "analytic-gram"
  std::optional<UniPoly> q;
  std::optional<ZeroSet> zeros;
  std::optional<XiData> xi;
  std::optional<int> xi_level;
  std::optional<MembershipReport> membership;
  std::vector<std::pair<std::string, PsdReport>> psd;
  std::optional<double> verification_residual;
  std::vector<std::string> notes;
};

constexpr double kVerifyTolerance = 1e-7;
constexpr double kGrayZoneUpper = 1e-5;
constexpr double kWeightFloor = 1e-10;

struct SolveOptions {
  double verify_tolerance = kVerifyTolerance;  // reintegration gate for Solved
};

// Analytic characteristic polynomials: solvable iff M(2r'-2) is
// PSD with r' the degree of the minimal analytic characteristic polynomial.
// Throws kNotAnalytic, kInvariantViolation (weight below floor).
SolveReport solve_rsft(const Rdis& s, const SolveOptions& opts = {});

// zeros must be all of Z(P) for the charpoly P of s. Throws kEmptyZeroSet.
SolveReport solve_rdis(const Rdis& s, const ZeroSet& zeros, const SolveOptions& opts = {});

// omega holds gamma_ij for i + j <= 2k + 2. A table whose own M(k+1) is not
// PSD is reported Infeasible before the relation is looked at. Throws
// kRelationViolated, kInconsistentExtension, kInvalidInput.
SolveReport solve_truncated(const MomentTable& omega, const ColumnRelation& relation,
                            const SolveOptions& opts = {});

// Column Z^{k+1} of M(k+1) against the columns of degree <= k.
std::optional<ColumnRelation> extract_column_relation(const MomentMatrix& m);

// max over i + j <= degree of |sum c conj(l)^i l^j - gamma_ij| / (1 + |gamma_ij|).
double verify_measure(const AtomicMeasure& mu, const MomentSource& omega, int degree);

// Gauss-Newton on atoms and weights against the table entries of degree
// <= degree. Returns the input unchanged when it cannot improve the residual.
AtomicMeasure refine_measure(const AtomicMeasure& mu, const MomentSource& omega, int degree);

struct ConditionResidual {
  std::string name;
  double residual = 0.0;  // |value| / (1 + largest moment involved)
  bool pass = false;
};

struct CubicConditionReport {
  CubicParams params;
  RegionInfo region;
  BivarPoly h_frame;                       // h in the frame of the data
  std::vector<ConditionResidual> riesz;    // Lambda(m h) = 0
  std::vector<ConditionResidual> entries;  // entrywise equalities
  bool riesz_pass = false;
  bool entries_pass = false;
  bool agree = false;
  std::optional<PsdReport> psd;            // M(region.matrix_level)
  std::optional<MembershipReport> relation;
  bool verdict = false;
};

constexpr double kConditionTolerance = 1e-8;

// Needs omega.degree() >= 2 * matrix level of the region (kInvalidInput).
CubicConditionReport check_cubic_conditions(const MomentTable& omega, const CubicParams& params,
                                            double tol = kConditionTolerance);

// Rows of Lambda on the direct frame of a rotated table:
// gamma^z_ij = e^{i pi (j - i) / 4} gamma^w_ij.
MomentTable rotate_to_direct(const MomentTable& omega);

// Recognizes z^3 + a z + b zbar (a, b real) or w^3 - i t w - u wbar
// (t, u real) up to 1e-9 relative.
std::optional<CubicParams> match_harmonic_cubic(const BivarPoly& charpoly);

}  // namespace cmoment

#endif  // CMOMENT_SOLVER_HPP
