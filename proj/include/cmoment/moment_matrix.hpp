#ifndef CMOMENT_MOMENT_MATRIX_HPP
#define CMOMENT_MOMENT_MATRIX_HPP

#include <vector>

#include <Eigen/Dense>

#include "cmoment/moments.hpp"

namespace cmoment {

// M(n): rows and columns indexed by zbar^i z^j, i + j <= n, in degree-lex
// order. The (row zbar^k z^l, column zbar^i z^j) entry is gamma_{i+l, j+k}.
class MomentMatrix {
 public:
  // Throws kMissingMoment when the source stops short of degree 2n.
  static MomentMatrix build(const MomentSource& source, int n);

  int level() const { return level_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Complex entry(Monomial row, Monomial col) const;

 private:
  MomentMatrix(int level, Eigen::MatrixXcd entries) : level_(level), entries_(std::move(entries)) {}

  int level_;
  Eigen::MatrixXcd entries_;
};

// q^H M p = Lambda(p * conj(q)). Throws kDegreeTooHigh.
Complex bilinear(const MomentMatrix& m, const BivarPoly& p, const BivarPoly& q);

// M p in degree-lex coordinates; entry for row zbar^k z^l is
// Lambda(zbar^l z^k p). Throws kDegreeTooHigh.
Eigen::VectorXcd apply(const MomentMatrix& m, const BivarPoly& p);

constexpr double kPsdTolerance = 1e-9;

struct PsdReport {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  int rank = 0;
  double tolerance = 0.0;  // absolute threshold tol * max(1, |lambda|_max)
  std::vector<double> eigenvalues;  // ascending
};

// Hermitian eigendecomposition; is_psd iff lambda_min >= -tol * max(1, |lambda|_max),
// rank counts eigenvalues above the same threshold.
PsdReport psd_check(const MomentMatrix& m, double rel_tol = kPsdTolerance);

// Smul'jan test: mn1 is PSD with the rank of mn. Throws kLevelMismatch when
// mn1 is not the next level of the same sequence.
bool flat_extension_check(const MomentMatrix& mn, const MomentMatrix& mn1,
                          double rel_tol = kPsdTolerance);

// If M p^n vanishes, checks that M p vanishes too; vacuously true otherwise.
bool psd_power_collapse_test(const MomentMatrix& m, const BivarPoly& p, int n_pow);

// max_k |(M p)_k| / (1 + max |M|), used for "M p = 0 within tolerance".
double relative_kernel_residual(const MomentMatrix& m, const BivarPoly& p);

}  // namespace cmoment

#endif  // CMOMENT_MOMENT_MATRIX_HPP
