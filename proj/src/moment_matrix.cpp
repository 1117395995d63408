#include "cmoment/moment_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "cmoment/error.hpp"

namespace cmoment {

namespace {

Eigen::VectorXcd to_vector(const BivarPoly& p, int level) {
  const auto v = coefficient_vector(p, level);
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

constexpr double kKernelTolerance = 1e-8;

}  // namespace

MomentMatrix MomentMatrix::build(const MomentSource& source, int n) {
  if (n < 0) throw Error(ErrorCode::kInvalidInput, "negative moment matrix level");
  if (auto top = source.max_degree(); top && *top < 2 * n) {
    throw Error(ErrorCode::kMissingMoment, "M(" + std::to_string(n) + ") needs moments of degree " +
                                               std::to_string(2 * n) + ", source has " +
                                               std::to_string(*top));
  }
  const auto dim = static_cast<Eigen::Index>(basis_size(n));
  Eigen::MatrixXcd entries(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const Monomial row = monomial_at(static_cast<std::size_t>(r));
    for (Eigen::Index c = r; c < dim; ++c) {
      const Monomial col = monomial_at(static_cast<std::size_t>(c));
      Complex g = source.moment(col.zbar + row.z, col.z + row.zbar);
      if (r == c) g = Complex(g.real(), 0.0);
      entries(r, c) = g;
      entries(c, r) = std::conj(g);
    }
  }
  return MomentMatrix(n, std::move(entries));
}

Complex MomentMatrix::entry(Monomial row, Monomial col) const {
  const auto r = static_cast<Eigen::Index>(degree_lex_index(row));
  const auto c = static_cast<Eigen::Index>(degree_lex_index(col));
  if (r >= dim() || c >= dim()) {
    throw Error(ErrorCode::kDegreeTooHigh, "index beyond M(" + std::to_string(level_) + ")");
  }
  return entries_(r, c);
}

Complex bilinear(const MomentMatrix& m, const BivarPoly& p, const BivarPoly& q) {
  const Eigen::VectorXcd pv = to_vector(p, m.level());
  const Eigen::VectorXcd qv = to_vector(q, m.level());
  return qv.dot(m.entries() * pv);  // dot() conjugates its left operand
}

Eigen::VectorXcd apply(const MomentMatrix& m, const BivarPoly& p) {
  return m.entries() * to_vector(p, m.level());
}

PsdReport psd_check(const MomentMatrix& m, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.entries(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  PsdReport report;
  report.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  report.min_eigenvalue = ev.minCoeff();
  report.max_eigenvalue = ev.maxCoeff();
  const double largest = std::max(std::abs(report.min_eigenvalue), std::abs(report.max_eigenvalue));
  report.tolerance = rel_tol * std::max(1.0, largest);
  report.is_psd = report.min_eigenvalue >= -report.tolerance;
  report.rank = static_cast<int>(std::count_if(
      report.eigenvalues.begin(), report.eigenvalues.end(),
      [&](double e) { return e > report.tolerance; }));
  return report;
}

bool flat_extension_check(const MomentMatrix& mn, const MomentMatrix& mn1, double rel_tol) {
  if (mn1.level() != mn.level() + 1) {
    throw Error(ErrorCode::kLevelMismatch, "expected levels n and n+1, got " +
                                               std::to_string(mn.level()) + " and " +
                                               std::to_string(mn1.level()));
  }
  const auto head = mn1.entries().topLeftCorner(mn.dim(), mn.dim());
  const double scale = 1.0 + mn.entries().cwiseAbs().maxCoeff();
  if ((head - mn.entries()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw Error(ErrorCode::kLevelMismatch, "M(n) is not the leading block of M(n+1)");
  }
  const PsdReport low = psd_check(mn, rel_tol);
  const PsdReport high = psd_check(mn1, rel_tol);
  return low.is_psd && high.is_psd && low.rank == high.rank;
}

double relative_kernel_residual(const MomentMatrix& m, const BivarPoly& p) {
  const Eigen::VectorXcd pv = to_vector(p, m.level());
  const Eigen::VectorXcd mp = m.entries() * pv;
  double worst = 0.0;
  for (Eigen::Index r = 0; r < m.dim(); ++r) {
    double touched = 0.0;
    for (Eigen::Index c = 0; c < m.dim(); ++c) {
      if (pv(c) != Complex{}) touched = std::max(touched, std::abs(m.entries()(r, c)));
    }
    worst = std::max(worst, std::abs(mp(r)) / (1.0 + touched));
  }
  return worst;
}

bool psd_power_collapse_test(const MomentMatrix& m, const BivarPoly& p, int n_pow) {
  if (n_pow < 1) throw Error(ErrorCode::kInvalidInput, "power must be >= 1");
  const BivarPoly power = pow(p, n_pow);
  if (power.degree() > m.level()) {
    throw Error(ErrorCode::kDegreeTooHigh, "p^" + std::to_string(n_pow) + " has degree " +
                                               std::to_string(power.degree()));
  }
  if (relative_kernel_residual(m, power) > kKernelTolerance) return true;
  return relative_kernel_residual(m, p) <= kKernelTolerance;
}

}  // namespace cmoment
