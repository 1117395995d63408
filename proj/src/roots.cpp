#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cmoment/analysis.hpp"
#include "cmoment/error.hpp"

namespace cmoment {

namespace {

Complex derivative_at(const std::vector<Complex>& c, Complex w) {
  Complex acc = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) acc = acc * w + static_cast<double>(k) * c[k];
  return acc;
}

}  // namespace

double dedup_tolerance(std::span<const Complex> points) {
  double largest = 0.0;
  for (const auto& p : points) largest = std::max(largest, std::abs(p));
  return 1e-7 * (1.0 + largest);
}

ZeroSet analytic_roots(const UniPoly& q) {
  if (q.degree() < 1) throw Error(ErrorCode::kZeroPolynomial, "need degree >= 1");
  const auto n = static_cast<Eigen::Index>(q.degree());
  const auto& c = q.coefficients();

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    companion(k, n - 1) = -c[static_cast<std::size_t>(k)] / q.leading();
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> raw(solver.eigenvalues().data(), solver.eigenvalues().data() + n);

  for (auto& root : raw) {
    for (int iter = 0; iter < 4; ++iter) {
      const Complex value = q(root);
      const Complex slope = derivative_at(c, root);
      if (std::abs(slope) == 0.0) break;
      const Complex candidate = root - value / slope;
      if (std::abs(q(candidate)) >= std::abs(value)) break;
      root = candidate;
    }
  }

  const double tol = dedup_tolerance(raw);
  ZeroSet zeros;
  std::vector<Complex> sums;
  for (const auto& root : raw) {
    auto it = std::find_if(zeros.points.begin(), zeros.points.end(),
                           [&](Complex p) { return std::abs(p - root) < tol; });
    if (it == zeros.points.end()) {
      zeros.points.push_back(root);
      zeros.multiplicities.push_back(1);
      sums.push_back(root);
    } else {
      const auto k = static_cast<std::size_t>(it - zeros.points.begin());
      sums[k] += root;
      ++zeros.multiplicities[k];
      zeros.points[k] = sums[k] / static_cast<double>(zeros.multiplicities[k]);
    }
  }
  return zeros;
}

UniPoly product_from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& root : roots) {
    std::vector<Complex> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= root * c[k];
    }
    c = std::move(next);
  }
  return UniPoly(std::move(c));
}

UniPoly product_from_roots(const ZeroSet& zeros) {
  std::vector<Complex> expanded;
  for (std::size_t k = 0; k < zeros.points.size(); ++k) {
    const int mult = k < zeros.multiplicities.size() ? zeros.multiplicities[k] : 1;
    expanded.insert(expanded.end(), static_cast<std::size_t>(mult), zeros.points[k]);
  }
  return product_from_roots(expanded);
}

std::vector<BivarPoly> lagrange_basis(const ZeroSet& zeros) {
  const auto& pts = zeros.points;
  const double tol = dedup_tolerance(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i < zeros.multiplicities.size() && zeros.multiplicities[i] != 1) {
      throw Error(ErrorCode::kDuplicateRoots, "repeated root in Lagrange nodes");
    }
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (std::abs(pts[i] - pts[j]) < tol) {
        throw Error(ErrorCode::kDuplicateRoots, "Lagrange nodes closer than dedup tolerance");
      }
    }
  }
  std::vector<BivarPoly> basis;
  basis.reserve(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    std::vector<Complex> others;
    Complex denominator = 1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == j) continue;
      others.push_back(pts[i]);
      denominator *= pts[j] - pts[i];
    }
    basis.push_back((1.0 / denominator) * product_from_roots(others).to_bivar());
  }
  return basis;
}

}  // namespace cmoment
