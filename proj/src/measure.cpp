#include "cmoment/measure.hpp"

#include <cmath>
#include <string>

#include "cmoment/analysis.hpp"
#include "cmoment/error.hpp"

namespace cmoment {

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error(ErrorCode::kInvalidInput, "measure needs at least one atom");
  std::vector<Complex> points;
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.weight) || !(a.weight > 0.0)) {
      throw Error(ErrorCode::kInvalidInput, "atom weight must be positive, got " +
                                                std::to_string(a.weight));
    }
    if (!std::isfinite(a.point.real()) || !std::isfinite(a.point.imag())) {
      throw Error(ErrorCode::kInvalidInput, "atom location must be finite");
    }
    points.push_back(a.point);
  }
  const double tol = dedup_tolerance(points);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (std::abs(points[i] - points[j]) < tol) {
        throw Error(ErrorCode::kInvalidInput, "atoms " + std::to_string(i) + " and " +
                                                  std::to_string(j) + " coincide");
      }
    }
  }
}

double AtomicMeasure::total_mass() const {
  double mass = 0.0;
  for (const auto& a : atoms_) mass += a.weight;
  return mass;
}

Complex AtomicMeasure::moment(int i, int j) const {
  if (i < 0 || j < 0) throw Error(ErrorCode::kInvalidInput, "negative moment index");
  Complex sum = 0.0;
  for (const auto& a : atoms_) {
    sum += a.weight * int_pow(std::conj(a.point), i) * int_pow(a.point, j);
  }
  if (i == j) sum = Complex(sum.real(), 0.0);
  return sum;
}

MomentTable moments_of(const AtomicMeasure& mu, int degree) {
  return MomentTable::from_source(mu, degree);
}

}  // namespace cmoment
