#ifndef CMOMENT_TESTS_SUPPORT_HPP
#define CMOMENT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cmoment/measure.hpp"
#include "cmoment/rdis.hpp"

namespace cmoment::test {

// Closed form of the two-term example, written without the recursion:
// (-1)^{i+j}/2 + Re((1-2i)^i (1+2i)^j)/2.
inline Complex example_gamma(int i, int j) {
  Complex p = 1.0;
  for (int k = 0; k < i; ++k) p *= Complex(1.0, -2.0);
  for (int k = 0; k < j; ++k) p *= Complex(1.0, 2.0);
  const double sign = (i + j) % 2 == 0 ? 1.0 : -1.0;
  return 0.5 * sign + 0.5 * p.real();
}

// gamma_00 = 1, gamma_01 = 0, gamma_11 = 3 with P = z^2 + 2 zbar + 1.
inline Rdis example_rdis() {
  const InitialBlock init(2, {{0, 0, 1.0}, {0, 1, 0.0}, {1, 1, 3.0}});
  return Rdis(init, BivarPoly::monomial(0, 2) + BivarPoly::monomial(1, 0, 2.0) +
                        BivarPoly::constant(1.0));
}

inline AtomicMeasure example_measure() {
  return AtomicMeasure({{-1.0, 0.5}, {Complex(1, 2), 0.25}, {Complex(1, -2), 0.25}});
}

// Direct summation, independent of AtomicMeasure::moment.
inline Complex sum_moment(const std::vector<Atom>& atoms, int i, int j) {
  Complex s = 0.0;
  for (const auto& a : atoms) {
    Complex t = a.weight;
    for (int k = 0; k < i; ++k) t *= std::conj(a.point);
    for (int k = 0; k < j; ++k) t *= a.point;
    s += t;
  }
  return s;
}

inline double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}

// Random polynomial with every monomial of degree <= deg.
inline BivarPoly random_poly(std::mt19937& rng, int deg) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BivarPoly::Terms t;
  for (int d = 0; d <= deg; ++d) {
    for (int i = 0; i <= d; ++i) t[Monomial{i, d - i}] = Complex(u(rng), u(rng));
  }
  return BivarPoly(std::move(t));
}

// Points in the disk of the given radius, pairwise at least min_gap apart.
inline std::vector<Complex> random_points(std::mt19937& rng, int n, double radius,
                                          double min_gap = 0.2) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> pts;
  while (static_cast<int>(pts.size()) < n) {
    const Complex z(radius * u(rng), radius * u(rng));
    if (std::abs(z) > radius) continue;
    const bool close = std::any_of(pts.begin(), pts.end(),
                                   [&](Complex w) { return std::abs(w - z) < min_gap; });
    if (!close) pts.push_back(z);
  }
  return pts;
}

inline AtomicMeasure random_measure(std::mt19937& rng, int n, double radius) {
  std::uniform_real_distribution<double> w(0.1, 2.0);
  std::vector<Atom> atoms;
  for (Complex z : random_points(rng, n, radius)) atoms.push_back({z, w(rng)});
  return AtomicMeasure(std::move(atoms));
}

}  // namespace cmoment::test

#endif  // CMOMENT_TESTS_SUPPORT_HPP
