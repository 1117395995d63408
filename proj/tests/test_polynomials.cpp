#include <random>

#include "doctest.h"

#include "cmoment/error.hpp"
#include "cmoment/polynomial.hpp"
#include "support.hpp"

using namespace cmoment;
using cmoment::test::random_poly;

namespace {

BivarPoly Z(int n = 1) { return BivarPoly::monomial(0, n); }
BivarPoly Zb(int n = 1) { return BivarPoly::monomial(n, 0); }
BivarPoly C(Complex c) { return BivarPoly::constant(c); }

double max_coeff_diff(const BivarPoly& p, const BivarPoly& q) {
  return (p - q).max_abs_coefficient();
}

}  // namespace

TEST_CASE("degree-lex index") {
  CHECK(degree_lex_index({0, 0}) == 0);
  CHECK(degree_lex_index({1, 1}) == 4);
  CHECK(degree_lex_index({3, 0}) == 9);
  CHECK(degree_lex_index({0, 1}) == 1);
  CHECK(degree_lex_index({1, 0}) == 2);
  CHECK(basis_size(3) == 10);
  for (std::size_t k = 0; k < basis_size(6); ++k) {
    CHECK(degree_lex_index(monomial_at(k)) == k);
  }
  // ordering agrees with the index
  CHECK(Monomial{0, 2} < Monomial{1, 1});
  CHECK(Monomial{2, 0} < Monomial{0, 3});
}

TEST_CASE("conjugate") {
  const double a = -1.5, b = 0.75;
  const BivarPoly p = Z(3) + a * Z() + b * Zb();
  CHECK(max_coeff_diff(conjugate(p), Zb(3) + a * Zb() + b * Z()) == 0.0);
  CHECK(conjugate(BivarPoly{}).is_zero());
  const BivarPoly q = BivarPoly::monomial(1, 2, Complex(2, 1));
  CHECK(max_coeff_diff(conjugate(q), BivarPoly::monomial(2, 1, Complex(2, -1))) == 0.0);

  std::mt19937 rng(3);
  const BivarPoly r = random_poly(rng, 3);
  const Complex w(0.3, -1.1);
  CHECK(std::abs(evaluate(conjugate(r), w) - std::conj(evaluate(r, w))) < 1e-13);
}

TEST_CASE("multiply") {
  const double b = 2.0;
  const BivarPoly lhs = (Z() + Zb()) * (BivarPoly::monomial(1, 1) - C(b));
  const BivarPoly rhs =
      BivarPoly::monomial(1, 2) + BivarPoly::monomial(2, 1) - b * Z() - b * Zb();
  CHECK(max_coeff_diff(lhs, rhs) == 0.0);

  std::mt19937 rng(5);
  const BivarPoly p = random_poly(rng, 2);
  CHECK(max_coeff_diff(p * C(1.0), p) == 0.0);

  const double u = 0.7;
  const Complex i(0.0, 1.0);
  const BivarPoly t6 = i * ((Z() - i * Zb()) * (BivarPoly::monomial(1, 1) - C(u)));
  const BivarPoly t6_hand = i * BivarPoly::monomial(1, 2) + BivarPoly::monomial(2, 1) -
                            i * u * Z() - u * Zb();
  CHECK(max_coeff_diff(t6, t6_hand) < 1e-15);

  // evaluation is a ring homomorphism
  const BivarPoly f = random_poly(rng, 3), g = random_poly(rng, 2);
  const Complex w(-0.4, 0.9);
  CHECK(std::abs(evaluate(f * g, w) - evaluate(f, w) * evaluate(g, w)) < 1e-12);
  CHECK(std::abs(evaluate(pow(g, 3), w) - std::pow(evaluate(g, w), 3)) < 1e-11);
}

TEST_CASE("evaluate") {
  const BivarPoly p = Z(2) + 2.0 * Zb() + C(1.0);
  CHECK(std::abs(evaluate(p, -1.0)) < 1e-15);
  CHECK(std::abs(evaluate(p, Complex(1, 2))) < 1e-14);
  CHECK(evaluate(C(1.0), Complex(3, 4)) == Complex(1.0));
  CHECK(evaluate(Z(3), 0.0) == Complex(0.0));
  CHECK(int_pow(0.0, 0) == Complex(1.0));
  CHECK(std::abs(int_pow(Complex(0, 1), 7) - Complex(0, -1)) < 1e-15);
}

TEST_CASE("coefficient vectors") {
  std::mt19937 rng(9);
  const BivarPoly p = random_poly(rng, 3);
  const auto v = coefficient_vector(p, 4);
  CHECK(v.size() == basis_size(4));
  CHECK(max_coeff_diff(from_coefficient_vector(v), p) == 0.0);
  CHECK_THROWS_AS(coefficient_vector(p, 2), Error);
}

TEST_CASE("UniPoly") {
  const UniPoly q = UniPoly::from_bivar(Z(3) - Z(2) + 3.0 * Z() + C(5.0));
  CHECK(q.degree() == 3);
  CHECK(std::abs(q(-1.0)) < 1e-15);
  CHECK(std::abs(q(Complex(1, 2))) < 1e-13);
  try {
    UniPoly::from_bivar(Z() + Zb());
    FAIL("expected kNotAnalytic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotAnalytic);
  }
}

TEST_CASE("reduce_degrees on the seven-zero quotient") {
  const double a = -3.0, b = 2.0;
  const BivarPoly P = Z(3) + a * Z() + b * Zb();
  const BivarPoly Q = Z(7) + (2 * a + b) * Z(5) + (a * a + b * b + a * b) * Z(3) +
                      (b * b * b + a * b * b) * Z();
  const Reduction red = reduce_degrees(Q, P);
  const BivarPoly h = -(b * b) * (BivarPoly::monomial(1, 2) - BivarPoly::monomial(2, 1) -
                                 b * Z() + b * Zb());
  CHECK(max_coeff_diff(red.remainder, h) < 1e-12);
  // certificate Q = h + f1 P + f2 conj(P)
  const BivarPoly back = red.remainder + red.f1 * P + red.f2 * conjugate(P);
  CHECK(max_coeff_diff(back, Q) < 1e-12);
}

TEST_CASE("reduce_degrees of P is zero") {
  const BivarPoly P = Z(3) - 0.5 * Z() + 1.25 * Zb() + C(Complex(0, 1));
  CHECK(reduce_degrees(P, P).remainder.max_abs_coefficient() < 1e-15);
}

TEST_CASE("reduce_degrees certificate at random points") {
  const BivarPoly P = Z(2) + 2.0 * Zb() + C(1.0);
  const BivarPoly p = BivarPoly::monomial(3, 3);
  const Reduction red = reduce_degrees(p, P);
  CHECK(red.remainder.z_degree() < 2);
  CHECK(red.remainder.zbar_degree() < 2);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const BivarPoly Pbar = conjugate(P);
  for (int k = 0; k < 20; ++k) {
    const Complex w(u(rng), u(rng));
    const Complex rhs = evaluate(red.remainder, w) + evaluate(red.f1, w) * evaluate(P, w) +
                        evaluate(red.f2, w) * evaluate(Pbar, w);
    CHECK(std::abs(evaluate(p, w) - rhs) < 1e-9 * (1.0 + std::abs(evaluate(p, w))));
  }
}

TEST_CASE("charpoly shape") {
  CHECK(charpoly_degree(Z(2) + 2.0 * Zb() + C(1.0)) == 2);
  auto code = [](const BivarPoly& p) {
    try {
      charpoly_degree(p);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidInput;
  };
  CHECK(code(2.0 * Z(2) + C(1.0)) == ErrorCode::kMalformedCharPoly);
  CHECK(code(Z(2) + Zb(2)) == ErrorCode::kMalformedCharPoly);
  CHECK(code(Z(2) + BivarPoly::monomial(1, 1)) == ErrorCode::kMalformedCharPoly);
  CHECK(code(BivarPoly{}) == ErrorCode::kMalformedCharPoly);
}
