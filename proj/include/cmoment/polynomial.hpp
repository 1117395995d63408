#ifndef CMOMENT_POLYNOMIAL_HPP
#define CMOMENT_POLYNOMIAL_HPP

// Sparse polynomials in the two commuting symbols z and zbar.
//
// A term c * zbar^i z^j is keyed by Monomial{i, j}. Monomials are ordered
// degree-lexicographically: 1, z, zbar, z^2, zbar z, zbar^2, z^3, ... which is
// also the row/column order of moment matrices.

#include <complex>
#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace cmoment {

using Complex = std::complex<double>;

struct Monomial {
  int zbar = 0;  // power of zbar
  int z = 0;     // power of z

  constexpr int degree() const { return zbar + z; }

  friend constexpr bool operator==(Monomial, Monomial) = default;
  friend constexpr std::strong_ordering operator<=>(Monomial a, Monomial b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return a.zbar <=> b.zbar;
  }
};

// Position of zbar^i z^j in the degree-lex basis: d(d+1)/2 + i with d = i + j.
std::size_t degree_lex_index(Monomial m);

// Inverse of degree_lex_index.
Monomial monomial_at(std::size_t index);

// Number of monomials of total degree <= n, i.e. (n+1)(n+2)/2.
std::size_t basis_size(int n);

class BivarPoly {
 public:
  using Terms = std::map<Monomial, Complex>;

  BivarPoly() = default;
  explicit BivarPoly(Terms terms);

  static BivarPoly constant(Complex c);
  static BivarPoly monomial(int zbar_power, int z_power, Complex c = 1.0);
  static BivarPoly z() { return monomial(0, 1); }
  static BivarPoly zbar() { return monomial(1, 0); }

  const Terms& terms() const { return terms_; }
  Complex coefficient(Monomial m) const;
  bool is_zero() const { return terms_.empty(); }

  // Total degree; -1 for the zero polynomial.
  int degree() const;
  int z_degree() const;
  int zbar_degree() const;
  bool is_analytic() const { return zbar_degree() <= 0; }
  double max_abs_coefficient() const;

  Complex operator()(Complex w) const;

  friend BivarPoly operator+(const BivarPoly& p, const BivarPoly& q);
  friend BivarPoly operator-(const BivarPoly& p, const BivarPoly& q);
  friend BivarPoly operator-(const BivarPoly& p);
  friend BivarPoly operator*(const BivarPoly& p, const BivarPoly& q);
  friend BivarPoly operator*(Complex c, const BivarPoly& p);
  friend BivarPoly operator*(const BivarPoly& p, Complex c) { return c * p; }

 private:
  Terms terms_;
};

BivarPoly add(const BivarPoly& p, const BivarPoly& q);
BivarPoly multiply(const BivarPoly& p, const BivarPoly& q);
BivarPoly scale(Complex c, const BivarPoly& p);
BivarPoly pow(const BivarPoly& p, int n);

// c zbar^i z^j -> conj(c) zbar^j z^i. Evaluating the result at w gives the
// complex conjugate of p(w).
BivarPoly conjugate(const BivarPoly& p);

// w^n by repeated squaring, n >= 0.
Complex int_pow(Complex w, int n);

// p(w, conj(w)).
Complex evaluate(const BivarPoly& p, Complex w);

// Dense coefficient vector in degree-lex order, length basis_size(n).
// Throws kDegreeTooHigh when deg p > n.
std::vector<Complex> coefficient_vector(const BivarPoly& p, int n);
BivarPoly from_coefficient_vector(std::span<const Complex> coefficients);

std::string to_string(const BivarPoly& p);

// Polynomial in z only, coefficients in ascending powers with a nonzero
// leading coefficient (empty for zero).
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Complex> ascending);

  // Throws kNotAnalytic if p has any zbar term.
  static UniPoly from_bivar(const BivarPoly& p);
  BivarPoly to_bivar() const;

  const std::vector<Complex>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Complex leading() const { return coeffs_.back(); }
  Complex operator()(Complex w) const;

 private:
  std::vector<Complex> coeffs_;
};

// Certificate p = remainder + f1 * P + f2 * conj(P).
struct Reduction {
  BivarPoly remainder;
  BivarPoly f1;
  BivarPoly f2;
};

// Normal form of p modulo a characteristic polynomial
// P = z^d - (terms of total degree <= d-1) and its conjugate. The remainder
// has z-degree < d and zbar-degree < d. Offending monomials are rewritten in
// descending degree-lex order; z^d is rewritten before zbar^d.
// Throws kMalformedCharPoly if P does not have that shape.
Reduction reduce_degrees(const BivarPoly& p, const BivarPoly& charpoly);

// Validates the charpoly shape and returns its degree d.
int charpoly_degree(const BivarPoly& charpoly);

}  // namespace cmoment

#endif  // CMOMENT_POLYNOMIAL_HPP
