#include "cmoment/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cmoment/error.hpp"

namespace cmoment {

namespace {

// Relative threshold below which a coefficient is treated as cancelled.
constexpr double kDropThreshold = 1e-13;

void canonicalize(BivarPoly::Terms& terms) {
  double largest = 1.0;
  for (const auto& [m, c] : terms) largest = std::max(largest, std::abs(c));
  const double floor = kDropThreshold * largest;
  std::erase_if(terms, [floor](const auto& kv) {
    return std::abs(kv.second) < floor || std::abs(kv.second) == 0.0;
  });
}


}  // namespace

Complex int_pow(Complex w, int n) {
  Complex result = 1.0;
  Complex base = w;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

std::size_t degree_lex_index(Monomial m) {
  const auto d = static_cast<std::size_t>(m.degree());
  return d * (d + 1) / 2 + static_cast<std::size_t>(m.zbar);
}

Monomial monomial_at(std::size_t index) {
  std::size_t d = 0;
  while ((d + 1) * (d + 2) / 2 <= index) ++d;
  const auto zbar = static_cast<int>(index - d * (d + 1) / 2);
  return Monomial{zbar, static_cast<int>(d) - zbar};
}

std::size_t basis_size(int n) {
  if (n < 0) return 0;
  const auto m = static_cast<std::size_t>(n);
  return (m + 1) * (m + 2) / 2;
}

BivarPoly::BivarPoly(Terms terms) : terms_(std::move(terms)) {
  for (const auto& [m, c] : terms_) {
    if (m.zbar < 0 || m.z < 0) {
      throw Error(ErrorCode::kInvalidInput, "negative monomial exponent");
    }
  }
  canonicalize(terms_);
}

BivarPoly BivarPoly::constant(Complex c) { return monomial(0, 0, c); }

BivarPoly BivarPoly::monomial(int zbar_power, int z_power, Complex c) {
  return BivarPoly(Terms{{Monomial{zbar_power, z_power}, c}});
}

Complex BivarPoly::coefficient(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Complex{} : it->second;
}

int BivarPoly::degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

int BivarPoly::z_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.z);
  return d;
}

int BivarPoly::zbar_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.zbar);
  return d;
}

double BivarPoly::max_abs_coefficient() const {
  double largest = 0.0;
  for (const auto& [m, c] : terms_) largest = std::max(largest, std::abs(c));
  return largest;
}

Complex BivarPoly::operator()(Complex w) const { return evaluate(*this, w); }

BivarPoly operator+(const BivarPoly& p, const BivarPoly& q) {
  BivarPoly::Terms sum = p.terms_;
  for (const auto& [m, c] : q.terms_) sum[m] += c;
  return BivarPoly(std::move(sum));
}

BivarPoly operator-(const BivarPoly& p) { return Complex(-1.0) * p; }

BivarPoly operator-(const BivarPoly& p, const BivarPoly& q) { return p + (-q); }

BivarPoly operator*(const BivarPoly& p, const BivarPoly& q) {
  BivarPoly::Terms product;
  for (const auto& [mp, cp] : p.terms_) {
    for (const auto& [mq, cq] : q.terms_) {
      product[Monomial{mp.zbar + mq.zbar, mp.z + mq.z}] += cp * cq;
    }
  }
  return BivarPoly(std::move(product));
}

BivarPoly operator*(Complex c, const BivarPoly& p) {
  BivarPoly::Terms scaled = p.terms_;
  for (auto& [m, coeff] : scaled) coeff *= c;
  return BivarPoly(std::move(scaled));
}

BivarPoly add(const BivarPoly& p, const BivarPoly& q) { return p + q; }
BivarPoly multiply(const BivarPoly& p, const BivarPoly& q) { return p * q; }
BivarPoly scale(Complex c, const BivarPoly& p) { return c * p; }

BivarPoly pow(const BivarPoly& p, int n) {
  if (n < 0) throw Error(ErrorCode::kInvalidInput, "negative power");
  BivarPoly result = BivarPoly::constant(1.0);
  BivarPoly base = p;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

BivarPoly conjugate(const BivarPoly& p) {
  BivarPoly::Terms swapped;
  for (const auto& [m, c] : p.terms()) swapped[Monomial{m.z, m.zbar}] = std::conj(c);
  return BivarPoly(std::move(swapped));
}

Complex evaluate(const BivarPoly& p, Complex w) {
  const Complex wbar = std::conj(w);
  Complex sum = 0.0;
  for (const auto& [m, c] : p.terms()) sum += c * int_pow(wbar, m.zbar) * int_pow(w, m.z);
  return sum;
}

std::vector<Complex> coefficient_vector(const BivarPoly& p, int n) {
  if (p.degree() > n) {
    throw Error(ErrorCode::kDegreeTooHigh, "polynomial of degree " + std::to_string(p.degree()) +
                                               " exceeds level " + std::to_string(n));
  }
  std::vector<Complex> v(basis_size(n));
  for (const auto& [m, c] : p.terms()) v[degree_lex_index(m)] = c;
  return v;
}

BivarPoly from_coefficient_vector(std::span<const Complex> coefficients) {
  BivarPoly::Terms terms;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    if (coefficients[k] != Complex{}) terms[monomial_at(k)] = coefficients[k];
  }
  return BivarPoly(std::move(terms));
}

std::string to_string(const BivarPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  out.precision(12);
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) out << " + ";
    first = false;
    out << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    if (m.zbar > 0) out << "*zb^" << m.zbar;
    if (m.z > 0) out << "*z^" << m.z;
  }
  return out.str();
}

UniPoly::UniPoly(std::vector<Complex> ascending) : coeffs_(std::move(ascending)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

UniPoly UniPoly::from_bivar(const BivarPoly& p) {
  if (!p.is_analytic()) {
    throw Error(ErrorCode::kNotAnalytic, "polynomial has zbar terms: " + to_string(p));
  }
  std::vector<Complex> c(static_cast<std::size_t>(std::max(p.z_degree(), -1) + 1));
  for (const auto& [m, coeff] : p.terms()) c[static_cast<std::size_t>(m.z)] = coeff;
  return UniPoly(std::move(c));
}

BivarPoly UniPoly::to_bivar() const {
  BivarPoly::Terms terms;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] != Complex{}) terms[Monomial{0, static_cast<int>(k)}] = coeffs_[k];
  }
  return BivarPoly(std::move(terms));
}

Complex UniPoly::operator()(Complex w) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + *it;
  return acc;
}

int charpoly_degree(const BivarPoly& charpoly) {
  const int d = charpoly.z_degree();
  if (d < 1) {
    throw Error(ErrorCode::kMalformedCharPoly, "no positive power of z: " + to_string(charpoly));
  }
  const Complex lead = charpoly.coefficient(Monomial{0, d});
  if (std::abs(lead - 1.0) > 1e-12) {
    throw Error(ErrorCode::kMalformedCharPoly, "z^" + std::to_string(d) + " coefficient is not 1");
  }
  for (const auto& [m, c] : charpoly.terms()) {
    if (m != Monomial{0, d} && m.degree() > d - 1) {
      throw Error(ErrorCode::kMalformedCharPoly,
                  "term of total degree " + std::to_string(m.degree()) +
                      " besides the leading z^" + std::to_string(d));
    }
  }
  return d;
}

Reduction reduce_degrees(const BivarPoly& p, const BivarPoly& charpoly) {
  const int d = charpoly_degree(charpoly);
  // z^d = tail and zbar^d = conj(tail) modulo P and conj(P).
  const BivarPoly tail = BivarPoly::monomial(0, d) - charpoly;
  const BivarPoly conj_tail = conjugate(tail);

  BivarPoly::Terms work = p.terms();
  BivarPoly::Terms f1;
  BivarPoly::Terms f2;

  auto offending = [d](Monomial m) { return m.z >= d || m.zbar >= d; };
  for (;;) {
    auto it = std::find_if(work.rbegin(), work.rend(),
                           [&](const auto& kv) { return offending(kv.first); });
    if (it == work.rend()) break;
    const Monomial m = it->first;
    const Complex c = it->second;
    work.erase(m);
    if (c == Complex{}) continue;

    const bool use_z = m.z >= d;
    const Monomial quotient = use_z ? Monomial{m.zbar, m.z - d} : Monomial{m.zbar - d, m.z};
    (use_z ? f1 : f2)[quotient] += c;
    for (const auto& [mt, ct] : (use_z ? tail : conj_tail).terms()) {
      work[Monomial{quotient.zbar + mt.zbar, quotient.z + mt.z}] += c * ct;
    }
  }
  return Reduction{BivarPoly(std::move(work)), BivarPoly(std::move(f1)), BivarPoly(std::move(f2))};
}

}  // namespace cmoment
