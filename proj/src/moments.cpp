#include "cmoment/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmoment/error.hpp"

namespace cmoment {

namespace {

std::string index_name(int i, int j) {
  return "gamma(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

Complex riesz(const MomentSource& source, const BivarPoly& p) {
  Complex sum = 0.0;
  for (const auto& [m, c] : p.terms()) sum += c * source.moment(m.zbar, m.z);
  return sum;
}

MomentTable::MomentTable(int degree, const std::vector<Entry>& upper) : degree_(degree) {
  if (degree < 0) throw Error(ErrorCode::kInvalidInput, "negative table degree");
  cells_.assign(basis_size(degree), Complex{});
  std::vector<bool> seen(cells_.size(), false);
  for (const auto& e : upper) {
    if (e.i < 0 || e.j < 0 || e.i > e.j || e.i + e.j > degree) {
      throw Error(ErrorCode::kInvalidInput, index_name(e.i, e.j) + " is not an upper-triangle "
                                            "entry of a degree-" + std::to_string(degree) + " table");
    }
    const auto k = degree_lex_index(Monomial{e.i, e.j});
    if (seen[k]) throw Error(ErrorCode::kInvalidInput, index_name(e.i, e.j) + " given twice");
    seen[k] = true;
    Complex value = e.value;
    if (e.i == e.j) {
      if (std::abs(value.imag()) > 1e-12 * (1.0 + std::abs(value))) {
        throw Error(ErrorCode::kInvalidInput, index_name(e.i, e.j) + " must be real");
      }
      value = Complex(value.real(), 0.0);
    }
    cells_[k] = value;
    cells_[degree_lex_index(Monomial{e.j, e.i})] = std::conj(value);
    seen[degree_lex_index(Monomial{e.j, e.i})] = true;
  }
  for (int d = 0; d <= degree; ++d) {
    for (int i = 0; 2 * i <= d; ++i) {
      if (!seen[degree_lex_index(Monomial{i, d - i})]) {
        throw Error(ErrorCode::kMissingMoment, index_name(i, d - i) + " absent from table");
      }
    }
  }
}

MomentTable MomentTable::from_function(int degree, const std::function<Complex(int, int)>& gamma) {
  std::vector<Entry> upper;
  for (int d = 0; d <= degree; ++d) {
    for (int i = 0; 2 * i <= d; ++i) {
      Complex v = gamma(i, d - i);
      if (2 * i == d) v = Complex(v.real(), 0.0);
      upper.push_back({i, d - i, v});
    }
  }
  return MomentTable(degree, upper);
}

MomentTable MomentTable::from_source(const MomentSource& source, int degree) {
  return from_function(degree, [&](int i, int j) { return source.moment(i, j); });
}

Complex MomentTable::moment(int i, int j) const {
  if (i < 0 || j < 0 || i + j > degree_) {
    throw Error(ErrorCode::kMissingMoment,
                index_name(i, j) + " beyond table degree " + std::to_string(degree_));
  }
  return cells_[degree_lex_index(Monomial{i, j})];
}

MomentTable MomentTable::with_entry(int i, int j, Complex value) const {
  if (i < 0 || j < 0 || i + j > degree_) {
    throw Error(ErrorCode::kMissingMoment, index_name(i, j) + " beyond table degree");
  }
  MomentTable copy = *this;
  if (i == j) value = Complex(value.real(), 0.0);
  copy.cells_[degree_lex_index(Monomial{i, j})] = value;
  copy.cells_[degree_lex_index(Monomial{j, i})] = std::conj(value);
  return copy;
}

std::vector<MomentTable::Entry> MomentTable::upper_entries() const {
  std::vector<Entry> out;
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    const Monomial m = monomial_at(k);
    if (m.zbar <= m.z) out.push_back({m.zbar, m.z, cells_[k]});
  }
  return out;
}

double MomentTable::scale() const {
  double largest = 0.0;
  for (const auto& c : cells_) largest = std::max(largest, std::abs(c));
  return 1.0 + largest;
}

}  // namespace cmoment
