#include "cmoment/rdis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmoment/error.hpp"

namespace cmoment {

InitialBlock::InitialBlock(int size, const std::vector<MomentTable::Entry>& upper) : size_(size) {
  if (size < 1) throw Error(ErrorCode::kInvalidInput, "initial block needs size >= 1");
  const auto n = static_cast<std::size_t>(size);
  cells_.assign(n * n, Complex{});
  std::vector<bool> seen(n * n, false);
  for (const auto& e : upper) {
    if (e.i < 0 || e.i > e.j || e.j >= size) {
      throw Error(ErrorCode::kInvalidInput, "initial entry (" + std::to_string(e.i) + "," +
                                                std::to_string(e.j) + ") outside 0<=i<=j<" +
                                                std::to_string(size));
    }
    Complex v = e.value;
    if (e.i == e.j) {
      if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v))) {
        throw Error(ErrorCode::kInvalidInput, "diagonal initial entry must be real");
      }
      v = Complex(v.real(), 0.0);
    }
    const auto i = static_cast<std::size_t>(e.i);
    const auto j = static_cast<std::size_t>(e.j);
    cells_[i * n + j] = v;
    cells_[j * n + i] = std::conj(v);
    seen[i * n + j] = seen[j * n + i] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorCode::kMissingMoment, "initial block is incomplete");
  }
  if (!(cells_[0].real() > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "gamma_00 must be positive");
  }
}

InitialBlock InitialBlock::from_source(const MomentSource& source, int size) {
  std::vector<MomentTable::Entry> upper;
  for (int i = 0; i < size; ++i) {
    for (int j = i; j < size; ++j) {
      Complex v = source.moment(i, j);
      if (i == j) v = Complex(v.real(), 0.0);
      upper.push_back({i, j, v});
    }
  }
  return InitialBlock(size, upper);
}

Complex InitialBlock::at(int i, int j) const {
  if (i < 0 || j < 0 || i >= size_ || j >= size_) {
    throw Error(ErrorCode::kInvariantViolation, "initial block cell out of range");
  }
  return cells_[static_cast<std::size_t>(i * size_ + j)];
}

InitialBlock InitialBlock::with_entry(int i, int j, Complex value) const {
  InitialBlock copy = *this;
  if (i == j) value = Complex(value.real(), 0.0);
  copy.cells_[static_cast<std::size_t>(i * size_ + j)] = value;
  copy.cells_[static_cast<std::size_t>(j * size_ + i)] = std::conj(value);
  return copy;
}

Rdis::Rdis(InitialBlock init, BivarPoly charpoly)
    : init_(std::move(init)),
      charpoly_(std::move(charpoly)),
      degree_(charpoly_degree(charpoly_)),
      memo_(std::make_shared<Memo>()) {
  if (degree_ != init_.size()) {
    throw Error(ErrorCode::kMalformedCharPoly,
                "charpoly degree " + std::to_string(degree_) + " does not match initial block size " +
                    std::to_string(init_.size()));
  }
  for (const auto& [m, c] : charpoly_.terms()) {
    if (m != Monomial{0, degree_}) recursion_.emplace_back(m, -c);
  }
}

Complex Rdis::gamma(int i, int j) const {
  if (i < 0 || j < 0) throw Error(ErrorCode::kInvalidInput, "negative moment index");
  std::lock_guard lock(memo_->mutex);
  return generate(i, j);
}

Complex Rdis::generate(int i, int j) const {
  if (i > j) return std::conj(generate(j, i));
  if (j < degree_) return init_.at(i, j);

  auto& values = memo_->values;
  if (auto it = values.find({i, j}); it != values.end()) return it->second;

  Complex sum = 0.0;
  for (const auto& [m, a] : recursion_) {
    sum += a * generate(i + m.zbar, j - degree_ + m.z);
  }
  if (i == j) sum = Complex(sum.real(), 0.0);
  values.emplace(std::make_pair(i, j), sum);
  return sum;
}

MomentTable Rdis::truncate(int degree) const { return MomentTable::from_source(*this, degree); }

Rdis Rdis::anchored(const MomentSource& table, int degree) const {
  Rdis copy(init_, charpoly_);
  for (int d = degree_; d <= degree; ++d) {
    for (int i = 0; 2 * i <= d; ++i) {
      const int j = d - i;
      if (j < degree_) continue;
      Complex v = table.moment(i, j);
      if (i == j) v = Complex(v.real(), 0.0);
      copy.memo_->values.emplace(std::make_pair(i, j), v);
    }
  }
  return copy;
}

MembershipReport is_characteristic(const MomentSource& source, const BivarPoly& q, int level,
                                   double tol) {
  MembershipReport report;
  report.level = level;
  for (int d = 0; d <= level; ++d) {
    for (int i = 0; i <= d; ++i) {
      const int j = d - i;
      Complex residual = 0.0;
      double touched = 0.0;
      for (const auto& [m, c] : q.terms()) {
        const Complex g = source.moment(i + m.zbar, j + m.z);
        touched = std::max(touched, std::abs(g));
        residual += c * g;
      }
      const double normalized = std::abs(residual) / (1.0 + touched);
      if (normalized > report.max_residual) {
        report.max_residual = normalized;
        report.worst_row = Monomial{i, j};
      }
      report.max_abs_residual = std::max(report.max_abs_residual, std::abs(residual));
    }
  }
  report.is_member = report.max_residual <= tol;
  return report;
}

}  // namespace cmoment
