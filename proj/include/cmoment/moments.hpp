#ifndef CMOMENT_MOMENTS_HPP
#define CMOMENT_MOMENTS_HPP

// Sources of doubly indexed moments gamma_{ij} = integral of zbar^i z^j.

#include <functional>
#include <optional>
#include <tuple>
#include <vector>

#include "cmoment/polynomial.hpp"

namespace cmoment {

class MomentSource {
 public:
  virtual ~MomentSource() = default;

  // gamma_{ij}; throws kMissingMoment when (i, j) is beyond the source.
  virtual Complex moment(int i, int j) const = 0;

  // Largest available total degree, nullopt when every index is available.
  virtual std::optional<int> max_degree() const = 0;
};

// Riesz functional: sum of c_{ij} gamma_{ij} over the terms of p.
Complex riesz(const MomentSource& source, const BivarPoly& p);

// Truncated table {gamma_{ij}}_{i+j <= degree}, Hermitian by construction.
class MomentTable final : public MomentSource {
 public:
  struct Entry {
    int i;
    int j;
    Complex value;
  };

  // Needs every (i, j) with i <= j and i + j <= degree exactly once. Diagonal
  // entries must be real up to 1e-12 relative.
  MomentTable(int degree, const std::vector<Entry>& upper);

  static MomentTable from_function(int degree, const std::function<Complex(int, int)>& gamma);
  static MomentTable from_source(const MomentSource& source, int degree);

  int degree() const { return degree_; }
  Complex moment(int i, int j) const override;
  std::optional<int> max_degree() const override { return degree_; }

  // Copy with gamma_{ij} replaced (and gamma_{ji} set to its conjugate).
  MomentTable with_entry(int i, int j, Complex value) const;

  // Entries with i <= j in degree-lex order of zbar^i z^j.
  std::vector<Entry> upper_entries() const;

  // 1 + max |gamma_{ij}| over all stored entries.
  double scale() const;

 private:
  MomentTable() = default;

  int degree_ = 0;
  std::vector<Complex> cells_;  // indexed by degree_lex_index({i, j})
};

}  // namespace cmoment

#endif  // CMOMENT_MOMENTS_HPP
