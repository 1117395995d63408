#ifndef CMOMENT_RDIS_HPP
#define CMOMENT_RDIS_HPP

// Recursive doubly indexed sequences.
//
// An Rdis is fixed by a characteristic polynomial
//     P = z^d - sum_{l+k <= d-1} a_{lk} zbar^l z^k
// and the initial values gamma_{ij}, 0 <= i <= j <= d-1. Every other value
// follows from gamma_{ji} = conj(gamma_{ij}) and
//     gamma_{i,j} = sum a_{lk} gamma_{i+l, j-d+k}        (j >= d).

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "cmoment/moments.hpp"

namespace cmoment {

class InitialBlock {
 public:
  // size = d; upper holds gamma_{ij} for 0 <= i <= j < d. gamma_00 must be
  // real and positive.
  InitialBlock(int size, const std::vector<MomentTable::Entry>& upper);

  static InitialBlock from_source(const MomentSource& source, int size);

  int size() const { return size_; }

  // Completed (Hermitian) square block.
  Complex at(int i, int j) const;

  InitialBlock with_entry(int i, int j, Complex value) const;

 private:
  InitialBlock() = default;

  int size_ = 0;
  std::vector<Complex> cells_;  // size_ x size_, row-major
};

class Rdis final : public MomentSource {
 public:
  // Throws kMalformedCharPoly unless charpoly has the shape above with
  // d == init.size().
  Rdis(InitialBlock init, BivarPoly charpoly);

  // Memoized; gamma(j, i) is the exact conjugate of gamma(i, j).
  Complex gamma(int i, int j) const;

  Complex moment(int i, int j) const override { return gamma(i, j); }
  std::optional<int> max_degree() const override { return std::nullopt; }

  int degree() const { return degree_; }
  const BivarPoly& charpoly() const { return charpoly_; }
  const InitialBlock& initial_block() const { return init_; }

  MomentTable truncate(int degree) const;

  // Same sequence with its memo seeded from table entries of degree <= degree,
  // so later values recurse from the given data rather than from regenerated
  // ones. Callers check beforehand that the table agrees with the recursion.
  Rdis anchored(const MomentSource& table, int degree) const;

 private:
  struct Memo {
    std::mutex mutex;
    std::map<std::pair<int, int>, Complex> values;
  };

  Complex generate(int i, int j) const;  // memo lock held by caller

  InitialBlock init_;
  BivarPoly charpoly_;
  int degree_;
  // (l, k, a_{lk}) with zbar^l z^k in the tail of the charpoly.
  std::vector<std::pair<Monomial, Complex>> recursion_;
  std::shared_ptr<Memo> memo_;
};

struct MembershipReport {
  bool is_member = false;
  // max over rows of |Lambda(zbar^i z^j q)| / (1 + max |gamma| touched by the row)
  double max_residual = 0.0;
  double max_abs_residual = 0.0;
  Monomial worst_row;
  int level = 0;
};

constexpr double kMembershipTolerance = 1e-8;

// Truncated test of M(gamma) q = 0: every row zbar^i z^j with i + j <= level.
MembershipReport is_characteristic(const MomentSource& source, const BivarPoly& q, int level,
                                   double tol = kMembershipTolerance);

}  // namespace cmoment

#endif  // CMOMENT_RDIS_HPP
