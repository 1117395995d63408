#ifndef CMOMENT_MEASURE_HPP
#define CMOMENT_MEASURE_HPP

#include <vector>

#include "cmoment/moments.hpp"

namespace cmoment {

struct Atom {
  Complex point;
  double weight = 0.0;
};

// mu = sum c_k delta_{lambda_k}. Weights must be finite and positive, atoms
// pairwise distinct (dedup tolerance). Throws kInvalidInput otherwise.
class AtomicMeasure final : public MomentSource {
 public:
  explicit AtomicMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double total_mass() const;

  // sum c_k conj(lambda_k)^i lambda_k^j
  Complex moment(int i, int j) const override;
  std::optional<int> max_degree() const override { return std::nullopt; }

 private:
  std::vector<Atom> atoms_;
};

MomentTable moments_of(const AtomicMeasure& mu, int degree);

}  // namespace cmoment

#endif  // CMOMENT_MEASURE_HPP
