#include <random>

#include "doctest.h"

#include "cmoment/analysis.hpp"
#include "cmoment/error.hpp"
#include "cmoment/moment_matrix.hpp"
#include "support.hpp"

using namespace cmoment;
using namespace cmoment::test;

namespace {

const AtomicMeasure& delta0() {
  static const AtomicMeasure mu({{0.0, 1.0}});
  return mu;
}

// Gram construction: M(n) = sum c v(l) v(l)^H with v(l)_{zbar^i z^j} = conj(l)^i l^j.
Eigen::MatrixXcd vandermonde_gram(const std::vector<Atom>& atoms, int n) {
  const auto dim = static_cast<Eigen::Index>(basis_size(n));
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& a : atoms) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      const Monomial m = monomial_at(static_cast<std::size_t>(k));
      v(k) = int_pow(std::conj(a.point), m.zbar) * int_pow(a.point, m.z);
    }
    g += a.weight * v * v.adjoint();
  }
  return g;
}

}  // namespace

TEST_CASE("build on the example") {
  const Rdis s = example_rdis();
  const MomentMatrix m1 = MomentMatrix::build(s, 1);
  Eigen::MatrixXcd want(3, 3);
  want << 1, 0, 0, 0, 3, -1, 0, -1, 3;
  CHECK((m1.entries() - want).norm() < 1e-12);

  const MomentMatrix m2 = MomentMatrix::build(s, 2);
  CHECK(rel_err(m2.entry({1, 1}, {0, 2}), example_gamma(1, 3)) < 1e-12);

  for (int n = 1; n <= 3; ++n) {
    const MomentMatrix m = MomentMatrix::build(s, n);
    const double diff = (m.entries() - vandermonde_gram(example_measure().atoms(), n)).norm();
    CHECK(diff < 1e-9 * m.entries().norm());
  }
}

TEST_CASE("build on delta0") {
  const MomentMatrix m = MomentMatrix::build(delta0(), 3);
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(m.dim(), m.dim());
  want(0, 0) = 1.0;
  CHECK((m.entries() - want).norm() == 0.0);
}

TEST_CASE("build needs enough moments") {
  const MomentTable t = example_rdis().truncate(3);
  try {
    MomentMatrix::build(t, 2);
    FAIL("expected kMissingMoment");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingMoment);
  }
}

TEST_CASE("bilinear") {
  const Rdis s = example_rdis();
  const MomentMatrix m1 = MomentMatrix::build(s, 1);
  CHECK(bilinear(m1, BivarPoly::constant(1.0), BivarPoly::constant(1.0)) == Complex(1.0));
  CHECK(std::abs(bilinear(m1, BivarPoly::z(), BivarPoly::z()) - Complex(3.0)) < 1e-14);

  std::mt19937 rng(4);
  const MomentMatrix m3 = MomentMatrix::build(s, 3);
  for (int t = 0; t < 10; ++t) {
    const BivarPoly p = random_poly(rng, 2), q = random_poly(rng, 2);
    const Complex lhs = bilinear(m3, BivarPoly::z() * p, q);
    const Complex rhs = bilinear(m3, p, BivarPoly::zbar() * q);
    const Complex oracle = riesz(s, BivarPoly::z() * p * conjugate(q));
    CHECK(std::abs(lhs - oracle) < 1e-9 * (1.0 + std::abs(oracle)) * 100);
    CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(oracle)) * 100);
  }
  CHECK_THROWS_AS(bilinear(m1, BivarPoly::monomial(0, 2), BivarPoly::constant(1.0)), Error);
}

TEST_CASE("apply") {
  const Rdis s = example_rdis();
  const MomentMatrix m3 = MomentMatrix::build(s, 3);
  CHECK(relative_kernel_residual(m3, s.charpoly()) < 1e-8);
  CHECK(apply(m3, BivarPoly{}).norm() == 0.0);
  const Eigen::VectorXcd v = apply(m3, BivarPoly::z() - BivarPoly::constant(1.0));
  CHECK(std::abs(v(0) - Complex(-1.0)) < 1e-14);
}

TEST_CASE("psd_check") {
  const Rdis s = example_rdis();
  const PsdReport r1 = psd_check(MomentMatrix::build(s, 1));
  CHECK(r1.is_psd);
  CHECK(r1.rank == 3);
  REQUIRE(r1.eigenvalues.size() == 3);
  CHECK(std::abs(r1.eigenvalues[0] - 1.0) < 1e-12);
  CHECK(std::abs(r1.eigenvalues[1] - 2.0) < 1e-12);
  CHECK(std::abs(r1.eigenvalues[2] - 4.0) < 1e-12);

  const PsdReport d = psd_check(MomentMatrix::build(delta0(), 2));
  CHECK(d.is_psd);
  CHECK(d.rank == 1);

  const PsdReport r3 = psd_check(MomentMatrix::build(s, 3));
  CHECK(r3.is_psd);
  CHECK(r3.rank == 3);

  const MomentTable bad(2, {{0, 0, 1.0}, {0, 1, 0.0}, {1, 1, 1.0}, {0, 2, 2.0}});
  const PsdReport rb = psd_check(MomentMatrix::build(bad, 1));
  CHECK_FALSE(rb.is_psd);
  CHECK(std::abs(rb.min_eigenvalue + 1.0) < 1e-12);
}

TEST_CASE("flat_extension_check") {
  const Rdis s = example_rdis();
  CHECK(flat_extension_check(MomentMatrix::build(s, 2), MomentMatrix::build(s, 3)));
  CHECK(flat_extension_check(MomentMatrix::build(delta0(), 1), MomentMatrix::build(delta0(), 2)));

  const MomentTable bad(4, [] {
    std::vector<MomentTable::Entry> e;
    for (int d = 0; d <= 4; ++d) {
      for (int i = 0; 2 * i <= d; ++i) e.push_back({i, d - i, 0.0});
    }
    e[0].value = 1.0;  // (0,0)
    for (auto& x : e) {
      if (x.i == 1 && x.j == 1) x.value = 1.0;
      if (x.i == 0 && x.j == 2) x.value = 2.0;
    }
    return e;
  }());
  CHECK_FALSE(flat_extension_check(MomentMatrix::build(bad, 1), MomentMatrix::build(bad, 2)));
  CHECK_THROWS_AS(flat_extension_check(MomentMatrix::build(s, 1), MomentMatrix::build(s, 3)), Error);
}

TEST_CASE("psd_power_collapse_test") {
  const Rdis s = example_rdis();
  CHECK(psd_power_collapse_test(MomentMatrix::build(s, 4), s.charpoly(), 2));
  CHECK(psd_power_collapse_test(MomentMatrix::build(s, 3), BivarPoly::constant(1.0), 3));

  std::mt19937 rng(8);
  const AtomicMeasure mu = random_measure(rng, 4, 1.0);
  const MomentMatrix m = MomentMatrix::build(mu, 4);
  const auto& at = mu.atoms();
  const BivarPoly p = (BivarPoly::z() - BivarPoly::constant(at[0].point)) *
                      (BivarPoly::z() - BivarPoly::constant(at[1].point));
  CHECK(psd_power_collapse_test(m, p, 2));
}
