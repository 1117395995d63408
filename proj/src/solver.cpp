#include "cmoment/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cmoment/error.hpp"

namespace cmoment {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string matrix_name(int level) { return "M(" + std::to_string(level) + ")"; }

std::string row_name(Monomial m) {
  return "zbar^" + std::to_string(m.zbar) + " z^" + std::to_string(m.z);
}

SolveReport infeasible(SolveReport report, std::string test, std::string detail, double value) {
  report.status = SolveStatus::kInfeasible;
  report.failed_test = Certificate{std::move(test), std::move(detail), value};
  return report;
}

SolveReport indeterminate(SolveReport report, std::string test, std::string detail,
                          double value) {
  report.status = SolveStatus::kIndeterminate;
  report.failed_test = Certificate{std::move(test), std::move(detail), value};
  return report;
}

// Moves the outcome of an inner solve into the outer report.
void absorb(SolveReport& outer, SolveReport inner) {
  outer.status = inner.status;
  outer.measure = std::move(inner.measure);
  outer.failed_test = std::move(inner.failed_test);
  for (auto& p : inner.psd) outer.psd.push_back(std::move(p));
  for (auto& n : inner.notes) outer.notes.push_back(std::move(n));
  if (inner.q) {
    outer.notes.push_back("minimal analytic polynomial has degree " +
                          std::to_string(inner.q->degree()));
  }
  if (!outer.zeros) outer.zeros = std::move(inner.zeros);
  if (!outer.membership) outer.membership = inner.membership;
}

// Final gate shared by every route: polish, then reintegrate.
void verify_or_downgrade(SolveReport& report, const MomentSource& data, int degree,
                         double tol) {
  if (report.status != SolveStatus::kSolved) return;
  AtomicMeasure refined = refine_measure(*report.measure, data, degree);
  const double residual = verify_measure(refined, data, degree);
  report.verification_residual = residual;
  if (residual > tol) {
    report = indeterminate(std::move(report), "verification",
                           "reintegration residual " + fmt(residual) + " at degree " +
                               std::to_string(degree),
                           residual);
    return;
  }
  report.measure = std::move(refined);
}

// Atoms as eigenvalues of multiplication by z on the range of M(n), read off
// M(n+1). Valid when rank M(n+1) = rank M(n).
std::optional<std::vector<Complex>> shift_atoms(const MomentSource& source, int n) {
  const MomentMatrix big = MomentMatrix::build(source, n + 1);
  const auto dim = static_cast<Eigen::Index>(basis_size(n));
  const Eigen::MatrixXcd m0 = big.entries().topLeftCorner(dim, dim);
  Eigen::MatrixXcd mz(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const Monomial col = monomial_at(static_cast<std::size_t>(c));
    const auto shifted = static_cast<Eigen::Index>(degree_lex_index({col.zbar, col.z + 1}));
    mz.col(c) = big.entries().col(shifted).head(dim);
  }
  const int rank = psd_check(MomentMatrix::build(source, n)).rank;
  if (rank == 0 || rank != psd_check(big).rank) return std::nullopt;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m0);
  const Eigen::MatrixXcd v = eig.eigenvectors().rightCols(rank);
  const Eigen::VectorXd s = eig.eigenvalues().tail(rank).cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXcd a = s.asDiagonal() * (v.adjoint() * mz * v) * s.asDiagonal();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> shift(a, false);
  const auto& ev = shift.eigenvalues();
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

// Unconstrained least squares for the weights against the table.
std::vector<double> fit_weights(const std::vector<Complex>& atoms, const MomentSource& omega,
                                int degree) {
  std::vector<std::pair<int, int>> idx;
  for (int d = 0; d <= degree; ++d) {
    for (int i = 0; 2 * i <= d; ++i) idx.emplace_back(i, d - i);
  }
  const auto rows = static_cast<Eigen::Index>(2 * idx.size());
  const auto n = static_cast<Eigen::Index>(atoms.size());
  Eigen::MatrixXd a(rows, n);
  Eigen::VectorXd b(rows);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const auto [i, j] = idx[r];
    const Complex g = omega.moment(i, j);
    const double w = 1.0 / (1.0 + std::abs(g));
    const auto r0 = static_cast<Eigen::Index>(2 * r);
    for (Eigen::Index c = 0; c < n; ++c) {
      const Complex l = atoms[static_cast<std::size_t>(c)];
      const Complex v = int_pow(std::conj(l), i) * int_pow(l, j) * w;
      a(r0, c) = v.real();
      a(r0 + 1, c) = v.imag();
    }
    b(r0) = g.real() * w;
    b(r0 + 1) = g.imag() * w;
  }
  const Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(b);
  return std::vector<double>(x.data(), x.data() + x.size());
}

// General characteristic polynomials: the support is read from the flat part
// of the data, Q = prod (z - lambda) is checked for membership as far as the
// table reaches, and the weights are fitted to the table.
SolveReport multiplication_route(const MomentTable& omega, const Rdis& gt, int k) {
  SolveReport report;
  report.route = "multiplication-operator";
  const int top = 2 * k + 2;
  std::optional<std::vector<Complex>> atoms;
  int level = k;
  for (; level <= k + (k + 1) * (k + 1); ++level) {
    if (2 * level + 2 <= top) {
      atoms = shift_atoms(omega, level);
    } else {
      atoms = shift_atoms(gt, level);
    }
    if (atoms) break;
  }
  if (!atoms) {
    return indeterminate(std::move(report), "flat level",
                         "no level n with rank M(n) = rank M(n+1) found", 0.0);
  }
  report.notes.push_back("support read at level " + std::to_string(level));

  ZeroSet zeros;
  zeros.points = *atoms;
  zeros.multiplicities.assign(atoms->size(), 1);
  report.zeros = zeros;
  const UniPoly q = product_from_roots(zeros);
  report.q = q;

  const double tol = dedup_tolerance(*atoms);
  for (std::size_t i = 0; i < atoms->size(); ++i) {
    for (std::size_t j = i + 1; j < atoms->size(); ++j) {
      if (std::abs((*atoms)[i] - (*atoms)[j]) < tol) {
        return indeterminate(std::move(report), "distinct support",
                             "shift operator returned a repeated eigenvalue", 0.0);
      }
    }
  }
  for (const Complex& lambda : *atoms) {
    double size = 0.0;
    for (const auto& [m, c] : gt.charpoly().terms()) {
      size += std::abs(c) * std::pow(std::abs(lambda), m.degree());
    }
    const double off = std::abs(evaluate(gt.charpoly(), lambda)) / (1.0 + size);
    if (off > 1e-6) {
      return indeterminate(std::move(report), "support on Z(P)",
                           "|P(lambda)| relative " + fmt(off), off);
    }
  }

  const int member_level = top - q.degree();
  if (member_level >= 0) {
    const MembershipReport member = is_characteristic(omega, q.to_bivar(), member_level);
    report.membership = member;
    if (!member.is_member) {
      return indeterminate(std::move(report), "Q membership",
                           "Lambda(" + row_name(member.worst_row) + " Q) residual " +
                               fmt(member.max_residual),
                           member.max_residual);
    }
  } else {
    report.notes.push_back("table too short for a Q membership row");
  }

  const std::vector<double> weights = fit_weights(*atoms, omega, top);
  double total = 0.0;
  for (double w : weights) total += w;
  std::vector<Atom> out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > kWeightFloor * total)) {
      return indeterminate(std::move(report), "weights",
                           "fitted weight " + fmt(weights[i]) + " below the floor", weights[i]);
    }
    out.push_back({(*atoms)[i], weights[i]});
  }
  report.measure = AtomicMeasure(std::move(out));
  report.status = SolveStatus::kSolved;
  return report;
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSolved: return "Solved";
    case SolveStatus::kInfeasible: return "Infeasible";
    case SolveStatus::kIndeterminate: return "Indeterminate";
  }
  return "Unknown";
}

SolveReport solve_rsft(const Rdis& s, const SolveOptions& opts) {
  const UniPoly p = UniPoly::from_bivar(s.charpoly());
  const int r = p.degree();
  SolveReport report;
  report.route = "rsft";

  MinimalPolynomial minimal = minimal_analytic_charpoly(s, 2 * r - 2);
  const int rp = minimal.poly.degree();
  report.q = minimal.poly;
  report.zeros = minimal.roots;
  report.membership = minimal.membership;

  const MomentMatrix m = MomentMatrix::build(s, 2 * rp - 2);
  const PsdReport psd = psd_check(m);
  report.psd.emplace_back(matrix_name(m.level()), psd);
  if (!psd.is_psd) {
    return infeasible(std::move(report), "psd " + matrix_name(m.level()),
                      matrix_name(m.level()) + " not PSD, lambda_min = " +
                          fmt(psd.min_eigenvalue),
                      psd.min_eigenvalue);
  }
  for (int mult : minimal.roots.multiplicities) {
    if (mult != 1) {
      throw Error(ErrorCode::kInvariantViolation,
                  "minimal polynomial of a PSD sequence has a repeated root");
    }
  }

  const std::vector<BivarPoly> basis = lagrange_basis(minimal.roots);
  std::vector<double> weights;
  double total = 0.0;
  for (const auto& l : basis) {
    weights.push_back(bilinear(m, l, l).real());
    total += weights.back();
  }
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > kWeightFloor * total)) {
      throw Error(ErrorCode::kInvariantViolation,
                  "weight " + fmt(weights[i]) + " at atom " + std::to_string(i) +
                      " is below the floor; the polynomial was not minimal");
    }
    atoms.push_back({minimal.roots.points[i], weights[i]});
  }
  report.measure = AtomicMeasure(std::move(atoms));
  report.status = SolveStatus::kSolved;
  verify_or_downgrade(report, s, 2 * r - 2, opts.verify_tolerance);
  return report;
}

SolveReport solve_rdis(const Rdis& s, const ZeroSet& zeros, const SolveOptions& opts) {
  if (zeros.count() == 0) throw Error(ErrorCode::kEmptyZeroSet, "no zeros supplied");
  const int r = s.degree();
  const int n = static_cast<int>(zeros.count());
  SolveReport report;
  report.route = "rdis";
  report.zeros = zeros;

  ZeroSet simple = zeros;
  std::fill(simple.multiplicities.begin(), simple.multiplicities.end(), 1);
  simple.multiplicities.resize(simple.points.size(), 1);
  const UniPoly q = product_from_roots(simple);
  report.q = q;
  const BivarPoly qb = q.to_bivar();

  BivarPoly h = reduce_degrees(qb, s.charpoly()).remainder;
  if (h.max_abs_coefficient() <= 1e-9 * std::max(1.0, qb.max_abs_coefficient())) h = BivarPoly();
  if (!h.is_zero()) report.xi = compute_xi(h, r);
  const int xi = truncation_level(h, r);
  report.xi_level = xi;

  const MembershipReport member = is_characteristic(s, qb, std::max(2 * r - 2, 2 * n - 2));
  report.membership = member;
  const PsdReport psd = psd_check(MomentMatrix::build(s, xi));
  report.psd.emplace_back(matrix_name(xi), psd);

  if (!psd.is_psd) {
    return infeasible(std::move(report), "psd " + matrix_name(xi),
                      matrix_name(xi) + " not PSD, lambda_min = " + fmt(psd.min_eigenvalue),
                      psd.min_eigenvalue);
  }
  if (member.max_residual > kGrayZoneUpper) {
    return infeasible(std::move(report), "Q membership",
                      "Lambda(" + row_name(member.worst_row) + " Q) residual " +
                          fmt(member.max_residual),
                      member.max_residual);
  }
  if (!member.is_member) {
    return indeterminate(std::move(report), "Q membership",
                         "residual " + fmt(member.max_residual) + " in the gray zone",
                         member.max_residual);
  }

  const Rdis rsft(InitialBlock::from_source(s, n), qb);
  absorb(report, solve_rsft(rsft, opts));
  verify_or_downgrade(report, s, std::max(2 * r - 2, 2 * n - 2), opts.verify_tolerance);
  return report;
}

SolveReport solve_truncated(const MomentTable& omega, const ColumnRelation& relation,
                            const SolveOptions& opts) {
  const int k = relation.k;
  if (k < 0) throw Error(ErrorCode::kInvalidInput, "relation needs k >= 0");
  if (omega.degree() < 2 * k + 2) {
    throw Error(ErrorCode::kInvalidInput, "relation with k = " + std::to_string(k) +
                                              " needs moments of degree " +
                                              std::to_string(2 * k + 2) + ", table has " +
                                              std::to_string(omega.degree()));
  }
  const BivarPoly p = relation.charpoly();
  charpoly_degree(p);

  // No measure has these moments at all, whatever the relation says.
  const PsdReport own = psd_check(MomentMatrix::build(omega, k + 1));
  if (!own.is_psd) {
    SolveReport report;
    report.route = "truncated";
    report.psd.emplace_back(matrix_name(k + 1) + " of the table", own);
    return infeasible(std::move(report), "psd " + matrix_name(k + 1),
                      matrix_name(k + 1) + " of the table not PSD, lambda_min = " +
                          fmt(own.min_eigenvalue),
                      own.min_eigenvalue);
  }

  const MembershipReport holds = is_characteristic(omega, p, k + 1);
  if (!holds.is_member) {
    throw Error(ErrorCode::kRelationViolated,
                "column relation fails in " + matrix_name(k + 1) + " at row " +
                    row_name(holds.worst_row) + ", residual " + fmt(holds.max_residual));
  }

  const Rdis pure(InitialBlock::from_source(omega, k + 1), p);
  double scale = 0.0;
  for (int d = 0; d <= 2 * k + 2; ++d) {
    for (int i = 0; i <= d; ++i) scale = std::max(scale, std::abs(omega.moment(i, d - i)));
    for (int i = 0; i <= d; ++i) {
      const double gap = std::abs(pure.gamma(i, d - i) - omega.moment(i, d - i));
      if (gap > 1e-8 * (1.0 + scale)) {
        throw Error(ErrorCode::kInconsistentExtension,
                    "extension differs from the table at (" + std::to_string(i) + "," +
                        std::to_string(d - i) + ") by " + fmt(gap));
      }
    }
  }

  const Rdis gt = pure.anchored(omega, 2 * k + 2);
  SolveReport report;
  report.membership = holds;
  const PsdReport psd = psd_check(MomentMatrix::build(gt, 2 * k));
  report.psd.emplace_back(matrix_name(2 * k), psd);
  if (!psd.is_psd) {
    report.route = "truncated";
    return infeasible(std::move(report), "psd " + matrix_name(2 * k),
                      matrix_name(2 * k) + " of the extension not PSD, lambda_min = " +
                          fmt(psd.min_eigenvalue),
                      psd.min_eigenvalue);
  }

  SolveReport inner;
  if (p.is_analytic()) {
    inner = solve_rsft(gt, opts);
  } else if (auto cubic = match_harmonic_cubic(p)) {
    inner = solve_rdis(gt, harmonic_cubic_zeros(*cubic), opts);
    inner.route = "harmonic-cubic";
    if (inner.status == SolveStatus::kInfeasible && inner.failed_test &&
        inner.failed_test->test == "Q membership") {
      const CubicConditionReport check = check_cubic_conditions(omega, *cubic);
      for (const auto& c : check.entries) {
        if (!c.pass) inner.failed_test->detail += "; " + c.name + " off by " + fmt(c.residual);
      }
      inner.notes.push_back(std::string("region ") + check.region.label);
    }
  } else {
    inner = multiplication_route(omega, gt, k);
  }

  report.route = inner.route;
  report.q = inner.q;
  report.zeros = inner.zeros;
  report.xi = inner.xi;
  report.xi_level = inner.xi_level;
  report.status = inner.status;
  report.measure = std::move(inner.measure);
  report.failed_test = std::move(inner.failed_test);
  for (auto& x : inner.psd) {
    const bool seen = std::any_of(report.psd.begin(), report.psd.end(),
                                  [&](const auto& y) { return y.first == x.first; });
    if (!seen) report.psd.push_back(std::move(x));
  }
  report.notes = std::move(inner.notes);
  if (inner.membership) report.membership = inner.membership;

  verify_or_downgrade(report, omega, 2 * k + 2, opts.verify_tolerance);
  return report;
}

std::optional<ColumnRelation> extract_column_relation(const MomentMatrix& m) {
  const int k = m.level() - 1;
  if (k < 0) return std::nullopt;
  const auto cols = static_cast<Eigen::Index>(basis_size(k));
  const Eigen::MatrixXcd a = m.entries().leftCols(cols);
  const Eigen::VectorXcd b =
      m.entries().col(static_cast<Eigen::Index>(degree_lex_index({0, k + 1})));

  Eigen::VectorXd norms = a.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (norms(c) == 0.0) norms(c) = 1.0;
  }
  const Eigen::MatrixXcd scaled = a * norms.cwiseInverse().asDiagonal();
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
  cod.setThreshold(1e-10);
  cod.compute(scaled);
  const Eigen::VectorXcd x = norms.cwiseInverse().asDiagonal() * cod.solve(b);

  const double residual = (a * x - b).norm();
  if (residual > 1e-8 * b.norm()) return std::nullopt;
  return ColumnRelation{k, from_coefficient_vector(std::span<const Complex>(x.data(), x.size()))};
}

double verify_measure(const AtomicMeasure& mu, const MomentSource& omega, int degree) {
  double worst = 0.0;
  for (int d = 0; d <= degree; ++d) {
    for (int i = 0; i <= d; ++i) {
      const Complex g = omega.moment(i, d - i);
      worst = std::max(worst, std::abs(mu.moment(i, d - i) - g) / (1.0 + std::abs(g)));
    }
  }
  return worst;
}

AtomicMeasure refine_measure(const AtomicMeasure& mu, const MomentSource& omega, int degree) {
  struct Row {
    int i, j;
    Complex target;
    double scale;
  };
  std::vector<Row> rows;
  for (int d = 0; d <= degree; ++d) {
    for (int i = 0; i <= d / 2; ++i) {
      const Complex g = omega.moment(i, d - i);
      rows.push_back({i, d - i, g, 1.0 / (1.0 + std::abs(g))});
    }
  }
  const auto n = static_cast<Eigen::Index>(mu.size());
  const auto eqs = static_cast<Eigen::Index>(2 * rows.size());

  auto residuals = [&](const std::vector<Atom>& atoms) {
    Eigen::VectorXd r(eqs);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      Complex v = 0.0;
      for (const auto& a : atoms) {
        v += a.weight * int_pow(std::conj(a.point), rows[k].i) * int_pow(a.point, rows[k].j);
      }
      const Complex e = (v - rows[k].target) * rows[k].scale;
      r(static_cast<Eigen::Index>(2 * k)) = e.real();
      r(static_cast<Eigen::Index>(2 * k + 1)) = e.imag();
    }
    return r;
  };

  std::vector<Atom> best = mu.atoms();
  double best_cost = residuals(best).squaredNorm();
  const Complex iu(0.0, 1.0);
  for (int iter = 0; iter < 25 && best_cost > 0.0; ++iter) {
    Eigen::MatrixXd jac(eqs, 3 * n);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const int i = rows[k].i;
      const int j = rows[k].j;
      for (Eigen::Index a = 0; a < n; ++a) {
        const Complex z = best[static_cast<std::size_t>(a)].point;
        const double w = best[static_cast<std::size_t>(a)].weight;
        const Complex zb = std::conj(z);
        const Complex base = int_pow(zb, i) * int_pow(z, j);
        const Complex dz = j > 0 ? double(j) * int_pow(zb, i) * int_pow(z, j - 1) : 0.0;
        const Complex dzb = i > 0 ? double(i) * int_pow(zb, i - 1) * int_pow(z, j) : 0.0;
        const Complex dx = w * (dz + dzb) * rows[k].scale;
        const Complex dy = w * iu * (dz - dzb) * rows[k].scale;
        const Complex dw = base * rows[k].scale;
        const auto r0 = static_cast<Eigen::Index>(2 * k);
        jac(r0, 3 * a) = dx.real();
        jac(r0 + 1, 3 * a) = dx.imag();
        jac(r0, 3 * a + 1) = dy.real();
        jac(r0 + 1, 3 * a + 1) = dy.imag();
        jac(r0, 3 * a + 2) = dw.real();
        jac(r0 + 1, 3 * a + 2) = dw.imag();
      }
    }
    Eigen::VectorXd col_scale = jac.colwise().norm().transpose();
    for (Eigen::Index c = 0; c < col_scale.size(); ++c) {
      if (col_scale(c) == 0.0) col_scale(c) = 1.0;
    }
    const Eigen::MatrixXd js = jac * col_scale.cwiseInverse().asDiagonal();
    const Eigen::VectorXd step =
        col_scale.cwiseInverse().asDiagonal() *
        js.completeOrthogonalDecomposition().solve(-residuals(best));

    bool improved = false;
    for (double t = 1.0; t > 1e-3; t *= 0.5) {
      std::vector<Atom> trial = best;
      bool valid = true;
      for (Eigen::Index a = 0; a < n; ++a) {
        auto& at = trial[static_cast<std::size_t>(a)];
        at.point += Complex(t * step(3 * a), t * step(3 * a + 1));
        at.weight += t * step(3 * a + 2);
        if (!(at.weight > 0.0)) valid = false;
      }
      if (!valid) continue;
      const double cost = residuals(trial).squaredNorm();
      if (cost < best_cost) {
        improved = best_cost - cost > 1e-6 * best_cost;
        best = std::move(trial);
        best_cost = cost;
        break;
      }
    }
    if (!improved) break;
  }
  try {
    return AtomicMeasure(std::move(best));
  } catch (const Error&) {
    return mu;
  }
}

}  // namespace cmoment
