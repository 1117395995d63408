#include <algorithm>
#include <cmath>
#include <string>

#include "cmoment/analysis.hpp"
#include "cmoment/error.hpp"
#include "cmoment/moment_matrix.hpp"

namespace cmoment {

XiData compute_xi(const BivarPoly& h, int r) {
  if (h.is_zero()) throw Error(ErrorCode::kEmptyPolynomial, "compute_xi needs h != 0");
  if (h.z_degree() >= r || h.zbar_degree() >= r) {
    throw Error(ErrorCode::kInvalidInput, "h must have z- and zbar-degree below r = " +
                                              std::to_string(r) + ", got " + to_string(h));
  }
  XiData x;
  x.r = r;
  x.d_h = h.degree();
  for (const auto& [m, c] : h.terms()) {
    if (m.degree() == x.d_h) x.top_monomials.push_back(m);
  }
  x.c1 = 0;
  x.c1_bar = 0;
  for (const auto& m : x.top_monomials) {
    x.c1 = std::max(x.c1, m.z);
    x.c1_bar = std::max(x.c1_bar, m.zbar);
  }
  for (const auto& m : x.top_monomials) {
    if (m.z != x.c1) x.c2 = std::max(x.c2.value_or(m.z), m.z);
    if (m.zbar != x.c1_bar) x.c2_bar = std::max(x.c2_bar.value_or(m.zbar), m.zbar);
  }
  x.alpha_c1 = x.c2 ? std::min(r - x.c1, x.c1 - *x.c2) : r - x.c1;
  x.alpha_c1_bar = x.c2_bar ? std::min(r - x.c1_bar, x.c1_bar - *x.c2_bar) : r - x.c1_bar;
  x.c = std::max(x.c1, x.c1_bar);
  if (x.c1 > x.c1_bar) {
    x.alpha_c = x.alpha_c1;
  } else if (x.c1_bar > x.c1) {
    x.alpha_c = x.alpha_c1_bar;
  } else {
    // both branches apply; the smaller alpha gives the safe (larger) level
    x.alpha_c = std::min(x.alpha_c1, x.alpha_c1_bar);
  }
  x.xi = 2 * r - 2 - x.alpha_c;
  return x;
}

int truncation_level(const BivarPoly& h, int r) {
  if (h.is_zero()) return 2 * r - 2;
  return compute_xi(h, r).xi;
}

namespace {

bool coefficient_less(const UniPoly& a, const UniPoly& b) {
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  for (std::size_t k = 0; k < std::min(ca.size(), cb.size()); ++k) {
    if (ca[k].real() != cb[k].real()) return ca[k].real() < cb[k].real();
    if (ca[k].imag() != cb[k].imag()) return ca[k].imag() < cb[k].imag();
  }
  return ca.size() < cb.size();
}

struct Candidate {
  std::vector<int> exponents;
  UniPoly poly;
};

}  // namespace

MinimalPolynomial minimal_analytic_charpoly(const Rdis& s, int level) {
  const UniPoly p = UniPoly::from_bivar(s.charpoly());
  const MembershipReport full = is_characteristic(s, s.charpoly(), level);
  if (!full.is_member) {
    throw Error(ErrorCode::kNotCharacteristic,
                "charpoly fails membership, residual " + std::to_string(full.max_residual));
  }
  const ZeroSet roots = analytic_roots(p);
  const int n = p.degree();

  // every sub-multiset of the roots, grouped by degree
  std::vector<std::vector<Candidate>> by_degree(static_cast<std::size_t>(n) + 1);
  std::vector<int> e(roots.count(), 0);
  while (true) {
    int degree = 0;
    bool whole = true;
    ZeroSet sub;
    for (std::size_t k = 0; k < e.size(); ++k) {
      degree += e[k];
      whole = whole && e[k] == roots.multiplicities[k];
      if (e[k] > 0) {
        sub.points.push_back(roots.points[k]);
        sub.multiplicities.push_back(e[k]);
      }
    }
    if (degree > 0) {
      // the full divisor is P itself, kept exact
      UniPoly poly = product_from_roots(sub);
      if (whole) {
        std::vector<Complex> monic = p.coefficients();
        for (auto& c : monic) c /= p.leading();
        poly = UniPoly(std::move(monic));
      }
      by_degree[static_cast<std::size_t>(degree)].push_back({e, std::move(poly)});
    }
    std::size_t k = 0;
    while (k < e.size() && e[k] == roots.multiplicities[k]) e[k++] = 0;
    if (k == e.size()) break;
    ++e[k];
  }

  for (auto& group : by_degree) {
    std::sort(group.begin(), group.end(), [](const Candidate& a, const Candidate& b) {
      return coefficient_less(a.poly, b.poly);
    });
    for (const auto& cand : group) {
      MembershipReport report = is_characteristic(s, cand.poly.to_bivar(), level);
      if (!report.is_member) continue;
      MinimalPolynomial result;
      result.poly = cand.poly;
      for (std::size_t k = 0; k < cand.exponents.size(); ++k) {
        if (cand.exponents[k] == 0) continue;
        result.roots.points.push_back(roots.points[k]);
        result.roots.multiplicities.push_back(cand.exponents[k]);
      }
      result.membership = report;
      if (psd_check(MomentMatrix::build(s, level)).is_psd) {
        for (int m : result.roots.multiplicities) {
          if (m != 1) {
            throw Error(ErrorCode::kInvariantViolation,
                        "PSD sequence with a repeated root in its minimal polynomial");
          }
        }
      }
      return result;
    }
  }
  throw Error(ErrorCode::kInvariantViolation, "no divisor passed although the charpoly did");
}

}  // namespace cmoment
