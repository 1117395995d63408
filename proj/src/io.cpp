#include "cmoment/io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cmoment/error.hpp"

namespace cmoment {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::kInvalidInput, what); }

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

int int_field(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_number_integer()) malformed(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

double number_field(const Json& obj, const char* key, double fallback, bool required) {
  if (!obj.contains(key)) {
    if (required) malformed(std::string("missing field \"") + key + "\"");
    return fallback;
  }
  const Json& v = obj.at(key);
  if (!v.is_number()) malformed(std::string("field \"") + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) malformed(std::string("field \"") + key + "\" is not finite");
  return x;
}

Json complex_pair(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

}  // namespace

MomentsFile moments_from_json(const Json& doc) {
  if (!doc.is_object()) malformed("moments document must be an object");
  const int degree = int_field(doc, "degree");
  if (degree < 0) malformed("degree must be >= 0");
  const Json& entries = field(doc, "entries");
  if (!entries.is_array()) malformed("\"entries\" must be an array");

  std::vector<MomentTable::Entry> upper;
  std::vector<MomentTable::Entry> lower;
  for (const Json& e : entries) {
    const int i = int_field(e, "i");
    const int j = int_field(e, "j");
    if (i < 0 || j < 0 || i + j > degree) {
      malformed("entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside the table");
    }
    const Complex v(number_field(e, "re", 0.0, true), number_field(e, "im", 0.0, false));
    (i <= j ? upper : lower).push_back({i, j, v});
  }
  std::map<std::pair<int, int>, int> seen;
  for (const auto& e : upper) {
    if (++seen[{e.i, e.j}] > 1) {
      malformed("entry (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") repeated");
    }
  }
  MomentTable table = [&] {
    try {
      return MomentTable(degree, upper);
    } catch (const Error& err) {
      malformed(err.what());
    }
  }();
  for (const auto& e : lower) {
    const Complex expected = table.moment(e.i, e.j);
    if (std::abs(expected - e.value) > 1e-12 * (1.0 + std::abs(expected))) {
      malformed("entry (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                ") is not the conjugate of its mirror");
    }
  }

  MomentsFile file{std::move(table), std::nullopt};
  if (doc.contains("relation") && !doc.at("relation").is_null()) {
    const Json& rel = doc.at("relation");
    const int k = int_field(rel, "k");
    if (k < 0) malformed("relation k must be >= 0");
    const Json& coeffs = field(rel, "coefficients");
    if (!coeffs.is_array()) malformed("relation coefficients must be an array");
    BivarPoly::Terms terms;
    for (const Json& c : coeffs) {
      const int n = int_field(c, "n");
      const int m = int_field(c, "m");
      if (n < 0 || m < 0 || n + m > k) malformed("relation term beyond total degree k");
      terms[Monomial{n, m}] +=
          Complex(number_field(c, "re", 0.0, true), number_field(c, "im", 0.0, false));
    }
    file.relation = ColumnRelation{k, BivarPoly(std::move(terms))};
  }
  return file;
}

Json to_json(const MomentTable& table, const std::optional<ColumnRelation>& relation) {
  Json entries = Json::array();
  for (const auto& e : table.upper_entries()) {
    entries.push_back({{"i", e.i}, {"j", e.j}, {"re", e.value.real()}, {"im", e.value.imag()}});
  }
  Json doc{{"degree", table.degree()}, {"entries", std::move(entries)}};
  if (relation) {
    Json coeffs = Json::array();
    for (const auto& [m, c] : relation->rhs.terms()) {
      coeffs.push_back({{"n", m.zbar}, {"m", m.z}, {"re", c.real()}, {"im", c.imag()}});
    }
    doc["relation"] = {{"k", relation->k}, {"coefficients", std::move(coeffs)}};
  }
  return doc;
}

AtomicMeasure measure_from_json(const Json& doc) {
  const Json& atoms = field(doc, "atoms");
  if (!atoms.is_array()) malformed("\"atoms\" must be an array");
  std::vector<Atom> out;
  for (const Json& a : atoms) {
    out.push_back({Complex(number_field(a, "re", 0.0, true), number_field(a, "im", 0.0, false)),
                   number_field(a, "weight", 0.0, true)});
  }
  return AtomicMeasure(std::move(out));
}

Json to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) {
    atoms.push_back({{"re", a.point.real()}, {"im", a.point.imag()}, {"weight", a.weight}});
  }
  return Json{{"atoms", std::move(atoms)}};
}

BivarPoly poly_from_json(const Json& doc) {
  if (!doc.is_array()) malformed("polynomial must be an array of [i, j, re, im]");
  BivarPoly::Terms terms;
  for (const Json& t : doc) {
    if (!t.is_array() || t.size() < 3 || t.size() > 4 || !t[0].is_number_integer() ||
        !t[1].is_number_integer() || !t[2].is_number() || (t.size() == 4 && !t[3].is_number())) {
      malformed("polynomial term must be [i, j, re, im]");
    }
    const int i = t[0].get<int>();
    const int j = t[1].get<int>();
    if (i < 0 || j < 0) malformed("negative exponent in polynomial term");
    terms[Monomial{i, j}] += Complex(t[2].get<double>(), t.size() == 4 ? t[3].get<double>() : 0.0);
  }
  return BivarPoly(std::move(terms));
}

Json to_json(const BivarPoly& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms()) out.push_back({m.zbar, m.z, c.real(), c.imag()});
  return out;
}

Json to_json(const ZeroSet& zeros) {
  Json out = Json::array();
  for (std::size_t k = 0; k < zeros.points.size(); ++k) {
    Json z = complex_pair(zeros.points[k]);
    if (k < zeros.multiplicities.size() && zeros.multiplicities[k] != 1) {
      z["multiplicity"] = zeros.multiplicities[k];
    }
    out.push_back(std::move(z));
  }
  return out;
}

Json to_json(const XiData& xi) {
  auto opt = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
  Json top = Json::array();
  for (const auto& m : xi.top_monomials) top.push_back({m.zbar, m.z});
  return Json{{"d_h", xi.d_h},        {"top_monomials", std::move(top)},
              {"c1", xi.c1},          {"c1_bar", xi.c1_bar},
              {"c2", opt(xi.c2)},     {"c2_bar", opt(xi.c2_bar)},
              {"c", xi.c},            {"alpha_c1", xi.alpha_c1},
              {"alpha_c1_bar", xi.alpha_c1_bar},
              {"alpha_c", xi.alpha_c}, {"r", xi.r},
              {"xi", xi.xi}};
}

Json to_json(const PsdReport& psd) {
  return Json{{"is_psd", psd.is_psd},           {"min_eigenvalue", psd.min_eigenvalue},
              {"max_eigenvalue", psd.max_eigenvalue}, {"rank", psd.rank},
              {"tolerance", psd.tolerance},     {"eigenvalues", psd.eigenvalues}};
}

Json to_json(const SolveReport& report) {
  Json doc{{"status", to_string(report.status)}, {"route", report.route}};
  if (report.measure) doc["measure"] = to_json(*report.measure);
  if (report.failed_test) {
    doc["failed_test"] = {{"test", report.failed_test->test},
                          {"detail", report.failed_test->detail},
                          {"value", report.failed_test->value}};
  }
  if (report.q) doc["q"] = to_json(report.q->to_bivar());
  if (report.zeros) doc["zeros"] = to_json(*report.zeros);
  if (report.xi) doc["xi"] = to_json(*report.xi);
  if (report.xi_level) doc["xi_level"] = *report.xi_level;
  if (report.membership) {
    doc["membership"] = {{"is_member", report.membership->is_member},
                         {"max_residual", report.membership->max_residual},
                         {"level", report.membership->level}};
  }
  Json psd = Json::array();
  for (const auto& [name, p] : report.psd) {
    Json entry = to_json(p);
    entry["matrix"] = name;
    psd.push_back(std::move(entry));
  }
  doc["psd"] = std::move(psd);
  if (report.verification_residual) doc["verification_residual"] = *report.verification_residual;
  doc["notes"] = report.notes;
  return doc;
}

Json to_json(const CubicConditionReport& report) {
  auto list = [](const std::vector<ConditionResidual>& v) {
    Json out = Json::array();
    for (const auto& c : v) {
      out.push_back({{"name", c.name}, {"residual", c.residual}, {"pass", c.pass}});
    }
    return out;
  };
  Json doc{{"region", report.region.label},
           {"region_id", to_string(report.region.region)},
           {"zero_count", report.region.zero_count},
           {"h", to_json(report.h_frame)},
           {"riesz", list(report.riesz)},
           {"entries", list(report.entries)},
           {"riesz_pass", report.riesz_pass},
           {"entries_pass", report.entries_pass},
           {"agree", report.agree},
           {"verdict", report.verdict}};
  if (report.psd) {
    doc["psd"] = to_json(*report.psd);
    doc["psd"]["matrix"] = "M(" + std::to_string(report.region.matrix_level) + ")";
  }
  if (report.relation) {
    doc["relation"] = {{"is_member", report.relation->is_member},
                       {"max_residual", report.relation->max_residual}};
  }
  return doc;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    malformed(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) malformed("cannot write " + path);
  out << text;
}

}  // namespace cmoment
