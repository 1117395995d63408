#include "cmoment/cli.hpp"

#include <iomanip>
#include <sstream>

#include "CLI11.hpp"

#include "cmoment/error.hpp"
#include "cmoment/io.hpp"

namespace cmoment {

namespace {

std::string complex_text(Complex c) {
  std::ostringstream os;
  os << std::setprecision(12) << c.real() << (c.imag() < 0 ? " - " : " + ")
     << std::abs(c.imag()) << "i";
  return os.str();
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::optional<ColumnRelation> find_relation(const MomentTable& table) {
  for (int k = 0; 2 * k + 2 <= table.degree(); ++k) {
    if (auto rel = extract_column_relation(MomentMatrix::build(table, k + 1))) return rel;
  }
  return std::nullopt;
}

struct CubicFlags {
  double a = 0, b = 0, t = 0, u = 0;
  CLI::Option* oa = nullptr;
  CLI::Option* ob = nullptr;
  CLI::Option* ot = nullptr;
  CLI::Option* ou = nullptr;

  void attach(CLI::App* cmd) {
    oa = cmd->add_option("--a", a, "coefficient of z in z^3 + a z + b zbar");
    ob = cmd->add_option("--b", b, "coefficient of zbar");
    ot = cmd->add_option("--t", t, "rotated form w^3 = i t w + u wbar");
    ou = cmd->add_option("--u", u);
  }

  CubicParams params() const {
    const bool direct = oa->count() > 0 && ob->count() > 0;
    const bool rotated = ot->count() > 0 && ou->count() > 0;
    if (direct == rotated) {
      throw Error(ErrorCode::kInvalidInput, "give either --a and --b or --t and --u");
    }
    return direct ? CubicParams::direct(a, b) : CubicParams::from_tu(t, u);
  }
};

std::string solve_text(const SolveReport& r) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "status: " << to_string(r.status) << "\n";
  os << "route: " << r.route << "\n";
  if (r.failed_test) {
    os << "failed test: " << r.failed_test->test << " (" << r.failed_test->detail << ")\n";
  }
  if (r.xi_level) os << "xi: " << *r.xi_level << "\n";
  if (r.q) os << "Q: " << to_string(r.q->to_bivar()) << "\n";
  if (r.zeros) {
    os << "zero set (" << r.zeros->count() << "):\n";
    for (const auto& z : r.zeros->points) os << "  " << complex_text(z) << "\n";
  }
  for (const auto& [name, p] : r.psd) {
    os << "psd " << name << ": " << (p.is_psd ? "yes" : "no") << ", min eigenvalue "
       << p.min_eigenvalue << ", rank " << p.rank << "\n";
  }
  if (r.membership) {
    os << "membership residual: " << r.membership->max_residual << " (level "
       << r.membership->level << ")\n";
  }
  if (r.measure) {
    os << "measure (" << r.measure->size() << " atoms):\n";
    for (const auto& a : r.measure->atoms()) {
      os << "  " << complex_text(a.point) << "  weight " << a.weight << "\n";
    }
  }
  if (r.verification_residual) os << "verification residual: " << *r.verification_residual << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

std::string check_text(const CubicConditionReport& r) {
  std::ostringstream os;
  os << std::setprecision(6);
  os << "region: " << r.region.label << " (" << r.region.zero_count << " zeros)\n";
  os << "h: " << to_string(r.h_frame) << "\n";
  for (const auto& c : r.riesz) {
    os << "  " << (c.pass ? "ok  " : "FAIL") << " " << c.name << "  residual " << c.residual << "\n";
  }
  for (const auto& c : r.entries) {
    os << "  " << (c.pass ? "ok  " : "FAIL") << " " << c.name << "  residual " << c.residual << "\n";
  }
  if (r.psd) {
    os << "psd M(" << r.region.matrix_level << "): " << (r.psd->is_psd ? "yes" : "no")
       << ", min eigenvalue " << r.psd->min_eigenvalue << ", rank " << r.psd->rank << "\n";
  }
  if (r.relation) {
    os << "column relation residual: " << r.relation->max_residual << "\n";
  }
  os << "formulations agree: " << (r.agree ? "yes" : "no") << "\n";
  os << "verdict: " << (r.verdict ? "pass" : "fail") << "\n";
  return os.str();
}

}  // namespace

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSolved: return 0;
    case SolveStatus::kInfeasible: return 3;
    case SolveStatus::kIndeterminate: return 4;
  }
  return 4;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kRelationViolated:
    case ErrorCode::kInconsistentExtension:
      return 5;
    case ErrorCode::kInvariantViolation:
      return 4;
    default:
      return 2;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truncated complex moment problems with a column relation"};
  app.require_subcommand(1);
  bool json = false;
  double tol = -1.0;
  std::string input, output;
  app.add_flag("--json", json, "machine-readable output");
  app.add_option("--tol", tol, "override the default tolerance of the command");

  auto* gen = app.add_subcommand("generate", "moments of an atomic measure");
  int degree = 0;
  int relation_k = -1;
  gen->add_option("--input", input, "measure file")->required();
  gen->add_option("--degree", degree, "largest total degree i + j")->required();
  gen->add_option("--output", output);
  gen->add_option("--relation-k", relation_k, "also store the relation Z^{k+1} found in M(k+1)");

  auto* solve = app.add_subcommand("solve", "decide solvability and build a measure");
  solve->add_option("--input", input, "moments file")->required();
  solve->add_option("--output", output);

  auto* roots = app.add_subcommand("roots", "zeros of z^3 + a z + b zbar");
  CubicFlags roots_flags;
  roots_flags.attach(roots);

  auto* check = app.add_subcommand("check", "table conditions for a harmonic cubic relation");
  check->add_option("--input", input, "moments file")->required();
  CubicFlags check_flags;
  check_flags.attach(check);

  auto* build = app.add_subcommand("build-matrix", "dump M(n)");
  int level = -1;
  build->add_option("--input", input, "moments file")->required();
  build->add_option("--degree,--n", level, "matrix level n (default: half the table degree)");

  auto* xi = app.add_subcommand("xi", "truncation level data for h and r");
  xi->set_help_flag("--help", "print this help message and exit");
  std::string h_text;
  int r = 0;
  xi->add_option("--h", h_text, "h as [[i, j, re, im], ...] for zbar^i z^j")->required();
  xi->add_option("--r", r, "degree of the characteristic polynomial")->required();

  for (auto* sub : {gen, solve, roots, check, build, xi}) {
    sub->add_flag("--json", json, "machine-readable output");
    sub->add_option("--tol", tol, "override the default tolerance of the command");
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      const AtomicMeasure mu = measure_from_json(read_json_file(input));
      if (degree < 0) throw Error(ErrorCode::kInvalidInput, "degree must be >= 0");
      const MomentTable table = moments_of(mu, degree);
      std::optional<ColumnRelation> rel;
      if (relation_k >= 0) {
        if (2 * relation_k + 2 > degree) {
          throw Error(ErrorCode::kInvalidInput, "relation at k needs degree >= 2k + 2");
        }
        rel = extract_column_relation(MomentMatrix::build(table, relation_k + 1));
        if (!rel) {
          err << "no column relation Z^" << relation_k + 1 << " in M(" << relation_k + 1 << ")\n";
          return 2;
        }
      }
      emit(out, output, to_json(table, rel).dump(2) + "\n");
      return 0;
    }

    if (*solve) {
      const MomentsFile file = moments_from_json(read_json_file(input));
      std::optional<ColumnRelation> rel = file.relation;
      if (!rel) rel = find_relation(file.table);
      if (!rel) throw Error(ErrorCode::kInvalidInput, "no relation given and none found");
      SolveOptions opts;
      if (tol > 0) opts.verify_tolerance = tol;
      const SolveReport report = solve_truncated(file.table, *rel, opts);
      emit(out, output, json ? to_json(report).dump(2) + "\n" : solve_text(report));
      return exit_code(report.status);
    }

    if (*roots) {
      const CubicParams params = roots_flags.params();
      const RegionInfo region = classify_cubic(params.a, params.b);
      const ZeroSet zeros = harmonic_cubic_zeros(params);
      if (json) {
        out << Json{{"region", region.label},
                    {"count", zeros.count()},
                    {"rotated", params.rotated},
                    {"zeros", to_json(zeros)}}
                   .dump(2)
            << "\n";
      } else {
        out << "region: " << region.label << "\ncount: " << zeros.count() << "\n";
        for (const auto& z : zeros.points) out << "  " << complex_text(z) << "\n";
      }
      return 0;
    }

    if (*check) {
      const MomentsFile file = moments_from_json(read_json_file(input));
      const CubicConditionReport report = check_cubic_conditions(
          file.table, check_flags.params(), tol > 0 ? tol : kConditionTolerance);
      out << (json ? to_json(report).dump(2) + "\n" : check_text(report));
      return report.verdict ? 0 : 3;
    }

    if (*build) {
      const MomentsFile file = moments_from_json(read_json_file(input));
      const int n = level >= 0 ? level : file.table.degree() / 2;
      const MomentMatrix m = MomentMatrix::build(file.table, n);
      if (json) {
        Json rows = Json::array();
        for (Eigen::Index i = 0; i < m.dim(); ++i) {
          Json row = Json::array();
          for (Eigen::Index j = 0; j < m.dim(); ++j) {
            row.push_back({m.entries()(i, j).real(), m.entries()(i, j).imag()});
          }
          rows.push_back(std::move(row));
        }
        Json basis = Json::array();
        for (Eigen::Index i = 0; i < m.dim(); ++i) {
          const Monomial mono = monomial_at(static_cast<std::size_t>(i));
          basis.push_back({mono.zbar, mono.z});
        }
        out << Json{{"level", n}, {"basis", basis}, {"entries", rows}}.dump(2) << "\n";
      } else {
        out << "M(" << n << "), rows and columns zbar^i z^j in degree-lex order\n";
        for (Eigen::Index i = 0; i < m.dim(); ++i) {
          for (Eigen::Index j = 0; j < m.dim(); ++j) {
            out << (j ? "  " : "") << complex_text(m.entries()(i, j));
          }
          out << "\n";
        }
      }
      return 0;
    }

    if (*xi) {
      Json parsed;
      try {
        parsed = Json::parse(h_text);
      } catch (const Json::exception& e) {
        throw Error(ErrorCode::kInvalidInput, std::string("--h: ") + e.what());
      }
      const BivarPoly h = poly_from_json(parsed);
      if (h.is_zero()) {
        if (json) {
          out << Json{{"h_zero", true}, {"r", r}, {"xi", 2 * r - 2}}.dump(2) << "\n";
        } else {
          out << "h = 0, xi = 2r - 2 = " << 2 * r - 2 << "\n";
        }
        return 0;
      }
      const XiData data = compute_xi(h, r);
      if (json) {
        out << to_json(data).dump(2) << "\n";
      } else {
        auto opt = [](const std::optional<int>& v) {
          return v ? std::to_string(*v) : std::string("-inf");
        };
        out << "d_h = " << data.d_h << "\nc1 = " << data.c1 << ", c1' = " << data.c1_bar
            << "\nc2 = " << opt(data.c2) << ", c2' = " << opt(data.c2_bar)
            << "\nalpha = " << data.alpha_c << "\nxi = " << data.xi << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return 2;
}

}  // namespace cmoment
