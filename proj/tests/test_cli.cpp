#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "cmoment/cli.hpp"
#include "cmoment/error.hpp"
#include "cmoment/io.hpp"
#include "support.hpp"

using namespace cmoment;
using namespace cmoment::test;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cmoment");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("cmoment_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text = "") const {
    const fs::path p = path / name;
    if (!text.empty()) std::ofstream(p) << text;
    return p.string();
  }
};

Json example_measure_json() {
  return Json{{"atoms",
               {{{"re", -1.0}, {"im", 0.0}, {"weight", 0.5}},
                {{"re", 1.0}, {"im", 2.0}, {"weight", 0.25}},
                {{"re", 1.0}, {"im", -2.0}, {"weight", 0.25}}}}};
}

Complex entry(const Json& doc, int i, int j) {
  for (const auto& e : doc.at("entries")) {
    if (e.at("i") == i && e.at("j") == j) return {e.at("re").get<double>(), e.at("im").get<double>()};
  }
  throw std::runtime_error("missing entry");
}

}  // namespace

TEST_CASE("generate") {
  TempDir tmp;
  const std::string mu = tmp.file("mu.json", example_measure_json().dump());
  const std::string out = tmp.file("m.json");
  const Run r = cli({"generate", "--input", mu, "--degree", "6", "--output", out});
  REQUIRE(r.code == 0);
  const Json doc = read_json_file(out);
  CHECK(doc.at("degree") == 6);
  CHECK(std::abs(entry(doc, 1, 1) - Complex(3.0)) < 1e-12);
  CHECK(std::abs(entry(doc, 2, 2) - Complex(13.0)) < 1e-12);
  CHECK(doc.at("entries").size() == 16);

  const std::string d0 = tmp.file("d0.json", R"({"atoms": [{"re": 0, "im": 0, "weight": 1}]})");
  const Run z = cli({"generate", "--input", d0, "--degree", "4"});
  REQUIRE(z.code == 0);
  const Json zd = Json::parse(z.out);
  for (const auto& e : zd.at("entries")) {
    const bool origin = e.at("i") == 0 && e.at("j") == 0;
    CHECK(e.at("re").get<double>() == (origin ? 1.0 : 0.0));
    CHECK(e.at("im").get<double>() == 0.0);
  }

  // seven symmetric atoms: odd moments cancel
  Json seven{{"atoms", Json::array()}};
  for (Complex z : harmonic_cubic_zeros(CubicParams::direct(-3.0, 2.0)).points) {
    seven["atoms"].push_back({{"re", z.real()}, {"im", z.imag()}, {"weight", 1.0 / 7.0}});
  }
  const Run s = cli({"generate", "--input", tmp.file("seven.json", seven.dump()), "--degree", "6"});
  REQUIRE(s.code == 0);
  CHECK(std::abs(entry(Json::parse(s.out), 0, 1)) < 1e-14);

  CHECK(cli({"generate", "--input", tmp.file("missing.json"), "--degree", "2"}).code == 2);
  CHECK(cli({"generate", "--input", tmp.file("bad.json", R"({"atoms": [{"re": 1}]})"), "--degree", "2"}).code == 2);
  CHECK(cli({"generate", "--input", tmp.file("neg.json", R"({"atoms": [{"re": 1, "weight": -1}]})"), "--degree", "2"})
            .code == 2);
}

TEST_CASE("solve") {
  TempDir tmp;
  const MomentTable omega = moments_of(example_measure(), 6);
  const ColumnRelation rel{2, BivarPoly::monomial(0, 2) - 3.0 * BivarPoly::z() - BivarPoly::constant(5.0)};
  const std::string good = tmp.file("good.json", to_json(omega, rel).dump());
  const Run ok = cli({"solve", "--input", good, "--json"});
  REQUIRE(ok.code == 0);
  const Json rep = Json::parse(ok.out);
  CHECK(rep.at("status") == "Solved");
  CHECK(rep.at("measure").at("atoms").size() == 3);

  const Run text = cli({"solve", "--input", good});
  CHECK(text.code == 0);
  CHECK(text.out.find("status: Solved") != std::string::npos);

  // no relation in the file: it is extracted
  CHECK(cli({"solve", "--input", tmp.file("norel.json", to_json(omega).dump())}).code == 0);

  const MomentTable bumped = omega.with_entry(2, 2, omega.moment(2, 2) + 1.0);
  const Run bad = cli({"solve", "--input", tmp.file("bad.json", to_json(bumped, rel).dump()), "--json"});
  CHECK(bad.code == 3);
  CHECK(Json::parse(bad.out).at("status") == "Infeasible");
  CHECK(Json::parse(bad.out).contains("failed_test"));

  const AtomicMeasure d0({{0.0, 1.0}});
  const std::string d0f = tmp.file("d0.json", to_json(moments_of(d0, 2), ColumnRelation{0, BivarPoly{}}).dump());
  const Run one = cli({"solve", "--input", d0f, "--json"});
  CHECK(one.code == 0);
  CHECK(Json::parse(one.out).at("measure").at("atoms").size() == 1);

  // relation that does not hold on PSD data
  const ColumnRelation wrong{2, BivarPoly::monomial(0, 2)};
  CHECK(cli({"solve", "--input", tmp.file("wrong.json", to_json(omega, wrong).dump())}).code == 5);

  CHECK(cli({"solve", "--input", tmp.file("nope.json")}).code == 2);
  CHECK(cli({"solve", "--input", tmp.file("junk.json", "{not json")}).code == 2);
}

TEST_CASE("roots") {
  const Run ex1 = cli({"roots", "--t", "2", "--u", "-1.25", "--json"});
  REQUIRE(ex1.code == 0);
  CHECK(Json::parse(ex1.out).at("count") == 3);
  const Run ex2 = cli({"roots", "--t", "-2", "--u", "1.25", "--json"});
  REQUIRE(ex2.code == 0);
  CHECK(Json::parse(ex2.out).at("count") == 7);
  const Run o = cli({"roots", "--a", "0", "--b", "0", "--json"});
  REQUIRE(o.code == 0);
  const Json z = Json::parse(o.out).at("zeros");
  REQUIRE(z.size() == 1);
  CHECK(z[0].at("re").get<double>() == 0.0);
  CHECK(cli({"roots", "--a", "1"}).code == 2);
  CHECK(cli({"roots", "--a", "1", "--b", "1", "--t", "1", "--u", "1"}).code == 2);
}

TEST_CASE("check") {
  TempDir tmp;
  std::vector<Atom> atoms;
  for (Complex z : harmonic_cubic_zeros(CubicParams::direct(-3.0, 2.0)).points) atoms.push_back({z, 1.0 / 7.0});
  const MomentTable omega = moments_of(AtomicMeasure(atoms), 6);
  const Run ok = cli({"check", "--input", tmp.file("ok.json", to_json(omega).dump()), "--a", "-3", "--b", "2"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("verdict: pass") != std::string::npos);

  const MomentTable bumped = omega.with_entry(2, 2, omega.moment(2, 2) + 1.0);
  const Run bad = cli({"check", "--input", tmp.file("bad.json", to_json(bumped).dump()), "--a", "-3", "--b", "2"});
  CHECK(bad.code == 3);
  CHECK(bad.out.find("FAIL") != std::string::npos);

  const MomentTable short_table = moments_of(AtomicMeasure(atoms), 4);
  CHECK(cli({"check", "--input", tmp.file("short.json", to_json(short_table).dump()), "--a", "-3", "--b", "2"}).code ==
        2);
}

TEST_CASE("build-matrix and xi") {
  TempDir tmp;
  const std::string f = tmp.file("m.json", to_json(moments_of(example_measure(), 2)).dump());
  const Run m = cli({"build-matrix", "--input", f, "--n", "1", "--json"});
  REQUIRE(m.code == 0);
  const Json doc = Json::parse(m.out);
  CHECK(doc.at("entries").size() == 3);
  CHECK(doc.at("entries")[1][1][0].get<double>() == doctest::Approx(3.0));
  CHECK(doc.at("entries")[1][2][0].get<double>() == doctest::Approx(-1.0));
  CHECK(cli({"build-matrix", "--input", f, "--n", "2"}).code == 2);

  const Run x = cli({"xi", "--h", "[[1,2,1,0],[2,1,-1,0],[0,1,-2,0],[1,0,2,0]]", "--r", "3", "--json"});
  REQUIRE(x.code == 0);
  CHECK(Json::parse(x.out).at("xi") == 3);
  const Run zero = cli({"xi", "--h", "[]", "--r", "3", "--json"});
  REQUIRE(zero.code == 0);
  CHECK(Json::parse(zero.out).at("xi") == 4);
  CHECK(cli({"xi", "--h", "[[0,3,1,0]]", "--r", "3"}).code == 2);
  CHECK(cli({"xi", "--h", "nope", "--r", "3"}).code == 2);
}

TEST_CASE("moments file validation") {
  const auto code = [](const std::string& text) {
    try {
      moments_from_json(Json::parse(text));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvariantViolation;
  };
  const std::string head = R"({"degree": 1, "entries": [{"i":0,"j":0,"re":1},{"i":0,"j":1,"re":0.5,"im":0.1})";
  CHECK_NOTHROW(moments_from_json(Json::parse(head + "]}")));
  CHECK(code(R"({"degree": 1, "entries": [{"i":0,"j":0,"re":1}]})") == ErrorCode::kInvalidInput);
  CHECK(code(head + R"(,{"i":0,"j":1,"re":0.5}]})") == ErrorCode::kInvalidInput);
  CHECK(code(head + R"(,{"i":1,"j":0,"re":0.5,"im":0.3}]})") == ErrorCode::kInvalidInput);
  CHECK(code(head + R"(,{"i":2,"j":0,"re":0.5}]})") == ErrorCode::kInvalidInput);
  const MomentsFile ok = moments_from_json(Json::parse(head + R"(,{"i":1,"j":0,"re":0.5,"im":-0.1}]})"));
  CHECK(ok.table.moment(1, 0) == Complex(0.5, -0.1));

  const MomentTable t = moments_of(example_measure(), 4);
  const ColumnRelation rel{1, 2.0 * BivarPoly::z() + BivarPoly::constant(Complex(0, 1))};
  const MomentsFile back = moments_from_json(to_json(t, rel));
  CHECK(back.table.moment(2, 2) == t.moment(2, 2));
  REQUIRE(back.relation.has_value());
  CHECK((back.relation->rhs - rel.rhs).max_abs_coefficient() == 0.0);
}
