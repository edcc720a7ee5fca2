#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include "nlft/cli.hpp"
#include "nlft/estimates.hpp"
#include "nlft/forward.hpp"
#include "nlft/io.hpp"
#include "oracles.hpp"

using namespace nlft;
namespace fs = std::filesystem;

namespace {

CoefficientSequence seq(Index lo, std::vector<Complex> c) { return {lo, std::move(c)}; }

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("nlft_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string put(const std::string& name, const std::string& text) const {
    io::write_file(dir / name, text);
    return (dir / name).string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(io::format_number(0.5) == "0.5");
  CHECK(io::format_number(0.1) == "0.10000000000000001");
  CHECK(io::format_number(NAN) == "null");
  CHECK(io::format_number(INFINITY) == "null");
}

TEST_CASE("sequence serialization round-trips bit for bit") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = oracle::random_potential(rng, -20, 20, 3.0);
    CHECK(io::parse_sequence(io::write_sequence(s)) == s);
  }
  CHECK(io::write_sequence(CoefficientSequence()) == "{\"support\": null, \"coeffs\": []}");
  CHECK(io::parse_sequence(io::write_sequence(CoefficientSequence())).empty());
  CHECK(io::parse_sequence("{\"support\": [2, 3], \"coeffs\": [0.25, [0, -1]]}") ==
        seq(2, {0.25, Complex(0.0, -1.0)}));

  const auto pair = nlft_forward(seq(0, {0.5, 0.5}));
  const auto back = io::parse_pair(io::write_pair(pair));
  CHECK(back.a == pair.a);
  CHECK(back.b == pair.b);
  CHECK(back.grid_residual == pair.grid_residual);
  CHECK(io::looks_like_pair(io::write_pair(pair)));
  CHECK_FALSE(io::looks_like_pair(io::write_sequence(pair.a)));
}

TEST_CASE("malformed sequences are input errors") {
  CHECK_THROWS_AS(io::parse_sequence("{"), InputError);
  CHECK_THROWS_AS(io::parse_sequence("[1, 2]"), InputError);
  CHECK_THROWS_AS(io::parse_sequence("{\"support\": [0, 1], \"coeffs\": [[1, 0]]}"), InputError);
  CHECK_THROWS_AS(io::parse_sequence("{\"support\": [1, 0], \"coeffs\": []}"), InputError);
  CHECK_THROWS_AS(io::parse_sequence("{\"support\": [0, 0], \"coeffs\": [[1, 2, 3]]}"), InputError);
  CHECK_THROWS_AS(io::parse_sequence("{\"support\": [0.5, 1], \"coeffs\": [1, 1]}"), InputError);
  CHECK_THROWS_AS(io::parse_sequence("{\"support\": null, \"coeffs\": [1]}"), InputError);
  CHECK_THROWS_AS(io::parse_sequence("{\"coeffs\": []}"), InputError);
}

TEST_CASE("weights and intervals") {
  CHECK(io::parse_weight("one").describe() == "one");
  CHECK(io::parse_weight("poly:alpha=1.5").describe() == "poly:alpha=1.5");
  CHECK_THROWS_AS(io::parse_weight("poly:alpha=-1"), InputError);
  CHECK_THROWS_AS(io::parse_weight("poly:alpha="), InputError);
  CHECK_THROWS_AS(io::parse_weight("exp"), InputError);
  CHECK(io::parse_interval("-3..4") == Interval{-3, 4});
  CHECK(io::parse_interval("0..0") == Interval{0, 0});
  CHECK_THROWS_AS(io::parse_interval("3..1"), InputError);
  CHECK_THROWS_AS(io::parse_interval("a..1"), InputError);
  CHECK_THROWS_AS(io::parse_interval("1-2"), InputError);
}

TEST_CASE("configuration") {
  const auto d = io::parse_config("{}");
  CHECK(d.grid_size == 0);
  CHECK(d.szego_margin == 1e-6);
  CHECK(d.solver_tol == 1e-12);
  CHECK(d.round_trip_tol == 1e-8);
  CHECK(d.weight == "one");

  const auto c = io::parse_config(
      "{\"grid_size\": 2048, \"szego_margin\": 1e-4, \"solver_tol\": 1e-10, \"round_trip_tol\": 1e-6, "
      "\"weight\": \"poly:alpha=2\", \"window\": \"-1..5\", \"seed\": 7}");
  CHECK(c.grid_size == 2048);
  CHECK(c.szego_margin == 1e-4);
  CHECK(c.weight == "poly:alpha=2");
  CHECK(c.window == Interval{-1, 5});
  CHECK(c.seed == 7);
  CHECK(io::parse_config("{\"grid_size\": \"auto\", \"window\": [0, 2]}").window == Interval{0, 2});

  CHECK_THROWS_AS(io::parse_config("{\"grid_size\": 1000}"), InputError);
  CHECK_THROWS_AS(io::parse_config("{\"szego_margin\": 0}"), InputError);
  CHECK_THROWS_AS(io::parse_config("{\"colour\": 1}"), InputError);
  CHECK_THROWS_AS(io::parse_config("{\"weight\": \"exp\"}"), InputError);

  Scratch s;
  const auto path = s.put("cfg.json", "{\"grid_size\": 4096}");
  ::setenv("NLFT_CONFIG", path.c_str(), 1);
  CHECK(io::config_from_env().grid_size == 4096);
  ::unsetenv("NLFT_CONFIG");
  CHECK(io::config_from_env().grid_size == 0);
}

TEST_CASE("report and CSV output") {
  const auto report = run_suite(seq(0, {0.5, 0.5}));
  const auto text = io::write_report(report);
  CHECK(text.find("\"name\": \"determinant\"") != std::string::npos);
  CHECK(text.find("\"kind\": \"monitored\"") != std::string::npos);
  const auto csv = io::write_decay_csv(report);
  CHECK(csv.rfind("n,abs_F_n,first_order_rhs,convergence_a1\n", 0) == 0);
  CHECK(csv.find("\n0,0.5,,") != std::string::npos);
}

TEST_CASE("forward subcommand") {
  Scratch s;
  const auto f = s.put("f.json", io::write_sequence(seq(0, {0.5, 0.5})));
  const auto r = invoke({"forward", "--input", f, "--out", s.path("p.json")});
  CHECK(r.code == 0);
  const auto pair = io::parse_pair(io::read_file(s.path("p.json")));
  CHECK(std::abs(pair.a[0] - 0.8) < 1e-15);
  CHECK(std::abs(pair.b[1] - 0.4) < 1e-15);
  CHECK(r.out.find("a*(0) = 0.7999999999999999") != std::string::npos);

  const auto e = s.put("e.json", io::write_sequence(CoefficientSequence()));
  const auto re = invoke({"forward", "--input", e});
  CHECK(re.code == 0);
  const auto empty = io::parse_pair(re.out);
  CHECK(empty.a == CoefficientSequence::constant(1.0));
  CHECK(empty.b.empty());

  CHECK(invoke({"forward", "--input", s.put("bad.json", "{\"support\": [0, 1]")}).code == 1);
  CHECK(invoke({"forward", "--input", s.path("missing.json")}).code == 1);
  CHECK(invoke({"forward"}).code == 1);
  CHECK(invoke({"forward", "--input", f, "--grid", "100"}).code == 1);
  CHECK(invoke({}).code == 1);
}

TEST_CASE("inverse subcommand") {
  Scratch s;
  const auto pair = nlft_forward(seq(0, {0.5, 0.5}));
  const auto b = s.put("b.json", io::write_sequence(pair.b));
  const auto r = invoke({"inverse", "--b", b, "--out", s.path("F.json")});
  CHECK(r.code == 0);
  const auto f = io::parse_sequence(io::read_file(s.path("F.json")));
  CHECK((f - seq(0, {0.5, 0.5})).max_abs() < 1e-12);
  CHECK(r.out.find("b round-trip error") != std::string::npos);

  const auto with_a = invoke({"inverse", "--b", b, "--a", s.put("a.json", io::write_sequence(pair.a))});
  CHECK(with_a.code == 0);

  const auto zero = invoke({"inverse", "--b", s.put("z.json", io::write_sequence(CoefficientSequence())), "--support",
                         "0..2"});
  CHECK(zero.code == 0);

  const auto edge = invoke({"inverse", "--b", s.put("edge.json", io::write_sequence(seq(0, {0.5, 0.5})))});
  CHECK(edge.code == 2);
  CHECK(edge.err.find("Szego") != std::string::npos);

  CHECK(invoke({"inverse", "--b", b, "--imaginary"}).code == 2);
  const auto im = seq(0, {Complex(0.0, 0.3), Complex(0.0, -0.2), Complex(0.0, 0.1)});
  const auto bi = s.put("bi.json", io::write_sequence(nlft_forward(im).b));
  CHECK(invoke({"inverse", "--b", bi, "--imaginary"}).code == 0);
}

TEST_CASE("verify and norms subcommands") {
  Scratch s;
  const auto f = s.put("f.json", io::write_sequence(seq(0, {0.5, 0.5})));
  const auto r = invoke({"verify", "--input", f, "--out", s.path("r.json"), "--csv", s.path("d.csv")});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("PASS", 0) == 0);
  CHECK(io::read_file(s.path("d.csv")).rfind("n,abs_F_n,first_order_rhs,convergence_a1", 0) == 0);
  CHECK(io::read_file(s.path("r.json")).find("round_trip_F") != std::string::npos);

  auto pair = nlft_forward(seq(0, {0.5, 0.5}));
  CHECK(invoke({"verify", "--input", s.put("p.json", io::write_pair(pair))}).code == 0);
  pair.a = pair.a * 1.01;
  const auto tampered = invoke({"verify", "--input", s.put("t.json", io::write_pair(pair))});
  CHECK(tampered.code == 2);
  CHECK(tampered.out.find("FAIL determinant") != std::string::npos);

  CHECK(invoke({"verify", "--b", s.put("b.json", io::write_sequence(nlft_forward(seq(0, {0.5, 0.5})).b))}).code == 0);
  CHECK(invoke({"verify", "--b", s.put("edge.json", io::write_sequence(seq(0, {0.5, 0.5})))}).code == 2);
  CHECK(invoke({"verify"}).code == 1);
  CHECK(invoke({"verify", "--input", f, "--weight", "poly:alpha=3"}).code == 0);

  const auto n = invoke({"norms", "--input", s.path("p.json")});
  CHECK(n.code == 0);
  CHECK(n.out.find("||b/a*||_one = 1.333333333333333") != std::string::npos);
  const auto ns = invoke({"norms", "--input", f, "--weight", "poly:alpha=1"});
  CHECK(ns.code == 0);
  CHECK(ns.out.find("||s||_poly:alpha=1 = 1.5") != std::string::npos);
}
