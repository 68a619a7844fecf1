#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "jacsidon/cli.hpp"

using namespace jacsidon;
using cli::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "jacsidon");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return "cli_test_" + name; }

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Brute-force quadruple scan over coordinate vectors.
bool oracle_is_sidon(const Json& file) {
  auto moduli = file["moduli"].get<std::vector<std::uint64_t>>();
  auto el = file["elements"];
  auto sum = [&](const Json& a, const Json& b) {
    std::vector<std::uint64_t> s;
    for (std::size_t i = 0; i < moduli.size(); ++i)
      s.push_back((a[i].get<std::uint64_t>() + b[i].get<std::uint64_t>()) % moduli[i]);
    return s;
  };
  std::size_t n = el.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
          if (a != c && a != d && sum(el[a], el[b]) == sum(el[c], el[d])) return false;
  return true;
}

}  // namespace

TEST_CASE("construct examples") {
  auto r = run({"construct", "--family", "g0-m4", "--q", "3"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["group"] == "Z/13");
  CHECK(j["elements"].size() == 4);
  CHECK(j["report"]["verdict"] == "sidon");
  CHECK(oracle_is_sidon(j));

  r = run({"construct", "--family", "g2", "--q", "7", "--f", "1,0,0,0,0,1"});
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  CHECK(j["elements"].size() == 8);
  CHECK(j["report"]["verdict"] == "symmetric");
  CHECK(j["report"]["center"] == j["provenance"]["recipe_center"]);

  r = run({"construct", "--family", "g0-m1", "--q", "4"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["elements"].size() == 2);

  r = run({"construct", "--family", "g0-m4", "--q", "3", "--expect", "symmetric"});
  CHECK(r.code == 1);
}

TEST_CASE("point count of y^2 = x^5 + 1 over F_7") {
  // affine solutions plus the point at infinity
  int count = 1;
  for (int x = 0; x < 7; ++x)
    for (int y = 0; y < 7; ++y)
      if ((y * y) % 7 == (x * x * x * x * x + 1) % 7) ++count;
  CHECK(count == 8);
}

TEST_CASE("classify, verify, desymmetrize round trip") {
  std::string path = temp_path("pq.json");
  auto r = run({"construct", "--family", "g1-pq", "--q", "11", "--seed", "5", "-o", path});
  REQUIRE(r.code == 0);
  std::string original = read_file(path);
  auto j = Json::parse(original);
  CHECK(j["seed"] == 5);
  CHECK(j["report"]["verdict"] == "symmetric");

  CHECK(run({"classify", path, "--expect", "symmetric"}).code == 0);
  CHECK(run({"classify", path, "--expect", "sidon"}).code == 1);

  r = run({"verify", path});
  CHECK(r.code == 0);
  CHECK(r.out == original);

  std::string half = temp_path("half.json");
  r = run({"desymmetrize", path, "-o", half});
  REQUIRE(r.code == 0);
  auto d = Json::parse(read_file(half));
  CHECK(d["report"]["verdict"] == "sidon");
  CHECK(oracle_is_sidon(d));
  CHECK(d["elements"].size() * 2 + d["provenance"]["dropped"].size() == j["elements"].size());
  CHECK(run({"verify", half, "--expect", "sidon"}).code == 0);

  // a set with x1 + x2 - x3 added has a non-trivial quadruple
  auto broken = Json::parse(read_file(half));
  auto moduli = broken["moduli"].get<std::vector<std::uint64_t>>();
  Json extra = Json::array();
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    std::uint64_t m = moduli[i];
    std::uint64_t v = (broken["elements"][0][i].get<std::uint64_t>() + broken["elements"][1][i].get<std::uint64_t>() +
                       m - broken["elements"][2][i].get<std::uint64_t>()) %
                      m;
    extra.push_back(v);
  }
  bool present = false;
  for (const auto& e : broken["elements"]) present = present || e == extra;
  REQUIRE_FALSE(present);
  broken["elements"].push_back(extra);
  std::string bpath = temp_path("broken.json");
  write_file(bpath, broken.dump());
  r = run({"verify", bpath});
  CHECK(r.code == 1);
  auto rep = Json::parse(r.out)["report"];
  CHECK(rep["verdict"] == "neither");
  CHECK(!rep["witnesses"].empty());
  CHECK(run({"verify", bpath, "--expect", "neither"}).code == 0);

  for (const auto& p : {path, half, bpath}) std::remove(p.c_str());
}

TEST_CASE("set files round trip through the parser") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::uint64_t> moduli;
    int rank = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < rank; ++i) moduli.push_back(2 + rng() % 20);
    cli::SetFile s;
    s.group = abgroup::GroupSpec(moduli);
    for (int k = 0; k < 6; ++k) {
      abgroup::GroupElement x;
      for (auto m : moduli) x.coords.push_back(rng() % m);
      s.elements.push_back(x);
    }
    s.seed = rng() % 100;
    s.provenance = {{"note", "random"}};
    s.report = Json();
    auto j = cli::set_file_to_json(s);
    auto back = cli::set_file_from_json(Json::parse(j.dump()));
    CHECK(back.group == s.group);
    CHECK(back.elements == s.elements);
    CHECK(back.seed == s.seed);
    CHECK(cli::set_file_to_json(back) == j);
  }
  CHECK_THROWS(cli::set_file_from_json(Json::parse(R"({"moduli":[5],"elements":[[7]]})")));
  CHECK_THROWS(cli::set_file_from_json(Json::parse(R"({"moduli":[5,3],"elements":[[1]]})")));
  CHECK_THROWS(cli::set_file_from_json(Json::parse(R"({"group":"Z/6","moduli":[5],"elements":[]})")));
  CHECK(run({"verify", "no_such_file.json"}).code == 2);
}

TEST_CASE("census and embed subcommands") {
  auto r = run({"census", "--group", "Z/13"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["max_size"].get<int>() >= 4);
  r = run({"census", "--group", "Z/121x2"});
  CHECK(r.code == 3);
  CHECK(r.err.find("cap") != std::string::npos);

  r = run({"embed", "--p", "5", "--j", "1", "--n", "6", "--targets", "7,11", "--expect", "sidon"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["group"] == "Z/7 x Z/11");
  CHECK(j["provenance"]["symmetric_certified"] == true);
  CHECK(j["provenance"]["freiman_certified"] == true);
  CHECK(oracle_is_sidon(j));
  CHECK(j["elements"].size() >= j["provenance"]["size_bound"].get<std::size_t>());

  CHECK(run({"embed", "--p", "5", "--n", "5", "--targets", "7,11"}).code == 2);
}

TEST_CASE("bounds subcommand") {
  auto r = run({"bounds", "--family", "g2", "--q", "7", "--f", "1,0,0,0,0,1"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["set_size"] == 8);
  CHECK(j["all_pass"] == true);

  for (int q : {5, 7, 9, 11}) {
    r = run({"bounds", "--family", "g0-m5", "--q", std::to_string(q)});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["group_order"] == q * q - 1);
  }

  r = run({"bounds", "--family", "g1-pq", "--q", "13", "--seed", "2"});
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  CHECK(j["all_pass"] == true);
}

TEST_CASE("bounds checks agree with a floating-point oracle away from ties") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 2000; ++t) {
    std::uint64_t q = 2 + rng() % 60;
    unsigned g = rng() % 3;
    unsigned deg = rng() % 5;
    std::uint64_t s = rng() % (2 * q + 10);
    std::uint64_t a = rng() % 20000;
    auto checks = cli::check_bounds(q, g, deg, s, a);
    REQUIRE(checks.size() == 4);
    long double r = std::sqrt(static_cast<long double>(q));
    long double torus = deg > 0 ? deg - 1 : 0;
    long double bounds[4] = {q + 1.0L - deg - 2 * g * r, q + 1.0L + 2 * g * r,
                             std::pow(q - 1.0L, torus) * std::pow(r - 1, 2.0L * g),
                             std::pow(q + 1.0L, torus) * std::pow(r + 1, 2.0L * g)};
    long double values[4] = {static_cast<long double>(s), static_cast<long double>(s), static_cast<long double>(a),
                             static_cast<long double>(a)};
    for (int i = 0; i < 4; ++i) {
      if (std::fabs(values[i] - bounds[i]) < 1e-6L) continue;
      bool expect = i % 2 == 0 ? values[i] > bounds[i] : values[i] < bounds[i];
      CHECK(checks[i].pass == expect);
    }
  }
  // exact ties: q = 9, g = 1 gives sqrt(q) = 3
  auto tie = cli::check_bounds(9, 1, 1, 4, 4);
  CHECK(tie[0].pass);
  CHECK(tie[2].pass);
  auto below = cli::check_bounds(9, 1, 1, 2, 3);
  CHECK_FALSE(below[0].pass);
  CHECK_FALSE(below[2].pass);
}

TEST_CASE("configuration files mirror the flags") {
  std::string cfg = temp_path("run.cfg");
  write_file(cfg, "# genus-0 example\nfamily = g0-m4\nq = 5\nformat = csv\n");
  auto r = run({"construct", "--config", cfg});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("c1\n", 0) == 0);
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 1 + 6);

  r = run({"construct", "--config", cfg, "--q", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "c1\n0\n4\n10\n12\n");

  write_file(cfg, "family = g0-m4\nbogus = 1\n");
  CHECK(run({"construct", "--config", cfg, "--q", "3"}).code == 2);
  write_file(cfg, "group = Z/13\n");
  CHECK(run({"census", "--config", cfg}).code == 0);
  std::remove(cfg.c_str());
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"construct"}).code == 2);
  CHECK(run({"construct", "--family", "nope", "--q", "5"}).code == 2);
  CHECK(run({"construct", "--family", "g0-m1", "--q", "6"}).code == 2);
  CHECK(run({"construct", "--family", "g2", "--q", "7"}).code == 2);
  CHECK(run({"construct", "--family", "g0-m1", "--q", "5", "--format", "xml"}).code == 2);
  CHECK(run({"construct", "--help"}).code == 0);
}
