#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = opetope::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("enumerate") {
  Run r = cli({"enumerate", "--dim", "0", "--format", "ascii"});
  CHECK(r.code == 0);
  CHECK(r.out == "pt\n");

  r = cli({"enumerate", "--dim", "3", "--max-size", "5", "--route", "both"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["bd"] == j["leinster"]);
  CHECK(j["bd"].size() == 6);
  CHECK(j["bd"][5]["codes"].size() == 9);

  CHECK(cli({"enumerate", "--dim", "2", "--route", "sideways"}).code == 2);
  CHECK(cli({"enumerate", "--max-size", "-1"}).code == 2);
  CHECK(cli({"enumerate", "--bogus"}).code == 2);
  CHECK(cli({}).code == 2);
}

TEST_CASE("count table without a dimension") {
  Run r = cli({"enumerate", "--max-size", "3"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 5);
  CHECK(j[2]["bd"] == nlohmann::json({1, 1, 1, 1}));
  for (const auto& row : j) CHECK(row["bd"] == row["leinster"]);
}

TEST_CASE("check") {
  CHECK(cli({"check", "laws", "--monad", "identity"}).code == 0);
  CHECK(cli({"check", "equiv", "--dim", "3", "--max-size", "5"}).code == 0);

  Run bad = cli({"check", "laws", "--monad", fixture("z3_broken.json")});
  CHECK(bad.code == 1);
  auto j = nlohmann::json::parse(bad.out);
  bool found = false;
  for (const auto& res : j["checks"])
    if (!res["ok"].get<bool>()) found = !res["counterexamples"].empty();
  CHECK(found);

  CHECK(cli({"check", "laws", "--monad", fixture("z3_monad.json"), "--format", "ascii"}).code == 0);
  CHECK(cli({"check", "laws", "--monad", "/no/such/file.json"}).code == 2);
  CHECK(cli({"check"}).code == 2);
  CHECK(cli({"check", "iso", "--dim", "1", "--max-size", "4", "--trials", "10"}).code == 0);
}

TEST_CASE("slice") {
  Run r = cli({"slice", "--max-size", "3"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  // objects of I+ are the arrows of I; its arrows are chains, one per arity
  CHECK(j["objects"] == nlohmann::json({"ar"}));
  REQUIRE(j["arrows"].size() == 4);
  for (std::size_t n = 0; n < 4; ++n) CHECK(j["arrows"][n]["source"].size() == n);

  Run nt = cli({"slice", "--input", fixture("nontidy.json")});
  CHECK(nt.code == 1);
  CHECK(nt.err.find("m.[2,1] = m") != std::string::npos);

  Run e = cli({"slice", "--input", fixture("empty_arrows.json"), "--max-size", "1"});
  REQUIRE(e.code == 0);
  auto ej = nlohmann::json::parse(e.out);
  for (const auto& o : ej["objects"]) CHECK(o.get<std::string>().rfind("1_", 0) == 0);
}
