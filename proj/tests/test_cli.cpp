#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "ffgh/cli.hpp"
#include "ffgh/error.hpp"

using namespace ffgh;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("fgh commands") {
  CHECK(run({"fgh", "eval", "--system", "id", "--n", "3"}).out == "11\n");
  CHECK(run({"fgh", "eval", "--system", "id", "--alpha", "t[0](1)", "--n", "2"}).out == "4\n");
  CHECK(run({"fgh", "nf", "--system", "id", "--n", "3", "--m", "9"}).out == "B_{t[0](1)}B_{t[0](2)}(3)\n");
  CHECK(run({"fgh", "map", "--system", "id", "--f", "0->0,1->2", "--n", "2", "--n2", "3"}).out ==
        "0->0,1->2,2->3,3->4,4->7,5->8\n");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"fgh", "eval", "--system", "id"}).code == 1);
  CHECK(run({"fgh", "eval", "--system", "nope", "--n", "1"}).code == 1);
  CHECK(run({"fgh", "eval", "--system", "id", "--n", "3", "--resource-cap", "5"}).code == 3);
  CHECK(run({"fgh", "eval", "--system", "bhF(id)", "--n", "1"}).code == 3);
  CHECK(run({"collapse", "validate", "--system", "id", "--order", "2", "psi(2^{t[0](s(0))}+2^{t[0](s(1))})"}).code == 2);
  CHECK(run({"collapse", "validate", "--system", "id", "--order", "2", "--stages", "1",
             "psi(2^{t[0](s(1))}+2^{t[0](s(0))})"})
            .code == 3);
  CHECK(run({"sys", "probe", "--system", "bhF(id)", "--n", "1"}).code == 3);
  CHECK(run({"--stages", "0", "collapse", "enum", "--system", "id", "--order", "1"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("json report") {
  const Run r = run({"--json", "collapse", "enum", "--system", "id", "--order", "2"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "--json collapse enum --system id --order 2");
  CHECK(j["results"]["size"] == 6);
  CHECK(j["results"]["terms"][5]["text"] == "psi(2^{t[0](s(1))}+2^{t[0](s(0))})");
  CHECK(j["truncation"]["size_cap"] == false);
  CHECK(j.contains("timing_ms"));
  CHECK(j["counterexamples"].empty());

  const Run e = run({"--json", "fgh", "eval", "--system", "id", "--n", "9", "--resource-cap", "20"});
  CHECK(e.code == 3);
  const auto je = nlohmann::json::parse(e.out);
  CHECK(je["error"]["kind"] == "cap");
}

TEST_CASE("collapse commands") {
  CHECK(run({"collapse", "cmp", "--system", "id", "--order", "2", "s(1)", "psi(0)"}).out == "less\n");
  CHECK(run({"collapse", "cmp", "--system", "id", "--order", "2", "psi(0)", "psi(0)"}).out == "equal\n");
  CHECK(run({"collapse", "cmp", "--system", "id", "--order", "2", "psi(0)", "psi(0)+"}).code == 1);
  const Run dot = run({"--format", "dot", "collapse", "enum", "--system", "id", "--order", "1"});
  CHECK(dot.out.find("digraph") != std::string::npos);
  CHECK(run({"--format", "dot", "fgh", "eval", "--system", "id", "--n", "1"}).code == 1);
}

TEST_CASE("seed config") {
  const Config c = parse_seed_config("# caps\nstage_cap = 5\nsize_cap=100\nformat=json\nsystem.P = prod(pow2,id)\n");
  CHECK(c.stage_cap == 5);
  CHECK(c.size_cap == 100);
  CHECK(c.format == Config::Format::json);
  CHECK(c.presets.at("P") == "prod(pow2,id)");
  CHECK_THROWS_AS(parse_seed_config("colour=blue"), UsageError);
  CHECK_THROWS_AS(parse_seed_config("stage_cap=x"), UsageError);
  CHECK_THROWS_AS(parse_seed_config("stage_cap"), UsageError);
  CHECK_THROWS_AS(Config{0}.validate(), UsageError);
}
