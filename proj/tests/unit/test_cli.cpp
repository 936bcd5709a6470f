#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>

#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"

using namespace limitlab;
using namespace limitlab::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("limitlab-test-" + std::to_string(::getpid())) / name;
  fs::create_directories(p.parent_path());
  return p;
}

int exit_code(const std::string& args) {
  const std::string cmd = std::string("\"") + LIMITLAB_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("doubles print with 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-1.0 / 3.0) == "-0.33333333333333331");
  CHECK(format_double(2.5e-300) == "2.5e-300");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(std::stod(format_double(M_PI)) == M_PI);
}

TEST_CASE("JSON output") {
  ordered_json j;
  j["b"] = 0.1;
  j["a"] = std::vector<int>{1, 2};
  j["c"] = std::numeric_limits<double>::infinity();
  const std::string s = dump_json(j);
  CHECK(s == "{\n  \"b\": 0.10000000000000001,\n  \"a\": [1, 2],\n  \"c\": \"inf\"\n}\n");
}

TEST_CASE("FNV-1a") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(parse_config("{\"name\": \"x\"}"), ConfigError);
  CHECK_THROWS_AS(parse_config("{\"seed\": 1, \"colour\": 3}"), ConfigError);
  CHECK_THROWS_AS(parse_config("{\"seed\": 1.5}"), ConfigError);
  CHECK_THROWS_AS(parse_config("{\"seed\": 1,"), ConfigError);
  const auto c = parse_config("{\"seed\": 42, \"params\": {\"N\": 4}}");
  CHECK(c.seed == 42);
  CHECK(c.hash.rfind("fnv1a64:", 0) == 0);
  // The hash ignores whitespace and key order.
  CHECK(parse_config("{ \"params\": {\"N\": 4},\n \"seed\": 42 }").hash == c.hash);
  CHECK(parse_config("{\"seed\": 43, \"params\": {\"N\": 4}}").hash != c.hash);
}

TEST_CASE("unknown nested keys are named") {
  const auto c = parse_config("{\"seed\": 1, \"group\": {\"kind\": \"cyclic\", \"n\": 1, \"translation\": 1, \"twist\": 0}}");
  try {
    parse_group(Fields(c.document["group"], "group"));
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("group.twist") != std::string::npos);
  }
}

TEST_CASE("group kinds") {
  const auto parse = [](const std::string& text) {
    const auto c = parse_config("{\"seed\": 1, \"group\": " + text + "}");
    return parse_group(Fields(c.document["group"], "group"));
  };
  CHECK(parse("{\"kind\": \"schottky_demo\"}").rank() == 2);
  CHECK(parse("{\"kind\": \"fuchsian_schottky\", \"center\": 1.3}").n() == 1);
  CHECK(parse("{\"kind\": \"punctured_torus\", \"trace_a\": [3, 0.1], \"trace_b\": 3}").heuristic());
  CHECK(parse("{\"kind\": \"cyclic\", \"n\": 2, \"translation\": 1}").rank() == 1);
  CHECK(parse("{\"kind\": \"schottky\", \"pairings\": [{\"from\": {\"center\": [-2, 0], \"radius\": 0.5},"
              " \"to\": {\"center\": [2, 0], \"radius\": 0.5}}]}")
            .rank() == 1);
  CHECK_THROWS_AS(parse("{\"kind\": \"surface\"}"), ConfigError);
}

TEST_CASE("runs write metadata headers") {
  RunContext ctx;
  ctx.subcommand = "kcycle circle";
  ctx.config = parse_config("{\"seed\": 3, \"params\": {\"N\": 4}}");
  ctx.out = scratch("circle");
  run(ctx);
  const std::string csv = slurp(ctx.out / "modes.csv");
  CHECK(csv.rfind("# tool=limitlab version=" + std::string(kVersion), 0) == 0);
  CHECK(csv.find("# config_hash=" + ctx.config.hash) != std::string::npos);
  CHECK(csv.find("# truncation.N=4") != std::string::npos);
  const std::string json = slurp(ctx.out / "circle.json");
  CHECK(json.find("\"config_hash\": \"" + ctx.config.hash + "\"") != std::string::npos);
  CHECK(json.rfind("{\n  \"metadata\"", 0) == 0);

  ctx.config = parse_config("{\"seed\": 3, \"params\": {\"N\": 4, \"extra\": true}}");
  CHECK_THROWS_AS(run(ctx), ConfigError);
  ctx.config = parse_config("{\"seed\": 3, \"group\": {\"kind\": \"schottky_demo\"}, \"params\": {\"N\": 4}}");
  CHECK_THROWS_AS(run(ctx), ConfigError);
}

TEST_CASE("limit set raster is binary PGM") {
  RunContext ctx;
  ctx.subcommand = "limitset";
  ctx.config = parse_config("{\"seed\": 1, \"group\": {\"kind\": \"fuchsian_schottky\"}, \"params\": {\"L\": 5, \"raster_size\": 64}}");
  ctx.out = scratch("limitset");
  run(ctx);
  const std::string pgm = slurp(ctx.out / "limitset.pgm");
  REQUIRE(pgm.rfind("P5\n", 0) == 0);
  const auto header_end = pgm.find("\n255\n");
  REQUIRE(header_end != std::string::npos);
  CHECK(pgm.size() - (header_end + 5) == 64u * 64u);
  CHECK(pgm.find("\n64 64\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(exit_code("") == 2);
  CHECK(exit_code("frobnicate --config x.json --out y") == 2);
  CHECK(exit_code("kcycle") == 2);
  CHECK(exit_code("--version") == 0);
  CHECK(exit_code("group --out y") == 2);
  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << "{\"seed\": 1, \"params\": {\"N\": 4, \"unknown\": 1}}";
  CHECK(exit_code("kcycle circle --config \"" + bad.string() + "\" --out \"" + scratch("bad-out").string() + "\"") == 2);
  const fs::path unstable = scratch("unstable.json");
  // A group with a runaway orbit fails numerically rather than as a usage error.
  std::ofstream(unstable) << "{\"seed\": 1, \"group\": {\"kind\": \"cyclic\", \"n\": 1, \"translation\": 0}, \"params\": {\"L\": 2}}";
  CHECK(exit_code("group --config \"" + unstable.string() + "\" --out \"" + scratch("unstable-out").string() + "\"") == 1);
  const std::string good = std::string(LIMITLAB_CONFIG_DIR) + "/circle.json";
  CHECK(exit_code("kcycle circle --config \"" + good + "\" --out \"" + scratch("good").string() + "\"") == 0);
}

TEST_CASE("version is semver") {
  const std::string v = kVersion;
  CHECK(std::count(v.begin(), v.end(), '.') == 2);
}
