#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cubekit/io.hpp"

namespace {

const std::string kCli = CUBEKIT_CLI;
const std::string kData = CUBEKIT_DATA_DIR;

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("cubekit_cli_" + name)).string();
}

int run(const std::string& args, const std::string& out = "/dev/null") {
  const std::string cmd = kCli + " " + args + " > " + out + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("--help") == 0);
  CHECK(run("ugame solve " + kData + "/example_game.json") == 0);
  CHECK(run("") == 2);
  CHECK(run("gowers " + kData + "/quadratic_phase2.json --dim 2 --bogus") == 2);
  CHECK(run("gowers " + kData + "/quadratic_phase2.json") == 2);
  CHECK(run("gowers /nonexistent.json --dim 2") == 2);
  CHECK(run("verify --suite nope") == 2);
  CHECK(run("pcp demo --game " + kData + "/example_game.json --hypergraph " + kData + "/single_edge.json") == 2);

  const std::string big = tmp("big.json");
  REQUIRE(run("fn gen random -n 12", big) == 0);
  CHECK(run("gowers " + big + " --dim 3") == 3);
  CHECK(run("gowers " + big + " --dim 2 --mc 100") == 0);
  std::filesystem::remove(big);
}

TEST_CASE("reports") {
  const std::string out = tmp("ugame.json");
  REQUIRE(run("ugame solve " + kData + "/example_game.json", out) == 0);
  const auto j = cubekit::io::load_json(out);
  CHECK(j["strong_value"] == 0.75);
  CHECK(j["weak_value"] == 0.75);

  REQUIRE(run("test h " + kData + "/complete3.json " + kData + "/quadratic_phase2.json --mc 20000 --exact", out) == 0);
  const auto h = cubekit::io::load_json(out);
  CHECK(h["exact"]["probability"].get<double>() == 0.34375);
  CHECK(h["monte_carlo"]["samples"] == 20000);
  std::filesystem::remove(out);
}

TEST_CASE("fixed seeds give byte-identical reports") {
  const std::string a = tmp("a.json"), b = tmp("b.json");
  const std::string args = "verify --suite uniformity_bounds --trials 4 --seed 11";
  REQUIRE(run(args + " --threads 1", a) == 0);
  REQUIRE(run(args + " --threads 8", b) == 0);
  CHECK(slurp(a) == slurp(b));
  const std::string mc = "test blr " + kData + "/quadratic_phase2.json --mc 50000";
  REQUIRE(run(mc + " --seed 3 --threads 1", a) == 0);
  REQUIRE(run(mc + " --seed 3 --threads 8", b) == 0);
  CHECK(slurp(a) == slurp(b));
  REQUIRE(run("fn gen random -n 4", a) == 0);
  REQUIRE(run("fn gen random -n 4", b) == 0);
  CHECK(slurp(a) == slurp(b));
  REQUIRE(run("verify --suite test_identities --trials 3 --format csv", a) == 0);
  const std::string csv = slurp(a);
  CHECK(csv.rfind("suite,lemma,instance", 0) == 0);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}
