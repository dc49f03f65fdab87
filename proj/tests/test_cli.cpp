// test_cli.cpp — subcommand dispatch, formatting, configuration and sweeps.

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "magnonbath/cli.hpp"

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = magnonbath::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("usage and argument errors exit with status 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"self-energy"}).code == 2);  // --eps-grid is required
  CHECK(run_cli({"self-energy", "--eps-grid", "nonsense", "--d", "1"}).code ==
        2);
  CHECK(run_cli({"zeno", "--d", "1"}).code == 2);  // no grid, no --crossover
  CHECK(run_cli({"evolve", "--t-grid", "0:1:0.5", "--out",
                 "/nonexistent-dir/x.csv"})
            .code == 2);

  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("subcommands") != std::string::npos);
  CHECK(run_cli({"bound-states", "--help"}).code == 0);
}

TEST_CASE("domain failures from the library exit with status 3") {
  CHECK(run_cli({"bound-states", "--d", "3"}).code == 3);
  CHECK(run_cli({"evolve", "--t-grid", "0:1:0.5", "--alpha-plus", "0",
                 "--alpha-minus", "0"})
            .code == 3);
}

TEST_CASE("self-energy table reproduces the frozen chain point") {
  const auto r = run_cli({"self-energy", "--d", "1", "--J", "0.5", "--g", "1",
                          "--h", "8", "--omega0", "2", "--eps-grid",
                          "10:10:1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("eps,re,im,a") == 0);
  CHECK(r.out.find("\n10,2,-2,0.1\n") != std::string::npos);
}

TEST_CASE("json output encodes divergent entries as null") {
  const auto r = run_cli({"markov", "--d", "1", "--J", "1", "--g", "1", "--h",
                          "3", "--omega0", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["kappa"].is_null());
  CHECK(j[0]["xi"].is_null());
  CHECK(j[0]["kappa_divergent"] == 1.0);
  CHECK(j[0]["xi_divergent"] == 1.0);
}

TEST_CASE("energies rescale with the exchange constant under --units J") {
  // kappa in units of J depends only on (g, h, omega0)/J: the two runs below
  // describe the same physics at J = 2 and J = 1.
  const auto scaled = run_cli({"markov", "--units", "J", "--J", "2", "--g",
                               "1", "--h", "0.1", "--omega0", "3"});
  const auto plain = run_cli({"markov", "--J", "1", "--g", "1", "--h", "0.1",
                              "--omega0", "3"});
  REQUIRE(scaled.code == 0);
  REQUIRE(plain.code == 0);
  CHECK(scaled.out == plain.out);
  CHECK(scaled.out.find("2.65225993421") != std::string::npos);
}

TEST_CASE("config files fill in unset flags only") {
  const std::string path = "test_cli_config.json";
  {
    std::ofstream f(path);
    f << R"({"d": 1, "J": 0.5, "g": 1.0, "h": 8.0, "omega0": 2.0,
             "eps-grid": "10:10:1"})";
  }
  const auto from_config = run_cli({"self-energy", "--config", path});
  const auto explicit_flags =
      run_cli({"self-energy", "--d", "1", "--J", "0.5", "--g", "1", "--h", "8",
               "--omega0", "2", "--eps-grid", "10:10:1"});
  REQUIRE(from_config.code == 0);
  CHECK(from_config.out == explicit_flags.out);

  // An explicit flag beats the config value.
  const auto overridden =
      run_cli({"self-energy", "--config", path, "--omega0", "3"});
  REQUIRE(overridden.code == 0);
  CHECK(overridden.out != from_config.out);

  CHECK(run_cli({"self-energy", "--config", "no-such-file.json"}).code == 2);
  std::remove(path.c_str());
}

TEST_CASE("tables go to the --out file instead of stdout") {
  const std::string path = "test_cli_out.csv";
  const auto r = run_cli({"bound-states", "--d", "1", "--J", "0.5", "--g", "1",
                          "--h", "8", "--omega0", "2", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str().find("energy,weight") == 0);
  CHECK(buf.str().find("1.46093831584") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("sweeps fan out deterministically and prefix the parameter") {
  const std::vector<std::string> args = {
      "sweep", "--run",  "bound-states", "--param", "omega0", "--param-grid",
      "1:11:10",  "--d",  "2",  "--J",  "0.5",  "--g",  "1",  "--h",  "2"};
  const auto first = run_cli(args);
  const auto second = run_cli(args);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out.find("omega0,energy,weight") == 0);
  // omega0 = 1 holds one bound state, omega0 = 11 holds two.
  CHECK(count_lines(first.out) == 4);
  CHECK(first.out.find("\n1,") != std::string::npos);
  CHECK(first.out.find("\n11,") != std::string::npos);

  CHECK(run_cli({"sweep", "--run", "sweep", "--param", "omega0",
                 "--param-grid", "1:2:1"})
            .code == 2);
  // A sweep where every point fails propagates the core failure status.
  CHECK(run_cli({"sweep", "--run", "bound-states", "--param", "omega0",
                 "--param-grid", "1:2:1", "--d", "3"})
            .code == 3);
}
