#include "doctest.h"
#include "json.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(ARITHDYN_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json run_json(const std::string& args) {
  auto r = run(args);
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  return j;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("constants") {
  auto j = run_json("constants");
  CHECK(std::fabs(j["ln2"].get<double>() - 0.693147) < 1e-6);
  CHECK(std::fabs(j["C"].get<double>() - 0.885321) < 1e-6);
}

TEST_CASE("pairing") {
  auto j = run_json("--seed 3 pairing \"z^2\" \"z^2-2\"");
  CHECK(std::fabs(j["total"].get<double>() - 0.3231) < 0.01);
  for (auto& p : j["places"])
    if (p["place"] != "inf") CHECK(p["hi"]["float"].get<double>() == 0.0);
  auto k = run_json("--seed 3 pairing \"z^2\" \"z^2-2\"");
  CHECK(k["total"] == j["total"]);
}

TEST_CASE("ordinary check") {
  auto j = run_json("ordinary-check --X 11 --eps 0.2 \"z^2+1/5\" \"z^2+(1/7)z+1/11\"");
  CHECK(j["ordinary"] == true);
  auto k = run_json("ordinary-check --X 11 --eps 0.2 \"z^2+1/5\" \"z^2+1/5\"");
  CHECK(k["ordinary"] == false);
  CHECK(k["witness"].get<std::string>().find("gcd") != std::string::npos);
}

TEST_CASE("heights and green functions") {
  auto h = run_json("height \"z^2-2\" 3");
  CHECK(std::fabs(h["height"]["value"].get<double>() - 0.9624236501192069) < 1e-10);
  auto a = run_json("height \"z^2\" --minpoly \"z^2-2\" --depth 6");
  CHECK(std::fabs(a["value"].get<double>() - 0.34657359027997264) < 1e-9);
  auto g = run_json("green \"z^2 + 1/9\" --place 3 --log-radius 0");
  CHECK(g["value"]["coeffs"]["3"] == "1");
  auto ga = run_json("green \"z^2\" --re 4");
  CHECK(std::fabs(ga["value"].get<double>() - std::log(4.0)) < 1e-12);
}

TEST_CASE("prep intersect certificate") {
  auto j = run_json("prep-intersect \"z^2\" \"z^2-2\"");
  CHECK(j["verdict"] == "intersection");
  CHECK(j["points"].size() == 3);
  auto k = run_json("prep-intersect \"z^2\" \"z^2+1/2\"");
  CHECK(k["verdict"] == "disjoint");
  CHECK(k["witness_place"] == "2");
}

TEST_CASE("survey writes csv") {
  std::string path = "cli_survey_test.csv";
  auto j = run_json("--seed 4 survey --d 3 --X 5 --samples 20 --out " + path);
  CHECK(j["rows"].get<long>() + j["failures"].get<long>() == 20);
  std::ifstream in(path);
  std::string line;
  long lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == j["rows"].get<long>() + 1);
  std::remove(path.c_str());
  auto r = run_json("survey --mode radical --X 10");
  CHECK(r["sum_exact"] == "793/210");
}

TEST_CASE("robin constant") {
  auto j = run_json("robin \"z^5 + (1/11)z^3 + (1/7)z + 2\" \"z^5 + (1/13)z^4 + 3\" --c 0.05");
  CHECK(j["V"]["coeffs"]["7"] == "1/8");
  CHECK(j["V"]["coeffs"]["13"] == "-1/4");
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 1);
  CHECK(run("nonsense").code == 1);
  CHECK(run("height \"2z^2\" 3").code == 1);
  CHECK(run("pairing \"z^2\" \"z^3\"").code == 2);
  CHECK(run("--help").code == 0);
}

}
