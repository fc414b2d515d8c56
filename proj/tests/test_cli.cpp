#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "carnot/json_io.hpp"

using carnot::Json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + CARNOT_CLI + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}


}  // namespace

TEST_CASE("group law from a catalog document on stdin") {
  const Run r = run("catalog heisenberg_3 | " CARNOT_CLI " group-law --x 1,0,0 --y 0,1,0");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("schema") == "carnot-kit/1");
  CHECK(j.at("product") == Json::parse(R"(["1","1","1/2"])"));
}

TEST_CASE("epsilon on abelian_2 is a translation") {
  const Run r = run("epsilon --frame abelian_2 --at 1,2");
  REQUIRE(r.code == 0);
  const Json c = Json::parse(r.out).at("change");
  CHECK(c.at("affine").at("offset") == Json::parse(R"(["1","2"])"));
  CHECK(c.at("affine").at("matrix") == Json::parse(R"([["1","0"],["0","1"]])"));
}

TEST_CASE("second kind coordinates fail the Carnot check") {
  const Run r = run("check-carnot --frame heisenberg_3 --change second-kind");
  CHECK(r.code == 1);
  CHECK(r.out.find("x1*x2/2 in component 3") != std::string::npos);
  CHECK(run("check-privileged --frame heisenberg_3 --change second-kind").code == 0);
}

TEST_CASE("emitted changes re-enter the checks") {
  const Run eps = run("epsilon --frame perturbed_engel_4 --at 1,0,2,1");
  REQUIRE(eps.code == 0);
  const std::string path = "cli_test_change.json";
  std::ofstream(path) << eps.out;
  CHECK(run("check-carnot --frame perturbed_engel_4 --at 1,0,2,1 --change " + path).code == 0);
  CHECK(run("check-carnot --frame perturbed_engel_4 --change " + path).code == 1);
  std::remove(path.c_str());
}

TEST_CASE("schema and input errors exit with 2") {
  CHECK(run("group-law --algebra '{\"weights\":[1,1,2],\"brackets\":[{\"i\":1,\"j\":1,\"k\":3,\"coef\":\"1\"}]}'").code == 2);
  CHECK(run("validate '{\"schema\":\"carnot-kit/9\",\"weights\":[1]}'").code == 2);
  CHECK(run("epsilon --frame no_such_entry").code == 2);
  CHECK(run("epsilon --frame heisenberg_3 --at 1,2").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("randomized commands need a seed") {
  CHECK(run("osculate --frame heisenberg_3").code == 2);
  const Run a = run("osculate --frame perturbed_heisenberg_3 --seed 4 --directions 2 --t-count 5");
  const Run b = run("osculate --frame perturbed_heisenberg_3 --directions 2 --t-count 5", "CARNOT_SEED=4");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out).at("verdict") == "pass");
}

TEST_CASE("validate, order and catalog") {
  const Run v = run("validate step3_filiform_5");
  REQUIRE(v.code == 0);
  CHECK(Json::parse(v.out).at("step") == 3);
  const Run o = run("order --frame engel_4 --var 4");
  REQUIRE(o.code == 0);
  CHECK(Json::parse(o.out).at("order") == 3);
  const Run c = run("catalog");
  CHECK(Json::parse(c.out).at("entries").size() == 7);
}

TEST_CASE("output is deterministic") {
  const std::string args = "canonical2 --frame perturbed_engel_4 --at 1,1,0,0";
  CHECK(run(args).out == run(args).out);
  const Run n = run("canonical1 --frame heisenberg_3 --mode numeric --points '1/2,1/3,1/4'");
  REQUIRE(n.code == 0);
  const auto chart = Json::parse(n.out).at("numeric").at("samples")[0].at("chart");
  CHECK(chart[2].get<double>() == doctest::Approx(0.25));
}
