#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flagres/cli.hpp"
#include "flagres/error.hpp"

#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

using namespace flagres;
using namespace flagres::cli;

namespace {

int exit_code(const std::string& args) {
  const std::string cmd = std::string(FLAGRES_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

const char* kMilnorDoc = R"doc({
  "name": "tiny",
  // comments are accepted
  "milnor": [{"label": "(x^2, y^3)", "vars": ["x", "y"], "generators": ["x^2", "y^3"]}],
  "tasks": ["milnor"]
})doc";

}  // namespace

TEST_CASE("schema errors") {
  CHECK_THROWS_AS(parse_problem("{"), SchemaError);
  CHECK_THROWS_AS(parse_problem(R"({"tasks": ["nonsense"]})"), SchemaError);
  CHECK_THROWS_AS(parse_problem(R"({"chart": {"vars": ["x"]}, "foliation1": {"vector_field": ["x", "y"]},
                                   "foliation2": {"one_form": ["1"]}, "tasks": ["check-flag"]})"),
                  SchemaError);
  CHECK_THROWS_AS(parse_problem(R"({"chart": {"vars": ["x"]}, "foliation1": {"vector_field": ["x +"]},
                                   "foliation2": {"one_form": ["1"]}, "tasks": ["check-flag"]})"),
                  SchemaError);
  CHECK_THROWS_AS(parse_problem(R"({"chart": {"vars": ["x"]}, "foliation1": {"vector_field": ["x"]},
                                   "foliation2": {"one_form": ["1"]}, "points": [{"kind": "exact", "coords": ["1/0"]}],
                                   "tasks": ["res-cn-vf"]})"),
                  SchemaError);
}

TEST_CASE("milnor task on (x^2, y^3)") {
  const auto p = parse_problem(kMilnorDoc);
  const auto r = run(p, {});
  CHECK(r.all_passed);
  CHECK(r.report["tasks"][0]["mu"] == 6);
}

TEST_CASE("chern-pn on P^3 gives 2, 4, 8") {
  const auto p = parse_problem(R"({"projective": [{"n": 3, "F1_twists": [1], "F2_twists": [1, 1], "j_values": [0, 1, 2]}],
                                   "tasks": ["chern-pn"]})");
  const auto r = run(p, {});
  CHECK(r.all_passed);
  const auto& v = r.report["tasks"][0]["values"];
  CHECK(v["0"] == "2");
  CHECK(v["1"] == "4");
  CHECK(v["2"] == "8");
}

TEST_CASE("check-flag on the logarithmic corpus entry") {
  const auto p = load_problem(resolve_problem_path("logarithmic_p3"));
  RunOptions o;
  o.only = {"check-flag"};
  const auto r = run(p, o);
  CHECK(r.all_passed);
  CHECK(r.report["tasks"].size() == 1);
}

TEST_CASE("reports are deterministic") {
  const auto p = load_problem(resolve_problem_path("comparison_n2"));
  const auto a = run(p, {}).report.dump(2);
  const auto b = run(p, {}).report.dump(2);
  CHECK(a == b);
  CHECK(run(p, {}).report["input_digest"].get<std::string>() == fnv1a64([&] {
          std::ifstream in(resolve_problem_path("comparison_n2"));
          return std::string(std::istreambuf_iterator<char>(in), {});
        }()));
}

TEST_CASE("printed discrepancies are notes, not failures") {
  const auto r = run(load_problem(resolve_problem_path("semistable_p3")), {});
  CHECK(r.all_passed);
  CHECK(r.summary.find("DISCREPANCY") != std::string::npos);
}

TEST_CASE("corpus listing and formatting helpers") {
  const auto files = list_corpus(corpus_directory());
  CHECK(files.size() >= 10);
  CHECK(round15(0.1 + 0.2) == 0.3);
  CHECK(fnv1a64("") == "fnv1a64:cbf29ce484222325");
}

TEST_CASE("exit codes of the binary") {
  CHECK(exit_code("milnor " + write_temp("flagres_ok.json", kMilnorDoc).string()) == 0);
  CHECK(exit_code("verify " + write_temp("flagres_bad.json", "{ not json").string()) == 2);
  CHECK(exit_code("verify /nonexistent/file.json") == 2);
  CHECK(exit_code("no-such-subcommand") == 2);
  const char* control = R"({"chart": {"vars": ["x", "y"]}, "foliation1": {"vector_field": ["x^2", "y^3"]},
    "foliation2": {"one_form": ["x^2", "x^2"]}, "tasks": ["check-flag"]})";
  CHECK(exit_code("check-flag " + write_temp("flagres_fail.json", control).string()) == 1);
  CHECK(exit_code("corpus-list") == 0);
  CHECK(exit_code("chern-pn pn_example") == 0);
}
