#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "symdyn/cli.hpp"
#include "symdyn/report.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "symdyn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = symdyn::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(SYMDYN_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("enumerate report") {
  auto r = run({"enumerate", "--spec", fixture("golden_mean.yaml"), "--n-max", "6", "--list"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == symdyn::kReportSchema);
  CHECK(j["command"] == "enumerate");
  CHECK(j["exit_status"] == 0);
  CHECK(j.contains("provenance"));
  CHECK(r.out.find("elapsed") == std::string::npos);
  CHECK(r.out.find("time") == std::string::npos);

  auto csv = run({"enumerate", "--spec", fixture("golden_mean.yaml"), "--n-max", "6", "--format", "csv"});
  REQUIRE(csv.code == 0);
  std::istringstream lines(csv.out);
  std::string header, line;
  std::getline(lines, header);
  CHECK(header.find(',') != std::string::npos);
  std::size_t rows = 0;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 7);  // n = 0..6
  CHECK(csv.out.find("21") != std::string::npos);  // |L_6| of the golden mean
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  std::vector<std::vector<std::string>> cmds = {
      {"entropy", "--spec", fixture("golden_mean.yaml"), "--n-max", "14"},
      {"check-las", "--spec", fixture("beta_golden.yaml"), "--horizon", "5,5"},
      {"glue", "--spec", fixture("golden_mean.yaml"), "--samples", "200"},
      {"decompose", "--spec", fixture("golden_mean.yaml"), "--n-max", "8"},
      {"mme", "--spec", fixture("golden_mean.yaml")},
      {"counterexample", "audit", "--N", "3", "--n-max", "6"},
  };
  for (auto c : cmds) {
    auto a = run(c);
    auto b = run(c);
    CHECK(a.out == b.out);
    auto c1 = c, c4 = c;
    c1.insert(c1.end(), {"--threads", "1"});
    c4.insert(c4.end(), {"--threads", "4"});
    if (c[0] == "counterexample") {
      c1 = c, c4 = c;
      c1.insert(c1.begin() + 2, {"--threads", "1"});
      c4.insert(c4.begin() + 2, {"--threads", "4"});
    }
    auto t1 = run(c1);
    auto t4 = run(c4);
    CHECK_MESSAGE(t1.code == a.code, c[0]);
    CHECK_MESSAGE(t1.out == t4.out, c[0]);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("exit codes") {
  CHECK(run({"check-spec", "--spec", fixture("golden_mean.yaml"), "--tau", "1", "--horizon", "4,4"}).code == 0);
  auto fail = run({"check-spec", "--spec", fixture("at_most_one_one.yaml"), "--tau", "2", "--horizon", "3,3"});
  CHECK(fail.code == 1);
  auto j = nlohmann::json::parse(fail.out);
  CHECK(j["exit_status"] == 1);
  CHECK(run({"irreducible", "--spec", fixture("at_most_one_one.yaml"), "--horizon", "3,3"}).code == 1);
  CHECK(run({"mme", "--spec", fixture("reducible.yaml")}).code == 3);
  CHECK(run({"enumerate", "--spec", fixture("does_not_exist.yaml")}).code == 3);
  CHECK(run({"enumerate"}).code == 3);
  CHECK(run({"bogus-command"}).code == 3);
  CHECK(run({"check-las", "--spec", fixture("golden_mean.yaml"), "--g", "nonsense"}).code == 3);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).code == 0);
}

TEST_CASE("malformed documents name the field") {
  auto dir = std::filesystem::temp_directory_path() / "symdyn_cli_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "bad.yaml").string();
  std::ofstream(path) << "family: sft\nalphabet: [\"0\", \"1\"]\nforbidden: [\"19\"]\n";
  auto r = run({"enumerate", "--spec", path});
  CHECK(r.code == 3);
  CHECK(r.err.find("forbidden") != std::string::npos);
}

TEST_CASE("--out writes the same bytes as stdout") {
  auto dir = std::filesystem::temp_directory_path() / "symdyn_cli_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "report.json").string();
  auto a = run({"periodic", "--spec", fixture("golden_mean.yaml"), "--n", "5"});
  auto b = run({"periodic", "--spec", fixture("golden_mean.yaml"), "--n", "5", "--out", path});
  REQUIRE(b.code == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == a.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["result"].dump().find("11") != std::string::npos);
}

TEST_CASE("every fixture enumerates") {
  for (const auto& entry : std::filesystem::directory_iterator(SYMDYN_FIXTURES)) {
    if (entry.path().extension() != ".yaml") continue;
    auto r = run({"enumerate", "--spec", entry.path().string(), "--n-max", "4"});
    CHECK_MESSAGE(r.code == 0, entry.path().string() << ": " << r.err);
  }
}
