#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "metabranch/cli.hpp"

using namespace metabranch;
using json = nlohmann::json;

namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args, const char* env = nullptr) {
  args.insert(args.begin(), "metabranch");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err, env);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("norm compatibility over Q_5 has 48 assertions") {
  const Invocation r = invoke({"verify-lemma", "3.3", "--p", "5", "--format", "json"});
  CHECK(r.code == kExitPass);
  const json j = json::parse(r.out);
  CHECK(j["assertions"] == 48);
  CHECK(j["failures"] == 0);
  CHECK(j["reports"].size() == 3);
  CHECK(j["reports"][0]["assertions"][0].contains("expected"));
}

TEST_CASE("verify lemma subcommand form") {
  const Invocation r = invoke({"verify", "lemma", "--id", "3.5", "--p", "7", "--d", "p", "--format", "json"});
  CHECK(r.code == kExitPass);
  const json j = json::parse(r.out);
  CHECK(j["reports"].size() == 1);
  CHECK(j["reports"][0]["extension"] == "Q_7(sqrt(7))");
  CHECK(invoke({"verify", "lemma", "--id", "9.9", "--p", "7"}).code == kExitUsage);
}

TEST_CASE("sqclasses over Q_2 has 8 rows") {
  const Invocation r = invoke({"sqclasses", "--p", "2", "--format", "json"});
  CHECK(r.code == kExitPass);
  const json j = json::parse(r.out);
  CHECK(j["classes"].size() == 8);
  CHECK(j["products"].size() == 8);
}

TEST_CASE("symbols table") {
  const Invocation r = invoke({"symbols", "table", "--p", "5", "--format", "json"});
  CHECK(r.code == kExitPass);
  const json j = json::parse(r.out);
  CHECK(j["classes"] == json::array({"1", "u", "p", "up"}));
  CHECK(j["table"][1][2] == -1);
  const Invocation text = invoke({"symbols", "table", "--p", "3"});
  CHECK(text.out.find("+1") != std::string::npos);
  const Invocation ext = invoke({"symbols", "table", "--p", "2", "--d", "5", "--format", "json"});
  CHECK(json::parse(ext.out)["table"].size() == 16);
}

TEST_CASE("exit code contract") {
  CHECK(invoke({"sqclasses", "--p", "abc"}).code == kExitUsage);
  CHECK(invoke({"sqclasses", "--p", "9"}).code == kExitUsage);
  CHECK(invoke({"sqclasses"}).code == kExitUsage);
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"frobnicate"}).code == kExitUsage);
  CHECK(invoke({"symbols", "table", "--p", "5", "--d", "1"}).code == kExitUsage);
  CHECK(invoke({"kubota", "verify", "--p", "2"}).code == kExitUsage);
  CHECK(invoke({"kubota", "verify", "--p", "5", "--lemma", "nope"}).code == kExitUsage);
  CHECK(invoke({"--help"}).code == kExitPass);
}

TEST_CASE("precision override") {
  CHECK(invoke({"sqclasses", "--p", "3", "--format", "json"}, "28").code == kExitPass);
  CHECK(json::parse(invoke({"sqclasses", "--p", "3", "--format", "json"}, "28").out)["precision"] == 28);
  CHECK(invoke({"sqclasses", "--p", "3"}, "many").code == kExitUsage);
  CHECK(invoke({"sqclasses", "--p", "3"}, "5").code == kExitUsage);
  CHECK(json::parse(invoke({"sqclasses", "--p", "3", "--format", "json", "--precision", "24"}, "28").out)["precision"] ==
        24);
}

TEST_CASE("kubota verify") {
  const Invocation r =
      invoke({"kubota", "verify", "--p", "5", "--trials", "200", "--seed", "0xC0C7C1E", "--format", "json"});
  CHECK(r.code == kExitPass);
  const json j = json::parse(r.out);
  CHECK(j["check"] == "cocycle");
  CHECK(j["trials"] == 200);
  CHECK(j["seed"] == kDefaultSeed);
  CHECK(j["failures"].empty());
  const Invocation l = invoke({"kubota", "verify", "--p", "3", "--lemma", "8.5", "--level", "2", "--trials", "50"});
  CHECK(l.code == kExitPass);
  CHECK(l.out.find("n=2") != std::string::npos);
}

TEST_CASE("main theorem report writes JSON") {
  const std::string path = "cli_main_theorem_report.json";
  const Invocation r = invoke({"report", "main-theorem", "--p", "3", "--d", "u", "--json", path});
  CHECK(r.code == kExitPass);
  std::ifstream in(path);
  const json j = json::parse(in);
  CHECK(j["lemma_id"] == "Thm1.1");
  CHECK(j["characters"][0]["irreps"][0]["dim"] == 2);
  CHECK(j["characters"][0]["irreps"][0]["character"]["00+"] == "2");
  std::remove(path.c_str());
}

TEST_CASE("split report") {
  const Invocation r = invoke({"split-report", "--p", "2", "--format", "json"});
  CHECK(r.code == kExitPass);
  CHECK(json::parse(r.out)["characters"][0]["irreps"][0]["dim"] == 8);
}

TEST_CASE("run_all pass matrix") {
  RunAllOptions o;
  o.cocycle_trials = 200;
  o.kappa_trials = 200;
  o.splitting_trials = 50;
  const RunAllResult r = run_all(o);
  std::vector<std::string> ids;
  for (const PassMatrixRow& row : r.rows) ids.push_back(row.id);
  CHECK(ids == std::vector<std::string>{"3.1", "3.3", "3.4", "3.5", "5.2", "5.4", "Thm1.1", "7-const", "8.1", "8.5",
                                        "Eq1", "Eq2", "Eq3"});
  CHECK(r.columns == std::vector<std::string>{"Q_2", "Q_3", "Q_5", "Q_7", "Q_13"});
  CHECK(r.all_pass());
  CHECK(r.row("8.1")->cells[0] == "n/a");
  CHECK(r.row("Eq3")->cells[4] == "pass");
  o.parallel = false;
  CHECK(run_all(o).to_json().dump() == r.to_json().dump());
}
