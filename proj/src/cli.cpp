#include "metabranch/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "metabranch/error.hpp"
#include "metabranch/heisenberg.hpp"
#include "metabranch/padic.hpp"
#include "metabranch/quadext.hpp"
#include "metabranch/symbols.hpp"
#include "metabranch/tori.hpp"

namespace metabranch {

namespace {

using json = nlohmann::ordered_json;
using Command = RunConfig::Command;
using Format = RunConfig::Format;

constexpr int kDefaultE1Samples = 200;

struct RowSpec {
  const char* id;
  const char* anchor;
};

constexpr RowSpec kRows[] = {
    {"3.1", "centre of the covered split torus and its maximal abelian subgroup"},
    {"3.3", "Hilbert symbol of E against F through the norm"},
    {"3.4", "F^x E^x2 is maximal abelian in the covered E^x"},
    {"3.5", "centre of the covered E^x is E^x2"},
    {"5.2", "index of the centre is the square of a maximal abelian index"},
    {"5.4", "a genuine irrep is determined by its central character"},
    {"Thm1.1", "Ind from the centre carries each genuine irrep dim-many times"},
    {"7-const", "split torus genuine irrep of dimension [F^x : F^x2]"},
    {"8.1", "cocycle identity and splitting over SL2(Z_p)"},
    {"8.5", "splitting invariant under diag(p^n, p^-n) on Gamma0(p^2n)"},
    {"Eq1", "cocycle on upper-triangular matrices is (a, d)"},
    {"Eq2", "commutator of torus lifts is (a, d)(c, b)"},
    {"Eq3", "mu(a) mu(b) = (a, b) mu(ab)"},
};

LocalField make_field(std::uint64_t p, int precision) {
  return precision > 0 ? LocalField::make(p, precision) : LocalField::make(p);
}

std::vector<QuadExt> extensions(const LocalField& f, const std::optional<std::string>& d) {
  if (d) return {QuadExt::make(f, parse_square_class(f, *d))};
  return all_quadratic_extensions(f);
}

std::string render(const json& j, Format format, const std::string& text) {
  return format == Format::Json ? j.dump(2) + "\n" : text;
}

// ------------------------------------------------------------- symbol tables

RunOutcome symbols_table(const RunConfig& cfg) {
  const LocalField f = make_field(cfg.p, cfg.precision);
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table;
  std::string title = "(a,b) over " + f.name();
  json j;
  j["command"] = "symbols-table";
  j["field"] = f.name();
  j["precision"] = f.precision();
  if (cfg.d) {
    const QuadExt ext = QuadExt::make(f, parse_square_class(f, *cfg.d));
    title = "(a,b) over " + ext.name();
    j["extension"] = ext.name();
    for (int a = 0; a < ext.class_count(); ++a) labels.push_back(ext.label(ExtClass{static_cast<unsigned>(a)}));
    for (int a = 0; a < ext.class_count(); ++a) {
      table.emplace_back();
      for (int b = 0; b < ext.class_count(); ++b)
        table.back().push_back(
            hilbert_ext(ext, ExtClass{static_cast<unsigned>(a)}, ExtClass{static_cast<unsigned>(b)}).value());
    }
  } else {
    j["extension"] = nullptr;
    const SquareClassGroup group = square_class_group(f);
    for (const SquareClass& a : group.elements) labels.push_back(a.label());
    for (const SquareClass& a : group.elements) {
      table.emplace_back();
      for (const SquareClass& b : group.elements) table.back().push_back(hilbert(f, a, b).value());
    }
  }
  j["classes"] = labels;
  j["table"] = table;

  std::size_t width = 3;
  for (const std::string& l : labels) width = std::max(width, l.size() + 1);
  std::ostringstream text;
  text << title << "\n" << std::setw(static_cast<int>(width)) << "";
  for (const std::string& l : labels) text << std::setw(static_cast<int>(width)) << l;
  text << "\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    text << std::setw(static_cast<int>(width)) << labels[i];
    for (int s : table[i]) text << std::setw(static_cast<int>(width)) << (s > 0 ? "+1" : "-1");
    text << "\n";
  }
  return {kExitPass, render(j, cfg.format, text.str())};
}

RunOutcome sqclasses(const RunConfig& cfg) {
  const LocalField f = make_field(cfg.p, cfg.precision);
  const SquareClassGroup group = square_class_group(f);
  json j;
  j["command"] = "sqclasses";
  j["field"] = f.name();
  j["precision"] = f.precision();
  j["classes"] = json::array();
  std::ostringstream text;
  text << "classes of " << f.name() << "^x / squares\n";
  text << std::left << std::setw(8) << "label" << std::setw(6) << "bits" << std::setw(16) << "representative"
       << "parity\n";
  for (const SquareClass& c : group.elements) {
    const std::int64_t rep = c.representative_integer(f);
    j["classes"].push_back({{"label", c.label()}, {"bits", c.bits}, {"representative", rep}, {"parity", c.parity()}});
    text << std::setw(8) << c.label() << std::setw(6) << c.bits << std::setw(16) << rep << c.parity() << "\n";
  }
  json products = json::array();
  for (const auto& row : group.table) {
    json r = json::array();
    for (int k : row) r.push_back(group.elements[static_cast<std::size_t>(k)].label());
    products.push_back(r);
  }
  j["products"] = products;
  return {kExitPass, render(j, cfg.format, text.str())};
}

// ------------------------------------------------------------ lemma reports

struct ReportBundle {
  std::string command;
  std::string lemma_id;
  std::string field;
  std::vector<Report> reports;
  json extra;

  std::size_t assertions() const {
    std::size_t n = 0;
    for (const Report& r : reports) n += r.assertions.size();
    return n;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const Report& r : reports) n += r.failures();
    return n;
  }

  RunOutcome outcome(Format format) const {
    json j;
    j["command"] = command;
    j["lemma_id"] = lemma_id;
    j["field"] = field;
    j["assertions"] = assertions();
    j["failures"] = failures();
    j["pass"] = failures() == 0;
    j["reports"] = json::array();
    for (const Report& r : reports) j["reports"].push_back(r.to_json());
    if (!extra.is_null()) j["characters"] = extra;
    std::string text;
    for (const Report& r : reports) text += r.to_text() + "\n";
    text += lemma_id + " over " + field + ": " + std::to_string(assertions()) + " assertions, " +
            std::to_string(failures()) + " failures\n";
    return {failures() == 0 ? kExitPass : kExitFailure, render(j, format, text)};
  }
};

json irreps_json(const HeisenbergModel& model) {
  json out = json::array();
  for (const GenuineIrrep& sigma : genuine_irreps(model)) {
    json basis = json::array();
    for (std::uint32_t v : sigma.inducing.isotropic.basis()) basis.push_back(element_key(model, v));
    out.push_back({{"dim", sigma.dim},
                   {"inducing_basis", basis},
                   {"inducing_signs", sigma.inducing.signs},
                   {"character", class_function_json(model, sigma.character)}});
  }
  return out;
}

RunOutcome verify_lemma(const RunConfig& cfg) {
  const LocalField f = make_field(cfg.p, cfg.precision);
  ReportBundle b{"verify-lemma", cfg.lemma, f.name(), {}, {}};
  const std::string& id = cfg.lemma;
  if (id == "3.1") {
    b.reports.push_back(verify_split_center(build_split_model(f)));
  } else if (id == "7-const") {
    b.reports.push_back(split_multiplicity_report(f));
  } else if (id == "3.3" || id == "3.4" || id == "3.5" || id == "5.2" || id == "5.4" || id == "E1" ||
             id == "Thm1.1") {
    const int samples = static_cast<int>(cfg.trials.value_or(kDefaultE1Samples));
    for (const QuadExt& ext : extensions(f, cfg.d)) {
      if (id == "3.3") b.reports.push_back(verify_norm_compatibility(ext));
      if (id == "5.4") b.reports.push_back(verify_central_character_uniqueness(f, ext));
      if (id == "E1") b.reports.push_back(verify_E1_identity(ext, samples, cfg.seed));
      if (id == "Thm1.1") b.reports.push_back(main_theorem_report(ext));
      if (id == "3.4" || id == "3.5" || id == "5.2") {
        const NonSplitTorusModel m = build_nonsplit_model(ext);
        if (id == "3.4") b.reports.push_back(verify_field_image(m));
        if (id == "3.5") b.reports.push_back(verify_nonsplit_center(m));
        if (id == "5.2") b.reports.push_back(verify_index_identity(m));
      }
    }
  } else {
    return {kExitUsage, "unknown lemma id '" + id + "'; expected one of 3.1 3.3 3.4 3.5 5.2 5.4 E1 Thm1.1 7-const\n"};
  }
  return b.outcome(cfg.format);
}

RunOutcome report_main_theorem(const RunConfig& cfg) {
  const LocalField f = make_field(cfg.p, cfg.precision);
  ReportBundle b{"report-main-theorem", "Thm1.1", f.name(), {}, json::array()};
  for (const QuadExt& ext : extensions(f, cfg.d)) {
    b.reports.push_back(main_theorem_report(ext));
    const NonSplitTorusModel m = build_nonsplit_model(ext);
    b.extra.push_back({{"extension", ext.name()}, {"irreps", irreps_json(m.model)}});
  }
  return b.outcome(cfg.format);
}

RunOutcome split_report(const RunConfig& cfg) {
  const LocalField f = make_field(cfg.p, cfg.precision);
  const SplitTorusModel m = build_split_model(f);
  ReportBundle b{"split-report", "7-const", f.name(), {}, json::array()};
  b.reports.push_back(split_multiplicity_report(f));
  b.reports.push_back(verify_split_center(m));
  b.extra.push_back({{"extension", nullptr}, {"irreps", irreps_json(m.model)}});
  return b.outcome(cfg.format);
}

// ------------------------------------------------------------------ kubota

std::string kubota_text(const KubotaReport& r) {
  std::string s = r.field + " " + r.check + ": trials=" + std::to_string(r.trials) +
                  " redrawn=" + std::to_string(r.redrawn) + " failures=" + std::to_string(r.failures.size()) +
                  (r.all_pass() ? " PASS" : " FAIL") + "\n";
  for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i) s += "  " + r.failures[i].detail + "\n";
  return s;
}

RunOutcome kubota_verify(const RunConfig& cfg) {
  if (cfg.p == 2) return {kExitUsage, "kubota verify needs an odd prime; the splitting is not defined for p = 2\n"};
  const LocalField f = make_field(cfg.p, cfg.precision);
  const std::string lemma = cfg.lemma.empty() ? "cocycle" : cfg.lemma;
  std::vector<KubotaReport> reports;
  const bool all = lemma == "all";
  if (all || lemma == "cocycle") reports.push_back(check_cocycle_identity(f, cfg.trials.value_or(10000), cfg.seed));
  if (all || lemma == "8.1") reports.push_back(check_kappa_homomorphism(f, cfg.trials.value_or(10000), cfg.seed));
  if (all || lemma == "8.5")
    reports.push_back(invariant_splitting_check(f, cfg.level, cfg.trials.value_or(1000), cfg.seed));
  if (all || lemma == "Eq1") reports.push_back(check_borel_restriction(f));
  if (all || lemma == "Eq2") reports.push_back(check_torus_commutator(f));
  if (all || lemma == "Eq3") reports.push_back(check_weil_genuine_character(f));
  if (reports.empty())
    return {kExitUsage, "unknown check '" + lemma + "'; expected one of cocycle 8.1 8.5 Eq1 Eq2 Eq3 all\n"};

  const bool pass = std::all_of(reports.begin(), reports.end(), [](const KubotaReport& r) { return r.all_pass(); });
  json j;
  std::string text;
  for (const KubotaReport& r : reports) text += kubota_text(r);
  if (reports.size() == 1) {
    j = reports.front().to_json();
    j["pass"] = pass;
  } else {
    j["field"] = f.name();
    j["check"] = "all";
    j["seed"] = cfg.seed;
    j["pass"] = pass;
    j["reports"] = json::array();
    for (const KubotaReport& r : reports) j["reports"].push_back(r.to_json());
  }
  return {pass ? kExitPass : kExitFailure, render(j, cfg.format, text)};
}

// ------------------------------------------------------------------ run_all

struct Entry {
  std::string row;
  json report;
  bool pass = false;
};

void add(std::vector<Entry>& out, const std::string& row, const Report& r) {
  out.push_back({row, r.to_json(), r.all_pass()});
}
void add(std::vector<Entry>& out, const std::string& row, const KubotaReport& r) {
  out.push_back({row, r.to_json(), r.all_pass()});
}

std::vector<Entry> torus_suites(std::uint64_t p, const RunAllOptions& o) {
  const LocalField f = make_field(p, o.precision);
  std::vector<Entry> out;
  add(out, "3.1", verify_split_center(build_split_model(f)));
  add(out, "7-const", split_multiplicity_report(f));
  for (const QuadExt& ext : all_quadratic_extensions(f)) {
    const NonSplitTorusModel m = build_nonsplit_model(ext);
    add(out, "3.3", verify_norm_compatibility(ext));
    add(out, "3.4", verify_field_image(m));
    add(out, "3.4", verify_E1_identity(ext, o.e1_samples, o.seed));
    add(out, "3.5", verify_nonsplit_center(m));
    add(out, "5.2", verify_index_identity(m));
    add(out, "5.4", verify_central_character_uniqueness(f, ext));
    add(out, "Thm1.1", main_theorem_report(ext));
  }
  return out;
}

std::vector<Entry> kubota_suites(std::uint64_t p, const RunAllOptions& o) {
  const LocalField f = make_field(p, o.precision);
  std::vector<Entry> out;
  add(out, "8.1", check_cocycle_identity(f, o.cocycle_trials, o.seed));
  add(out, "8.1", check_kappa_homomorphism(f, o.kappa_trials, o.seed));
  for (int n = 0; n <= o.max_level; ++n) add(out, "8.5", invariant_splitting_check(f, n, o.splitting_trials, o.seed));
  add(out, "Eq1", check_borel_restriction(f));
  add(out, "Eq2", check_torus_commutator(f));
  return out;
}

std::vector<Entry> weil_suites(std::uint64_t p, const RunAllOptions& o) {
  std::vector<Entry> out;
  add(out, "Eq3", check_weil_genuine_character(make_field(p, o.precision)));
  return out;
}

}  // namespace

bool RunAllResult::all_pass() const {
  for (const PassMatrixRow& r : rows)
    for (const std::string& c : r.cells)
      if (c == "fail") return false;
  return true;
}

const PassMatrixRow* RunAllResult::row(const std::string& id) const {
  for (const PassMatrixRow& r : rows)
    if (r.id == id) return &r;
  return nullptr;
}

json RunAllResult::to_json() const {
  json j;
  j["command"] = "all";
  j["seed"] = seed;
  j["pass"] = all_pass();
  j["columns"] = columns;
  j["matrix"] = json::array();
  for (const PassMatrixRow& r : rows) {
    json cells = json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) cells[columns[i]] = r.cells[i];
    j["matrix"].push_back({{"id", r.id}, {"anchor", r.anchor}, {"cells", cells}});
  }
  j["reports"] = json::array();
  for (const auto& [id, report] : reports) j["reports"].push_back({{"row", id}, {"report", report}});
  return j;
}

std::string RunAllResult::to_text() const {
  std::ostringstream s;
  s << std::left << std::setw(9) << "row";
  for (const std::string& c : columns) s << std::setw(7) << c;
  s << "anchor\n";
  for (const PassMatrixRow& r : rows) {
    s << std::setw(9) << r.id;
    for (const std::string& c : r.cells) s << std::setw(7) << c;
    s << r.anchor << "\n";
  }
  s << (all_pass() ? "all suites pass" : "FAILURES present") << "\n";
  return s.str();
}

RunAllResult run_all(const RunAllOptions& o) {
  using Task = std::function<std::vector<Entry>()>;
  std::vector<std::pair<std::uint64_t, Task>> tasks;
  for (std::uint64_t p : o.torus_primes) tasks.emplace_back(p, [p, &o] { return torus_suites(p, o); });
  for (std::uint64_t p : o.kubota_primes) tasks.emplace_back(p, [p, &o] { return kubota_suites(p, o); });
  for (std::uint64_t p : o.weil_primes) tasks.emplace_back(p, [p, &o] { return weil_suites(p, o); });

  std::vector<std::vector<Entry>> results;
  if (o.parallel) {
    std::vector<std::future<std::vector<Entry>>> futures;
    for (const auto& t : tasks) futures.push_back(std::async(std::launch::async, t.second));
    for (auto& fut : futures) results.push_back(fut.get());
  } else {
    for (const auto& t : tasks) results.push_back(t.second());
  }

  std::vector<std::uint64_t> primes;
  for (const auto& t : tasks) primes.push_back(t.first);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  RunAllResult out;
  out.seed = o.seed;
  for (std::uint64_t p : primes) out.columns.push_back("Q_" + std::to_string(p));
  for (const RowSpec& spec : kRows) {
    PassMatrixRow row{spec.id, spec.anchor, {}};
    for (std::uint64_t p : primes) {
      std::string cell = "n/a";
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (tasks[t].first != p) continue;
        for (const Entry& e : results[t]) {
          if (e.row != spec.id) continue;
          if (cell == "n/a") cell = "pass";
          if (!e.pass) cell = "fail";
          out.reports.emplace_back(e.row, e.report);
        }
      }
      row.cells.push_back(cell);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

RunOutcome run(const RunConfig& cfg) {
  try {
    switch (cfg.command) {
      case Command::SymbolsTable:
        return symbols_table(cfg);
      case Command::Sqclasses:
        return sqclasses(cfg);
      case Command::VerifyLemma:
        return verify_lemma(cfg);
      case Command::ReportMainTheorem:
        return report_main_theorem(cfg);
      case Command::SplitReport:
        return split_report(cfg);
      case Command::KubotaVerify:
        return kubota_verify(cfg);
      case Command::All: {
        RunAllOptions o;
        o.seed = cfg.seed;
        o.precision = cfg.precision;
        const RunAllResult r = run_all(o);
        const json j = r.to_json();
        return {r.all_pass() ? kExitPass : kExitFailure, render(j, cfg.format, r.to_text())};
      }
    }
  } catch (const Error& e) {
    return {kExitUsage, std::string("error: ") + e.what() + "\n"};
  }
  return {kExitUsage, "error: unknown command\n"};
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const char* precision_env) {
  RunConfig cfg;
  std::string format = "text";
  std::string output;
  std::string json_path;
  int precision_flag = 0;

  CLI::App app{"Square classes, Hilbert symbols, covered tori and the Kubota cover over Q_p"};
  app.require_subcommand(1);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output", output, "Write the report to this file instead of stdout");
  app.add_option("--precision", precision_flag, "p-adic digits; overrides the environment variable");

  auto add_p = [&](CLI::App* sub) { sub->add_option("--p", cfg.p, "Prime of the base field")->required(); };
  auto add_d = [&](CLI::App* sub) { sub->add_option("--d", cfg.d, "Class of the discriminant, e.g. u, p, up, -1"); };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", cfg.seed, "Random seed"); };

  CLI::App* symbols = app.add_subcommand("symbols", "Hilbert symbol tables")->require_subcommand(1);
  CLI::App* table = symbols->add_subcommand("table", "Full class-by-class sign table");
  add_p(table);
  add_d(table);

  CLI::App* sq = app.add_subcommand("sqclasses", "Square classes and their products");
  add_p(sq);

  auto add_lemma_options = [&](CLI::App* sub) {
    add_p(sub);
    add_d(sub);
    add_seed(sub);
    sub->add_option("--samples", cfg.trials, "Sample count for randomized checks");
  };
  CLI::App* verify = app.add_subcommand("verify", "Verify a statement")->require_subcommand(1);
  CLI::App* lemma = verify->add_subcommand("lemma", "Verify one lemma over a field");
  lemma->add_option("--id", cfg.lemma, "3.1 3.3 3.4 3.5 5.2 5.4 E1 Thm1.1 7-const")->required();
  add_lemma_options(lemma);
  CLI::App* verify_lemma_cmd = app.add_subcommand("verify-lemma", "Verify one lemma over a field");
  verify_lemma_cmd->add_option("id", cfg.lemma, "3.1 3.3 3.4 3.5 5.2 5.4 E1 Thm1.1 7-const")->required();
  add_lemma_options(verify_lemma_cmd);

  CLI::App* report = app.add_subcommand("report", "Reports")->require_subcommand(1);
  CLI::App* main_theorem = report->add_subcommand("main-theorem", "Decomposition of Ind from the centre");
  add_p(main_theorem);
  add_d(main_theorem);
  main_theorem->add_option("--json", json_path, "Write the JSON report to this file");

  CLI::App* split = app.add_subcommand("split-report", "Genuine irrep of the covered split torus");
  add_p(split);

  CLI::App* kubota = app.add_subcommand("kubota", "Kubota cover checks")->require_subcommand(1);
  CLI::App* kverify = kubota->add_subcommand("verify", "Randomized and exhaustive cover checks");
  add_p(kverify);
  add_seed(kverify);
  kverify->add_option("--trials", cfg.trials, "Random trials");
  kverify->add_option("--lemma", cfg.lemma, "cocycle (default), 8.1, 8.5, Eq1, Eq2, Eq3 or all");
  kverify->add_option("--level", cfg.level, "n for the Gamma0(p^2n) check")->check(CLI::Range(0, 6));

  CLI::App* all = app.add_subcommand("all", "Every suite over the preset fields, as a pass matrix");
  add_seed(all);

  for (CLI::App* sub : {symbols, table, sq, verify, lemma, verify_lemma_cmd, report, main_theorem, split, kubota,
                        kverify, all})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (*table) cfg.command = Command::SymbolsTable;
  if (*sq) cfg.command = Command::Sqclasses;
  if (*lemma || *verify_lemma_cmd) cfg.command = Command::VerifyLemma;
  if (*main_theorem) cfg.command = Command::ReportMainTheorem;
  if (*split) cfg.command = Command::SplitReport;
  if (*kverify) cfg.command = Command::KubotaVerify;
  if (*all) cfg.command = Command::All;

  cfg.format = format == "json" ? Format::Json : Format::Text;
  if (precision_flag > 0) {
    cfg.precision = precision_flag;
  } else if (precision_env != nullptr && *precision_env != '\0') {
    const std::string value(precision_env);
    int parsed = 0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || end != value.data() + value.size() || parsed <= 0) {
      err << "error: " << kPrecisionEnv << "='" << value << "' is not a positive integer\n";
      return kExitUsage;
    }
    cfg.precision = parsed;
  }
  if (!json_path.empty()) {
    cfg.format = Format::Json;
    output = json_path;
  }

  const RunOutcome result = run(cfg);
  if (result.exit_code == kExitUsage) {
    err << result.body;
    return result.exit_code;
  }
  if (output.empty()) {
    out << result.body;
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << output << "\n";
      return kExitUsage;
    }
    file << result.body;
  }
  return result.exit_code;
}

}  // namespace metabranch
