#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "metabranch/kubota.hpp"
#include "metabranch/report.hpp"

namespace metabranch {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Name of the environment variable holding the default precision override.
inline constexpr const char* kPrecisionEnv = "METABRANCH_PRECISION";

struct RunConfig {
  enum class Command { SymbolsTable, Sqclasses, VerifyLemma, ReportMainTheorem, SplitReport, KubotaVerify, All };
  enum class Format { Json, Text };

  Command command = Command::All;
  std::uint64_t p = 0;
  /// Class label of the discriminant; unset means every quadratic extension.
  std::optional<std::string> d;
  /// Lemma id for verify-lemma and kubota-verify.
  std::string lemma;
  /// Unset means the per-check default.
  std::optional<std::int64_t> trials;
  std::uint64_t seed = kDefaultSeed;
  int level = 1;
  /// 0 means the per-prime default.
  int precision = 0;
  Format format = Format::Text;
};

struct RunOutcome {
  int exit_code = kExitPass;
  std::string body;
};

/// Runs one command. Verification failures give exit 1; invalid fields,
/// classes and precision errors give exit 2 with the message in body.
RunOutcome run(const RunConfig& config);

struct RunAllOptions {
  std::vector<std::uint64_t> torus_primes{2, 3, 5, 7, 13};
  std::vector<std::uint64_t> kubota_primes{3, 5, 7};
  std::vector<std::uint64_t> weil_primes{3, 5, 7, 13};
  std::uint64_t seed = kDefaultSeed;
  int precision = 0;
  std::int64_t cocycle_trials = 10000;
  std::int64_t kappa_trials = 10000;
  std::int64_t splitting_trials = 1000;
  int max_level = 3;
  int e1_samples = 200;
  bool parallel = true;
};

struct PassMatrixRow {
  std::string id;
  std::string anchor;
  /// One of "pass", "fail", "n/a" per column.
  std::vector<std::string> cells;
};

struct RunAllResult {
  std::vector<std::string> columns;
  std::vector<PassMatrixRow> rows;
  /// Row id and serialized report, in row order then field order.
  std::vector<std::pair<std::string, nlohmann::ordered_json>> reports;
  std::uint64_t seed = 0;

  bool all_pass() const;
  const PassMatrixRow* row(const std::string& id) const;
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

/// Every suite over the configured fields. Suites may run concurrently; the
/// result order depends only on the options.
RunAllResult run_all(const RunAllOptions& options = {});

/// Parses argv and runs. precision_env is the raw value of the precision
/// environment variable, or null.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const char* precision_env);

}  // namespace metabranch
