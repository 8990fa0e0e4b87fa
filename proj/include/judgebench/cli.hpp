#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "judgebench/anonspec.hpp"
#include "judgebench/kripke.hpp"
#include "judgebench/protocols.hpp"

namespace judgebench::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kInputError = 2, kCapacity = 3 };

struct FormulaSpec {
  std::string name;
  std::optional<std::string> text;
  std::optional<std::string> suite;
  // Unset: for a suite, keep the generator's expectations; otherwise unknown.
  std::optional<anonspec::Expected> expected;
};

struct Scenario {
  protocols::ProtocolId protocol = protocols::ProtocolId::ThreeJudgesMM;
  std::size_t n = 1;
  std::optional<core::DecisionVector> decisions;  // nullopt: all
  std::optional<protocols::Sampled> sampled;      // nullopt: exhaustive
  kripke::ObsMode obs_mode = kripke::ObsMode::FullLocalState;
  protocols::OtMode ot = protocols::OtMode::Ideal;
  std::vector<FormulaSpec> formulas;
  std::optional<std::filesystem::path> report_path;
  std::optional<std::filesystem::path> traces_path;
  std::optional<std::filesystem::path> model_path;
  nlohmann::json source;
};

// Throws SchemaError naming the offending field.
Scenario parse_scenario(const nlohmann::json& doc);
// Also throws IoError, and SchemaError for malformed JSON.
Scenario load_scenario(const std::filesystem::path& path);

struct Settings {
  std::size_t jobs = 1;
  std::uint64_t state_cap = 10'000'000;
  std::optional<std::uint64_t> seed;
};

struct Outcome {
  int exit_code = kOk;
  nlohmann::json report;
};

// Formula list with suites expanded, in scenario order.
std::vector<anonspec::SuiteEntry> resolve_formulas(const Scenario& s);

Outcome cmd_simulate(const Scenario& s, const Settings& settings);
Outcome cmd_check(const Scenario& s, const Settings& settings);
Outcome cmd_export_model(const Scenario& s, const std::filesystem::path& out, const Settings& settings);
// `votes` empty and `all` false: a single all-zero vote vector.
Outcome cmd_avnet(const std::string& preset, std::size_t n, const std::vector<int>& votes, bool all,
                  std::uint64_t seed);

// Whole command line; reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace judgebench::cli
