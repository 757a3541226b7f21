#pragma once

// The named identity suite: each check runs fixed desk-scale instances (or caller words)
// through probabilistic equality, with exact confirmation of every reported failure.

#include "cdual/cartan.hpp"
#include "cdual/trials.hpp"

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cdual {

// Seed: exact seed shadows and point-level maps, any Cartan type. Matrix: group-valued
// evaluations, type A only.
enum class CheckLevel { Seed, Matrix };
std::string level_name(CheckLevel l);
std::optional<CheckLevel> parse_level(const std::string& s);
CheckLevel default_level(const CartanData& c);

struct CheckOptions {
  std::string cartan_type = "A1";
  std::optional<CheckLevel> level;  // default_level when unset
  TrialConfig trials;               // per instance
  // Replaces the default instances of identities that take words; FG_MUTATION reads a pair.
  std::vector<Word> words;
  bool timing = false;
};

struct CheckInstance {
  std::string label;
  std::size_t trials = 0, skipped = 0;
  std::string verdict;  // Equal, CounterexampleAt, Inconclusive
};

struct CheckReport {
  std::string name, cartan_type, level;
  std::vector<std::string> words;
  std::uint64_t prime = 0;
  std::size_t trials = 0, skipped = 0;
  std::vector<Counterexample> failures;
  std::vector<CheckInstance> instances;
  std::vector<std::string> notes;
  bool inconclusive = false;
  std::optional<double> elapsed_ms;  // only with CheckOptions::timing, to keep reports reproducible

  bool passed() const { return failures.empty() && !inconclusive && !instances.empty(); }
  nlohmann::json to_json() const;
};

const std::vector<std::string>& identity_names();

// Empty when the identity runs for this type and level, otherwise why not.
std::string unsupported_reason(const std::string& name, const CartanData& c, CheckLevel level);

// Throws UnsupportedForType, InvalidParameter (unknown name, bad words) or std::invalid_argument
// (trial configuration).
CheckReport check_identity(const std::string& name, const CheckOptions& opt);

struct SuiteResult {
  std::vector<CheckReport> reports;
  std::vector<std::pair<std::string, std::string>> not_applicable;  // name, reason
  bool passed() const;
  nlohmann::json to_json() const;
};
SuiteResult check_all(const CheckOptions& opt);

}  // namespace cdual
