// Simulation configuration and its JSON representation.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "prsim/population.hpp"
#include "prsim/review.hpp"

namespace prsim {

/// How AS authors pick the manuscripts they owe reviews for.
enum class DutyStrategy { Expertise, Random };

struct SimConfig {
  std::optional<std::uint64_t> master_seed;
  int months = 120;
  std::vector<ArchetypeSpec> author_specs = default_author_specs();
  std::vector<ArchetypeSpec> journal_specs = default_journal_specs();
  double productivity = 0.25;
  double completion_prob = 0.5;
  int max_rejections = 5;
  int reviewers_per_ms = 3;
  int top_pool = 20;
  double window_halfwidth = kDefaultHalfwidth;
  double improvement_cap = 0.1;
  int as_bid_rounds = 1;
  DutyStrategy as_duty_strategy = DutyStrategy::Expertise;
  ExpertiseRanking expertise_ranking = ExpertiseRanking::InverseDensity;
  int replicates = 1;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Thrown for malformed documents (with line context) and for configs that
/// violate one or more invariants (every violation listed).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every violated invariant, empty when the config is valid.
std::vector<std::string> validation_errors(const SimConfig& cfg);
void validate(const SimConfig& cfg);

/// Parses a JSON object. Missing keys take defaults, unknown keys are
/// rejected, and an empty document is an empty object.
SimConfig parse_config_text(std::string_view text, std::string_view source = "<config>");
SimConfig load_config_file(const std::filesystem::path& path);

nlohmann::json config_to_json(const SimConfig& cfg);

std::string_view to_string(DutyStrategy s);
std::string_view to_string(ExpertiseRanking r);

}  // namespace prsim
