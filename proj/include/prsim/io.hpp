// Experiment orchestration and serialization.
//
// Output layout for `run_experiment(cfg, selection, out)`:
//
//   out/manifest.json                 config echo, seed scheme, build id, files
//   out/aggregate.json                mean / stddev of headline metrics
//   out/replicate_NNN/population.csv  one row per agent
//   out/replicate_NNN/manuscripts.csv one row per manuscript and setting
//   out/replicate_NNN/authors.csv     per-author outcomes per setting
//   out/replicate_NNN/journals.csv    per-journal outcomes per setting
//   out/replicate_NNN/summary.json    RunSummary per setting + comparison
//   out/replicate_NNN/plot_author_publications.csv    (both settings only)
//   out/replicate_NNN/plot_author_mean_impact.csv     (both settings only)
//   out/replicate_NNN/plot_months_to_publication.csv
//   out/replicate_NNN/plot_journal_publications.csv   (both settings only)

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "prsim/config.hpp"
#include "prsim/metrics.hpp"
#include "prsim/run_record.hpp"

namespace prsim {

enum class SettingSelection { CS, AS, Both };

SettingSelection selection_from_string(std::string_view name);

/// Thrown when an output file cannot be written; the message names the path.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReplicateSeeds {
  std::uint64_t authors = 0;
  std::uint64_t journals = 0;
  std::uint64_t cs = 0;
  std::uint64_t as = 0;
};

ReplicateSeeds replicate_seeds(std::uint64_t master, int replicate);

struct Population {
  std::vector<AgentProfile> authors;
  std::vector<AgentProfile> journals;
};

Population make_population(const SimConfig& cfg, const ReplicateSeeds& seeds);

struct ReplicateResult {
  int replicate = 0;
  ReplicateSeeds seeds;
  std::optional<RunRecord> cs;
  std::optional<RunRecord> as;
  std::optional<RunSummary> cs_summary;
  std::optional<RunSummary> as_summary;
  std::optional<ComparisonReport> comparison;
};

/// One shared population, then CS and/or AS on copies of it.
ReplicateResult run_replicate(const SimConfig& cfg, int replicate, SettingSelection selection);

struct OutputBundle {
  std::filesystem::path root;
  std::vector<std::filesystem::path> files;  // relative to root
  nlohmann::json manifest;
};

/// Requires cfg.master_seed. Throws ConfigError for an invalid config and
/// OutputError for I/O failures.
OutputBundle run_experiment(const SimConfig& cfg, SettingSelection selection, const std::filesystem::path& out);

/// Writes one replicate's files into `dir`; returns their names.
std::vector<std::string> write_outputs(const ReplicateResult& result, const SimConfig& cfg,
                                       const std::filesystem::path& dir);

std::string build_identifier();

/// 17 significant digits, so the text round-trips to the same double.
std::string format_real(double v);

void write_population_csv(std::ostream& out, const std::vector<AgentProfile>& authors,
                          const std::vector<AgentProfile>& journals, const std::vector<double>& impacts);
void write_manuscripts_csv(std::ostream& out, const std::vector<const RunRecord*>& runs);

nlohmann::json summary_to_json(const RunSummary& s);
RunSummary summary_from_json(const nlohmann::json& j);
nlohmann::json comparison_to_json(const ComparisonReport& r);

}  // namespace prsim
