// Run-level aggregates and CS-versus-AS comparisons.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prsim/run_record.hpp"

namespace prsim {

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;

  friend bool operator==(const Quartiles&, const Quartiles&) = default;
};

/// Nearest-rank percentile: the ceil(fraction * n)-th smallest value
/// (1-based, at least the first). Throws on empty input.
double nearest_rank(std::span<const double> sorted, int numerator, int denominator);
std::optional<Quartiles> quartiles(std::vector<double> values);

struct AuthorStats {
  int publications = 0;
  double total_impact = 0.0;
  std::optional<double> mean_impact;  // absent without publications

  friend bool operator==(const AuthorStats&, const AuthorStats&) = default;
};

struct JournalStats {
  int publications = 0;
  double impact = 0.0;
  int impact_quartile = 0;  // 1 = bottom 25 %, 4 = top 25 %

  friend bool operator==(const JournalStats&, const JournalStats&) = default;
};

/// 1 if impact <= Q1, 2 if <= median, 3 if < Q3, else 4; nearest-rank
/// quartiles over all journal impacts.
std::vector<int> impact_quartile_classes(std::span<const double> impacts);

struct RunSummary {
  Setting setting = Setting::CS;
  std::uint64_t population_fingerprint = 0;
  int months = 0;

  int manuscripts = 0;
  int published = 0;
  int abandoned = 0;
  int in_flight = 0;
  // published / (published + abandoned); the horizon's in-flight residue is
  // left out of the denominator.
  double publication_fraction = 0.0;
  // published / manuscripts.
  double publication_fraction_all = 0.0;

  long total_submissions = 0;
  long total_reviews = 0;
  // Means over resolved manuscripts.
  double submissions_per_manuscript = 0.0;
  double reviews_per_manuscript = 0.0;
  double reviews_per_published = 0.0;
  // Over every manuscript, in-flight ones included.
  double reviews_per_manuscript_all = 0.0;

  std::optional<double> months_to_publication_mean;
  std::optional<Quartiles> months_to_publication;

  std::vector<AuthorStats> authors;
  std::vector<JournalStats> journals;

  std::optional<double> merit_published;
  std::optional<double> merit_abandoned;

  // AS only: manuscripts still waiting in the first pool at the horizon.
  int first_pool_waiting = 0;
  std::optional<double> first_pool_mean_age;
  long debt_outstanding = 0;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

/// q * n.
double manuscript_merit(const Manuscript& ms);

RunSummary summarize_run(const RunRecord& run);

/// Publication month minus creation month for every published manuscript,
/// in manuscript id order.
std::vector<int> months_to_publication(const RunRecord& run);

struct QuartileDelta {
  int journals = 0;
  double mean_cs_publications = 0.0;
  double mean_as_publications = 0.0;
  double fraction_more_in_as = 0.0;

  friend bool operator==(const QuartileDelta&, const QuartileDelta&) = default;
};

struct ComparisonReport {
  double authors_more_publications_in_as = 0.0;
  double authors_higher_total_impact_in_as = 0.0;
  // Over authors with at least one publication in both settings.
  double authors_higher_mean_impact_in_as = 0.0;
  int authors_with_mean_in_both = 0;
  double journals_more_publications_in_as = 0.0;
  std::array<QuartileDelta, 4> by_impact_quartile{};

  friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

/// Throws std::invalid_argument when the two runs used different populations.
ComparisonReport compare_runs(const RunSummary& cs, const RunSummary& as);

}  // namespace prsim
