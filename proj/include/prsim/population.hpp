// Authors, journals and manuscripts.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "prsim/stochastics.hpp"

namespace prsim {

enum class AgentKind { Author, Journal };
enum class Archetype { Broad, Specialist, Normal };

std::string_view to_string(AgentKind kind);
std::string_view to_string(Archetype archetype);
Archetype archetype_from_string(std::string_view name);

/// An author or journal: three beta distributions over topic (T),
/// technical quality (Q) and novelty (N).
struct AgentProfile {
  int id = 0;
  AgentKind kind = AgentKind::Author;
  Archetype archetype = Archetype::Normal;
  BetaParams topic{1.0, 1.0};
  BetaParams quality{1.0, 1.0};
  BetaParams novelty{1.0, 1.0};

  friend bool operator==(const AgentProfile&, const AgentProfile&) = default;
};

struct ParamRange {
  double lo = 1.0;
  double hi = 1.0;

  bool contains(double v) const noexcept { return v >= lo && v <= hi; }
  friend bool operator==(const ParamRange&, const ParamRange&) = default;
};

/// Recipe for `count` agents whose six shape parameters are drawn uniformly
/// from the given intervals.
struct ArchetypeSpec {
  Archetype archetype = Archetype::Normal;
  int count = 0;
  ParamRange alpha_topic;
  ParamRange beta_topic;
  ParamRange alpha_quality;
  ParamRange beta_quality;
  ParamRange alpha_novelty;
  ParamRange beta_novelty;

  /// Throws std::invalid_argument on a negative count or an interval with
  /// lo > hi or lo <= 0.
  void validate() const;
  bool admits(const AgentProfile& agent) const noexcept;

  friend bool operator==(const ArchetypeSpec&, const ArchetypeSpec&) = default;
};

/// 50 broad-interest, 150 specialist and 300 normal authors.
std::vector<ArchetypeSpec> default_author_specs();
/// 5 broad-interest, 15 specialist and 30 normal journals.
std::vector<ArchetypeSpec> default_journal_specs();

// Agents are generated spec by spec in list order; within an agent the
// parameters are drawn as alpha_T, beta_T, alpha_Q, beta_Q, alpha_N, beta_N.
std::vector<AgentProfile> generate_authors(std::span<const ArchetypeSpec> specs, RngStream& rng);
std::vector<AgentProfile> generate_journals(std::span<const ArchetypeSpec> specs, RngStream& rng);

/// mean(Q) * mean(N) / window_density(T, mean(T)).
double journal_impact(const AgentProfile& journal, double halfwidth = kDefaultHalfwidth);

/// FNV-1a over every shape parameter of both populations. Two runs share a
/// population iff their fingerprints match.
std::uint64_t population_fingerprint(std::span<const AgentProfile> authors,
                                     std::span<const AgentProfile> journals);

enum class ManuscriptState { Draft, UnderReview, InFirstPool, InSecondPool, Published, Abandoned };

std::string_view to_string(ManuscriptState state);

/// Lifecycle graph shared by both settings. Published and Abandoned are
/// terminal.
bool is_legal_transition(ManuscriptState from, ManuscriptState to) noexcept;

struct RevisionPoint {
  int revision = 0;
  double q = 0.0;
  double n = 0.0;
};

struct Manuscript {
  int id = 0;
  int author_id = 0;
  double t = 0.0;
  double q = 0.0;
  double n = 0.0;
  double q_initial = 0.0;
  double n_initial = 0.0;
  int revisions = 0;
  int created_month = 0;
  ManuscriptState state = ManuscriptState::Draft;
  std::optional<int> outcome_month;
  std::optional<int> journal_id;
  int rejection_count = 0;
  int submissions = 0;
  std::vector<int> review_log;
  std::vector<RevisionPoint> history;

  bool resolved() const noexcept {
    return state == ManuscriptState::Published || state == ManuscriptState::Abandoned;
  }

  /// Throws std::logic_error on an edge missing from the lifecycle graph.
  void move_to(ManuscriptState next);
  void publish(int journal, int month);
  void abandon(int month);
};

Manuscript draw_manuscript(const AgentProfile& author, int id, int month, RngStream& rng);

}  // namespace prsim
