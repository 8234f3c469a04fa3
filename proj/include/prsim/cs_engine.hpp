// Current System: authors choose journals, editors assign referees and
// decide, rejected manuscripts move down the author's ranking.
//
// A tick advances one month through six phases in fixed order:
//   1. production        every author drafts a manuscript w.p. productivity
//   2. submission        month-old drafts and last month's rejections go to
//                        their best remaining journal; referees are assigned
//   3. review            every pending review completes w.p. completion_prob
//   4. revision          submissions whose reviews just finished are revised
//                        and receive instantaneous second estimates
//   5. decision          submissions whose reviews finished in an earlier
//                        month get the editor's lottery
//   6. resubmission      rejected manuscripts wait one month or are abandoned
// Entities are always visited in ascending id order.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "prsim/config.hpp"
#include "prsim/run_record.hpp"

namespace prsim {

struct CsState {
  SimConfig config;
  int month = 0;
  RunRecord record;

  std::vector<int> open_manuscripts;
  std::vector<int> pending_tasks;
  // Indexed by manuscript id.
  std::vector<std::optional<int>> open_submission;
  std::vector<int> next_submission_month;
  std::vector<std::vector<int>> ranked_reviewers;
  std::vector<std::vector<int>> rejected_by;
};

CsState make_cs_state(const SimConfig& cfg, std::vector<AgentProfile> authors, std::vector<AgentProfile> journals);

/// p_j(t, q, n) * I_j using the manuscript's true values.
double journal_score(const Manuscript& ms, const AgentProfile& journal, double impact,
                     double halfwidth = kDefaultHalfwidth);

/// Best-scoring journal the manuscript has not been rejected by; ties go to
/// the lowest journal id. nullopt means the manuscript is abandoned.
std::optional<int> choose_target(const Manuscript& ms, std::span<const AgentProfile> journals,
                                 std::span<const double> impacts, std::span<const int> already_rejected,
                                 int max_rejections, double halfwidth = kDefaultHalfwidth);

/// Up to `top_pool` authors other than the manuscript's author, best
/// expertise score first (ties: lowest id).
std::vector<int> rank_reviewers(const Manuscript& ms, std::span<const AgentProfile> authors, std::size_t top_pool,
                                double halfwidth = kDefaultHalfwidth,
                                ExpertiseRanking ranking = ExpertiseRanking::InverseDensity);

/// `count` distinct ids sampled uniformly without replacement from `ranked`.
/// Throws std::invalid_argument if fewer than `count` are available.
std::vector<int> sample_reviewers(std::span<const int> ranked, std::size_t count, RngStream& rng);

std::vector<int> select_reviewers(const Manuscript& ms, std::span<const AgentProfile> authors, RngStream& rng,
                                  std::size_t count = 3, std::size_t top_pool = 20,
                                  double halfwidth = kDefaultHalfwidth,
                                  ExpertiseRanking ranking = ExpertiseRanking::InverseDensity);

/// Accept iff u <= p.
SubmissionRecord::Decision lottery(double p, double u);

SubmissionRecord::Decision editor_decision(const AgentProfile& journal, const EditorEstimate& e, RngStream& rng,
                                           double halfwidth = kDefaultHalfwidth);

void tick_cs(CsState& state, RngStream& rng);

RunRecord run_cs(const SimConfig& cfg, std::vector<AgentProfile> authors, std::vector<AgentProfile> journals,
                 RngStream& rng);

}  // namespace prsim
