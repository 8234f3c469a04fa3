// What an engine leaves behind after a run: agents, manuscripts, review
// tasks and the lifecycle event log consumed by metrics and serializers.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "prsim/population.hpp"
#include "prsim/review.hpp"

namespace prsim {

enum class Setting { CS, AS };

std::string_view to_string(Setting s);

enum class EventKind {
  Created,
  Submitted,        // CS: agent = journal
  EnteredPool,      // AS first pool
  ReviewAssigned,   // agent = reviewer
  ReviewCompleted,  // agent = reviewer
  Revised,
  Ripened,          // AS second pool
  Accepted,         // CS editor decision, agent = journal
  Rejected,         // CS editor decision, agent = journal
  Bid,              // AS, agent = journal
  Published,        // agent = journal
  Abandoned,
};

std::string_view to_string(EventKind kind);

struct LifecycleEvent {
  int month = 0;
  EventKind kind = EventKind::Created;
  int manuscript_id = 0;
  int agent_id = -1;

  friend bool operator==(const LifecycleEvent&, const LifecycleEvent&) = default;
};

/// One referee's engagement with one manuscript: a first-round estimate when
/// the review completes and a second estimate after the revision.
struct ReviewTask {
  int id = 0;
  int manuscript_id = 0;
  int reviewer_id = 0;
  int assigned_month = 0;
  std::optional<int> completed_month;
  std::optional<ReviewEstimate> first;
  std::optional<ReviewEstimate> second;

  bool complete() const noexcept { return first.has_value(); }
};

/// A CS submission of one manuscript to one journal.
struct SubmissionRecord {
  enum class Decision { Accept, Reject };

  int manuscript_id = 0;
  int journal_id = 0;
  int submitted_month = 0;
  std::vector<int> reviewer_ids;
  std::vector<int> task_ids;
  std::optional<int> reviews_done_month;
  std::optional<EditorEstimate> estimate;
  std::optional<Decision> decision;
  std::optional<int> decision_month;
};

struct RunRecord {
  Setting setting = Setting::CS;
  int months = 0;
  std::vector<AgentProfile> authors;
  std::vector<AgentProfile> journals;
  std::vector<double> impacts;
  std::vector<Manuscript> manuscripts;
  std::vector<ReviewTask> tasks;
  std::vector<SubmissionRecord> submissions;
  std::vector<LifecycleEvent> events;

  // AS review-debt ledger; zero for CS.
  long debt_incurred = 0;
  long debt_assigned = 0;
  long debt_outstanding = 0;

  std::uint64_t fingerprint() const { return population_fingerprint(authors, journals); }
  void log(int month, EventKind kind, int manuscript_id, int agent_id = -1) {
    events.push_back({month, kind, manuscript_id, agent_id});
  }
};

}  // namespace prsim
