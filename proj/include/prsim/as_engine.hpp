// Alternative System: a shared first pool in which submitting authors owe
// reviews, a second pool of ripe manuscripts, and monthly journal bidding.
//
// Tick phases, in order:
//   1. production      as in the CS
//   2. pool entry      month-old drafts enter the first pool; the author owes
//                      reviewers_per_ms reviews starting next month
//   3. duties          authors with payable debt pick pool manuscripts to review
//   4. reviews         pending reviews complete w.p. completion_prob; fully
//                      reviewed manuscripts are revised, re-estimated and
//                      moved to the second pool
//   5. bidding         every journal runs its acceptance lottery on every
//                      manuscript that ripened in an earlier month
//   6. resolution      highest-impact bidder wins; no bids means abandonment
//                      once as_bid_rounds rounds have been used

#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "prsim/config.hpp"
#include "prsim/run_record.hpp"

namespace prsim {

struct ReviewDebt {
  int author_id = 0;
  int owed = 0;
  int incurred_month = 0;
};

struct Bid {
  int journal_id = 0;
  int manuscript_id = 0;
  int month = 0;

  friend bool operator==(const Bid&, const Bid&) = default;
};

/// Per-manuscript bookkeeping that only the AS needs.
struct PoolEntry {
  std::optional<int> pool_month;
  std::optional<int> ripened_month;
  std::vector<int> reviewers;
  std::vector<int> task_ids;
  int completed_reviews = 0;
  int bid_rounds = 0;
  std::optional<EditorEstimate> estimate;
};

struct AsState {
  SimConfig config;
  int month = 0;
  RunRecord record;

  std::vector<int> drafts;
  std::vector<int> first_pool;
  std::vector<int> second_pool;
  std::vector<int> pending_tasks;
  std::vector<PoolEntry> entries;  // indexed by manuscript id
  std::vector<std::deque<ReviewDebt>> debts;  // indexed by author id, oldest first
  std::vector<Bid> bids;  // current round
  std::vector<int> evaluated;  // manuscripts bid on in the current round

  /// Debt incurred before the current month and not yet assigned.
  int payable_debt(int author_id) const;
  int outstanding_debt(int author_id) const;
};

AsState make_as_state(const SimConfig& cfg, std::vector<AgentProfile> authors, std::vector<AgentProfile> journals);

void submit_to_pool(int manuscript_id, AsState& state);

/// Fills as much of the author's payable debt as eligibility allows. Eligible
/// manuscripts are in the first pool, not the author's own, not already
/// assigned to this author and still short of reviewers_per_ms reviewers.
void assign_review_duties(int author_id, AsState& state, RngStream& rng);

void process_pool_reviews(AsState& state, RngStream& rng);

/// Runs every journal's lottery on every manuscript that ripened before the
/// current month. Stores and returns the bids.
std::vector<Bid> run_bidding_round(AsState& state, RngStream& rng);

void resolve_bids(AsState& state);

void tick_as(AsState& state, RngStream& rng);

RunRecord run_as(const SimConfig& cfg, std::vector<AgentProfile> authors, std::vector<AgentProfile> journals,
                 RngStream& rng);

}  // namespace prsim
