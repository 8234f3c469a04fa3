#include "prsim/as_engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace prsim {

namespace {

void produce(AsState& s, RngStream& rng) {
  auto& rec = s.record;
  for (const auto& author : rec.authors) {
    if (!rng.bernoulli(s.config.productivity)) continue;
    const int id = static_cast<int>(rec.manuscripts.size());
    rec.manuscripts.push_back(draw_manuscript(author, id, s.month, rng));
    s.entries.emplace_back();
    s.drafts.push_back(id);
    rec.log(s.month, EventKind::Created, id, author.id);
  }
}

// Removes `n` units from the oldest payable debt entries.
void settle_debt(AsState& s, int author_id, int n) {
  auto& queue = s.debts[author_id];
  for (auto it = queue.begin(); n > 0 && it != queue.end() && it->incurred_month < s.month;) {
    const int take = std::min(n, it->owed);
    it->owed -= take;
    n -= take;
    if (it->owed == 0) {
      it = queue.erase(it);
    } else {
      ++it;
    }
  }
  if (n != 0) throw std::logic_error("settle_debt: assigned more reviews than were owed");
}

void assign(AsState& s, int author_id, int manuscript_id) {
  auto& rec = s.record;
  const int task_id = static_cast<int>(rec.tasks.size());
  rec.tasks.push_back(ReviewTask{task_id, manuscript_id, author_id, s.month, std::nullopt, std::nullopt, std::nullopt});
  auto& entry = s.entries[manuscript_id];
  entry.reviewers.push_back(author_id);
  entry.task_ids.push_back(task_id);
  rec.manuscripts[manuscript_id].review_log.push_back(task_id);
  s.pending_tasks.push_back(task_id);
  rec.log(s.month, EventKind::ReviewAssigned, manuscript_id, author_id);
}

}  // namespace

int AsState::payable_debt(int author_id) const {
  int total = 0;
  for (const auto& d : debts[author_id]) {
    if (d.incurred_month < month) total += d.owed;
  }
  return total;
}

int AsState::outstanding_debt(int author_id) const {
  int total = 0;
  for (const auto& d : debts[author_id]) total += d.owed;
  return total;
}

AsState make_as_state(const SimConfig& cfg, std::vector<AgentProfile> authors, std::vector<AgentProfile> journals) {
  validate(cfg);
  AsState s;
  s.config = cfg;
  s.record.setting = Setting::AS;
  for (const auto& j : journals) s.record.impacts.push_back(journal_impact(j, cfg.window_halfwidth));
  s.debts.resize(authors.size());
  s.record.authors = std::move(authors);
  s.record.journals = std::move(journals);
  return s;
}

void submit_to_pool(int manuscript_id, AsState& s) {
  auto& ms = s.record.manuscripts[manuscript_id];
  ms.move_to(ManuscriptState::InFirstPool);
  ++ms.submissions;
  s.entries[manuscript_id].pool_month = s.month;
  s.first_pool.push_back(manuscript_id);
  const int owed = s.config.reviewers_per_ms;
  s.debts[ms.author_id].push_back(ReviewDebt{ms.author_id, owed, s.month});
  s.record.debt_incurred += owed;
  s.record.debt_outstanding += owed;
  s.record.log(s.month, EventKind::EnteredPool, manuscript_id, ms.author_id);
}

void assign_review_duties(int author_id, AsState& s, RngStream& rng) {
  const int owed = s.payable_debt(author_id);
  if (owed <= 0) return;
  const auto& rec = s.record;
  const auto cap = static_cast<std::size_t>(s.config.reviewers_per_ms);

  std::vector<int> eligible;
  for (int id : s.first_pool) {
    const auto& entry = s.entries[id];
    if (rec.manuscripts[id].author_id == author_id || entry.reviewers.size() >= cap) continue;
    if (std::find(entry.reviewers.begin(), entry.reviewers.end(), author_id) != entry.reviewers.end()) continue;
    eligible.push_back(id);
  }
  const std::size_t take = std::min(static_cast<std::size_t>(owed), eligible.size());
  if (take == 0) return;

  if (s.config.as_duty_strategy == DutyStrategy::Random) {
    for (std::size_t i = 0; i < take; ++i) {
      std::swap(eligible[i], eligible[i + rng.below(eligible.size() - i)]);
    }
  } else {
    const auto& topic = rec.authors[author_id].topic;
    std::vector<std::tuple<double, int, int>> ranked;  // (score, pool month, id)
    ranked.reserve(eligible.size());
    for (int id : eligible) {
      ranked.emplace_back(expertise_score(topic, rec.manuscripts[id].t, s.config.expertise_ranking,
                                          s.config.window_halfwidth),
                          *s.entries[id].pool_month, id);
    }
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take), ranked.end(),
                      [](const auto& a, const auto& b) {
                        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
                        if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
                        return std::get<2>(a) < std::get<2>(b);
                      });
    for (std::size_t i = 0; i < take; ++i) eligible[i] = std::get<2>(ranked[i]);
  }

  for (std::size_t i = 0; i < take; ++i) assign(s, author_id, eligible[i]);
  settle_debt(s, author_id, static_cast<int>(take));
  s.record.debt_assigned += static_cast<long>(take);
  s.record.debt_outstanding -= static_cast<long>(take);
}

void process_pool_reviews(AsState& s, RngStream& rng) {
  auto& rec = s.record;
  const double h = s.config.window_halfwidth;
  std::vector<int> still_pending;
  for (int task_id : s.pending_tasks) {
    auto& task = rec.tasks[task_id];
    if (!rng.bernoulli(s.config.completion_prob)) {
      still_pending.push_back(task_id);
      continue;
    }
    const auto& ms = rec.manuscripts[task.manuscript_id];
    task.first = review_estimate(rec.authors[task.reviewer_id], ms, ReviewRound::First, rng, h);
    task.completed_month = s.month;
    ++s.entries[ms.id].completed_reviews;
    rec.log(s.month, EventKind::ReviewCompleted, ms.id, task.reviewer_id);
  }
  s.pending_tasks = std::move(still_pending);

  std::vector<int> remaining;
  for (int id : s.first_pool) {
    auto& entry = s.entries[id];
    if (entry.completed_reviews < s.config.reviewers_per_ms) {
      remaining.push_back(id);
      continue;
    }
    auto& ms = rec.manuscripts[id];
    revise(ms, rng, s.config.improvement_cap);
    rec.log(s.month, EventKind::Revised, id);
    std::vector<ReviewEstimate> second;
    for (int t : entry.task_ids) {
      auto& task = rec.tasks[t];
      task.second = review_estimate(rec.authors[task.reviewer_id], ms, ReviewRound::PostRevision, rng, h);
      second.push_back(*task.second);
    }
    entry.estimate = aggregate_estimates(second, second.size());
    entry.ripened_month = s.month;
    ms.move_to(ManuscriptState::InSecondPool);
    s.second_pool.push_back(id);
    rec.log(s.month, EventKind::Ripened, id);
  }
  s.first_pool = std::move(remaining);
}

std::vector<Bid> run_bidding_round(AsState& s, RngStream& rng) {
  s.bids.clear();
  s.evaluated.clear();
  const auto& rec = s.record;
  for (int id : s.second_pool) {
    const auto& entry = s.entries[id];
    if (*entry.ripened_month >= s.month) continue;
    s.evaluated.push_back(id);
    for (const auto& journal : rec.journals) {
      const double p = acceptance_probability(journal, *entry.estimate, s.config.window_halfwidth);
      if (rng.uniform_left_open() <= p) s.bids.push_back(Bid{journal.id, id, s.month});
    }
  }
  for (const auto& b : s.bids) s.record.log(s.month, EventKind::Bid, b.manuscript_id, b.journal_id);
  return s.bids;
}

void resolve_bids(AsState& s) {
  auto& rec = s.record;
  // Bids are grouped by manuscript in evaluation order, journals ascending.
  std::size_t cursor = 0;
  for (int id : s.evaluated) {
    std::optional<int> winner;
    for (; cursor < s.bids.size() && s.bids[cursor].manuscript_id == id; ++cursor) {
      const int j = s.bids[cursor].journal_id;
      if (!winner || rec.impacts[j] > rec.impacts[*winner]) winner = j;
    }
    auto& ms = rec.manuscripts[id];
    auto& entry = s.entries[id];
    ++entry.bid_rounds;
    if (winner) {
      ms.publish(*winner, s.month);
      rec.log(s.month, EventKind::Published, id, *winner);
    } else if (entry.bid_rounds >= s.config.as_bid_rounds) {
      ms.abandon(s.month);
      rec.log(s.month, EventKind::Abandoned, id);
    }
  }
  std::erase_if(s.second_pool, [&](int id) { return rec.manuscripts[id].resolved(); });
  s.evaluated.clear();
}

void tick_as(AsState& s, RngStream& rng) {
  produce(s, rng);

  std::vector<int> waiting;
  for (int id : s.drafts) {
    if (s.record.manuscripts[id].created_month < s.month) {
      submit_to_pool(id, s);
    } else {
      waiting.push_back(id);
    }
  }
  s.drafts = std::move(waiting);

  for (const auto& author : s.record.authors) assign_review_duties(author.id, s, rng);
  process_pool_reviews(s, rng);
  run_bidding_round(s, rng);
  resolve_bids(s);

  ++s.month;
  s.record.months = s.month;
}

RunRecord run_as(const SimConfig& cfg, std::vector<AgentProfile> authors, std::vector<AgentProfile> journals,
                 RngStream& rng) {
  AsState s = make_as_state(cfg, std::move(authors), std::move(journals));
  while (s.month < cfg.months) tick_as(s, rng);
  return std::move(s.record);
}

}  // namespace prsim
