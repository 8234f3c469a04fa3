#include "prsim/cs_engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace prsim {

namespace {

void prune_resolved(std::vector<int>& ids, const std::vector<Manuscript>& manuscripts) {
  std::erase_if(ids, [&](int id) { return manuscripts[id].resolved(); });
}

void produce(CsState& s, RngStream& rng) {
  auto& rec = s.record;
  for (const auto& author : rec.authors) {
    if (!rng.bernoulli(s.config.productivity)) continue;
    const int id = static_cast<int>(rec.manuscripts.size());
    rec.manuscripts.push_back(draw_manuscript(author, id, s.month, rng));
    s.open_submission.emplace_back();
    s.next_submission_month.push_back(s.month + 1);
    s.ranked_reviewers.emplace_back();
    s.rejected_by.emplace_back();
    s.open_manuscripts.push_back(id);
    rec.log(s.month, EventKind::Created, id, author.id);
  }
}

void submit(CsState& s, Manuscript& ms, RngStream& rng) {
  auto& rec = s.record;
  const auto& cfg = s.config;
  const auto target = choose_target(ms, rec.journals, rec.impacts, s.rejected_by[ms.id], cfg.max_rejections,
                                    cfg.window_halfwidth);
  if (!target) {
    ms.abandon(s.month);
    rec.log(s.month, EventKind::Abandoned, ms.id);
    return;
  }
  // The ranking depends only on the fixed topic t, so it is computed once.
  auto& ranked = s.ranked_reviewers[ms.id];
  if (ranked.empty()) {
    ranked = rank_reviewers(ms, rec.authors, static_cast<std::size_t>(cfg.top_pool), cfg.window_halfwidth,
                            cfg.expertise_ranking);
  }
  SubmissionRecord sub;
  sub.manuscript_id = ms.id;
  sub.journal_id = *target;
  sub.submitted_month = s.month;
  sub.reviewer_ids = sample_reviewers(ranked, static_cast<std::size_t>(cfg.reviewers_per_ms), rng);

  ms.move_to(ManuscriptState::UnderReview);
  ++ms.submissions;
  rec.log(s.month, EventKind::Submitted, ms.id, *target);
  for (int reviewer : sub.reviewer_ids) {
    const int task_id = static_cast<int>(rec.tasks.size());
    rec.tasks.push_back(ReviewTask{task_id, ms.id, reviewer, s.month, std::nullopt, std::nullopt, std::nullopt});
    sub.task_ids.push_back(task_id);
    ms.review_log.push_back(task_id);
    s.pending_tasks.push_back(task_id);
    rec.log(s.month, EventKind::ReviewAssigned, ms.id, reviewer);
  }
  s.open_submission[ms.id] = static_cast<int>(rec.submissions.size());
  rec.submissions.push_back(std::move(sub));
}

void complete_reviews(CsState& s, RngStream& rng) {
  auto& rec = s.record;
  std::vector<int> still_pending;
  for (int task_id : s.pending_tasks) {
    auto& task = rec.tasks[task_id];
    if (!rng.bernoulli(s.config.completion_prob)) {
      still_pending.push_back(task_id);
      continue;
    }
    const auto& ms = rec.manuscripts[task.manuscript_id];
    task.first = review_estimate(rec.authors[task.reviewer_id], ms, ReviewRound::First, rng, s.config.window_halfwidth);
    task.completed_month = s.month;
    rec.log(s.month, EventKind::ReviewCompleted, ms.id, task.reviewer_id);
  }
  s.pending_tasks = std::move(still_pending);
}

void revise_finished(CsState& s, RngStream& rng) {
  auto& rec = s.record;
  for (int id : s.open_manuscripts) {
    if (!s.open_submission[id]) continue;
    auto& sub = rec.submissions[*s.open_submission[id]];
    if (sub.reviews_done_month) continue;
    const bool done = std::all_of(sub.task_ids.begin(), sub.task_ids.end(),
                                  [&](int t) { return rec.tasks[t].complete(); });
    if (!done) continue;

    auto& ms = rec.manuscripts[id];
    revise(ms, rng, s.config.improvement_cap);
    rec.log(s.month, EventKind::Revised, id);
    std::vector<ReviewEstimate> second;
    for (int t : sub.task_ids) {
      auto& task = rec.tasks[t];
      task.second = review_estimate(rec.authors[task.reviewer_id], ms, ReviewRound::PostRevision, rng,
                                    s.config.window_halfwidth);
      second.push_back(*task.second);
    }
    sub.estimate = aggregate_estimates(second, second.size());
    sub.reviews_done_month = s.month;
  }
}

void decide(CsState& s, RngStream& rng) {
  auto& rec = s.record;
  for (int id : s.open_manuscripts) {
    if (!s.open_submission[id]) continue;
    auto& sub = rec.submissions[*s.open_submission[id]];
    if (!sub.reviews_done_month || *sub.reviews_done_month >= s.month) continue;

    auto& ms = rec.manuscripts[id];
    const auto& journal = rec.journals[sub.journal_id];
    sub.decision = editor_decision(journal, *sub.estimate, rng, s.config.window_halfwidth);
    sub.decision_month = s.month;
    s.open_submission[id].reset();

    if (*sub.decision == SubmissionRecord::Decision::Accept) {
      rec.log(s.month, EventKind::Accepted, id, journal.id);
      ms.publish(journal.id, s.month);
      rec.log(s.month, EventKind::Published, id, journal.id);
      continue;
    }
    rec.log(s.month, EventKind::Rejected, id, journal.id);
    ++ms.rejection_count;
    s.rejected_by[id].push_back(journal.id);
    if (ms.rejection_count >= s.config.max_rejections) {
      ms.abandon(s.month);
      rec.log(s.month, EventKind::Abandoned, id);
    } else {
      ms.move_to(ManuscriptState::Draft);
      s.next_submission_month[id] = s.month + 1;
    }
  }
}

}  // namespace

CsState make_cs_state(const SimConfig& cfg, std::vector<AgentProfile> authors, std::vector<AgentProfile> journals) {
  validate(cfg);
  CsState s;
  s.config = cfg;
  s.record.setting = Setting::CS;
  for (const auto& j : journals) s.record.impacts.push_back(journal_impact(j, cfg.window_halfwidth));
  s.record.authors = std::move(authors);
  s.record.journals = std::move(journals);
  return s;
}

double journal_score(const Manuscript& ms, const AgentProfile& journal, double impact, double halfwidth) {
  return acceptance_probability(journal, EditorEstimate{ms.t, ms.q, ms.n}, halfwidth) * impact;
}

std::optional<int> choose_target(const Manuscript& ms, std::span<const AgentProfile> journals,
                                 std::span<const double> impacts, std::span<const int> already_rejected,
                                 int max_rejections, double halfwidth) {
  if (ms.rejection_count >= max_rejections) return std::nullopt;
  std::optional<int> best;
  double best_score = -1.0;
  for (std::size_t j = 0; j < journals.size(); ++j) {
    const int id = journals[j].id;
    if (std::find(already_rejected.begin(), already_rejected.end(), id) != already_rejected.end()) continue;
    const double score = journal_score(ms, journals[j], impacts[j], halfwidth);
    if (score > best_score) {
      best_score = score;
      best = id;
    }
  }
  return best;
}

std::vector<int> rank_reviewers(const Manuscript& ms, std::span<const AgentProfile> authors, std::size_t top_pool,
                                double halfwidth, ExpertiseRanking ranking) {
  std::vector<std::pair<double, int>> scored;
  scored.reserve(authors.size());
  for (const auto& a : authors) {
    if (a.id == ms.author_id) continue;
    scored.emplace_back(expertise_score(a.topic, ms.t, ranking, halfwidth), a.id);
  }
  const auto better = [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  };
  const std::size_t keep = std::min(top_pool, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(), better);
  std::vector<int> ids;
  ids.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) ids.push_back(scored[i].second);
  return ids;
}

std::vector<int> sample_reviewers(std::span<const int> ranked, std::size_t count, RngStream& rng) {
  if (ranked.size() < count) {
    throw std::invalid_argument("select_reviewers: need " + std::to_string(count) + " eligible referees, have " +
                                std::to_string(ranked.size()));
  }
  std::vector<int> pool(ranked.begin(), ranked.end());
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

std::vector<int> select_reviewers(const Manuscript& ms, std::span<const AgentProfile> authors, RngStream& rng,
                                  std::size_t count, std::size_t top_pool, double halfwidth,
                                  ExpertiseRanking ranking) {
  const auto ranked = rank_reviewers(ms, authors, top_pool, halfwidth, ranking);
  return sample_reviewers(ranked, count, rng);
}

SubmissionRecord::Decision lottery(double p, double u) {
  return u <= p ? SubmissionRecord::Decision::Accept : SubmissionRecord::Decision::Reject;
}

SubmissionRecord::Decision editor_decision(const AgentProfile& journal, const EditorEstimate& e, RngStream& rng,
                                           double halfwidth) {
  const double p = acceptance_probability(journal, e, halfwidth);
  return lottery(p, rng.uniform_left_open());
}

void tick_cs(CsState& s, RngStream& rng) {
  produce(s, rng);
  for (int id : s.open_manuscripts) {
    auto& ms = s.record.manuscripts[id];
    if (ms.state == ManuscriptState::Draft && s.next_submission_month[id] == s.month) submit(s, ms, rng);
  }
  complete_reviews(s, rng);
  revise_finished(s, rng);
  decide(s, rng);
  prune_resolved(s.open_manuscripts, s.record.manuscripts);
  ++s.month;
  s.record.months = s.month;
}

RunRecord run_cs(const SimConfig& cfg, std::vector<AgentProfile> authors, std::vector<AgentProfile> journals,
                 RngStream& rng) {
  CsState s = make_cs_state(cfg, std::move(authors), std::move(journals));
  while (s.month < cfg.months) tick_cs(s, rng);
  return std::move(s.record);
}

}  // namespace prsim
