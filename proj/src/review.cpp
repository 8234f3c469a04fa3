#include "prsim/review.hpp"

#include <algorithm>
#include <stdexcept>

namespace prsim {

namespace {

double noisy(double v, double delta, RngStream& rng) {
  return rng.uniform(std::max(v - delta, 0.0), std::min(v + delta, 1.0));
}

}  // namespace

double expertise_score(const BetaParams& topic, double t, ExpertiseRanking ranking, double halfwidth) {
  const double z = window_density(topic, t, halfwidth);
  return ranking == ExpertiseRanking::InverseDensity ? 1.0 / z : z;
}

double reviewer_error_delta(const AgentProfile& reviewer, double t, double halfwidth) {
  return (1.0 - window_density(reviewer.topic, t, halfwidth)) / 2.0;
}

ReviewEstimate estimate_with_delta(int reviewer_id, const Manuscript& ms, double delta, ReviewRound round,
                                   RngStream& rng) {
  ReviewEstimate e;
  e.reviewer_id = reviewer_id;
  e.round = round;
  e.t_hat = noisy(ms.t, delta, rng);
  e.q_hat = noisy(ms.q, delta, rng);
  e.n_hat = noisy(ms.n, delta, rng);
  return e;
}

ReviewEstimate review_estimate(const AgentProfile& reviewer, const Manuscript& ms, ReviewRound round, RngStream& rng,
                               double halfwidth) {
  if (reviewer.id == ms.author_id) {
    throw std::invalid_argument("review_estimate: author cannot review their own manuscript");
  }
  return estimate_with_delta(reviewer.id, ms, reviewer_error_delta(reviewer, ms.t, halfwidth), round, rng);
}

EditorEstimate aggregate_estimates(std::span<const ReviewEstimate> reviews, std::size_t expected) {
  if (reviews.size() != expected || expected == 0) {
    throw std::invalid_argument("aggregate_estimates: expected " + std::to_string(expected) + " estimates, got " +
                                std::to_string(reviews.size()));
  }
  EditorEstimate e;
  for (const auto& r : reviews) {
    if (r.round != reviews.front().round) {
      throw std::invalid_argument("aggregate_estimates: estimates come from different rounds");
    }
    e.t_e += r.t_hat;
    e.q_e += r.q_hat;
    e.n_e += r.n_hat;
  }
  const auto count = static_cast<double>(reviews.size());
  e.t_e /= count;
  e.q_e /= count;
  e.n_e /= count;
  return e;
}

double improvement(double value, double cap, int revision, double u) {
  return value + (cap / revision) * (1.0 - value) * u;
}

void revise(Manuscript& ms, RngStream& rng, double cap) {
  if (ms.resolved()) throw std::logic_error("revise: manuscript is already resolved");
  ++ms.revisions;
  const double uq = rng.uniform01();
  const double un = rng.uniform01();
  ms.q = std::min(improvement(ms.q, cap, ms.revisions, uq), 1.0);
  ms.n = std::min(improvement(ms.n, cap, ms.revisions, un), 1.0);
  ms.history.push_back({ms.revisions, ms.q, ms.n});
}

double acceptance_probability(const AgentProfile& journal, const EditorEstimate& e, double halfwidth) {
  if (journal.kind != AgentKind::Journal) throw std::invalid_argument("acceptance_probability: agent is not a journal");
  return window_density(journal.topic, e.t_e, halfwidth) * beta_cdf(journal.quality, e.q_e) *
         beta_cdf(journal.novelty, e.n_e);
}

}  // namespace prsim
