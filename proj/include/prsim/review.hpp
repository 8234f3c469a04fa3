// Referee estimates, editor aggregation, revision and acceptance probability.
// Shared by both settings.

#pragma once

#include <cstddef>
#include <span>

#include "prsim/population.hpp"
#include "prsim/stochastics.hpp"

namespace prsim {

enum class ReviewRound { First, PostRevision };

/// Ordering used when ranking candidate referees (CS) and pool manuscripts
/// (AS duties). InverseDensity ranks by 1/z descending; Density ranks by z
/// descending.
enum class ExpertiseRanking { InverseDensity, Density };

/// Referee-vs-topic score; larger is preferred.
double expertise_score(const BetaParams& topic, double t, ExpertiseRanking ranking,
                       double halfwidth = kDefaultHalfwidth);

struct ReviewEstimate {
  int reviewer_id = -1;
  double t_hat = 0.0;
  double q_hat = 0.0;
  double n_hat = 0.0;
  ReviewRound round = ReviewRound::First;

  friend bool operator==(const ReviewEstimate&, const ReviewEstimate&) = default;
};

struct EditorEstimate {
  double t_e = 0.0;
  double q_e = 0.0;
  double n_e = 0.0;

  friend bool operator==(const EditorEstimate&, const EditorEstimate&) = default;
};

/// Half-width of the referee's noise: (1 - z(T, t)) / 2, with t the true topic.
double reviewer_error_delta(const AgentProfile& reviewer, double t, double halfwidth = kDefaultHalfwidth);

/// Each component drawn from U[max(v - delta, 0), min(v + delta, 1)] around
/// the manuscript's true value v, in the order t, q, n.
ReviewEstimate estimate_with_delta(int reviewer_id, const Manuscript& ms, double delta, ReviewRound round,
                                   RngStream& rng);

/// Throws std::invalid_argument if the reviewer wrote the manuscript.
ReviewEstimate review_estimate(const AgentProfile& reviewer, const Manuscript& ms, ReviewRound round, RngStream& rng,
                               double halfwidth = kDefaultHalfwidth);

/// Component-wise mean. Throws std::invalid_argument unless exactly
/// `expected` estimates of a single round are supplied.
EditorEstimate aggregate_estimates(std::span<const ReviewEstimate> reviews, std::size_t expected = 3);

/// h(a, b, c) = a + (b / c)(1 - a) u.
double improvement(double value, double cap, int revision, double u);

/// Increments the revision count k and improves q then n with h(., cap, k).
void revise(Manuscript& ms, RngStream& rng, double cap = 0.1);

/// z(T_j, t_e) * F_Q(q_e) * F_N(n_e) for journal j.
double acceptance_probability(const AgentProfile& journal, const EditorEstimate& e,
                              double halfwidth = kDefaultHalfwidth);

}  // namespace prsim
