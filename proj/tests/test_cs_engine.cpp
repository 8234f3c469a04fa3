#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "prsim/cs_engine.hpp"
#include "support/fixtures.hpp"
#include "support/invariants.hpp"

using namespace prsim;
using prsim::testing::make_agent;
using prsim::testing::uniform_agents;

namespace {

Manuscript manuscript(double t, double q, double n, int author = 0) {
  Manuscript ms;
  ms.author_id = author;
  ms.t = t;
  ms.q = ms.q_initial = q;
  ms.n = ms.n_initial = n;
  ms.history.push_back({0, q, n});
  return ms;
}

RunRecord small_cs(std::uint64_t seed, SimConfig cfg) {
  const auto pop = make_population(cfg, replicate_seeds(seed, 0));
  RngStream rng(replicate_seeds(seed, 0).cs);
  return run_cs(cfg, pop.authors, pop.journals, rng);
}

}  // namespace

TEST_CASE("journal score") {
  const auto uniform = make_agent(0, AgentKind::Journal, {1, 1});
  const auto ms = manuscript(0.5, 0.5, 0.5);
  CHECK(journal_score(ms, uniform, 1.25) == doctest::Approx(0.0625).epsilon(1e-12));
  CHECK(journal_score(manuscript(0.5, 0.0, 0.5), uniform, 1.25) == 0.0);
  CHECK(journal_score(ms, uniform, 2.0) > journal_score(ms, uniform, 1.0));
}

TEST_CASE("choose_target") {
  std::vector<AgentProfile> journals{make_agent(0, AgentKind::Journal, {1, 1}), make_agent(1, AgentKind::Journal, {1, 1}),
                                     make_agent(2, AgentKind::Journal, {1, 1}, {2, 1}, {2, 1})};
  std::vector<double> impacts;
  for (const auto& j : journals) impacts.push_back(journal_impact(j));
  auto ms = manuscript(0.5, 0.5, 0.5);

  SUBCASE("argmax of the score") {
    std::vector<double> scores;
    for (std::size_t j = 0; j < journals.size(); ++j) scores.push_back(journal_score(ms, journals[j], impacts[j]));
    const auto best = std::max_element(scores.begin(), scores.end()) - scores.begin();
    CHECK(choose_target(ms, journals, impacts, {}, 5) == static_cast<int>(best));
  }
  SUBCASE("ties go to the lowest id") {
    const std::vector<AgentProfile> twins{journals[0], journals[1]};
    const std::vector<double> same{impacts[0], impacts[1]};
    CHECK(choose_target(ms, twins, same, {}, 5) == 0);
    const std::vector<int> rejected{0};
    CHECK(choose_target(ms, twins, same, rejected, 5) == 1);
  }
  SUBCASE("never a journal that already rejected") {
    const std::vector<int> rejected{2};
    CHECK(choose_target(ms, journals, impacts, rejected, 5) != 2);
    const std::vector<int> everything{0, 1, 2};
    CHECK_FALSE(choose_target(ms, journals, impacts, everything, 5).has_value());
  }
  SUBCASE("abandon at max_rejections") {
    ms.rejection_count = 5;
    CHECK_FALSE(choose_target(ms, journals, impacts, {}, 5).has_value());
    ms.rejection_count = 4;
    CHECK(choose_target(ms, journals, impacts, {}, 5).has_value());
  }
}

TEST_CASE("reviewer selection") {
  RngStream rng(3);
  const auto pop = make_population(testing::small_config(1), replicate_seeds(1, 0));
  RngStream arng(5);
  auto authors = generate_authors(default_author_specs(), arng);
  auto ms = draw_manuscript(authors[0], 0, 0, arng);

  SUBCASE("three distinct ids from the top 20 non-authors") {
    const auto ranked = rank_reviewers(ms, authors, 20);
    REQUIRE(ranked.size() == 20);
    std::vector<std::pair<double, int>> oracle;
    for (const auto& a : authors) {
      if (a.id != ms.author_id) oracle.emplace_back(-1.0 / window_density(a.topic, ms.t), a.id);
    }
    std::sort(oracle.begin(), oracle.end());
    for (std::size_t i = 0; i < 20; ++i) CHECK(ranked[i] == oracle[i].second);
    for (int trial = 0; trial < 200; ++trial) {
      const auto picked = select_reviewers(ms, authors, rng);
      REQUIRE(picked.size() == 3);
      CHECK(std::set<int>(picked.begin(), picked.end()).size() == 3);
      for (int id : picked) {
        CHECK(id != ms.author_id);
        CHECK(std::find(ranked.begin(), ranked.end(), id) != ranked.end());
      }
    }
  }
  SUBCASE("the author is filtered even as the best scorer") {
    for (auto ranking : {ExpertiseRanking::InverseDensity, ExpertiseRanking::Density}) {
      auto crowd = uniform_agents(30, AgentKind::Author);
      // Sharply peaked away from t gives the largest 1/z; peaked at t the largest z.
      const double centre = ranking == ExpertiseRanking::Density ? 0.5 : 0.05;
      crowd[7].topic = BetaParams(200 * centre + 1, 200 * (1 - centre) + 1);
      auto own = manuscript(0.5, 0.5, 0.5, 7);
      const auto ranked = rank_reviewers(own, crowd, 20, 0.1, ranking);
      CHECK(std::find(ranked.begin(), ranked.end(), 7) == ranked.end());
      auto others = manuscript(0.5, 0.5, 0.5, 8);
      CHECK(rank_reviewers(others, crowd, 20, 0.1, ranking).front() == 7);
      for (int trial = 0; trial < 100; ++trial) {
        const auto picked = select_reviewers(own, crowd, rng, 3, 20, 0.1, ranking);
        CHECK(std::find(picked.begin(), picked.end(), 7) == picked.end());
      }
    }
  }
  SUBCASE("exactly three eligible") {
    const auto four = uniform_agents(4, AgentKind::Author);
    auto own = manuscript(0.3, 0.5, 0.5, 2);
    auto picked = select_reviewers(own, four, rng);
    std::sort(picked.begin(), picked.end());
    CHECK(picked == std::vector<int>{0, 1, 3});
    CHECK_THROWS_AS(select_reviewers(own, uniform_agents(3, AgentKind::Author), rng), std::invalid_argument);
  }
  CHECK(pop.authors.size() == 100);
}

TEST_CASE("decision lottery") {
  CHECK(lottery(1.0, 1.0) == SubmissionRecord::Decision::Accept);
  CHECK(lottery(0.0, 1e-300) == SubmissionRecord::Decision::Reject);
  CHECK(lottery(0.2, 0.15) == SubmissionRecord::Decision::Accept);
  CHECK(lottery(0.2, 0.25) == SubmissionRecord::Decision::Reject);
  RngStream rng(4);
  const auto sure = make_agent(0, AgentKind::Journal, {1, 1});
  for (int i = 0; i < 100; ++i) {
    CHECK(editor_decision(sure, {0.5, 0.0, 0.5}, rng) == SubmissionRecord::Decision::Reject);
  }
}

TEST_CASE("monthly timing with certain completion") {
  SimConfig cfg = testing::small_config(2, 12);
  cfg.completion_prob = 1.0;
  const auto run = small_cs(2, cfg);
  REQUIRE_FALSE(run.submissions.empty());
  std::map<int, std::vector<const SubmissionRecord*>> by_ms;
  for (const auto& sub : run.submissions) by_ms[sub.manuscript_id].push_back(&sub);
  for (const auto& [id, subs] : by_ms) {
    const auto& ms = run.manuscripts[id];
    CHECK(subs.front()->submitted_month == ms.created_month + 1);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const auto* s = subs[i];
      if (!s->decision_month) continue;
      CHECK(*s->reviews_done_month == s->submitted_month);
      CHECK(*s->decision_month == *s->reviews_done_month + 1);
      if (i + 1 < subs.size()) CHECK(subs[i + 1]->submitted_month == *s->decision_month + 1);
    }
    if (ms.state == ManuscriptState::Published) CHECK(*ms.outcome_month == *subs.back()->decision_month);
  }
}

TEST_CASE("decision comes the month after the last review") {
  const auto run = small_cs(3, testing::small_config(3, 36));
  for (const auto& sub : run.submissions) {
    if (!sub.reviews_done_month) continue;
    int last = 0;
    for (int t : sub.task_ids) last = std::max(last, *run.tasks[t].completed_month);
    CHECK(*sub.reviews_done_month == last);
    if (sub.decision_month) CHECK(*sub.decision_month == last + 1);
  }
}

TEST_CASE("CS run invariants across 10 seeds") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto cfg = testing::small_config(seed);
    if (seed % 2 == 0) cfg.max_rejections = 10;
    if (seed % 3 == 0) cfg.expertise_ranking = ExpertiseRanking::Density;
    const auto run = small_cs(seed, cfg);
    const auto v = testing::check_cs_run(run, cfg);
    INFO("seed ", seed, ": ", v.str());
    CHECK(v.empty());
    const auto s = summarize_run(run);
    const auto sv = testing::check_summary(s, run);
    INFO(sv.str());
    CHECK(sv.empty());
    CHECK(s.total_reviews == 3 * s.total_submissions);
  }
}

TEST_CASE("CS determinism") {
  const auto cfg = testing::small_config(4, 24);
  const auto a = small_cs(4, cfg);
  const auto b = small_cs(4, cfg);
  CHECK(a.events == b.events);
  CHECK(summarize_run(a) == summarize_run(b));
}

TEST_CASE("abandonment at max_rejections with unwinnable journals") {
  auto cfg = testing::small_config(5, 30);
  // Quality CDFs near zero make every decision a rejection.
  for (auto& s : cfg.journal_specs) {
    s.alpha_quality = {1000, 1000};
    s.beta_quality = {1, 1};
  }
  const auto run = small_cs(5, cfg);
  int abandoned = 0;
  for (const auto& ms : run.manuscripts) {
    CHECK(ms.state != ManuscriptState::Published);
    if (ms.state == ManuscriptState::Abandoned) {
      ++abandoned;
      CHECK(ms.rejection_count == 5);
      CHECK(ms.review_log.size() == 15);
    }
  }
  CHECK(abandoned > 0);
}
