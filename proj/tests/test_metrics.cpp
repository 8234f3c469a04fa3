#include <vector>

#include "doctest.h"
#include "prsim/metrics.hpp"
#include "support/fixtures.hpp"
#include "support/invariants.hpp"

using namespace prsim;

namespace {

Manuscript resolved(int id, int author, double q, double n, int created, std::optional<int> journal, int month) {
  Manuscript ms;
  ms.id = id;
  ms.author_id = author;
  ms.q = ms.q_initial = q;
  ms.n = ms.n_initial = n;
  ms.created_month = created;
  ms.history.push_back({0, q, n});
  if (journal) {
    ms.state = ManuscriptState::Published;
    ms.journal_id = journal;
  } else {
    ms.state = ManuscriptState::Abandoned;
  }
  ms.outcome_month = month;
  return ms;
}

RunRecord tiny_run(Setting setting) {
  RunRecord run;
  run.setting = setting;
  run.months = 12;
  run.authors = testing::uniform_agents(2, AgentKind::Author);
  run.journals = testing::uniform_agents(2, AgentKind::Journal);
  run.impacts = {1.0, 3.0};
  return run;
}

}  // namespace

TEST_CASE("nearest-rank quartiles") {
  CHECK_FALSE(quartiles({}).has_value());
  const auto one = *quartiles({7.0});
  CHECK(one.q1 == 7.0);
  CHECK(one.median == 7.0);
  CHECK(one.q3 == 7.0);
  const auto q = *quartiles({8, 1, 2, 7, 3, 6, 4, 5});
  CHECK(q.q1 == 2.0);
  CHECK(q.median == 4.0);
  CHECK(q.q3 == 6.0);
  const auto odd = *quartiles({1, 2, 3, 4, 5});
  CHECK(odd.q1 == 2.0);
  CHECK(odd.median == 3.0);
  CHECK(odd.q3 == 4.0);
  std::vector<double> sorted{1, 2, 3};
  CHECK_THROWS_AS(nearest_rank(std::span<const double>(), 1, 2), std::invalid_argument);
  CHECK(nearest_rank(sorted, 1, 1) == 3.0);
}

TEST_CASE("impact quartile classes split 50 journals 13/12/12/13") {
  std::vector<double> impacts;
  for (int i = 0; i < 50; ++i) impacts.push_back(0.5 + 0.1 * ((i * 37) % 50));
  const auto classes = impact_quartile_classes(impacts);
  std::array<int, 4> sizes{};
  for (int c : classes) ++sizes[static_cast<std::size_t>(c - 1)];
  CHECK(sizes == std::array<int, 4>{13, 12, 12, 13});
  for (std::size_t i = 0; i < impacts.size(); ++i) {
    for (std::size_t j = 0; j < impacts.size(); ++j) {
      if (impacts[i] < impacts[j]) CHECK(classes[i] <= classes[j]);
    }
  }
}

TEST_CASE("merit") {
  Manuscript ms;
  ms.q = 0.5;
  ms.n = 0.5;
  CHECK(manuscript_merit(ms) == 0.25);
  ms.q = 1.0;
  ms.n = 0.37;
  CHECK(manuscript_merit(ms) == 0.37);
}

TEST_CASE("summaries of hand-built runs") {
  SUBCASE("nothing published") {
    auto run = tiny_run(Setting::CS);
    run.manuscripts.push_back(resolved(0, 0, 0.2, 0.2, 0, std::nullopt, 5));
    const auto s = summarize_run(run);
    CHECK(s.publication_fraction == 0.0);
    CHECK_FALSE(s.months_to_publication.has_value());
    CHECK_FALSE(s.months_to_publication_mean.has_value());
    CHECK(s.merit_abandoned == doctest::Approx(0.04));
  }
  SUBCASE("months from creation to publication") {
    auto run = tiny_run(Setting::CS);
    run.manuscripts.push_back(resolved(0, 0, 0.5, 0.5, 2, 1, 10));
    Manuscript open;
    open.id = 1;
    open.state = ManuscriptState::UnderReview;
    run.manuscripts.push_back(open);
    const auto s = summarize_run(run);
    CHECK(*s.months_to_publication_mean == 8.0);
    CHECK(months_to_publication(run) == std::vector<int>{8});
    CHECK(s.published == 1);
    CHECK(s.in_flight == 1);
    CHECK(s.publication_fraction == 1.0);
    CHECK(s.publication_fraction_all == 0.5);
    CHECK(s.authors[0].total_impact == 3.0);
    CHECK(s.journals[1].publications == 1);
  }
}

TEST_CASE("comparison counts strict improvements") {
  auto cs = tiny_run(Setting::CS);
  auto as = tiny_run(Setting::AS);
  for (int i = 0; i < 3; ++i) cs.manuscripts.push_back(resolved(i, 0, 0.5, 0.5, 0, 0, 4));
  for (int i = 0; i < 5; ++i) as.manuscripts.push_back(resolved(i, 0, 0.5, 0.5, 0, 1, 4));
  cs.manuscripts.push_back(resolved(3, 1, 0.5, 0.5, 0, 1, 4));
  as.manuscripts.push_back(resolved(5, 1, 0.5, 0.5, 0, 1, 4));

  const auto sc = summarize_run(cs);
  const auto sa = summarize_run(as);
  const auto r = compare_runs(sc, sa);
  CHECK(r.authors_more_publications_in_as == 0.5);
  CHECK(r.authors_higher_total_impact_in_as == 0.5);
  CHECK(r.authors_higher_mean_impact_in_as == 0.5);
  CHECK(r.authors_with_mean_in_both == 2);
  CHECK(r.journals_more_publications_in_as == 0.5);
  CHECK(testing::check_comparison(r).empty());

  const auto same = compare_runs(sc, sc);
  CHECK(same.authors_more_publications_in_as == 0.0);
  CHECK(same.authors_higher_total_impact_in_as == 0.0);
  CHECK(same.journals_more_publications_in_as == 0.0);

  auto other = tiny_run(Setting::AS);
  other.journals[0].topic = BetaParams(3, 3);
  CHECK_THROWS_AS(compare_runs(sc, summarize_run(other)), std::invalid_argument);
}

TEST_CASE("full summaries close their ledgers and match the event log") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto cfg = testing::small_config(seed, 36);
    const auto result = run_replicate(cfg, 0, SettingSelection::Both);
    for (const auto* pair : {&result.cs, &result.as}) {
      const auto s = summarize_run(**pair);
      const auto v = testing::check_summary(s, **pair);
      INFO("seed ", seed, ": ", v.str());
      CHECK(v.empty());
    }
    CHECK(result.cs_summary->total_reviews == 3 * result.cs_summary->total_submissions);
    CHECK(testing::check_comparison(*result.comparison).empty());
  }
}
