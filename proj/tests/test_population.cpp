#include <cmath>
#include <set>

#include "doctest.h"
#include "prsim/population.hpp"

using namespace prsim;

namespace {

int count_of(const std::vector<AgentProfile>& agents, Archetype a) {
  return static_cast<int>(std::count_if(agents.begin(), agents.end(), [&](const auto& x) { return x.archetype == a; }));
}

AgentProfile journal(BetaParams t, BetaParams q, BetaParams n) {
  return AgentProfile{0, AgentKind::Journal, Archetype::Normal, t, q, n};
}

bool all_admitted(const std::vector<AgentProfile>& agents, const std::vector<ArchetypeSpec>& specs) {
  std::size_t i = 0;
  for (const auto& s : specs) {
    for (int k = 0; k < s.count; ++k, ++i) {
      if (agents[i].archetype != s.archetype || !s.admits(agents[i])) return false;
    }
  }
  return i == agents.size();
}

}  // namespace

TEST_CASE("default populations") {
  RngStream rng(1);
  const auto authors = generate_authors(default_author_specs(), rng);
  const auto journals = generate_journals(default_journal_specs(), rng);
  CHECK(authors.size() == 500);
  CHECK(count_of(authors, Archetype::Broad) == 50);
  CHECK(count_of(authors, Archetype::Specialist) == 150);
  CHECK(count_of(authors, Archetype::Normal) == 300);
  CHECK(journals.size() == 50);
  CHECK(count_of(journals, Archetype::Broad) == 5);
  CHECK(count_of(journals, Archetype::Specialist) == 15);
  CHECK(count_of(journals, Archetype::Normal) == 30);
  for (std::size_t i = 0; i < authors.size(); ++i) {
    CHECK(authors[i].id == static_cast<int>(i));
    CHECK(authors[i].kind == AgentKind::Author);
  }
  for (const auto& j : journals) {
    CHECK(j.kind == AgentKind::Journal);
    if (j.archetype == Archetype::Specialist) {
      CHECK(j.topic.alpha() >= 10.0);
      CHECK(j.topic.alpha() <= 100.0);
    }
  }
}

TEST_CASE("empty and count-one specs") {
  RngStream rng(2);
  CHECK(generate_authors({}, rng).empty());
  auto zero = default_journal_specs();
  for (auto& s : zero) s.count = 0;
  CHECK(generate_journals(zero, rng).empty());

  auto ones = default_author_specs();
  for (auto& s : ones) s.count = 1;
  const auto three = generate_authors(ones, rng);
  CHECK(three.size() == 3);
  CHECK(all_admitted(three, ones));
}

TEST_CASE("every generated parameter lies in its interval over 100 seeds") {
  const auto aspecs = default_author_specs();
  const auto jspecs = default_journal_specs();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngStream rng(derive_seed(seed, 0, Substream::Authors));
    CHECK(all_admitted(generate_authors(aspecs, rng), aspecs));
    CHECK(all_admitted(generate_journals(jspecs, rng), jspecs));
  }
}

TEST_CASE("spec validation") {
  ArchetypeSpec s = default_author_specs().front();
  CHECK_NOTHROW(s.validate());
  s.count = -1;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = default_author_specs().front();
  s.alpha_topic = {5, 1};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.alpha_topic = {0, 1};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("generation is deterministic") {
  RngStream a(8);
  RngStream b(8);
  const auto x = generate_authors(default_author_specs(), a);
  const auto y = generate_authors(default_author_specs(), b);
  CHECK(x == y);
  CHECK(population_fingerprint(x, {}) == population_fingerprint(y, {}));
  RngStream c(9);
  CHECK(population_fingerprint(generate_authors(default_author_specs(), c), {}) != population_fingerprint(x, {}));
}

TEST_CASE("journal impact") {
  const BetaParams u(1, 1);
  CHECK(journal_impact(journal(u, u, u)) == doctest::Approx(1.25).epsilon(1e-12));
  const BetaParams sharp(50, 5);
  CHECK(journal_impact(journal(u, sharp, sharp)) == doctest::Approx((10.0 / 11.0) * (10.0 / 11.0) / 0.2).epsilon(1e-12));
  CHECK(journal_impact(journal(u, sharp, sharp)) == doctest::Approx(4.1322).epsilon(1e-4));

  RngStream rng(4);
  for (int i = 0; i < 200; ++i) {
    const BetaParams t(rng.uniform(1, 100), rng.uniform(1, 100));
    const BetaParams q(rng.uniform(1, 100), rng.uniform(1, 10));
    const BetaParams n(rng.uniform(1, 100), rng.uniform(1, 10));
    CHECK(journal_impact(journal(t, q, n)) == doctest::Approx(journal_impact(journal(t, n, q))).epsilon(1e-15));
    CHECK(journal_impact(journal(u, q, n)) == doctest::Approx(q.mean() * n.mean() / 0.2).epsilon(1e-12));
  }
  // A specialised topic shrinks impact for the same Q and N.
  CHECK(journal_impact(journal(BetaParams(60, 60), sharp, sharp)) < journal_impact(journal(u, sharp, sharp)));
}

TEST_CASE("manuscripts") {
  RngStream rng(6);
  const auto authors = generate_authors(default_author_specs(), rng);
  for (const auto& a : authors) {
    const auto ms = draw_manuscript(a, a.id, 3, rng);
    CHECK(ms.t >= 0.0);
    CHECK(ms.t <= 1.0);
    CHECK(ms.q >= 0.0);
    CHECK(ms.q <= 1.0);
    CHECK(ms.n >= 0.0);
    CHECK(ms.n <= 1.0);
    CHECK(ms.revisions == 0);
    CHECK(ms.state == ManuscriptState::Draft);
    CHECK(ms.created_month == 3);
  }
  AgentProfile expert = authors.front();
  expert.quality = BetaParams(50, 5);
  double sum = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) sum += draw_manuscript(expert, i, 0, rng).q;
  const double sd = std::sqrt(50.0 * 5.0 / (55.0 * 55.0 * 56.0));
  CHECK(std::fabs(sum / n - 50.0 / 55.0) < 3.0 * sd / std::sqrt(n));

  RngStream a(10);
  RngStream b(10);
  const auto m1 = draw_manuscript(authors[7], 0, 0, a);
  const auto m2 = draw_manuscript(authors[7], 0, 0, b);
  CHECK(m1.t == m2.t);
  CHECK(m1.q == m2.q);
  CHECK(m1.n == m2.n);
}

TEST_CASE("lifecycle graph") {
  using S = ManuscriptState;
  const std::vector<S> all{S::Draft, S::UnderReview, S::InFirstPool, S::InSecondPool, S::Published, S::Abandoned};
  for (S to : all) {
    CHECK_FALSE(is_legal_transition(S::Published, to));
    CHECK_FALSE(is_legal_transition(S::Abandoned, to));
  }
  CHECK(is_legal_transition(S::Draft, S::UnderReview));
  CHECK(is_legal_transition(S::UnderReview, S::Draft));
  CHECK(is_legal_transition(S::InFirstPool, S::InSecondPool));
  CHECK_FALSE(is_legal_transition(S::InFirstPool, S::Published));
  CHECK_FALSE(is_legal_transition(S::Draft, S::Published));

  Manuscript ms;
  ms.move_to(S::UnderReview);
  ms.publish(4, 9);
  CHECK(ms.journal_id == 4);
  CHECK(ms.outcome_month == 9);
  CHECK_THROWS_AS(ms.move_to(S::Draft), std::logic_error);
  CHECK_THROWS_AS(ms.abandon(10), std::logic_error);
}

TEST_CASE("archetype names") {
  for (auto a : {Archetype::Broad, Archetype::Specialist, Archetype::Normal}) {
    CHECK(archetype_from_string(to_string(a)) == a);
  }
  CHECK_THROWS(archetype_from_string("wizard"));
}
