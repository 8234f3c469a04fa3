#include "prsim/population.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace prsim {

namespace {

void check_range(const ParamRange& r, const char* name) {
  if (!(r.lo > 0.0) || !(r.lo <= r.hi)) {
    throw std::invalid_argument(std::string("archetype interval ") + name + " must satisfy 0 < lo <= hi, got [" +
                                std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
  }
}

ArchetypeSpec make_spec(Archetype archetype, int count, ParamRange topic, ParamRange alpha_qn, ParamRange beta_qn) {
  return ArchetypeSpec{archetype, count, topic, topic, alpha_qn, beta_qn, alpha_qn, beta_qn};
}

std::vector<AgentProfile> generate(std::span<const ArchetypeSpec> specs, AgentKind kind, RngStream& rng) {
  for (const auto& s : specs) s.validate();
  std::vector<AgentProfile> out;
  int next_id = 0;
  for (const auto& s : specs) {
    for (int i = 0; i < s.count; ++i) {
      const double at = rng.uniform(s.alpha_topic.lo, s.alpha_topic.hi);
      const double bt = rng.uniform(s.beta_topic.lo, s.beta_topic.hi);
      const double aq = rng.uniform(s.alpha_quality.lo, s.alpha_quality.hi);
      const double bq = rng.uniform(s.beta_quality.lo, s.beta_quality.hi);
      const double an = rng.uniform(s.alpha_novelty.lo, s.alpha_novelty.hi);
      const double bn = rng.uniform(s.beta_novelty.lo, s.beta_novelty.hi);
      out.push_back(AgentProfile{next_id++, kind, s.archetype, BetaParams(at, bt), BetaParams(aq, bq),
                                 BetaParams(an, bn)});
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(AgentKind kind) {
  return kind == AgentKind::Author ? "author" : "journal";
}

std::string_view to_string(Archetype archetype) {
  switch (archetype) {
    case Archetype::Broad: return "broad";
    case Archetype::Specialist: return "specialist";
    case Archetype::Normal: return "normal";
  }
  return "normal";
}

Archetype archetype_from_string(std::string_view name) {
  if (name == "broad") return Archetype::Broad;
  if (name == "specialist") return Archetype::Specialist;
  if (name == "normal") return Archetype::Normal;
  throw std::invalid_argument("unknown archetype '" + std::string(name) + "'");
}

void ArchetypeSpec::validate() const {
  if (count < 0) throw std::invalid_argument("archetype count must be nonnegative");
  check_range(alpha_topic, "alpha_T");
  check_range(beta_topic, "beta_T");
  check_range(alpha_quality, "alpha_Q");
  check_range(beta_quality, "beta_Q");
  check_range(alpha_novelty, "alpha_N");
  check_range(beta_novelty, "beta_N");
}

bool ArchetypeSpec::admits(const AgentProfile& a) const noexcept {
  return a.archetype == archetype && alpha_topic.contains(a.topic.alpha()) && beta_topic.contains(a.topic.beta()) &&
         alpha_quality.contains(a.quality.alpha()) && beta_quality.contains(a.quality.beta()) &&
         alpha_novelty.contains(a.novelty.alpha()) && beta_novelty.contains(a.novelty.beta());
}

std::vector<ArchetypeSpec> default_author_specs() {
  return {
      make_spec(Archetype::Broad, 50, {1, 5}, {50, 100}, {5, 10}),
      make_spec(Archetype::Specialist, 150, {10, 100}, {5, 10}, {1, 5}),
      ArchetypeSpec{Archetype::Normal, 300, {1, 10}, {1, 10}, {1, 10}, {5, 10}, {1, 10}, {5, 10}},
  };
}

std::vector<ArchetypeSpec> default_journal_specs() {
  return {
      make_spec(Archetype::Broad, 5, {1, 5}, {50, 100}, {5, 10}),
      make_spec(Archetype::Specialist, 15, {10, 100}, {5, 10}, {1, 5}),
      ArchetypeSpec{Archetype::Normal, 30, {1, 10}, {1, 10}, {1, 10}, {5, 10}, {1, 10}, {5, 10}},
  };
}

std::vector<AgentProfile> generate_authors(std::span<const ArchetypeSpec> specs, RngStream& rng) {
  return generate(specs, AgentKind::Author, rng);
}

std::vector<AgentProfile> generate_journals(std::span<const ArchetypeSpec> specs, RngStream& rng) {
  return generate(specs, AgentKind::Journal, rng);
}

double journal_impact(const AgentProfile& journal, double halfwidth) {
  if (journal.kind != AgentKind::Journal) throw std::invalid_argument("journal_impact: agent is not a journal");
  return journal.quality.mean() * journal.novelty.mean() /
         window_density(journal.topic, journal.topic.mean(), halfwidth);
}

std::uint64_t population_fingerprint(std::span<const AgentProfile> authors, std::span<const AgentProfile> journals) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (auto group : {authors, journals}) {
    mix(group.size());
    for (const auto& a : group) {
      for (const BetaParams* p : {&a.topic, &a.quality, &a.novelty}) {
        mix(std::bit_cast<std::uint64_t>(p->alpha()));
        mix(std::bit_cast<std::uint64_t>(p->beta()));
      }
    }
  }
  return h;
}

std::string_view to_string(ManuscriptState state) {
  switch (state) {
    case ManuscriptState::Draft: return "draft";
    case ManuscriptState::UnderReview: return "under_review";
    case ManuscriptState::InFirstPool: return "first_pool";
    case ManuscriptState::InSecondPool: return "second_pool";
    case ManuscriptState::Published: return "published";
    case ManuscriptState::Abandoned: return "abandoned";
  }
  return "draft";
}

bool is_legal_transition(ManuscriptState from, ManuscriptState to) noexcept {
  using S = ManuscriptState;
  switch (from) {
    case S::Draft: return to == S::UnderReview || to == S::InFirstPool || to == S::Abandoned;
    case S::UnderReview: return to == S::Draft || to == S::Published || to == S::Abandoned;
    case S::InFirstPool: return to == S::InSecondPool;
    case S::InSecondPool: return to == S::Published || to == S::Abandoned;
    case S::Published:
    case S::Abandoned: return false;
  }
  return false;
}

void Manuscript::move_to(ManuscriptState next) {
  if (!is_legal_transition(state, next)) {
    throw std::logic_error("manuscript " + std::to_string(id) + ": illegal transition " +
                           std::string(to_string(state)) + " -> " + std::string(to_string(next)));
  }
  state = next;
}

void Manuscript::publish(int journal, int month) {
  move_to(ManuscriptState::Published);
  journal_id = journal;
  outcome_month = month;
}

void Manuscript::abandon(int month) {
  move_to(ManuscriptState::Abandoned);
  outcome_month = month;
}

Manuscript draw_manuscript(const AgentProfile& author, int id, int month, RngStream& rng) {
  if (author.kind != AgentKind::Author) throw std::invalid_argument("draw_manuscript: agent is not an author");
  Manuscript ms;
  ms.id = id;
  ms.author_id = author.id;
  ms.t = beta_sample(author.topic, rng);
  ms.q = beta_sample(author.quality, rng);
  ms.n = beta_sample(author.novelty, rng);
  ms.q_initial = ms.q;
  ms.n_initial = ms.n;
  ms.created_month = month;
  ms.history.push_back({0, ms.q, ms.n});
  return ms;
}

}  // namespace prsim
