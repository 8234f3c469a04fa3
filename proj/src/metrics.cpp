#include "prsim/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace prsim {

namespace {

std::optional<double> mean_of(std::span<const double> v) {
  if (v.empty()) return std::nullopt;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

double nearest_rank(std::span<const double> sorted, int numerator, int denominator) {
  if (sorted.empty()) throw std::invalid_argument("nearest_rank: empty sample");
  const auto n = static_cast<long>(sorted.size());
  long rank = (numerator * n + denominator - 1) / denominator;
  rank = std::clamp(rank, 1L, n);
  return sorted[static_cast<std::size_t>(rank - 1)];
}

std::optional<Quartiles> quartiles(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  return Quartiles{nearest_rank(values, 1, 4), nearest_rank(values, 1, 2), nearest_rank(values, 3, 4)};
}

std::vector<int> impact_quartile_classes(std::span<const double> impacts) {
  std::vector<int> out;
  const auto q = quartiles(std::vector<double>(impacts.begin(), impacts.end()));
  if (!q) return out;
  for (double x : impacts) {
    if (x <= q->q1) {
      out.push_back(1);
    } else if (x <= q->median) {
      out.push_back(2);
    } else if (x < q->q3) {
      out.push_back(3);
    } else {
      out.push_back(4);
    }
  }
  return out;
}

double manuscript_merit(const Manuscript& ms) { return ms.q * ms.n; }

std::vector<int> months_to_publication(const RunRecord& run) {
  std::vector<int> out;
  for (const auto& ms : run.manuscripts) {
    if (ms.state == ManuscriptState::Published) out.push_back(*ms.outcome_month - ms.created_month);
  }
  return out;
}

RunSummary summarize_run(const RunRecord& run) {
  RunSummary s;
  s.setting = run.setting;
  s.population_fingerprint = run.fingerprint();
  s.months = run.months;
  s.manuscripts = static_cast<int>(run.manuscripts.size());
  s.total_reviews = static_cast<long>(run.tasks.size());
  s.debt_outstanding = run.debt_outstanding;

  s.authors.resize(run.authors.size());
  s.journals.resize(run.journals.size());
  const auto classes = impact_quartile_classes(run.impacts);
  for (std::size_t j = 0; j < run.journals.size(); ++j) {
    s.journals[j].impact = run.impacts[j];
    s.journals[j].impact_quartile = classes[j];
  }

  std::vector<double> merit_pub;
  std::vector<double> merit_abn;
  std::vector<double> delay;
  long resolved_reviews = 0;
  long resolved_submissions = 0;
  long published_reviews = 0;
  for (const auto& ms : run.manuscripts) {
    s.total_submissions += ms.submissions;
    const auto reviews = static_cast<long>(ms.review_log.size());
    if (ms.state == ManuscriptState::Published) {
      ++s.published;
      merit_pub.push_back(manuscript_merit(ms));
      delay.push_back(static_cast<double>(*ms.outcome_month - ms.created_month));
      published_reviews += reviews;
      auto& a = s.authors[ms.author_id];
      ++a.publications;
      a.total_impact += run.impacts[*ms.journal_id];
      ++s.journals[*ms.journal_id].publications;
    } else if (ms.state == ManuscriptState::Abandoned) {
      ++s.abandoned;
      merit_abn.push_back(manuscript_merit(ms));
    } else {
      ++s.in_flight;
      continue;
    }
    resolved_reviews += reviews;
    resolved_submissions += ms.submissions;
  }
  for (auto& a : s.authors) {
    if (a.publications > 0) a.mean_impact = a.total_impact / a.publications;
  }

  const int resolved = s.published + s.abandoned;
  s.publication_fraction = ratio(s.published, resolved);
  s.publication_fraction_all = ratio(s.published, s.manuscripts);
  s.submissions_per_manuscript = ratio(static_cast<double>(resolved_submissions), resolved);
  s.reviews_per_manuscript = ratio(static_cast<double>(resolved_reviews), resolved);
  s.reviews_per_published = ratio(static_cast<double>(published_reviews), s.published);
  s.reviews_per_manuscript_all = ratio(static_cast<double>(s.total_reviews), s.manuscripts);
  s.months_to_publication_mean = mean_of(delay);
  s.months_to_publication = quartiles(delay);
  s.merit_published = mean_of(merit_pub);
  s.merit_abandoned = mean_of(merit_abn);

  if (run.setting == Setting::AS) {
    std::vector<std::optional<int>> pool_month(run.manuscripts.size());
    for (const auto& e : run.events) {
      if (e.kind == EventKind::EnteredPool) pool_month[e.manuscript_id] = e.month;
    }
    std::vector<double> ages;
    for (const auto& ms : run.manuscripts) {
      if (ms.state == ManuscriptState::InFirstPool) ages.push_back(run.months - *pool_month[ms.id]);
    }
    s.first_pool_waiting = static_cast<int>(ages.size());
    s.first_pool_mean_age = mean_of(ages);
  }
  return s;
}

ComparisonReport compare_runs(const RunSummary& cs, const RunSummary& as) {
  if (cs.population_fingerprint != as.population_fingerprint || cs.authors.size() != as.authors.size() ||
      cs.journals.size() != as.journals.size()) {
    throw std::invalid_argument("compare_runs: summaries come from different populations");
  }
  ComparisonReport r;
  int more = 0;
  int higher_total = 0;
  int higher_mean = 0;
  for (std::size_t i = 0; i < cs.authors.size(); ++i) {
    const auto& c = cs.authors[i];
    const auto& a = as.authors[i];
    if (a.publications > c.publications) ++more;
    if (a.total_impact > c.total_impact) ++higher_total;
    if (c.mean_impact && a.mean_impact) {
      ++r.authors_with_mean_in_both;
      if (*a.mean_impact > *c.mean_impact) ++higher_mean;
    }
  }
  const auto n_auth = static_cast<double>(cs.authors.size());
  r.authors_more_publications_in_as = ratio(more, n_auth);
  r.authors_higher_total_impact_in_as = ratio(higher_total, n_auth);
  r.authors_higher_mean_impact_in_as = ratio(higher_mean, r.authors_with_mean_in_both);

  int journals_more = 0;
  std::array<int, 4> more_by_q{};
  for (std::size_t j = 0; j < cs.journals.size(); ++j) {
    const auto& c = cs.journals[j];
    const auto& a = as.journals[j];
    const bool gained = a.publications > c.publications;
    if (gained) ++journals_more;
    auto& bucket = r.by_impact_quartile[static_cast<std::size_t>(c.impact_quartile - 1)];
    ++bucket.journals;
    bucket.mean_cs_publications += c.publications;
    bucket.mean_as_publications += a.publications;
    if (gained) ++more_by_q[static_cast<std::size_t>(c.impact_quartile - 1)];
  }
  r.journals_more_publications_in_as = ratio(journals_more, static_cast<double>(cs.journals.size()));
  for (std::size_t q = 0; q < 4; ++q) {
    auto& b = r.by_impact_quartile[q];
    b.fraction_more_in_as = ratio(more_by_q[q], b.journals);
    b.mean_cs_publications = ratio(b.mean_cs_publications, b.journals);
    b.mean_as_publications = ratio(b.mean_as_publications, b.journals);
  }
  return r;
}

}  // namespace prsim
