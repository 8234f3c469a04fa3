#include "prsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "prsim/as_engine.hpp"
#include "prsim/cs_engine.hpp"

#ifndef PRSIM_VERSION
#define PRSIM_VERSION "dev"
#endif

namespace prsim {

using nlohmann::json;

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_real(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

std::string opt_field(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

std::string opt_field(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError(path.string() + ": cannot open for writing");
  out << contents;
  out.flush();
  if (!out) throw OutputError(path.string() + ": write failed");
}

std::string outcome_name(const Manuscript& ms) {
  switch (ms.state) {
    case ManuscriptState::Published: return "published";
    case ManuscriptState::Abandoned: return "abandoned";
    default: return "in_flight";
  }
}

std::string replicate_dir_name(int r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "replicate_%03d", r);
  return buf;
}

struct Series {
  std::vector<double> values;

  json to_json() const {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean = values.empty() ? 0.0 : mean / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
    return {{"mean", mean}, {"stddev", sd}, {"n", values.size()}, {"values", values}};
  }
};

using SeriesTable = std::map<std::string, Series>;

void accumulate(SeriesTable& table, const RunSummary& s) {
  auto add = [&](const char* k, double v) { table[k].values.push_back(v); };
  add("manuscripts", s.manuscripts);
  add("published", s.published);
  add("abandoned", s.abandoned);
  add("in_flight", s.in_flight);
  add("publication_fraction", s.publication_fraction);
  add("publication_fraction_all", s.publication_fraction_all);
  add("submissions_per_manuscript", s.submissions_per_manuscript);
  add("reviews_per_manuscript", s.reviews_per_manuscript);
  add("reviews_per_published", s.reviews_per_published);
  if (s.months_to_publication_mean) add("months_to_publication_mean", *s.months_to_publication_mean);
  if (s.merit_published) add("merit_published", *s.merit_published);
  if (s.merit_abandoned) add("merit_abandoned", *s.merit_abandoned);
}

json table_json(const SeriesTable& t) {
  json j = json::object();
  for (const auto& [k, v] : t) j[k] = v.to_json();
  return j;
}

}  // namespace

SettingSelection selection_from_string(std::string_view name) {
  if (name == "cs") return SettingSelection::CS;
  if (name == "as") return SettingSelection::AS;
  if (name == "both") return SettingSelection::Both;
  throw ConfigError("setting must be one of cs, as, both; got '" + std::string(name) + "'");
}

ReplicateSeeds replicate_seeds(std::uint64_t master, int replicate) {
  const auto r = static_cast<std::uint64_t>(replicate);
  return {derive_seed(master, r, Substream::Authors), derive_seed(master, r, Substream::Journals),
          derive_seed(master, r, Substream::CurrentSystem), derive_seed(master, r, Substream::AlternativeSystem)};
}

Population make_population(const SimConfig& cfg, const ReplicateSeeds& seeds) {
  RngStream author_rng(seeds.authors);
  RngStream journal_rng(seeds.journals);
  return {generate_authors(cfg.author_specs, author_rng), generate_journals(cfg.journal_specs, journal_rng)};
}

ReplicateResult run_replicate(const SimConfig& cfg, int replicate, SettingSelection selection) {
  validate(cfg);
  if (!cfg.master_seed) throw ConfigError("master_seed is required (set it in the config or pass --seed)");
  ReplicateResult r;
  r.replicate = replicate;
  r.seeds = replicate_seeds(*cfg.master_seed, replicate);
  const Population pop = make_population(cfg, r.seeds);
  if (selection != SettingSelection::AS) {
    RngStream rng(r.seeds.cs);
    r.cs = run_cs(cfg, pop.authors, pop.journals, rng);
    r.cs_summary = summarize_run(*r.cs);
  }
  if (selection != SettingSelection::CS) {
    RngStream rng(r.seeds.as);
    r.as = run_as(cfg, pop.authors, pop.journals, rng);
    r.as_summary = summarize_run(*r.as);
  }
  if (r.cs_summary && r.as_summary) r.comparison = compare_runs(*r.cs_summary, *r.as_summary);
  return r;
}

std::string build_identifier() {
  return std::string("prsim ") + PRSIM_VERSION + " (" + __VERSION__ + ")";
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_population_csv(std::ostream& out, const std::vector<AgentProfile>& authors,
                          const std::vector<AgentProfile>& journals, const std::vector<double>& impacts) {
  out << "id,kind,archetype,alpha_T,beta_T,alpha_Q,beta_Q,alpha_N,beta_N,impact\n";
  auto row = [&](const AgentProfile& a, const std::string& impact) {
    out << a.id << ',' << to_string(a.kind) << ',' << to_string(a.archetype) << ',' << format_real(a.topic.alpha())
        << ',' << format_real(a.topic.beta()) << ',' << format_real(a.quality.alpha()) << ','
        << format_real(a.quality.beta()) << ',' << format_real(a.novelty.alpha()) << ','
        << format_real(a.novelty.beta()) << ',' << impact << '\n';
  };
  for (const auto& a : authors) row(a, "");
  for (std::size_t j = 0; j < journals.size(); ++j) row(journals[j], format_real(impacts[j]));
}

void write_manuscripts_csv(std::ostream& out, const std::vector<const RunRecord*>& runs) {
  out << "id,author_id,setting,t,q0,n0,q_final,n_final,k,created_month,outcome,outcome_month,journal_id,n_reviews,"
         "n_rejections\n";
  for (const RunRecord* run : runs) {
    for (const auto& ms : run->manuscripts) {
      out << ms.id << ',' << ms.author_id << ',' << to_string(run->setting) << ',' << format_real(ms.t) << ','
          << format_real(ms.q_initial) << ',' << format_real(ms.n_initial) << ',' << format_real(ms.q) << ','
          << format_real(ms.n) << ',' << ms.revisions << ',' << ms.created_month << ',' << outcome_name(ms) << ','
          << opt_field(ms.outcome_month) << ',' << opt_field(ms.journal_id) << ',' << ms.review_log.size() << ','
          << ms.rejection_count << '\n';
    }
  }
}

json summary_to_json(const RunSummary& s) {
  json authors = json::array();
  for (const auto& a : s.authors) {
    authors.push_back({{"publications", a.publications}, {"total_impact", a.total_impact},
                       {"mean_impact", opt(a.mean_impact)}});
  }
  json journals = json::array();
  for (const auto& j : s.journals) {
    journals.push_back({{"publications", j.publications}, {"impact", j.impact}, {"impact_quartile", j.impact_quartile}});
  }
  json months = nullptr;
  if (s.months_to_publication) {
    months = {{"q1", s.months_to_publication->q1},
              {"median", s.months_to_publication->median},
              {"q3", s.months_to_publication->q3}};
  }
  return {
      {"setting", to_string(s.setting)},
      {"population_fingerprint", s.population_fingerprint},
      {"months", s.months},
      {"totals", {{"manuscripts", s.manuscripts}, {"published", s.published}, {"abandoned", s.abandoned},
                  {"in_flight", s.in_flight}}},
      {"publication_fraction", s.publication_fraction},
      {"publication_fraction_all", s.publication_fraction_all},
      {"submissions", {{"total", s.total_submissions}, {"mean_per_manuscript", s.submissions_per_manuscript}}},
      {"reviews", {{"total", s.total_reviews}, {"mean_per_manuscript", s.reviews_per_manuscript},
                   {"mean_per_published", s.reviews_per_published},
                   {"mean_per_manuscript_all", s.reviews_per_manuscript_all}}},
      {"months_to_publication", {{"mean", opt(s.months_to_publication_mean)}, {"quartiles", months}}},
      {"merit", {{"mean_published", opt(s.merit_published)}, {"mean_abandoned", opt(s.merit_abandoned)}}},
      {"first_pool", {{"waiting", s.first_pool_waiting}, {"mean_age", opt(s.first_pool_mean_age)},
                      {"debt_outstanding", s.debt_outstanding}}},
      {"per_author", authors},
      {"per_journal", journals},
  };
}

RunSummary summary_from_json(const json& j) {
  RunSummary s;
  const std::string setting = j.at("setting").get<std::string>();
  if (setting != "cs" && setting != "as") throw std::invalid_argument("summary: unknown setting '" + setting + "'");
  s.setting = setting == "cs" ? Setting::CS : Setting::AS;
  s.population_fingerprint = j.at("population_fingerprint").get<std::uint64_t>();
  s.months = j.at("months").get<int>();
  const auto& totals = j.at("totals");
  s.manuscripts = totals.at("manuscripts").get<int>();
  s.published = totals.at("published").get<int>();
  s.abandoned = totals.at("abandoned").get<int>();
  s.in_flight = totals.at("in_flight").get<int>();
  s.publication_fraction = j.at("publication_fraction").get<double>();
  s.publication_fraction_all = j.at("publication_fraction_all").get<double>();
  s.total_submissions = j.at("submissions").at("total").get<long>();
  s.submissions_per_manuscript = j.at("submissions").at("mean_per_manuscript").get<double>();
  const auto& reviews = j.at("reviews");
  s.total_reviews = reviews.at("total").get<long>();
  s.reviews_per_manuscript = reviews.at("mean_per_manuscript").get<double>();
  s.reviews_per_published = reviews.at("mean_per_published").get<double>();
  s.reviews_per_manuscript_all = reviews.at("mean_per_manuscript_all").get<double>();
  const auto& months = j.at("months_to_publication");
  s.months_to_publication_mean = opt_real(months.at("mean"));
  if (const auto& q = months.at("quartiles"); !q.is_null()) {
    s.months_to_publication = Quartiles{q.at("q1").get<double>(), q.at("median").get<double>(), q.at("q3").get<double>()};
  }
  s.merit_published = opt_real(j.at("merit").at("mean_published"));
  s.merit_abandoned = opt_real(j.at("merit").at("mean_abandoned"));
  const auto& pool = j.at("first_pool");
  s.first_pool_waiting = pool.at("waiting").get<int>();
  s.first_pool_mean_age = opt_real(pool.at("mean_age"));
  s.debt_outstanding = pool.at("debt_outstanding").get<long>();
  for (const auto& a : j.at("per_author")) {
    s.authors.push_back({a.at("publications").get<int>(), a.at("total_impact").get<double>(),
                         opt_real(a.at("mean_impact"))});
  }
  for (const auto& jj : j.at("per_journal")) {
    s.journals.push_back({jj.at("publications").get<int>(), jj.at("impact").get<double>(),
                          jj.at("impact_quartile").get<int>()});
  }
  return s;
}

json comparison_to_json(const ComparisonReport& r) {
  json quartiles = json::array();
  for (std::size_t q = 0; q < r.by_impact_quartile.size(); ++q) {
    const auto& b = r.by_impact_quartile[q];
    quartiles.push_back({{"impact_quartile", q + 1},
                         {"journals", b.journals},
                         {"mean_cs_publications", b.mean_cs_publications},
                         {"mean_as_publications", b.mean_as_publications},
                         {"fraction_more_in_as", b.fraction_more_in_as}});
  }
  return {
      {"authors_more_publications_in_as", r.authors_more_publications_in_as},
      {"authors_higher_total_impact_in_as", r.authors_higher_total_impact_in_as},
      {"authors_higher_mean_impact_in_as", r.authors_higher_mean_impact_in_as},
      {"authors_with_mean_in_both", r.authors_with_mean_in_both},
      {"journals_more_publications_in_as", r.journals_more_publications_in_as},
      {"by_impact_quartile", quartiles},
  };
}

std::vector<std::string> write_outputs(const ReplicateResult& result, const SimConfig& cfg,
                                       const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw OutputError(dir.string() + ": " + ec.message());

  std::vector<std::string> files;
  auto emit = [&](const std::string& name, const std::string& body) {
    write_file(dir / name, body);
    files.push_back(name);
  };

  std::vector<const RunRecord*> runs;
  if (result.cs) runs.push_back(&*result.cs);
  if (result.as) runs.push_back(&*result.as);
  if (runs.empty()) return files;
  const RunRecord& any = *runs.front();

  {
    std::ostringstream s;
    write_population_csv(s, any.authors, any.journals, any.impacts);
    emit("population.csv", s.str());
  }
  {
    std::ostringstream s;
    write_manuscripts_csv(s, runs);
    emit("manuscripts.csv", s.str());
  }

  std::vector<std::pair<Setting, const RunSummary*>> summaries;
  if (result.cs_summary) summaries.emplace_back(Setting::CS, &*result.cs_summary);
  if (result.as_summary) summaries.emplace_back(Setting::AS, &*result.as_summary);
  {
    std::ostringstream s;
    s << "id,archetype,setting,publications,total_impact,mean_impact\n";
    for (const auto& [setting, sum] : summaries) {
      for (std::size_t i = 0; i < sum->authors.size(); ++i) {
        const auto& a = sum->authors[i];
        s << i << ',' << to_string(any.authors[i].archetype) << ',' << to_string(setting) << ',' << a.publications
          << ',' << format_real(a.total_impact) << ',' << opt_field(a.mean_impact) << '\n';
      }
    }
    emit("authors.csv", s.str());
  }
  {
    std::ostringstream s;
    s << "id,archetype,setting,impact,impact_quartile,publications\n";
    for (const auto& [setting, sum] : summaries) {
      for (std::size_t j = 0; j < sum->journals.size(); ++j) {
        const auto& jj = sum->journals[j];
        s << j << ',' << to_string(any.journals[j].archetype) << ',' << to_string(setting) << ','
          << format_real(jj.impact) << ',' << jj.impact_quartile << ',' << jj.publications << '\n';
      }
    }
    emit("journals.csv", s.str());
  }
  {
    json doc;
    doc["replicate"] = result.replicate;
    doc["config"] = config_to_json(cfg);
    doc["seeds"] = {{"authors", result.seeds.authors}, {"journals", result.seeds.journals},
                    {"cs", result.seeds.cs}, {"as", result.seeds.as}};
    doc["runs"] = json::object();
    for (const auto& [setting, sum] : summaries) doc["runs"][std::string(to_string(setting))] = summary_to_json(*sum);
    doc["comparison"] = result.comparison ? comparison_to_json(*result.comparison) : json(nullptr);
    emit("summary.json", doc.dump(2) + "\n");
  }
  {
    std::ostringstream s;
    s << "setting,manuscript_id,months\n";
    for (const RunRecord* run : runs) {
      for (const auto& ms : run->manuscripts) {
        if (ms.state != ManuscriptState::Published) continue;
        s << to_string(run->setting) << ',' << ms.id << ',' << (*ms.outcome_month - ms.created_month) << '\n';
      }
    }
    emit("plot_months_to_publication.csv", s.str());
  }
  if (result.cs_summary && result.as_summary) {
    const auto& cs = *result.cs_summary;
    const auto& as = *result.as_summary;
    std::ostringstream pubs;
    std::ostringstream impact;
    pubs << "author_id,cs_publications,as_publications\n";
    impact << "author_id,cs_mean_impact,as_mean_impact\n";
    for (std::size_t i = 0; i < cs.authors.size(); ++i) {
      pubs << i << ',' << cs.authors[i].publications << ',' << as.authors[i].publications << '\n';
      impact << i << ',' << opt_field(cs.authors[i].mean_impact) << ',' << opt_field(as.authors[i].mean_impact)
             << '\n';
    }
    emit("plot_author_publications.csv", pubs.str());
    emit("plot_author_mean_impact.csv", impact.str());

    std::ostringstream jp;
    jp << "journal_id,impact,impact_quartile,cs_publications,as_publications\n";
    for (std::size_t j = 0; j < cs.journals.size(); ++j) {
      jp << j << ',' << format_real(cs.journals[j].impact) << ',' << cs.journals[j].impact_quartile << ','
         << cs.journals[j].publications << ',' << as.journals[j].publications << '\n';
    }
    emit("plot_journal_publications.csv", jp.str());
  }
  return files;
}

OutputBundle run_experiment(const SimConfig& cfg, SettingSelection selection, const std::filesystem::path& out) {
  validate(cfg);
  if (!cfg.master_seed) throw ConfigError("master_seed is required (set it in the config or pass --seed)");

  OutputBundle bundle;
  bundle.root = out;
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw OutputError(out.string() + ": " + ec.message());

  SeriesTable cs_table;
  SeriesTable as_table;
  SeriesTable cmp_table;
  json replicates = json::array();
  for (int r = 0; r < cfg.replicates; ++r) {
    const ReplicateResult result = run_replicate(cfg, r, selection);
    const std::string sub = replicate_dir_name(r);
    for (const auto& f : write_outputs(result, cfg, out / sub)) bundle.files.push_back(std::filesystem::path(sub) / f);
    if (result.cs_summary) accumulate(cs_table, *result.cs_summary);
    if (result.as_summary) accumulate(as_table, *result.as_summary);
    if (result.comparison) {
      const auto& c = *result.comparison;
      cmp_table["authors_more_publications_in_as"].values.push_back(c.authors_more_publications_in_as);
      cmp_table["authors_higher_total_impact_in_as"].values.push_back(c.authors_higher_total_impact_in_as);
      cmp_table["authors_higher_mean_impact_in_as"].values.push_back(c.authors_higher_mean_impact_in_as);
      cmp_table["journals_more_publications_in_as"].values.push_back(c.journals_more_publications_in_as);
    }
    replicates.push_back({{"index", r},
                          {"directory", sub},
                          {"seeds", {{"authors", result.seeds.authors}, {"journals", result.seeds.journals},
                                     {"cs", result.seeds.cs}, {"as", result.seeds.as}}}});
  }

  json aggregate;
  aggregate["replicates"] = cfg.replicates;
  if (!cs_table.empty()) aggregate["cs"] = table_json(cs_table);
  if (!as_table.empty()) aggregate["as"] = table_json(as_table);
  if (!cmp_table.empty()) aggregate["comparison"] = table_json(cmp_table);
  write_file(out / "aggregate.json", aggregate.dump(2) + "\n");
  bundle.files.emplace_back("aggregate.json");

  const char* selection_name = selection == SettingSelection::CS ? "cs" : selection == SettingSelection::AS ? "as" : "both";
  bundle.manifest = {
      {"build", build_identifier()},
      {"setting", selection_name},
      {"config", config_to_json(cfg)},
      {"seed_scheme",
       "seed(r, s) = splitmix64(splitmix64(master_seed) ^ splitmix64(16 * r + s + 1)); "
       "s = 0 authors, 1 journals, 2 cs, 3 as"},
      {"replicates", replicates},
  };
  json files = json::array();
  for (const auto& f : bundle.files) files.push_back(f.generic_string());
  bundle.manifest["files"] = files;
  write_file(out / "manifest.json", bundle.manifest.dump(2) + "\n");
  return bundle;
}

}  // namespace prsim
