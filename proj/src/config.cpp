#include "prsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace prsim {

using nlohmann::json;

namespace {

const std::set<std::string, std::less<>> kTopLevelKeys = {
    "master_seed",     "months",          "author_specs",   "journal_specs",    "productivity",
    "completion_prob", "max_rejections",  "reviewers_per_ms", "top_pool",       "window_halfwidth",
    "improvement_cap", "as_bid_rounds",   "as_duty_strategy", "expertise_ranking", "replicates",
};

const std::set<std::string, std::less<>> kSpecKeys = {
    "archetype", "count", "alpha_T", "beta_T", "alpha_Q", "beta_Q", "alpha_N", "beta_N",
};

std::string line_context(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void fail(std::string_view source, const std::string& what) {
  throw ConfigError(std::string(source) + ": " + what);
}

int get_int(const json& v, std::string_view source, const std::string& key) {
  if (!v.is_number_integer()) fail(source, "'" + key + "' must be an integer");
  return v.get<int>();
}

double get_real(const json& v, std::string_view source, const std::string& key) {
  if (!v.is_number()) fail(source, "'" + key + "' must be a number");
  return v.get<double>();
}

ParamRange get_range(const json& v, std::string_view source, const std::string& key) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(source, "'" + key + "' must be a two-element array [lo, hi]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<ArchetypeSpec> get_specs(const json& v, std::string_view source, const std::string& key) {
  if (!v.is_array()) fail(source, "'" + key + "' must be an array of archetype objects");
  std::vector<ArchetypeSpec> specs;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const json& o = v[i];
    const std::string where = key + "[" + std::to_string(i) + "]";
    if (!o.is_object()) fail(source, "'" + where + "' must be an object");
    for (const auto& [k, _] : o.items()) {
      if (!kSpecKeys.contains(k)) fail(source, "unknown key '" + k + "' in '" + where + "'");
    }
    for (const auto& required : kSpecKeys) {
      if (!o.contains(required)) fail(source, "'" + where + "' is missing '" + required + "'");
    }
    ArchetypeSpec s;
    if (!o["archetype"].is_string()) fail(source, "'" + where + ".archetype' must be a string");
    try {
      s.archetype = archetype_from_string(o["archetype"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(source, where + ": " + e.what());
    }
    s.count = get_int(o["count"], source, where + ".count");
    s.alpha_topic = get_range(o["alpha_T"], source, where + ".alpha_T");
    s.beta_topic = get_range(o["beta_T"], source, where + ".beta_T");
    s.alpha_quality = get_range(o["alpha_Q"], source, where + ".alpha_Q");
    s.beta_quality = get_range(o["beta_Q"], source, where + ".beta_Q");
    s.alpha_novelty = get_range(o["alpha_N"], source, where + ".alpha_N");
    s.beta_novelty = get_range(o["beta_N"], source, where + ".beta_N");
    specs.push_back(s);
  }
  return specs;
}

json range_json(const ParamRange& r) { return json::array({r.lo, r.hi}); }

json specs_json(const std::vector<ArchetypeSpec>& specs) {
  json arr = json::array();
  for (const auto& s : specs) {
    arr.push_back({{"archetype", to_string(s.archetype)},
                   {"count", s.count},
                   {"alpha_T", range_json(s.alpha_topic)},
                   {"beta_T", range_json(s.beta_topic)},
                   {"alpha_Q", range_json(s.alpha_quality)},
                   {"beta_Q", range_json(s.beta_quality)},
                   {"alpha_N", range_json(s.alpha_novelty)},
                   {"beta_N", range_json(s.beta_novelty)}});
  }
  return arr;
}

void check_probability(std::vector<std::string>& errs, double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) errs.push_back(std::string(name) + " must lie in [0, 1]");
}

void check_specs(std::vector<std::string>& errs, const std::vector<ArchetypeSpec>& specs, const char* name) {
  for (std::size_t i = 0; i < specs.size(); ++i) {
    try {
      specs[i].validate();
    } catch (const std::invalid_argument& e) {
      errs.push_back(std::string(name) + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
}

}  // namespace

std::string_view to_string(DutyStrategy s) {
  return s == DutyStrategy::Expertise ? "expertise" : "random";
}

std::string_view to_string(ExpertiseRanking r) {
  return r == ExpertiseRanking::InverseDensity ? "inverse_density" : "density";
}

std::vector<std::string> validation_errors(const SimConfig& cfg) {
  std::vector<std::string> errs;
  if (cfg.months <= 0) errs.push_back("months must be positive");
  check_probability(errs, cfg.productivity, "productivity");
  check_probability(errs, cfg.completion_prob, "completion_prob");
  if (cfg.max_rejections < 1) errs.push_back("max_rejections must be at least 1");
  if (cfg.reviewers_per_ms < 1) errs.push_back("reviewers_per_ms must be at least 1");
  if (cfg.reviewers_per_ms > cfg.top_pool) errs.push_back("reviewers_per_ms must not exceed top_pool");
  if (!(cfg.window_halfwidth > 0.0 && cfg.window_halfwidth < 0.5)) {
    errs.push_back("window_halfwidth must lie in (0, 0.5)");
  }
  check_probability(errs, cfg.improvement_cap, "improvement_cap");
  if (cfg.as_bid_rounds < 1) errs.push_back("as_bid_rounds must be at least 1");
  if (cfg.replicates < 1) errs.push_back("replicates must be at least 1");
  check_specs(errs, cfg.author_specs, "author_specs");
  check_specs(errs, cfg.journal_specs, "journal_specs");
  return errs;
}

void validate(const SimConfig& cfg) {
  const auto errs = validation_errors(cfg);
  if (errs.empty()) return;
  std::ostringstream msg;
  msg << "invalid configuration:";
  for (const auto& e : errs) msg << "\n  - " << e;
  throw ConfigError(msg.str());
}

SimConfig parse_config_text(std::string_view text, std::string_view source) {
  SimConfig cfg;
  const bool blank = std::all_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (blank) return cfg;

  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(source, "parse error at " + line_context(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  if (!doc.is_object()) fail(source, "top level must be a JSON object");

  for (const auto& [key, _] : doc.items()) {
    if (!kTopLevelKeys.contains(key)) fail(source, "unknown key '" + key + "'");
  }

  for (const auto& [key, v] : doc.items()) {
    if (key == "master_seed") {
      if (v.is_null()) continue;
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        fail(source, "'master_seed' must be a nonnegative integer");
      }
      cfg.master_seed = v.get<std::uint64_t>();
    } else if (key == "months") {
      cfg.months = get_int(v, source, key);
    } else if (key == "author_specs") {
      cfg.author_specs = get_specs(v, source, key);
    } else if (key == "journal_specs") {
      cfg.journal_specs = get_specs(v, source, key);
    } else if (key == "productivity") {
      cfg.productivity = get_real(v, source, key);
    } else if (key == "completion_prob") {
      cfg.completion_prob = get_real(v, source, key);
    } else if (key == "max_rejections") {
      cfg.max_rejections = get_int(v, source, key);
    } else if (key == "reviewers_per_ms") {
      cfg.reviewers_per_ms = get_int(v, source, key);
    } else if (key == "top_pool") {
      cfg.top_pool = get_int(v, source, key);
    } else if (key == "window_halfwidth") {
      cfg.window_halfwidth = get_real(v, source, key);
    } else if (key == "improvement_cap") {
      cfg.improvement_cap = get_real(v, source, key);
    } else if (key == "as_bid_rounds") {
      cfg.as_bid_rounds = get_int(v, source, key);
    } else if (key == "as_duty_strategy") {
      const std::string s = v.is_string() ? v.get<std::string>() : "";
      if (s == "expertise") {
        cfg.as_duty_strategy = DutyStrategy::Expertise;
      } else if (s == "random") {
        cfg.as_duty_strategy = DutyStrategy::Random;
      } else {
        fail(source, "'as_duty_strategy' must be \"expertise\" or \"random\"");
      }
    } else if (key == "expertise_ranking") {
      const std::string s = v.is_string() ? v.get<std::string>() : "";
      if (s == "inverse_density") {
        cfg.expertise_ranking = ExpertiseRanking::InverseDensity;
      } else if (s == "density") {
        cfg.expertise_ranking = ExpertiseRanking::Density;
      } else {
        fail(source, "'expertise_ranking' must be \"inverse_density\" or \"density\"");
      }
    } else if (key == "replicates") {
      cfg.replicates = get_int(v, source, key);
    }
  }

  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    fail(source, e.what());
  }
  return cfg;
}

SimConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

json config_to_json(const SimConfig& cfg) {
  json j;
  j["master_seed"] = cfg.master_seed ? json(*cfg.master_seed) : json(nullptr);
  j["months"] = cfg.months;
  j["author_specs"] = specs_json(cfg.author_specs);
  j["journal_specs"] = specs_json(cfg.journal_specs);
  j["productivity"] = cfg.productivity;
  j["completion_prob"] = cfg.completion_prob;
  j["max_rejections"] = cfg.max_rejections;
  j["reviewers_per_ms"] = cfg.reviewers_per_ms;
  j["top_pool"] = cfg.top_pool;
  j["window_halfwidth"] = cfg.window_halfwidth;
  j["improvement_cap"] = cfg.improvement_cap;
  j["as_bid_rounds"] = cfg.as_bid_rounds;
  j["as_duty_strategy"] = to_string(cfg.as_duty_strategy);
  j["expertise_ranking"] = to_string(cfg.expertise_ranking);
  j["replicates"] = cfg.replicates;
  return j;
}

}  // namespace prsim
