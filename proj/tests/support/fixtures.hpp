// Small, fast configurations and population helpers for unit suites.

#pragma once

#include <utility>
#include <vector>

#include "prsim/config.hpp"
#include "prsim/io.hpp"

namespace prsim::testing {

/// One fifth of the default population over a shorter horizon.
inline SimConfig small_config(std::uint64_t seed, int months = 48) {
  SimConfig cfg;
  cfg.master_seed = seed;
  cfg.months = months;
  for (auto& s : cfg.author_specs) s.count /= 5;
  for (auto& s : cfg.journal_specs) s.count = std::max(1, s.count / 5);
  return cfg;
}

inline AgentProfile make_agent(int id, AgentKind kind, BetaParams t, BetaParams q = {1, 1}, BetaParams n = {1, 1}) {
  return AgentProfile{id, kind, Archetype::Normal, t, q, n};
}

inline std::vector<AgentProfile> uniform_agents(int count, AgentKind kind) {
  std::vector<AgentProfile> out;
  for (int i = 0; i < count; ++i) out.push_back(make_agent(i, kind, {1, 1}));
  return out;
}

}  // namespace prsim::testing
