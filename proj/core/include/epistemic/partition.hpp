#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "epistemic/event.hpp"
#include "epistemic/structure.hpp"

namespace epistemic {

/// Size caps applied to exponential constructions.
struct Limits {
  static constexpr std::size_t kDefaultMaxCells = 12;

  /// Maximum number of partition cells per agent for which the union
  /// closure is materialized.
  std::size_t max_cells = kDefaultMaxCells;

  /// Defaults, with max_cells overridden by EPISTEMIC_MAX_CELLS when set to
  /// a positive integer.
  static Limits from_environment();
};

/// Cells of one agent's partition, ordered by canonical event string.
using Partition = std::vector<Event>;

/// All non-empty unions of an agent's cells, ordered by canonical string.
using GammaSet = std::vector<Event>;

/// I_i(w). Requires a partitional structure.
Event equivalence_class(const InformationStructure& s, AgentId i, StateId w);

Partition partition(const InformationStructure& s, AgentId i);

/// Union closure of `cells`; throws ResourceError above `limits.max_cells`.
GammaSet union_closure(const InformationStructure& s, const Partition& cells,
                       const Limits& limits = {});

GammaSet gamma(const InformationStructure& s, AgentId i, const Limits& limits = {});

/// True iff some state of `s` has possibility set exactly `e` for agent i.
/// Valid on any structure.
bool is_possible_belief(const InformationStructure& s, AgentId i, const Event& e);

/// Cell of another agent that agent `agent` can never hold as a belief.
struct CrossAgentConflict {
  AgentId other;
  Event cell;
};

struct FlawReport {
  AgentId agent;
  /// Members of gamma(agent) that are not possible beliefs, canonical order.
  std::vector<Event> not_possible_beliefs;
  std::vector<CrossAgentConflict> cross_agent_conflicts;
};

FlawReport flaw_report(const InformationStructure& s, AgentId i, const Limits& limits = {});

}  // namespace epistemic
