#include "epistemic/partition.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string>

#include "epistemic/errors.hpp"
#include "epistemic/kripke.hpp"

namespace epistemic {

Limits Limits::from_environment() {
  Limits limits;
  if (const char* raw = std::getenv("EPISTEMIC_MAX_CELLS")) {
    std::size_t value = 0;
    const char* end = raw + std::strlen(raw);
    auto [ptr, ec] = std::from_chars(raw, end, value);
    if (ec != std::errc{} || ptr != end || value == 0)
      throw InputError(std::string("EPISTEMIC_MAX_CELLS must be a positive integer, got '") + raw + "'");
    limits.max_cells = value;
  }
  return limits;
}

Event equivalence_class(const InformationStructure& s, AgentId i, StateId w) {
  require_partitional(s, "equivalence_class");
  Event cell = possibility_set(s, i, w);
  if (!cell.contains(index_of(w))) throw std::logic_error("equivalence class misses its own state");
  return cell;
}

Partition partition(const InformationStructure& s, AgentId i) {
  require_partitional(s, "partition");
  s.require_agent(i);
  std::set<Event> distinct(s.relation(i).begin(), s.relation(i).end());
  Partition cells(distinct.begin(), distinct.end());
  std::sort(cells.begin(), cells.end(), CanonicalLess{&s});
  return cells;
}

GammaSet union_closure(const InformationStructure& s, const Partition& cells, const Limits& limits) {
  if (cells.size() > limits.max_cells)
    throw ResourceError("agent has " + std::to_string(cells.size()) + " cells, above the cap of " +
                        std::to_string(limits.max_cells) + " (set EPISTEMIC_MAX_CELLS to raise it)");
  if (cells.size() >= 63) throw ResourceError("too many cells to enumerate unions");
  GammaSet out;
  const std::uint64_t subsets = std::uint64_t{1} << cells.size();
  out.reserve(subsets - 1);
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    Event u = s.empty_event();
    for (std::size_t k = 0; k < cells.size(); ++k)
      if ((mask >> k) & 1U) u |= cells[k];
    out.push_back(std::move(u));
  }
  std::sort(out.begin(), out.end(), CanonicalLess{&s});
  return out;
}

GammaSet gamma(const InformationStructure& s, AgentId i, const Limits& limits) {
  return union_closure(s, partition(s, i), limits);
}

bool is_possible_belief(const InformationStructure& s, AgentId i, const Event& e) {
  s.require_agent(i);
  s.require_event(e);
  const auto& row = s.relation(i);
  return std::find(row.begin(), row.end(), e) != row.end();
}

FlawReport flaw_report(const InformationStructure& s, AgentId i, const Limits& limits) {
  FlawReport report{i, {}, {}};
  for (const Event& e : gamma(s, i, limits))
    if (!is_possible_belief(s, i, e)) report.not_possible_beliefs.push_back(e);
  for (std::size_t j = 0; j < s.num_agents(); ++j) {
    if (agent_at(j) == i) continue;
    for (const Event& cell : partition(s, agent_at(j)))
      if (!is_possible_belief(s, i, cell)) report.cross_agent_conflicts.push_back({agent_at(j), cell});
  }
  return report;
}

}  // namespace epistemic
