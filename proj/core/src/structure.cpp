#include "epistemic/structure.hpp"

#include <algorithm>
#include <set>

#include "epistemic/errors.hpp"

namespace epistemic {

namespace {

bool is_token(std::string_view name) {
  if (name.empty()) return false;
  for (unsigned char c : name) {
    // Bytes >= 0x80 belong to UTF-8 sequences and are accepted as printable.
    if (c < 0x21 || c == 0x7F) return false;
  }
  return true;
}

template <typename Names>
std::optional<std::size_t> find_sorted(const Names& names, std::string_view key) {
  auto it = std::lower_bound(names.begin(), names.end(), key,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == names.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

void require_sorted_unique(const std::vector<std::string>& names, const char* what) {
  for (std::size_t k = 1; k < names.size(); ++k) {
    if (names[k - 1] == names[k])
      throw InputError(std::string("duplicate ") + what + " name '" + names[k] + "'");
  }
}

}  // namespace

bool is_valid_state_name(std::string_view name) {
  return is_token(name) && name.find(kEventSeparator) == std::string_view::npos;
}

bool is_valid_agent_name(std::string_view name) { return is_token(name); }

InformationStructure::InformationStructure(
    std::vector<std::string> states, std::vector<std::string> agents,
    const std::map<std::string, std::vector<NamePair>>& relations, StateNames names) {
  std::sort(states.begin(), states.end());
  std::sort(agents.begin(), agents.end());
  states_ = std::move(states);
  agents_ = std::move(agents);
  validate_names(names);

  for (const auto& [agent, pairs] : relations) {
    if (!find_sorted(agents_, agent))
      throw InputError("relation given for undeclared agent '" + agent + "'");
  }
  rows_.assign(agents_.size(), std::vector<Event>(states_.size(), Event(states_.size())));
  for (std::size_t a = 0; a < agents_.size(); ++a) {
    auto it = relations.find(agents_[a]);
    if (it == relations.end())
      throw InputError("missing relation for agent '" + agents_[a] + "'");
    for (const auto& [from, to] : it->second) {
      auto f = find_sorted(states_, from);
      if (!f) throw InputError("relation of agent '" + agents_[a] + "' references undeclared state '" + from + "'");
      auto t = find_sorted(states_, to);
      if (!t) throw InputError("relation of agent '" + agents_[a] + "' references undeclared state '" + to + "'");
      rows_[a][*f].insert(*t);
    }
  }
}

InformationStructure InformationStructure::from_rows(std::vector<std::string> sorted_states,
                                                     std::vector<std::string> sorted_agents,
                                                     std::vector<std::vector<Event>> rows,
                                                     StateNames names) {
  InformationStructure s;
  s.states_ = std::move(sorted_states);
  s.agents_ = std::move(sorted_agents);
  if (!std::is_sorted(s.states_.begin(), s.states_.end()) ||
      !std::is_sorted(s.agents_.begin(), s.agents_.end()))
    throw InputError("state and agent names must be sorted");
  s.validate_names(names);
  if (rows.size() != s.agents_.size()) throw InputError("one relation per agent is required");
  for (const auto& row : rows) {
    if (row.size() != s.states_.size()) throw InputError("relation row count does not match state count");
    for (const auto& e : row)
      if (e.universe_size() != s.states_.size()) throw InputError("relation row over the wrong universe");
  }
  s.rows_ = std::move(rows);
  return s;
}

void InformationStructure::validate_names(StateNames rule) const {
  if (states_.empty()) throw InputError("a structure needs at least one state");
  if (agents_.empty()) throw InputError("a structure needs at least one agent");
  for (const auto& n : states_)
    if (!is_valid_state_name(n) && !(rule == StateNames::with_duplicates && is_token(n) &&
                                     n.starts_with(kDuplicatePrefix)))
      throw InputError("invalid state name '" + n + "'");
  for (const auto& n : agents_)
    if (!is_valid_agent_name(n)) throw InputError("invalid agent name '" + n + "'");
  require_sorted_unique(states_, "state");
  require_sorted_unique(agents_, "agent");
}

std::optional<StateId> InformationStructure::find_state(std::string_view name) const {
  if (auto k = find_sorted(states_, name)) return state_at(*k);
  return std::nullopt;
}

std::optional<AgentId> InformationStructure::find_agent(std::string_view name) const {
  if (auto k = find_sorted(agents_, name)) return agent_at(*k);
  return std::nullopt;
}

StateId InformationStructure::state(std::string_view name) const {
  if (auto s = find_state(name)) return *s;
  throw InputError("unknown state '" + std::string(name) + "'");
}

AgentId InformationStructure::agent(std::string_view name) const {
  if (auto a = find_agent(name)) return *a;
  throw InputError("unknown agent '" + std::string(name) + "'");
}

Group InformationStructure::group(std::span<const std::string> names) const {
  Group g;
  for (const auto& n : names) g.push_back(agent(n));
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  require_group(g);
  return g;
}

Group InformationStructure::group(std::initializer_list<std::string_view> names) const {
  std::vector<std::string> v(names.begin(), names.end());
  return group(v);
}

Group InformationStructure::all_agents() const {
  Group g;
  for (std::size_t a = 0; a < agents_.size(); ++a) g.push_back(agent_at(a));
  return g;
}

Event InformationStructure::event(std::span<const std::string> names) const {
  Event e(num_states());
  for (const auto& n : names) e.insert(index_of(state(n)));
  return e;
}

Event InformationStructure::event(std::initializer_list<std::string_view> names) const {
  Event e(num_states());
  for (auto n : names) e.insert(index_of(state(n)));
  return e;
}

Event InformationStructure::parse_event(std::string_view canonical) const {
  Event e(num_states());
  if (canonical.empty()) return e;
  for (const auto& n : states_)
    if (n.find(kEventSeparator) != std::string::npos)
      throw InputError("event strings cannot be parsed over a structure with state '" + n + "'");
  std::size_t start = 0;
  while (true) {
    auto end = canonical.find(kEventSeparator, start);
    auto part = canonical.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    e.insert(index_of(state(part)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return e;
}

std::string InformationStructure::canonical(const Event& e) const {
  require_event(e);
  std::string out;
  e.for_each([&](std::size_t i) {
    if (!out.empty()) out += kEventSeparator;
    out += states_[i];
  });
  return out;
}

void InformationStructure::require_event(const Event& e) const {
  if (e.universe_size() != num_states())
    throw InputError("event ranges over " + std::to_string(e.universe_size()) +
                     " states but the structure has " + std::to_string(num_states()));
}

void InformationStructure::require_state(StateId s) const {
  if (index_of(s) >= num_states()) throw InputError("state index out of range");
}

void InformationStructure::require_agent(AgentId a) const {
  if (index_of(a) >= num_agents()) throw InputError("agent index out of range");
}

void InformationStructure::require_group(const Group& g) const {
  if (g.empty()) throw InputError("agent group must be non-empty");
  for (AgentId a : g) require_agent(a);
}

std::vector<NamePair> InformationStructure::relation_pairs(AgentId a) const {
  std::vector<NamePair> out;
  const auto& row = relation(a);
  for (std::size_t w = 0; w < row.size(); ++w)
    row[w].for_each([&](std::size_t v) { out.emplace_back(states_[w], states_[v]); });
  return out;
}

InformationStructure InformationStructure::restrict_to(const Event& keep) const {
  require_event(keep);
  std::vector<std::size_t> old_of_new = keep.members();
  std::vector<std::size_t> new_of_old(num_states(), num_states());
  std::vector<std::string> names;
  for (std::size_t k = 0; k < old_of_new.size(); ++k) {
    new_of_old[old_of_new[k]] = k;
    names.push_back(states_[old_of_new[k]]);
  }
  std::vector<std::vector<Event>> rows(num_agents());
  for (std::size_t a = 0; a < num_agents(); ++a) {
    for (std::size_t w : old_of_new) {
      Event row(old_of_new.size());
      (rows_[a][w] & keep).for_each([&](std::size_t v) { row.insert(new_of_old[v]); });
      rows[a].push_back(std::move(row));
    }
  }
  return from_rows(std::move(names), agents_, std::move(rows), StateNames::with_duplicates);
}

}  // namespace epistemic
