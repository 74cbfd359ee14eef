#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epistemic/event.hpp"

namespace epistemic {

/// Index of a state in its structure. States are indexed in lexicographic
/// order of their names.
enum class StateId : std::uint32_t {};
/// Index of an agent in its structure, in lexicographic order of names.
enum class AgentId : std::uint32_t {};

constexpr std::size_t index_of(StateId s) { return static_cast<std::size_t>(s); }
constexpr std::size_t index_of(AgentId a) { return static_cast<std::size_t>(a); }
constexpr StateId state_at(std::size_t i) { return static_cast<StateId>(i); }
constexpr AgentId agent_at(std::size_t i) { return static_cast<AgentId>(i); }

/// A non-empty set of agents, sorted and duplicate-free.
using Group = std::vector<AgentId>;

using NamePair = std::pair<std::string, std::string>;

/// Separator of canonical event strings; forbidden inside state names.
inline constexpr char kEventSeparator = '+';

bool is_valid_state_name(std::string_view name);
bool is_valid_agent_name(std::string_view name);

// Counterfactual duplicates are named "cf:<agent>:<base>:<canonical event>",
// so their names may contain the event separator. Structures holding such
// names can print canonical event strings but not parse them back.
inline constexpr std::string_view kDuplicatePrefix = "cf:";

enum class StateNames {
  plain,
  /// Also accepts separator-bearing names that start with kDuplicatePrefix.
  with_duplicates,
};

/// A finite multi-agent information structure: states, agents and one
/// reachability relation per agent. Immutable once constructed.
///
/// Relations are stored as successor rows, so `successors(i, w)` is the
/// possibility set of agent i at w.
class InformationStructure {
 public:
  /// Builds from names. States and agents may be given in any order; they are
  /// sorted. Every agent must have an entry in `relations` (possibly empty)
  /// and no other keys are allowed.
  InformationStructure(std::vector<std::string> states, std::vector<std::string> agents,
                       const std::map<std::string, std::vector<NamePair>>& relations,
                       StateNames names = StateNames::plain);

  /// Builds from already-sorted names and successor rows, rows[agent][state].
  static InformationStructure from_rows(std::vector<std::string> sorted_states,
                                        std::vector<std::string> sorted_agents,
                                        std::vector<std::vector<Event>> rows,
                                        StateNames names = StateNames::plain);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_agents() const { return agents_.size(); }

  const std::vector<std::string>& state_names() const { return states_; }
  const std::vector<std::string>& agent_names() const { return agents_; }
  const std::string& name(StateId s) const { return states_.at(index_of(s)); }
  const std::string& name(AgentId a) const { return agents_.at(index_of(a)); }

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<AgentId> find_agent(std::string_view name) const;
  /// Throws InputError for unknown names.
  StateId state(std::string_view name) const;
  AgentId agent(std::string_view name) const;

  /// Validated group from names; throws InputError on empty or unknown input.
  Group group(std::span<const std::string> names) const;
  Group group(std::initializer_list<std::string_view> names) const;
  /// All agents, in index order.
  Group all_agents() const;

  Event empty_event() const { return Event(num_states()); }
  Event all_states() const { return Event::full(num_states()); }
  Event event(std::span<const std::string> names) const;
  Event event(std::initializer_list<std::string_view> names) const;
  /// Parses a canonical event string ("w0+w1"); the empty string is the empty event.
  Event parse_event(std::string_view canonical) const;
  /// Sorted member names joined with '+'.
  std::string canonical(const Event& e) const;

  /// Throws InputError unless `e` ranges over this structure's states.
  void require_event(const Event& e) const;
  void require_state(StateId s) const;
  void require_agent(AgentId a) const;
  void require_group(const Group& g) const;

  const Event& successors(AgentId a, StateId s) const {
    return rows_[index_of(a)][index_of(s)];
  }
  const std::vector<Event>& relation(AgentId a) const { return rows_[index_of(a)]; }
  const std::vector<std::vector<Event>>& rows() const { return rows_; }

  /// Relation of `a` as sorted (from, to) name pairs.
  std::vector<NamePair> relation_pairs(AgentId a) const;

  /// Substructure induced by `keep`: the kept states and the relation pairs
  /// with both endpoints kept.
  InformationStructure restrict_to(const Event& keep) const;

  friend bool operator==(const InformationStructure&, const InformationStructure&) = default;

 private:
  InformationStructure() = default;
  void validate_names(StateNames rule) const;

  std::vector<std::string> states_;
  std::vector<std::string> agents_;
  std::vector<std::vector<Event>> rows_;
};

/// Orders events by their canonical strings within `s`.
struct CanonicalLess {
  const InformationStructure* structure;
  bool operator()(const Event& a, const Event& b) const {
    return structure->canonical(a) < structure->canonical(b);
  }
};

}  // namespace epistemic
