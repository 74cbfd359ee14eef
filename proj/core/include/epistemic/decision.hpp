#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epistemic/counterfactual.hpp"
#include "epistemic/event.hpp"
#include "epistemic/partition.hpp"
#include "epistemic/structure.hpp"

namespace epistemic {

using Action = std::string;

/// Sorted, duplicate-free action names. Throws InputError on an empty set or
/// an invalid name.
std::vector<Action> make_action_set(std::vector<Action> actions);

/// Actions named "0", "1", ..., "count - 1".
std::vector<Action> numbered_actions(std::size_t count);

enum class DomainKind {
  /// Domain is the agent's union closure (counterfactual setting).
  gamma,
  /// Domain is a field of events shared by all agents (partitional setting).
  field,
};

std::string_view to_string(DomainKind kind);
DomainKind parse_domain_kind(std::string_view text);

/// Maps events of the source structure to actions.
struct DecisionFunction {
  AgentId agent;
  DomainKind kind = DomainKind::gamma;
  std::map<Event, Action> table;

  const Action* find(const Event& e) const {
    auto it = table.find(e);
    return it == table.end() ? nullptr : &it->second;
  }
  std::vector<Event> domain() const;

  friend bool operator==(const DecisionFunction&, const DecisionFunction&) = default;
};

/// One decision function per agent, ordered by agent.
using DecisionFamily = std::vector<DecisionFunction>;

/// Throws InputError unless `family` has exactly one function per agent of
/// `s`, all of the same kind, and each gamma-kind table covers exactly gamma.
void validate_family(const InformationStructure& s, const DecisionFamily& family, const Limits& limits = {});

/// The action an agent takes at each state: values[w] = table(b_i(w)).
struct ActionAssignment {
  AgentId agent;
  std::vector<Action> values;  // indexed by state of the ambient structure
};

/// Action function over `s` itself; tables must be over the states of `s`.
/// Throws DomainError naming the first possibility set outside the table.
ActionAssignment derive_action_function(const InformationStructure& s, const DecisionFunction& d);

/// Action function over the counterfactual states as well. Possibility sets
/// are projected onto the source states before the table lookup.
ActionAssignment derive_action_function(const CounterfactualStructure& c, const DecisionFunction& d);

enum class ViolationKind { stp, like_minded };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  AgentId agent;
  /// The other agent of a like-mindedness violation.
  std::optional<AgentId> other;
  /// stp: the disjoint events sharing an action; like_minded: the shared event.
  std::vector<Event> witnesses;
  /// stp: the union; like_minded: the shared event.
  Event target;
  Action expected;
  Action actual;
};

struct ViolationList {
  std::vector<Violation> entries;
  /// True when the families of disjoint events were sampled rather than
  /// enumerated exhaustively.
  bool sampled = false;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

/// Sure-thing check over unions of the agent's cells: whenever every cell of
/// a non-empty set of cells maps to x, the union maps to x.
ViolationList check_stp_gamma(const InformationStructure& s, const DecisionFunction& d,
                              const Limits& limits = {});

struct FieldStpOptions {
  /// Disjoint families are enumerated exhaustively when |states| <= this cap.
  std::size_t exhaustive_state_cap = 6;
  /// Random disjoint families drawn per action beyond the cap.
  std::size_t samples = 20000;
  std::uint64_t seed = 0xF1E1D;
};

/// Sure-thing check over a field: for every set of at least two pairwise
/// disjoint events of the field that share action x and whose union is also
/// in the field, the union maps to x. Overlapping events never constrain.
ViolationList check_stp_field(std::span<const Event> field, const DecisionFunction& d,
                              const FieldStpOptions& options = {});

/// gamma kind: agents agree on every event both can decide on.
/// field kind: tables are identical. Mixed kinds are an InputError.
ViolationList check_like_minded(const InformationStructure& s, const DecisionFamily& family);

/// Values forced by the sure-thing principle given actions on the cells:
/// every union of same-action cells gets that action. Throws DomainError
/// when such a union is missing from `domain`.
std::map<Event, Action> complete_with_stp(const InformationStructure& s, const Partition& cells,
                                          std::span<const Action> cell_actions, std::span<const Event> domain);

/// All non-empty subsets of the states, in canonical order.
std::vector<Event> power_set_field(const InformationStructure& s);

struct ProfileConstraints {
  bool stp = false;
  bool like_minded = false;
};

struct EnumerationOptions {
  DomainKind kind = DomainKind::gamma;
  /// Field for field-kind enumeration; empty means power_set_field.
  std::vector<Event> field;
  std::uint64_t max_tables_per_agent = std::uint64_t{1} << 20;
  std::uint64_t max_families = std::uint64_t{1} << 26;
  Limits limits{};
};

/// Deterministic stream of decision families over an action set, restricted
/// to the requested constraints.
///
/// Families are ordered lexicographically by (agent name, canonical event,
/// action name). Each family is addressed by an index in [0, index_space());
/// indices rejected by a cross-agent constraint yield no family, which lets
/// consumers split the index space across threads.
class FamilyEnumerator {
 public:
  FamilyEnumerator(const InformationStructure& s, std::vector<Action> actions, ProfileConstraints constraints,
                   EnumerationOptions options = {});

  std::uint64_t index_space() const { return index_space_; }
  std::optional<DecisionFamily> at(std::uint64_t index) const;
  /// Next accepted family in order, or nullopt at the end.
  std::optional<DecisionFamily> next();
  void reset() { cursor_ = 0; }

  const std::vector<Action>& actions() const { return actions_; }
  const std::vector<Event>& domain(AgentId a) const { return domains_.at(index_of(a)); }
  /// Number of accepted tables for one agent.
  std::size_t tables_for(AgentId a) const { return tables_.at(index_of(a)).size(); }

 private:
  using Table = std::vector<std::uint32_t>;  // action index per domain event

  bool accepts(const std::vector<const Table*>& chosen) const;
  DecisionFamily materialize(const std::vector<const Table*>& chosen) const;

  const InformationStructure* structure_;
  std::vector<Action> actions_;
  ProfileConstraints constraints_;
  DomainKind kind_;
  std::vector<std::vector<Event>> domains_;
  std::vector<std::vector<Table>> tables_;
  /// field kind with like-mindedness: every agent uses the same table.
  bool diagonal_ = false;
  /// gamma kind with like-mindedness: (agent i, position, agent j, position)
  /// of events shared by two domains.
  struct SharedEvent {
    std::size_t agent_i, pos_i, agent_j, pos_j;
  };
  std::vector<SharedEvent> shared_;
  std::uint64_t index_space_ = 0;
  std::uint64_t cursor_ = 0;
};

FamilyEnumerator enumerate_decision_profiles(const InformationStructure& s, std::vector<Action> actions,
                                             ProfileConstraints constraints, EnumerationOptions options = {});

}  // namespace epistemic
