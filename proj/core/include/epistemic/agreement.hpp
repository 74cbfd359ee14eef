#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "epistemic/counterfactual.hpp"
#include "epistemic/decision.hpp"
#include "epistemic/event.hpp"
#include "epistemic/structure.hpp"

namespace epistemic {

enum class TheoremMode {
  /// Partitional structure, field-kind decision functions.
  theorem1,
  /// Counterfactual structure, gamma-kind decision functions.
  theorem2,
};

std::string_view to_string(TheoremMode mode);
TheoremMode parse_theorem_mode(std::string_view text);

/// One action per agent of a group, in group order.
struct ActionProfile {
  std::vector<std::pair<AgentId, Action>> assignments;

  bool is_constant() const;
  friend bool operator==(const ActionProfile&, const ActionProfile&) = default;
};

/// Intersection over the group of { w | delta_i(w) = x_i }. `deltas` must
/// contain an assignment for every agent of the group, total on `ambient`.
Event agreement_event(const InformationStructure& ambient, std::span<const ActionAssignment> deltas,
                      const Group& group, const ActionProfile& profile);

struct AgreementViolation {
  ActionProfile profile;
  /// Lowest state of the common-belief event.
  StateId witness;
  Event agreement_event;
  Event common_belief;
  /// Both events restricted to the actual states (equal to the above in
  /// theorem1 mode).
  Event agreement_event_actual;
  Event common_belief_actual;
};

struct AgreementVerdict {
  TheoremMode mode = TheoremMode::theorem2;
  Group group;
  std::size_t profiles_checked = 0;
  std::vector<AgreementViolation> violations;
  /// Sure-thing and like-mindedness failures of the family.
  ViolationList hypothesis_violations;
  bool hypotheses_met = true;
  bool passed = true;
};

struct AgreementOptions {
  /// Skip profiles whose agreement event is empty; their common belief is
  /// empty too, so this never changes the verdict.
  bool prune = true;
  /// Recompute every common belief with the iterative form and throw
  /// std::logic_error on disagreement.
  bool cross_check_iterative = false;
  FieldStpOptions field_stp{};
  Limits limits{};
};

/// Theorem-1 check on a partitional structure with field-kind functions.
AgreementVerdict check_agreement(const InformationStructure& s, const DecisionFamily& family, const Group& group,
                                 const AgreementOptions& options = {});

/// Theorem-2 check on a counterfactual structure with gamma-kind functions
/// (tables over the source states).
AgreementVerdict check_agreement(const CounterfactualStructure& c, const DecisionFamily& family, const Group& group,
                                 const AgreementOptions& options = {});

struct Relaxation {
  bool stp = false;
  bool like_minded = false;

  friend bool operator==(const Relaxation&, const Relaxation&) = default;
};

struct DisagreementWitness {
  TheoremMode mode;
  Relaxation relaxed;
  std::uint64_t family_index = 0;
  DecisionFamily family;
  Group group;
  ActionProfile profile;
  Event agreement_event;
  Event common_belief;
};

struct SearchOptions {
  TheoremMode mode = TheoremMode::theorem2;
  /// Defaults to all agents.
  std::optional<Group> group;
  /// Worker threads; the result is the same for every value.
  unsigned threads = 1;
  EnumerationOptions enumeration{};
};

struct SearchResult {
  std::optional<DisagreementWitness> witness;
  /// Families that were checked (all accepted families when none is found).
  std::uint64_t families_checked = 0;
};

/// Looks for a family satisfying every non-relaxed hypothesis whose agents
/// commonly believe a non-constant action profile. Returns the first such
/// family in enumeration order.
SearchResult search_disagreement(const InformationStructure& s, const std::vector<Action>& actions,
                                 Relaxation relax, const SearchOptions& options = {});

/// Same, over an existing counterfactual structure (theorem2 only).
SearchResult search_disagreement(const CounterfactualStructure& c, const std::vector<Action>& actions,
                                 Relaxation relax, const SearchOptions& options = {});

/// Re-runs check_agreement on the witness family and confirms that the
/// witness profile is reported with the same events.
bool replay(const InformationStructure& s, const DisagreementWitness& witness);

}  // namespace epistemic
