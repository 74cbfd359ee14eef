#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "epistemic/event.hpp"
#include "epistemic/kripke.hpp"
#include "epistemic/partition.hpp"
#include "epistemic/structure.hpp"

namespace epistemic {

/// Provenance of a counterfactual state: the duplicate of `base` for
/// `agent` with respect to `event`. `base` and `event` refer to the source
/// structure, not to the counterfactual one.
struct CounterfactualLabel {
  AgentId agent;
  StateId base;
  Event event;

  friend bool operator==(const CounterfactualLabel&, const CounterfactualLabel&) = default;
};

/// A counterfactual structure: the source states Ω (the "actual" states)
/// plus labelled duplicates Λ, with relations that never point into Λ.
///
/// Source state k corresponds to the k-th actual state, because both
/// structures index states in name order.
class CounterfactualStructure {
 public:
  /// Assembles and validates a structure built elsewhere (parsed from a
  /// document, or deliberately modified for auditing). Labelled states form
  /// Λ; the rest form Ω.
  static CounterfactualStructure from_parts(InformationStructure structure,
                                            std::map<StateId, CounterfactualLabel> labels,
                                            std::string origin_hash);

  const InformationStructure& structure() const { return structure_; }
  const Event& actual() const { return actual_; }
  const std::string& origin_hash() const { return origin_hash_; }
  std::size_t num_actual() const { return actual_states_.size(); }

  /// Label of an Ω′ state; empty for actual states.
  const std::optional<CounterfactualLabel>& label(StateId s) const { return labels_.at(index_of(s)); }
  /// Counterfactual states in index order.
  std::vector<StateId> counterfactual_states() const;

  /// The state labelled (agent, base, event), if any.
  std::optional<StateId> find(AgentId agent, StateId base, const Event& event) const;

  /// Source state -> Ω′ state.
  StateId lift(StateId source_state) const { return actual_states_.at(index_of(source_state)); }
  /// Source event -> Ω′ event.
  Event lift(const Event& source_event) const;
  /// Ω′ event -> source event of its actual members.
  Event project(const Event& event) const;

  /// Substructure on Ω. For a correctly built structure this equals the source.
  InformationStructure restriction() const { return structure_.restrict_to(actual_); }

  friend bool operator==(const CounterfactualStructure& a, const CounterfactualStructure& b) {
    return a.structure_ == b.structure_ && a.labels_ == b.labels_ && a.origin_hash_ == b.origin_hash_;
  }

 private:
  explicit CounterfactualStructure(InformationStructure structure) : structure_(std::move(structure)) {}

  InformationStructure structure_;
  Event actual_;
  std::vector<StateId> actual_states_;
  std::vector<std::optional<CounterfactualLabel>> labels_;
  std::map<std::tuple<AgentId, StateId, Event>, StateId> by_label_;
  std::string origin_hash_;
};

/// "cf:<agent>:<base>:<canonical event>".
std::string counterfactual_state_name(const InformationStructure& source, AgentId agent, StateId base,
                                      const Event& event);

/// Builds the counterfactual structure of a partitional structure.
///
/// For every agent i and every e in gamma(i) each source state w gets a
/// duplicate λ. Relations start as the source relations; then, for each agent
/// k and each λ = (i, w, e):
///   - k == i and w ∈ e: λ reaches every state of e;
///   - otherwise: λ reaches every state of I_k(w).
CounterfactualStructure build_counterfactual(const InformationStructure& source,
                                             const Limits& limits = {});

/// Looks up λ by its label; throws NotFoundError when there is none.
StateId counterfactual_state(const CounterfactualStructure& c, AgentId agent, StateId base,
                             const Event& event);
/// Name-based lookup against the source names; unknown names are NotFound.
StateId counterfactual_state(const CounterfactualStructure& c, std::string_view agent,
                             std::string_view base, std::string_view canonical_event);

struct CheckResult {
  std::string name;
  bool passed = true;
  /// Informational checks describe expected deviations and never fail a report.
  bool informational = false;
  std::size_t cases = 0;
  std::size_t failures = 0;
  /// First failing case (or, for informational checks, the notable instance).
  std::string witness;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult* find(std::string_view name) const;
};

struct VerifyOptions {
  /// Exhaustive event corpora (all subsets of Ω) are used up to this |Ω|.
  std::size_t exhaustive_state_cap = 8;
  /// Additional random subsets of Ω′ per event-quantified check.
  std::size_t random_events = 64;
  /// Random (e, f) pairs for axiom K.
  std::size_t random_pairs = 2000;
  /// Groups are enumerated exhaustively up to this many agents.
  std::size_t max_group_agents = 12;
  std::uint64_t seed = 0x5EED;
  Limits limits{};
};

/// Audits `c` against its source: construction rules plus the structural
/// propositions (seriality, transitivity, nesting of possibility sets,
/// components staying in Ω, beliefs ranging over gamma, every gamma member
/// realized, and the secret-ignorance biconditional). Throws InputError
/// when c's origin hash does not identify `source`.
VerificationReport verify_counterfactual(const InformationStructure& source,
                                         const CounterfactualStructure& c,
                                         const VerifyOptions& options = {});

// Individual checks, exposed for callers that bring their own event corpus.

/// For w, w' ∈ Ω and every e in `events` (over Ω′): i believes e at both w
/// and w' iff i believes e at the duplicate of w for b_i(w) ∪ b_i(w').
CheckResult check_secret_ignorance(const CounterfactualStructure& c, std::span<const Event> events);

/// Successors of every state stay in Ω and, for i ∈ G, the union of
/// possibility sets over the component equals the component, under the
/// given reading. Groups: all non-empty subsets of agents.
CheckResult check_component_closure(const CounterfactualStructure& c, Reachability reading,
                                    std::size_t max_group_agents = 12);

}  // namespace epistemic
