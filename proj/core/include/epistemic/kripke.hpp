#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "epistemic/event.hpp"
#include "epistemic/structure.hpp"

namespace epistemic {

/// b_i(w): the states agent i considers possible at w.
Event possibility_set(const InformationStructure& s, AgentId i, StateId w);

/// B_i(e) = { w | b_i(w) ⊆ e }.
Event belief(const InformationStructure& s, AgentId i, const Event& e);

/// M_G(e): intersection of the beliefs of every agent in G.
Event mutual_belief(const InformationStructure& s, const Group& g, const Event& e);

struct IterativeCommonBelief {
  Event result;
  /// Number of M_G applications performed before the running intersection
  /// was known to be final. Never exceeds max(1, |states|).
  std::size_t iterations = 0;
};

/// Common belief as the intersection of the iterates M_G^m(e), m >= 1.
///
/// On structures that are not reflexive the iterates need not decrease (they
/// can cycle), so the running intersection is kept. It is final after |states|
/// iterates: every state reachable from w is reachable by a walk of length
/// 1..|states|. Stops early once an iterate repeats its predecessor or the
/// running intersection is empty.
IterativeCommonBelief common_belief_iterative_traced(const InformationStructure& s, const Group& g,
                                                     const Event& e);
Event common_belief_iterative(const InformationStructure& s, const Group& g, const Event& e);

/// How a component treats the zero-length chain.
enum class Reachability {
  /// w ∈ T_G(w) always (chains of length n >= 0).
  include_self,
  /// Only states reached by at least one relation step (n >= 1).
  successors_only,
};

std::string_view to_string(Reachability r);

/// T_G(w): states reachable from w by chains of G-relation steps.
Event component(const InformationStructure& s, const Group& g, StateId w,
                Reachability reading = Reachability::include_self);

/// Common belief as { w | T_G(w) ⊆ e }, using the successors-only component.
/// This is the reading under which it coincides with the iterative form on
/// every structure, reflexive or not.
Event common_belief_component(const InformationStructure& s, const Group& g, const Event& e);

/// Successors-only reachability closure for one group, computed once and
/// reused across many common-belief queries.
class ReachabilityIndex {
 public:
  ReachabilityIndex(const InformationStructure& s, const Group& g);

  /// States reachable from w in one or more steps.
  const Event& reachable(StateId w) const { return closure_[index_of(w)]; }
  Event component(StateId w, Reachability reading) const;
  Event common_belief(const Event& e) const;

 private:
  std::vector<Event> closure_;
};

struct AgentProperties {
  bool serial = false;
  bool reflexive = false;
  bool transitive = false;
  bool euclidean = false;
};

enum class Classification { partitional, belief, kd4, other };

std::string_view to_string(Classification c);

struct PropertyReport {
  std::vector<AgentProperties> agents;  // indexed by AgentId
  Classification classification = Classification::other;
};

PropertyReport relation_properties(const InformationStructure& s);

bool is_partitional(const InformationStructure& s);

/// Throws PreconditionError unless `s` is partitional.
void require_partitional(const InformationStructure& s, std::string_view operation);

/// Witness that R_i is not euclidean: from reaches both `left` and `right`
/// but `left` does not reach `right`.
struct EuclideanCounterexample {
  AgentId agent;
  StateId from;
  StateId left;
  StateId right;
};

std::optional<EuclideanCounterexample> find_euclidean_counterexample(const InformationStructure& s);

// Modal axioms for the belief operator of a single agent.
enum class Axiom {
  K,     // B(¬e ∪ f) ∩ B(e) ⊆ B(f)
  D,     // B(e) ⊆ ¬B(¬e)
  T,     // B(e) ⊆ e
  Four,  // B(e) ⊆ B(B(e))
  Five,  // ¬B(e) ⊆ B(¬B(e))
};

inline constexpr std::array<Axiom, 5> kAllAxioms = {Axiom::K, Axiom::D, Axiom::T, Axiom::Four,
                                                    Axiom::Five};

std::string_view to_string(Axiom a);

/// States where the axiom's left-hand side holds but its right-hand side does
/// not. `f` is only read by K.
Event axiom_failures(const InformationStructure& s, AgentId i, Axiom axiom, const Event& e,
                     const Event& f);

struct AxiomCounterexample {
  AgentId agent;
  Axiom axiom;
  Event e;
  Event f;
  StateId state;
};

/// Searches a counterexample to a single-event axiom (D, T, Four, Five)
/// among candidate events built from possibility sets and their complements.
std::optional<AxiomCounterexample> find_axiom_counterexample(const InformationStructure& s,
                                                             Axiom axiom);

}  // namespace epistemic
