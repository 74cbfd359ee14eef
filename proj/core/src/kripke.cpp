#include "epistemic/kripke.hpp"

#include <stdexcept>
#include <string>

#include "epistemic/errors.hpp"

namespace epistemic {

Event possibility_set(const InformationStructure& s, AgentId i, StateId w) {
  s.require_agent(i);
  s.require_state(w);
  return s.successors(i, w);
}

Event belief(const InformationStructure& s, AgentId i, const Event& e) {
  s.require_agent(i);
  s.require_event(e);
  Event out(s.num_states());
  const auto& row = s.relation(i);
  for (std::size_t w = 0; w < row.size(); ++w)
    if (row[w].is_subset_of(e)) out.insert(w);
  return out;
}

Event mutual_belief(const InformationStructure& s, const Group& g, const Event& e) {
  s.require_group(g);
  s.require_event(e);
  Event out = s.all_states();
  for (AgentId i : g) out &= belief(s, i, e);
  return out;
}

IterativeCommonBelief common_belief_iterative_traced(const InformationStructure& s, const Group& g,
                                                     const Event& e) {
  s.require_group(g);
  s.require_event(e);
  const std::size_t bound = s.num_states();
  IterativeCommonBelief out{s.all_states(), 0};
  Event iterate = e;
  for (std::size_t m = 1; m <= bound; ++m) {
    Event next = mutual_belief(s, g, iterate);
    out.result &= next;
    out.iterations = m;
    if (next == iterate || out.result.empty()) break;
    iterate = std::move(next);
  }
  return out;
}

Event common_belief_iterative(const InformationStructure& s, const Group& g, const Event& e) {
  return common_belief_iterative_traced(s, g, e).result;
}

std::string_view to_string(Reachability r) {
  switch (r) {
    case Reachability::include_self:
      return "include-self";
    case Reachability::successors_only:
      return "successors-only";
  }
  return "?";
}

namespace {

Event reachable_from(const InformationStructure& s, const Group& g, std::size_t w) {
  Event seen(s.num_states());
  Event frontier(s.num_states());
  frontier.insert(w);
  while (!frontier.empty()) {
    Event next(s.num_states());
    frontier.for_each([&](std::size_t v) {
      for (AgentId i : g) next |= s.successors(i, state_at(v));
    });
    next -= seen;
    seen |= next;
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

Event component(const InformationStructure& s, const Group& g, StateId w, Reachability reading) {
  s.require_group(g);
  s.require_state(w);
  Event out = reachable_from(s, g, index_of(w));
  if (reading == Reachability::include_self) out.insert(index_of(w));
  return out;
}

Event common_belief_component(const InformationStructure& s, const Group& g, const Event& e) {
  s.require_group(g);
  s.require_event(e);
  return ReachabilityIndex(s, g).common_belief(e);
}

ReachabilityIndex::ReachabilityIndex(const InformationStructure& s, const Group& g) {
  s.require_group(g);
  closure_.reserve(s.num_states());
  for (std::size_t w = 0; w < s.num_states(); ++w) closure_.push_back(reachable_from(s, g, w));
}

Event ReachabilityIndex::component(StateId w, Reachability reading) const {
  Event out = closure_.at(index_of(w));
  if (reading == Reachability::include_self) out.insert(index_of(w));
  return out;
}

Event ReachabilityIndex::common_belief(const Event& e) const {
  if (e.universe_size() != closure_.size()) throw InputError("event over the wrong universe");
  Event out(closure_.size());
  for (std::size_t w = 0; w < closure_.size(); ++w)
    if (closure_[w].is_subset_of(e)) out.insert(w);
  return out;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::partitional:
      return "partitional";
    case Classification::belief:
      return "belief";
    case Classification::kd4:
      return "kd4";
    case Classification::other:
      return "other";
  }
  return "?";
}

PropertyReport relation_properties(const InformationStructure& s) {
  PropertyReport report;
  bool all_partitional = true;
  bool all_belief = true;
  bool all_kd4 = true;
  for (std::size_t a = 0; a < s.num_agents(); ++a) {
    const auto& row = s.relation(agent_at(a));
    AgentProperties p{true, true, true, true};
    for (std::size_t w = 0; w < row.size(); ++w) {
      const Event& succ = row[w];
      if (succ.empty()) p.serial = false;
      if (!succ.contains(w)) p.reflexive = false;
      succ.for_each([&](std::size_t v) {
        // transitive: every successor's successors are successors of w.
        if (!row[v].is_subset_of(succ)) p.transitive = false;
        // euclidean: every successor reaches all successors of w.
        if (!succ.is_subset_of(row[v])) p.euclidean = false;
      });
    }
    const bool partitional = p.reflexive && p.euclidean;
    if (partitional && !p.transitive)
      throw std::logic_error("reflexive euclidean relation that is not transitive");
    all_partitional = all_partitional && partitional;
    all_belief = all_belief && p.serial && p.transitive && p.euclidean;
    all_kd4 = all_kd4 && p.serial && p.transitive;
    report.agents.push_back(p);
  }
  if (all_partitional)
    report.classification = Classification::partitional;
  else if (all_belief)
    report.classification = Classification::belief;
  else if (all_kd4)
    report.classification = Classification::kd4;
  else
    report.classification = Classification::other;
  return report;
}

bool is_partitional(const InformationStructure& s) {
  return relation_properties(s).classification == Classification::partitional;
}

void require_partitional(const InformationStructure& s, std::string_view operation) {
  if (!is_partitional(s))
    throw PreconditionError(std::string(operation) + " requires a partitional structure");
}

std::optional<EuclideanCounterexample> find_euclidean_counterexample(const InformationStructure& s) {
  for (std::size_t a = 0; a < s.num_agents(); ++a) {
    const auto& row = s.relation(agent_at(a));
    for (std::size_t w = 0; w < row.size(); ++w) {
      for (std::size_t l = row[w].first(); l < row.size(); l = row[w].next(l + 1)) {
        Event missing = row[w] - row[l];
        if (!missing.empty())
          return EuclideanCounterexample{agent_at(a), state_at(w), state_at(l), state_at(missing.first())};
      }
    }
  }
  return std::nullopt;
}

std::string_view to_string(Axiom a) {
  switch (a) {
    case Axiom::K:
      return "K";
    case Axiom::D:
      return "D";
    case Axiom::T:
      return "T";
    case Axiom::Four:
      return "4";
    case Axiom::Five:
      return "5";
  }
  return "?";
}

Event axiom_failures(const InformationStructure& s, AgentId i, Axiom axiom, const Event& e,
                     const Event& f) {
  const Event be = belief(s, i, e);
  switch (axiom) {
    case Axiom::K:
      return (belief(s, i, ~e | f) & be) - belief(s, i, f);
    case Axiom::D:
      return be - ~belief(s, i, ~e);
    case Axiom::T:
      return be - e;
    case Axiom::Four:
      return be - belief(s, i, be);
    case Axiom::Five:
      return ~be - belief(s, i, ~be);
  }
  return s.empty_event();
}

std::optional<AxiomCounterexample> find_axiom_counterexample(const InformationStructure& s,
                                                             Axiom axiom) {
  std::vector<Event> candidates{s.empty_event(), s.all_states()};
  for (std::size_t a = 0; a < s.num_agents(); ++a) {
    for (const Event& succ : s.relation(agent_at(a))) {
      candidates.push_back(succ);
      candidates.push_back(~succ);
    }
  }
  const Event unused = s.empty_event();
  for (std::size_t a = 0; a < s.num_agents(); ++a) {
    for (const Event& e : candidates) {
      Event bad = axiom_failures(s, agent_at(a), axiom, e, unused);
      if (!bad.empty()) return AxiomCounterexample{agent_at(a), axiom, e, unused, state_at(bad.first())};
    }
  }
  return std::nullopt;
}

}  // namespace epistemic
