#include "epistemic/counterfactual.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "epistemic/errors.hpp"
#include "epistemic/serialization.hpp"

namespace epistemic {

// ---------------------------------------------------------------------------
// CounterfactualStructure

CounterfactualStructure CounterfactualStructure::from_parts(InformationStructure structure,
                                                            std::map<StateId, CounterfactualLabel> labels,
                                                            std::string origin_hash) {
  const std::size_t n = structure.num_states();
  CounterfactualStructure c(std::move(structure));
  c.origin_hash_ = std::move(origin_hash);
  c.labels_.assign(n, std::nullopt);
  c.actual_ = Event::full(n);
  for (auto& [state, label] : labels) {
    if (index_of(state) >= n) throw InputError("label attached to a state outside the structure");
    c.actual_.erase(index_of(state));
  }
  if (c.actual_.empty()) throw InputError("counterfactual structure has no actual states");
  c.actual_.for_each([&](std::size_t k) { c.actual_states_.push_back(state_at(k)); });

  const std::size_t omega = c.actual_states_.size();
  for (auto& [state, label] : labels) {
    if (index_of(label.agent) >= c.structure_.num_agents()) throw InputError("label names an unknown agent");
    if (index_of(label.base) >= omega) throw InputError("label base is not an actual state");
    if (label.event.universe_size() != omega) throw InputError("label event is not over the actual states");
    auto key = std::make_tuple(label.agent, label.base, label.event);
    if (!c.by_label_.emplace(key, state).second)
      throw InputError("duplicate counterfactual label on state '" + c.structure_.name(state) + "'");
    c.labels_[index_of(state)] = std::move(label);
  }
  const InformationStructure source = c.restriction();
  for (StateId w : c.actual_states_)
    if (!is_valid_state_name(c.structure_.name(w)))
      throw InputError("actual state '" + c.structure_.name(w) + "' has an invalid name");
  for (std::size_t k = 0; k < n; ++k) {
    const auto& label = c.labels_[k];
    if (!label) continue;
    const std::string expected = counterfactual_state_name(source, label->agent, label->base, label->event);
    if (c.structure_.name(state_at(k)) != expected)
      throw InputError("counterfactual state '" + c.structure_.name(state_at(k)) + "' should be named '" +
                       expected + "'");
  }
  return c;
}

std::vector<StateId> CounterfactualStructure::counterfactual_states() const {
  std::vector<StateId> out;
  (~actual_).for_each([&](std::size_t k) { out.push_back(state_at(k)); });
  return out;
}

std::optional<StateId> CounterfactualStructure::find(AgentId agent, StateId base, const Event& event) const {
  auto it = by_label_.find(std::make_tuple(agent, base, event));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

Event CounterfactualStructure::lift(const Event& source_event) const {
  if (source_event.universe_size() != actual_states_.size())
    throw InputError("event is not over the source states");
  Event out(structure_.num_states());
  source_event.for_each([&](std::size_t k) { out.insert(index_of(actual_states_[k])); });
  return out;
}

Event CounterfactualStructure::project(const Event& event) const {
  structure_.require_event(event);
  Event out(actual_states_.size());
  for (std::size_t k = 0; k < actual_states_.size(); ++k)
    if (event.contains(index_of(actual_states_[k]))) out.insert(k);
  return out;
}

// ---------------------------------------------------------------------------
// Construction

std::string counterfactual_state_name(const InformationStructure& source, AgentId agent, StateId base,
                                      const Event& event) {
  return "cf:" + source.name(agent) + ":" + source.name(base) + ":" + source.canonical(event);
}

CounterfactualStructure build_counterfactual(const InformationStructure& source, const Limits& limits) {
  require_partitional(source, "build_counterfactual");
  const std::size_t omega = source.num_states();
  const std::size_t agents = source.num_agents();

  struct Pending {
    std::string name;
    CounterfactualLabel label;
  };
  std::vector<Pending> duplicates;
  for (std::size_t i = 0; i < agents; ++i) {
    for (const Event& e : gamma(source, agent_at(i), limits)) {
      for (std::size_t w = 0; w < omega; ++w) {
        duplicates.push_back(
            {counterfactual_state_name(source, agent_at(i), state_at(w), e), {agent_at(i), state_at(w), e}});
      }
    }
  }

  std::vector<std::string> names = source.state_names();
  for (const auto& d : duplicates) names.push_back(d.name);
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end())
    throw InputError("counterfactual state names collide with existing state names");

  InformationStructure skeleton = InformationStructure::from_rows(
      names, source.agent_names(),
      std::vector<std::vector<Event>>(agents, std::vector<Event>(names.size(), Event(names.size()))),
      StateNames::with_duplicates);

  std::vector<std::size_t> lifted_state(omega);
  for (std::size_t w = 0; w < omega; ++w)
    lifted_state[w] = index_of(skeleton.state(source.name(state_at(w))));
  auto lift = [&](const Event& e) {
    Event out(names.size());
    e.for_each([&](std::size_t k) { out.insert(lifted_state[k]); });
    return out;
  };

  std::vector<std::vector<Event>> rows(agents, std::vector<Event>(names.size(), Event(names.size())));
  for (std::size_t k = 0; k < agents; ++k) {
    for (std::size_t w = 0; w < omega; ++w)
      rows[k][lifted_state[w]] = lift(source.successors(agent_at(k), state_at(w)));
  }

  std::map<StateId, CounterfactualLabel> labels;
  for (auto& d : duplicates) {
    const std::size_t lambda = index_of(skeleton.state(d.name));
    const std::size_t i = index_of(d.label.agent);
    const StateId base = d.label.base;
    const bool inside = d.label.event.contains(index_of(base));
    for (std::size_t k = 0; k < agents; ++k) {
      // Only the constructing agent, at a duplicate of a state inside e, is
      // widened to e; everyone else keeps the information of the base state.
      rows[k][lambda] = k == i && inside ? lift(d.label.event) : lift(source.successors(agent_at(k), base));
    }
    labels.emplace(state_at(lambda), std::move(d.label));
  }

  return CounterfactualStructure::from_parts(
      InformationStructure::from_rows(std::move(names), source.agent_names(), std::move(rows),
                                      StateNames::with_duplicates),
      std::move(labels), structure_hash(source));
}

StateId counterfactual_state(const CounterfactualStructure& c, AgentId agent, StateId base, const Event& event) {
  if (auto s = c.find(agent, base, event)) return *s;
  throw NotFoundError("no counterfactual state with that label");
}

StateId counterfactual_state(const CounterfactualStructure& c, std::string_view agent, std::string_view base,
                             std::string_view canonical_event) {
  const InformationStructure source = c.restriction();
  auto a = source.find_agent(agent);
  auto b = source.find_state(base);
  if (!a || !b)
    throw NotFoundError("no counterfactual state for (" + std::string(agent) + ", " + std::string(base) + ")");
  Event e;
  try {
    e = source.parse_event(canonical_event);
  } catch (const InputError&) {
    throw NotFoundError("event '" + std::string(canonical_event) + "' is not over the actual states");
  }
  return counterfactual_state(c, *a, *b, e);
}

// ---------------------------------------------------------------------------
// Verification

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& r) { return r.informational || r.passed; });
}

const CheckResult* VerificationReport::find(std::string_view name) const {
  for (const auto& r : checks)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

std::string listed(const InformationStructure& s, const Event& e) {
  std::string out = "{";
  e.for_each([&](std::size_t k) {
    if (out.size() > 1) out += ", ";
    out += s.name(state_at(k));
  });
  return out + "}";
}

class Check {
 public:
  explicit Check(std::string name, bool informational = false) {
    result_.name = std::move(name);
    result_.informational = informational;
  }
  /// Records one case; keeps the first failing witness.
  template <typename WitnessFn>
  void expect(bool ok, WitnessFn&& witness) {
    ++result_.cases;
    if (ok) return;
    ++result_.failures;
    if (result_.passed) result_.witness = witness();
    result_.passed = false;
  }
  void note(std::string witness) {
    if (result_.witness.empty()) result_.witness = std::move(witness);
  }
  CheckResult take() { return std::move(result_); }

 private:
  CheckResult result_;
};

std::vector<Group> all_groups(const InformationStructure& s, std::size_t max_group_agents) {
  const std::size_t n = s.num_agents();
  std::vector<Group> groups;
  if (n <= max_group_agents) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      Group g;
      for (std::size_t a = 0; a < n; ++a)
        if ((mask >> a) & 1U) g.push_back(agent_at(a));
      groups.push_back(std::move(g));
    }
  } else {
    for (std::size_t a = 0; a < n; ++a) groups.push_back({agent_at(a)});
    groups.push_back(s.all_agents());
  }
  return groups;
}

Event random_event(std::size_t universe, std::mt19937_64& rng) {
  Event e(universe);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t k = 0; k < universe; ++k)
    if (coin(rng)) e.insert(k);
  return e;
}

/// All subsets of Ω (when small enough) lifted to Ω′, then random Ω′ events.
std::vector<Event> event_corpus(const CounterfactualStructure& c, const VerifyOptions& options,
                                std::mt19937_64& rng) {
  std::vector<Event> corpus;
  const std::size_t omega = c.num_actual();
  if (omega <= options.exhaustive_state_cap) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << omega); ++mask)
      corpus.push_back(c.lift(Event::from_mask(omega, mask)));
  }
  for (std::size_t k = 0; k < options.random_events; ++k)
    corpus.push_back(random_event(c.structure().num_states(), rng));
  return corpus;
}

std::string describe_label(const CounterfactualStructure& c, const InformationStructure& source, StateId s) {
  const auto& label = c.label(s);
  if (!label) return c.structure().name(s);
  return c.structure().name(s) + " (agent " + source.name(label->agent) + ", base " + source.name(label->base) +
         ", event " + source.canonical(label->event) + ")";
}

}  // namespace

CheckResult check_secret_ignorance(const CounterfactualStructure& c, std::span<const Event> events) {
  const InformationStructure& s = c.structure();
  Check check("secret-ignorance");
  const std::size_t omega = c.num_actual();
  for (std::size_t i = 0; i < s.num_agents(); ++i) {
    const AgentId agent = agent_at(i);
    for (std::size_t w = 0; w < omega; ++w) {
      for (std::size_t v = 0; v < omega; ++v) {
        const Event& bw = s.successors(agent, c.lift(state_at(w)));
        const Event& bv = s.successors(agent, c.lift(state_at(v)));
        const Event joint = c.project(bw | bv);
        auto lambda = c.find(agent, state_at(w), joint);
        if (!lambda) {
          check.expect(false, [&] {
            return "no duplicate of " + s.name(c.lift(state_at(w))) + " for agent " + s.name(agent) +
                   " with respect to the union of its possibility sets at " + s.name(c.lift(state_at(w))) +
                   " and " + s.name(c.lift(state_at(v)));
          });
          continue;
        }
        const Event& bl = s.successors(agent, *lambda);
        for (const Event& e : events) {
          s.require_event(e);
          const bool both = bw.is_subset_of(e) && bv.is_subset_of(e);
          check.expect(both == bl.is_subset_of(e), [&] {
            return "agent " + s.name(agent) + ", states " + s.name(c.lift(state_at(w))) + "/" +
                   s.name(c.lift(state_at(v))) + ", duplicate " + s.name(*lambda) + ", event " + listed(s, e);
          });
        }
      }
    }
  }
  return check.take();
}

CheckResult check_component_closure(const CounterfactualStructure& c, Reachability reading,
                                    std::size_t max_group_agents) {
  const InformationStructure& s = c.structure();
  Check check(std::string("component-closure/") + std::string(to_string(reading)),
              reading == Reachability::include_self);
  for (const Group& g : all_groups(s, max_group_agents)) {
    ReachabilityIndex index(s, g);
    for (std::size_t w = 0; w < s.num_states(); ++w) {
      const Event comp = index.component(state_at(w), reading);
      Event others = comp;
      others.erase(w);
      check.expect(others.is_subset_of(c.actual()), [&] {
        return "component of " + s.name(state_at(w)) + " leaves the actual states";
      });
      for (AgentId i : g) {
        Event united(s.num_states());
        comp.for_each([&](std::size_t v) { united |= s.successors(i, state_at(v)); });
        check.expect(united == comp, [&] {
          return "agent " + s.name(i) + ", state " + s.name(state_at(w)) + ": union of possibility sets " +
                 listed(s, united) + " differs from component " + listed(s, comp);
        });
      }
    }
  }
  return check.take();
}

VerificationReport verify_counterfactual(const InformationStructure& source, const CounterfactualStructure& c,
                                         const VerifyOptions& options) {
  if (c.origin_hash() != structure_hash(source))
    throw InputError("counterfactual structure was not built from the given source (origin hash mismatch)");

  const InformationStructure& s = c.structure();
  const std::size_t omega = source.num_states();
  const std::size_t agents = source.num_agents();
  VerificationReport report;
  std::mt19937_64 rng(options.seed);

  if (s.agent_names() != source.agent_names()) throw InputError("agent sets differ");
  if (c.num_actual() != omega) throw InputError("actual state count differs from the source");

  {
    Check check("restriction");
    InformationStructure restricted = c.restriction();
    check.expect(restricted == source, [] { return std::string("substructure on actual states differs from source"); });
    report.checks.push_back(check.take());
  }

  std::vector<GammaSet> gammas;
  std::vector<std::set<Event>> gamma_sets;
  for (std::size_t i = 0; i < agents; ++i) {
    gammas.push_back(gamma(source, agent_at(i), options.limits));
    gamma_sets.emplace_back(gammas.back().begin(), gammas.back().end());
  }

  {
    Check check("labels");
    std::size_t expected = 0;
    for (std::size_t i = 0; i < agents; ++i) {
      expected += gammas[i].size() * omega;
      for (const Event& e : gammas[i]) {
        for (std::size_t w = 0; w < omega; ++w) {
          check.expect(c.find(agent_at(i), state_at(w), e).has_value(), [&] {
            return "missing duplicate of " + source.name(state_at(w)) + " for agent " + source.name(agent_at(i)) +
                   " and event " + listed(source, e);
          });
        }
      }
    }
    const auto lambdas = c.counterfactual_states();
    for (StateId l : lambdas) {
      const auto& label = *c.label(l);
      check.expect(gamma_sets[index_of(label.agent)].contains(label.event),
                   [&] { return describe_label(c, source, l) + " has an event outside gamma"; });
    }
    check.expect(lambdas.size() == expected, [&] {
      return std::to_string(lambdas.size()) + " counterfactual states, expected " + std::to_string(expected);
    });
    report.checks.push_back(check.take());
  }

  {
    Check check("targets-in-actual");
    for (std::size_t i = 0; i < agents; ++i)
      for (std::size_t w = 0; w < s.num_states(); ++w)
        check.expect(s.successors(agent_at(i), state_at(w)).is_subset_of(c.actual()), [&] {
          return "agent " + s.name(agent_at(i)) + " at " + s.name(state_at(w)) + " reaches a counterfactual state";
        });
    report.checks.push_back(check.take());
  }

  {
    Check check("construction-rules");
    for (StateId l : c.counterfactual_states()) {
      const auto& label = *c.label(l);
      for (std::size_t k = 0; k < agents; ++k) {
        const AgentId agent = agent_at(k);
        const bool own = agent == label.agent;
        const bool inside = label.event.contains(index_of(label.base));
        const Event expected =
            own && inside ? c.lift(label.event) : c.lift(source.successors(agent, label.base));
        check.expect(s.successors(agent, l) == expected, [&] {
          return "agent " + s.name(agent) + " at " + describe_label(c, source, l) + " reaches " +
                 listed(s, s.successors(agent, l)) + ", expected " + listed(s, expected);
        });
      }
    }
    report.checks.push_back(check.take());
  }

  const PropertyReport props = relation_properties(s);
  {
    Check serial("serial");
    Check transitive("transitive");
    for (std::size_t i = 0; i < agents; ++i) {
      const auto& row = s.relation(agent_at(i));
      for (std::size_t w = 0; w < row.size(); ++w) {
        serial.expect(!row[w].empty(), [&] {
          return "agent " + s.name(agent_at(i)) + " has no successor at " + s.name(state_at(w));
        });
        row[w].for_each([&](std::size_t v) {
          transitive.expect(row[v].is_subset_of(row[w]), [&] {
            return "agent " + s.name(agent_at(i)) + ": " + s.name(state_at(w)) + " -> " + s.name(state_at(v)) +
                   " but successors of " + s.name(state_at(v)) + " are not all successors of " + s.name(state_at(w));
          });
        });
      }
    }
    report.checks.push_back(serial.take());
    report.checks.push_back(transitive.take());
  }

  {
    Check check("not-euclidean", true);
    auto ce = find_euclidean_counterexample(s);
    check.expect(ce.has_value(), [] { return std::string("relations are euclidean"); });
    if (ce)
      check.note("agent " + s.name(ce->agent) + ": " + s.name(ce->from) + " reaches " + s.name(ce->left) + " and " +
                 s.name(ce->right) + " but " + s.name(ce->left) + " does not reach " + s.name(ce->right));
    CheckResult r = check.take();
    r.witness += " [classification " + std::string(to_string(props.classification)) + "]";
    report.checks.push_back(std::move(r));
  }

  {
    Check nested("possibility-sets-nested");
    Check actual("actual-equals-cell");
    for (std::size_t i = 0; i < agents; ++i) {
      const AgentId agent = agent_at(i);
      const auto& row = s.relation(agent);
      for (std::size_t w = 0; w < row.size(); ++w) {
        nested.expect(!row[w].empty(), [&] { return "empty possibility set at " + s.name(state_at(w)); });
        row[w].for_each([&](std::size_t v) {
          nested.expect(row[v].is_subset_of(row[w]), [&] {
            return "agent " + s.name(agent) + ": " + s.name(state_at(v)) + " is possible at " + s.name(state_at(w)) +
                   " but its possibility set is not contained in that of " + s.name(state_at(w));
          });
        });
      }
      for (std::size_t w = 0; w < omega; ++w) {
        const Event expected = c.lift(source.successors(agent, state_at(w)));
        actual.expect(row[index_of(c.lift(state_at(w)))] == expected, [&] {
          return "agent " + s.name(agent) + " at actual state " + source.name(state_at(w)) +
                 " does not see its equivalence class";
        });
      }
    }
    report.checks.push_back(nested.take());
    report.checks.push_back(actual.take());
  }

  report.checks.push_back(check_component_closure(c, Reachability::successors_only, options.max_group_agents));
  {
    CheckResult r = check_component_closure(c, Reachability::include_self, options.max_group_agents);
    report.checks.push_back(std::move(r));
  }

  {
    Check check("beliefs-in-gamma");
    for (std::size_t i = 0; i < agents; ++i)
      for (std::size_t w = 0; w < s.num_states(); ++w) {
        const Event& b = s.successors(agent_at(i), state_at(w));
        check.expect(b.is_subset_of(c.actual()) && gamma_sets[i].contains(c.project(b)), [&] {
          return "agent " + s.name(agent_at(i)) + " at " + s.name(state_at(w)) + " has possibility set " +
                 listed(s, b) + " outside gamma";
        });
      }
    report.checks.push_back(check.take());
  }

  {
    Check check("gamma-realized");
    for (std::size_t i = 0; i < agents; ++i)
      for (const Event& e : gammas[i]) {
        const auto lambda = c.find(agent_at(i), state_at(e.first()), e);
        check.expect(lambda && s.successors(agent_at(i), *lambda) == c.lift(e), [&] {
          return "no state where agent " + source.name(agent_at(i)) + " has possibility set " + listed(source, e);
        });
      }
    report.checks.push_back(check.take());
  }

  const std::vector<Event> corpus = event_corpus(c, options, rng);
  report.checks.push_back(check_secret_ignorance(c, corpus));

  {
    // Existence form over arbitrary pairs of Ω′: some duplicate (base in Ω)
    // has exactly the union of the two possibility sets as its own.
    Check check("secret-ignorance-existential", true);
    for (std::size_t i = 0; i < agents; ++i) {
      const AgentId agent = agent_at(i);
      for (std::size_t w = 0; w < s.num_states(); ++w)
        for (std::size_t v = w; v < s.num_states(); ++v) {
          const Event joint = s.successors(agent, state_at(w)) | s.successors(agent, state_at(v));
          const Event projected = c.project(joint);
          bool found = false;
          for (std::size_t base = 0; base < omega && !found; ++base) {
            auto l = c.find(agent, state_at(base), projected);
            found = l && s.successors(agent, *l) == joint;
          }
          check.expect(found, [&] {
            return "agent " + s.name(agent) + ", states " + s.name(state_at(w)) + "/" + s.name(state_at(v));
          });
        }
    }
    report.checks.push_back(check.take());
  }

  {
    Check k("axiom-K");
    Check d("axiom-D");
    Check four("axiom-4");
    for (std::size_t i = 0; i < agents; ++i) {
      const AgentId agent = agent_at(i);
      for (const Event& e : corpus) {
        Event bad = axiom_failures(s, agent, Axiom::D, e, e);
        d.expect(bad.empty(), [&] { return "agent " + s.name(agent) + ", event " + listed(s, e); });
        bad = axiom_failures(s, agent, Axiom::Four, e, e);
        four.expect(bad.empty(), [&] { return "agent " + s.name(agent) + ", event " + listed(s, e); });
      }
      std::uniform_int_distribution<std::size_t> pick(0, corpus.size() - 1);
      for (std::size_t p = 0; p < options.random_pairs; ++p) {
        const Event& e = corpus[pick(rng)];
        const Event& f = corpus[pick(rng)];
        Event bad = axiom_failures(s, agent, Axiom::K, e, f);
        k.expect(bad.empty(), [&] {
          return "agent " + s.name(agent) + ", events " + listed(s, e) + ", " + listed(s, f);
        });
      }
    }
    report.checks.push_back(k.take());
    report.checks.push_back(d.take());
    report.checks.push_back(four.take());
  }

  for (Axiom axiom : {Axiom::T, Axiom::Five}) {
    Check check(std::string("axiom-") + std::string(to_string(axiom)) + "-fails", true);
    auto ce = find_axiom_counterexample(s, axiom);
    check.expect(ce.has_value(), [&] { return "axiom " + std::string(to_string(axiom)) + " holds on all candidates"; });
    if (ce)
      check.note("agent " + s.name(ce->agent) + ", event " + listed(s, ce->e) + ", state " + s.name(ce->state));
    report.checks.push_back(check.take());
  }

  return report;
}

}  // namespace epistemic
