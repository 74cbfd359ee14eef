#include "epistemic/agreement.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "epistemic/errors.hpp"
#include "epistemic/kripke.hpp"

namespace epistemic {

std::string_view to_string(TheoremMode mode) { return mode == TheoremMode::theorem1 ? "theorem1" : "theorem2"; }

TheoremMode parse_theorem_mode(std::string_view text) {
  if (text == "theorem1") return TheoremMode::theorem1;
  if (text == "theorem2") return TheoremMode::theorem2;
  throw InputError("unknown theorem mode '" + std::string(text) + "'");
}

bool ActionProfile::is_constant() const {
  return std::all_of(assignments.begin(), assignments.end(),
                     [&](const auto& a) { return a.second == assignments.front().second; });
}

namespace {

const ActionAssignment& assignment_for(std::span<const ActionAssignment> deltas, AgentId agent) {
  for (const auto& d : deltas)
    if (d.agent == agent) return d;
  throw InputError("no action assignment for an agent of the group");
}

}  // namespace

Event agreement_event(const InformationStructure& ambient, std::span<const ActionAssignment> deltas,
                      const Group& group, const ActionProfile& profile) {
  ambient.require_group(group);
  if (profile.assignments.size() != group.size()) throw InputError("profile does not match the group");
  Event out = ambient.all_states();
  for (std::size_t k = 0; k < group.size(); ++k) {
    if (profile.assignments[k].first != group[k]) throw InputError("profile does not match the group");
    const ActionAssignment& delta = assignment_for(deltas, group[k]);
    if (delta.values.size() != ambient.num_states()) throw InputError("action assignment is not total");
    for (std::size_t w = 0; w < ambient.num_states(); ++w)
      if (delta.values[w] != profile.assignments[k].second) out.erase(w);
  }
  return out;
}

namespace {

struct Setting {
  const InformationStructure& ambient;
  /// Maps an ambient event to the actual-state event reported in verdicts.
  std::function<Event(const Event&)> to_actual;
};

void enumerate_profiles(const Group& group, const std::vector<std::vector<Action>>& choices, std::size_t k,
                        ActionProfile& current, std::vector<ActionProfile>& out) {
  if (k == group.size()) {
    out.push_back(current);
    return;
  }
  for (const auto& a : choices[k]) {
    current.assignments.emplace_back(group[k], a);
    enumerate_profiles(group, choices, k + 1, current, out);
    current.assignments.pop_back();
  }
}

AgreementVerdict evaluate(const Setting& setting, TheoremMode mode, const DecisionFamily& family,
                          std::span<const ActionAssignment> deltas, const Group& group,
                          const AgreementOptions& options) {
  const InformationStructure& s = setting.ambient;
  AgreementVerdict verdict;
  verdict.mode = mode;
  verdict.group = group;

  std::vector<ActionProfile> profiles;
  if (options.prune) {
    std::set<std::vector<Action>> seen;
    for (std::size_t w = 0; w < s.num_states(); ++w) {
      std::vector<Action> tuple;
      for (AgentId a : group) tuple.push_back(assignment_for(deltas, a).values[w]);
      seen.insert(std::move(tuple));
    }
    for (const auto& tuple : seen) {
      ActionProfile p;
      for (std::size_t k = 0; k < group.size(); ++k) p.assignments.emplace_back(group[k], tuple[k]);
      profiles.push_back(std::move(p));
    }
  } else {
    std::vector<std::vector<Action>> choices;
    for (AgentId a : group) {
      std::set<Action> used;
      for (const auto& d : family)
        if (d.agent == a)
          for (const auto& [e, x] : d.table) used.insert(x);
      choices.emplace_back(used.begin(), used.end());
    }
    ActionProfile current;
    enumerate_profiles(group, choices, 0, current, profiles);
  }

  ReachabilityIndex index(s, group);
  for (const auto& profile : profiles) {
    const Event agreed = agreement_event(s, deltas, group, profile);
    ++verdict.profiles_checked;
    const Event common = index.common_belief(agreed);
    if (options.cross_check_iterative && common != common_belief_iterative(s, group, agreed))
      throw std::logic_error("common belief characterizations disagree");
    if (common.empty() || profile.is_constant()) continue;
    verdict.violations.push_back({profile, state_at(common.first()), agreed, common, setting.to_actual(agreed),
                                  setting.to_actual(common)});
  }
  verdict.passed = verdict.violations.empty();
  return verdict;
}

void require_kind(const DecisionFamily& family, DomainKind kind, TheoremMode mode) {
  for (const auto& d : family)
    if (d.kind != kind)
      throw InputError(std::string(to_string(mode)) + " mode needs " + std::string(to_string(kind)) +
                       "-kind decision functions");
}

void record_hypotheses(AgreementVerdict& verdict, ViolationList hypotheses) {
  verdict.hypotheses_met = hypotheses.empty();
  verdict.hypothesis_violations = std::move(hypotheses);
}

void append(ViolationList& into, ViolationList from) {
  into.sampled = into.sampled || from.sampled;
  for (auto& v : from.entries) into.entries.push_back(std::move(v));
}

}  // namespace

AgreementVerdict check_agreement(const InformationStructure& s, const DecisionFamily& family, const Group& group,
                                 const AgreementOptions& options) {
  require_partitional(s, "theorem1 agreement check");
  s.require_group(group);
  require_kind(family, DomainKind::field, TheoremMode::theorem1);
  validate_family(s, family, options.limits);

  ViolationList hypotheses;
  const std::vector<Event> field = family.front().domain();
  for (const auto& d : family) append(hypotheses, check_stp_field(field, d, options.field_stp));
  append(hypotheses, check_like_minded(s, family));

  std::vector<ActionAssignment> deltas;
  for (const auto& d : family) deltas.push_back(derive_action_function(s, d));
  Setting setting{s, [](const Event& e) { return e; }};
  AgreementVerdict verdict = evaluate(setting, TheoremMode::theorem1, family, deltas, group, options);
  record_hypotheses(verdict, std::move(hypotheses));
  return verdict;
}

AgreementVerdict check_agreement(const CounterfactualStructure& c, const DecisionFamily& family, const Group& group,
                                 const AgreementOptions& options) {
  const InformationStructure source = c.restriction();
  c.structure().require_group(group);
  require_kind(family, DomainKind::gamma, TheoremMode::theorem2);
  validate_family(source, family, options.limits);

  ViolationList hypotheses;
  for (const auto& d : family) append(hypotheses, check_stp_gamma(source, d, options.limits));
  append(hypotheses, check_like_minded(source, family));

  std::vector<ActionAssignment> deltas;
  for (const auto& d : family) deltas.push_back(derive_action_function(c, d));
  Setting setting{c.structure(), [&](const Event& e) { return c.project(e); }};
  AgreementVerdict verdict = evaluate(setting, TheoremMode::theorem2, family, deltas, group, options);
  record_hypotheses(verdict, std::move(hypotheses));
  return verdict;
}

namespace {

SearchResult run_search(const InformationStructure& source, const CounterfactualStructure* counterfactual,
                        const std::vector<Action>& actions, Relaxation relax, const SearchOptions& options) {
  EnumerationOptions enumeration = options.enumeration;
  enumeration.kind = options.mode == TheoremMode::theorem1 ? DomainKind::field : DomainKind::gamma;
  const ProfileConstraints constraints{!relax.stp, !relax.like_minded};
  const FamilyEnumerator families(source, actions, constraints, enumeration);
  const Group group = options.group ? *options.group : source.all_agents();
  source.require_group(group);

  AgreementOptions check_options;
  check_options.limits = enumeration.limits;
  auto check = [&](const DecisionFamily& family) {
    return options.mode == TheoremMode::theorem1 ? check_agreement(source, family, group, check_options)
                                                 : check_agreement(*counterfactual, family, group, check_options);
  };

  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{kNone};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  const unsigned workers = std::max(1U, options.threads);
  auto work = [&](unsigned offset) {
    try {
      for (std::uint64_t idx = offset; idx < families.index_space() && !failed; idx += workers) {
        if (idx >= best.load()) break;
        auto family = families.at(idx);
        if (!family) continue;
        if (check(*family).passed) continue;
        std::uint64_t current = best.load();
        while (idx < current && !best.compare_exchange_weak(current, idx)) {
        }
        break;
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      failed = true;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work, t);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  SearchResult result;
  const std::uint64_t end = best == kNone ? families.index_space() : best + 1;
  for (std::uint64_t idx = 0; idx < end; ++idx)
    if (families.at(idx)) ++result.families_checked;
  if (best == kNone) return result;

  DecisionFamily family = *families.at(best);
  AgreementVerdict verdict = check(family);
  const AgreementViolation& v = verdict.violations.front();
  result.witness = DisagreementWitness{options.mode, relax,  best,          std::move(family),
                                       group,        v.profile, v.agreement_event, v.common_belief};
  return result;
}

}  // namespace

SearchResult search_disagreement(const InformationStructure& s, const std::vector<Action>& actions, Relaxation relax,
                                 const SearchOptions& options) {
  if (options.mode == TheoremMode::theorem1) return run_search(s, nullptr, actions, relax, options);
  const CounterfactualStructure c = build_counterfactual(s, options.enumeration.limits);
  return run_search(s, &c, actions, relax, options);
}

SearchResult search_disagreement(const CounterfactualStructure& c, const std::vector<Action>& actions,
                                 Relaxation relax, const SearchOptions& options) {
  if (options.mode != TheoremMode::theorem2) throw InputError("a counterfactual structure is searched in theorem2 mode");
  return run_search(c.restriction(), &c, actions, relax, options);
}

bool replay(const InformationStructure& s, const DisagreementWitness& witness) {
  AgreementVerdict verdict;
  if (witness.mode == TheoremMode::theorem1) {
    verdict = check_agreement(s, witness.family, witness.group);
  } else {
    verdict = check_agreement(build_counterfactual(s), witness.family, witness.group);
  }
  return std::any_of(verdict.violations.begin(), verdict.violations.end(), [&](const AgreementViolation& v) {
    return v.profile == witness.profile && v.agreement_event == witness.agreement_event &&
           v.common_belief == witness.common_belief && !v.common_belief.empty() && !v.profile.is_constant();
  });
}

}  // namespace epistemic
