#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "epistemic/agreement.hpp"
#include "epistemic/counterfactual.hpp"
#include "epistemic/errors.hpp"
#include "epistemic/partition.hpp"
#include "support.hpp"

namespace epistemic {
namespace {

using testing::d1;

// Assigns `cell_action` to every cell and `top` to every strict union.
DecisionFunction split_table(const InformationStructure& s, AgentId i, const Action& cell_action,
                             const Action& top) {
  DecisionFunction d{i, DomainKind::gamma, {}};
  const auto cells = partition(s, i);
  for (const auto& e : gamma(s, i))
    d.table.emplace(e, std::find(cells.begin(), cells.end(), e) != cells.end() ? cell_action : top);
  return d;
}

DecisionFunction constant_table(const InformationStructure& s, AgentId i, const Action& x) {
  return split_table(s, i, x, x);
}

ActionProfile profile(const InformationStructure& s, std::initializer_list<std::pair<const char*, const char*>> xs) {
  ActionProfile p;
  for (const auto& [agent, x] : xs) p.assignments.emplace_back(s.agent(agent), x);
  return p;
}

TEST(AgreementEvent, Examples) {
  const auto s = d1();
  const Group g = s.all_agents();
  const std::vector<ActionAssignment> constant{{s.agent("a"), {"x", "x", "x", "x"}},
                                               {s.agent("b"), {"x", "x", "x", "x"}}};
  EXPECT_EQ(agreement_event(s, constant, g, profile(s, {{"a", "x"}, {"b", "x"}})), s.all_states());
  EXPECT_TRUE(agreement_event(s, constant, g, profile(s, {{"a", "x"}, {"b", "q"}})).empty());

  const std::vector<ActionAssignment> split{{s.agent("a"), {"x", "x", "y", "y"}},
                                            {s.agent("b"), {"x", "x", "x", "x"}}};
  EXPECT_EQ(agreement_event(s, split, g, profile(s, {{"a", "x"}, {"b", "x"}})), s.event({"w0", "w1"}));

  const std::vector<ActionAssignment> only_a{split[0]};
  EXPECT_THROW(agreement_event(s, only_a, g, profile(s, {{"a", "x"}, {"b", "x"}})), InputError);
  EXPECT_THROW(agreement_event(s, split, g, profile(s, {{"a", "x"}})), InputError);
}

TEST(Agreement, NoDisagreementUnderTheHypotheses) {
  const auto s = d1();
  const auto c = build_counterfactual(s);
  auto it = enumerate_decision_profiles(s, numbered_actions(2), {true, true});
  std::size_t n = 0;
  while (auto f = it.next()) {
    for (const auto& g : testing::all_groups(s)) {
      const auto verdict = check_agreement(c, *f, g);
      ASSERT_TRUE(verdict.hypotheses_met);
      ASSERT_TRUE(verdict.passed);
      ASSERT_GT(verdict.profiles_checked, 0u);
    }
    ++n;
  }
  EXPECT_EQ(n, 150u);
}

TEST(Agreement, SingleActionAlwaysPasses) {
  const auto s = d1();
  const auto c = build_counterfactual(s);
  const DecisionFamily f{constant_table(s, s.agent("a"), "x"), constant_table(s, s.agent("b"), "x")};
  const auto verdict = check_agreement(c, f, s.all_agents());
  EXPECT_TRUE(verdict.passed);
  EXPECT_EQ(verdict.profiles_checked, 1u);
}

TEST(Agreement, StpViolationIsReportedWithTheDisagreement) {
  const auto s = d1();
  const auto c = build_counterfactual(s);
  const DecisionFamily f{split_table(s, s.agent("a"), "1", "0"), split_table(s, s.agent("b"), "2", "0")};
  const auto verdict = check_agreement(c, f, s.all_agents());
  EXPECT_FALSE(verdict.hypotheses_met);
  EXPECT_FALSE(verdict.passed);
  // STP fails for both agents; like-mindedness holds on the shared Ω.
  for (const auto& v : verdict.hypothesis_violations.entries) EXPECT_EQ(v.kind, ViolationKind::stp);
  std::set<AgentId> offenders;
  for (const auto& v : verdict.hypothesis_violations.entries) offenders.insert(v.agent);
  EXPECT_EQ(offenders.size(), 2u);

  const auto wanted = profile(c.structure(), {{"a", "1"}, {"b", "2"}});
  const auto hit = std::find_if(verdict.violations.begin(), verdict.violations.end(),
                                [&](const AgreementViolation& v) { return v.profile == wanted; });
  ASSERT_NE(hit, verdict.violations.end());
  EXPECT_EQ(hit->agreement_event_actual, s.all_states());
  EXPECT_EQ(hit->common_belief_actual, s.all_states());
  EXPECT_TRUE(hit->agreement_event.is_subset_of(c.structure().all_states()));
}

TEST(Agreement, ModeAndKindMismatch) {
  const auto s = d1();
  const auto c = build_counterfactual(s);
  const DecisionFamily gamma_family{constant_table(s, s.agent("a"), "x"), constant_table(s, s.agent("b"), "x")};
  EXPECT_THROW(check_agreement(s, gamma_family, s.all_agents()), InputError);
  InformationStructure plain({"u", "v"}, {"i"}, {{"i", {{"u", "v"}, {"v", "v"}}}});
  EXPECT_THROW(check_agreement(plain, {}, plain.all_agents()), PreconditionError);
}

TEST(Agreement, FieldFamiliesOnThePartitionalStructure) {
  const auto s = d1();
  EnumerationOptions opts;
  opts.kind = DomainKind::field;
  FamilyEnumerator it(s, numbered_actions(2), {true, true}, opts);
  // Spot-check a slice of the diagonal; the full run is part of the acceptance suite.
  std::size_t checked = 0;
  for (std::uint64_t k = 0; k < it.index_space(); k += 97) {
    const auto f = it.at(k);
    if (!f) continue;
    const auto verdict = check_agreement(s, *f, s.all_agents());
    ASSERT_TRUE(verdict.hypotheses_met);
    ASSERT_TRUE(verdict.passed);
    ++checked;
  }
  EXPECT_GT(checked, 0u);
}

TEST(Search, NoWitnessWithoutRelaxation) {
  const auto result = search_disagreement(d1(), numbered_actions(2), {});
  EXPECT_FALSE(result.witness.has_value());
  EXPECT_EQ(result.families_checked, 150u);
}

TEST(Search, RelaxedLikeMindednessGivesConstantDisagreement) {
  const auto s = d1();
  const auto result = search_disagreement(s, numbered_actions(2), {false, true});
  ASSERT_TRUE(result.witness.has_value());
  const auto& w = *result.witness;
  EXPECT_TRUE(replay(s, w));
  EXPECT_FALSE(w.profile.is_constant());
  EXPECT_FALSE(w.common_belief.empty());
  EXPECT_EQ(w.relaxed, (Relaxation{false, true}));
}

TEST(Search, RelaxedStpWithThreeActions) {
  const auto s = d1();
  const auto result = search_disagreement(s, numbered_actions(3), {true, false});
  ASSERT_TRUE(result.witness.has_value());
  EXPECT_TRUE(replay(s, *result.witness));
  // The hand-built family is a witness too, with profile (1,2) over Ω.
  const auto c = build_counterfactual(s);
  const DecisionFamily f{split_table(s, s.agent("a"), "1", "0"), split_table(s, s.agent("b"), "2", "0")};
  DisagreementWitness hand{TheoremMode::theorem2, {true, false}, 0, f, s.all_agents(), {}, {}, {}};
  const auto verdict = check_agreement(c, f, s.all_agents());
  for (const auto& v : verdict.violations)
    if (v.profile == profile(c.structure(), {{"a", "1"}, {"b", "2"}})) {
      hand.profile = v.profile;
      hand.agreement_event = v.agreement_event;
      hand.common_belief = v.common_belief;
    }
  ASSERT_FALSE(hand.profile.assignments.empty());
  EXPECT_TRUE(replay(s, hand));
}

TEST(Search, ReplayRejectsForgedWitnesses) {
  const auto s = d1();
  auto witness = *search_disagreement(s, numbered_actions(2), {true, false}).witness;
  ASSERT_TRUE(replay(s, witness));
  auto forged = witness;
  forged.common_belief = Event(forged.common_belief.universe_size());
  EXPECT_FALSE(replay(s, forged));
  forged = witness;
  forged.profile.assignments[1].second = forged.profile.assignments[0].second;
  EXPECT_FALSE(replay(s, forged));
}

TEST(Search, ThreadCountDoesNotChangeTheResult) {
  const auto s = d1();
  for (Relaxation relax : {Relaxation{true, false}, Relaxation{false, true}, Relaxation{true, true}}) {
    SearchOptions one;
    SearchOptions four;
    four.threads = 4;
    const auto a = search_disagreement(s, numbered_actions(2), relax, one);
    const auto b = search_disagreement(s, numbered_actions(2), relax, four);
    ASSERT_TRUE(a.witness && b.witness);
    EXPECT_EQ(a.witness->family_index, b.witness->family_index);
    EXPECT_EQ(a.witness->family, b.witness->family);
    EXPECT_EQ(a.witness->profile, b.witness->profile);
    EXPECT_EQ(a.families_checked, b.families_checked);
  }
}

TEST(Search, FieldMode) {
  const auto s = d1();
  SearchOptions opts;
  opts.mode = TheoremMode::theorem1;
  const auto relaxed = search_disagreement(s, numbered_actions(2), {false, true}, opts);
  ASSERT_TRUE(relaxed.witness.has_value());
  EXPECT_TRUE(replay(s, *relaxed.witness));
}

TEST(Search, CounterfactualInputNeedsGammaMode) {
  const auto c = build_counterfactual(d1());
  SearchOptions opts;
  opts.mode = TheoremMode::theorem1;
  EXPECT_THROW(search_disagreement(c, numbered_actions(2), {}, opts), InputError);
  EXPECT_FALSE(search_disagreement(c, numbered_actions(2), {}).witness.has_value());
}

TEST(Agreement, PruningNeverChangesVerdicts) {
  const auto s = d1();
  const auto c = build_counterfactual(s);
  AgreementOptions pruned;
  AgreementOptions full;
  full.prune = false;
  full.cross_check_iterative = true;
  auto it = enumerate_decision_profiles(s, numbered_actions(2), {});
  while (auto f = it.next()) {
    const auto a = check_agreement(c, *f, s.all_agents(), pruned);
    const auto b = check_agreement(c, *f, s.all_agents(), full);
    ASSERT_EQ(a.passed, b.passed);
    ASSERT_EQ(a.violations.size(), b.violations.size());
    for (std::size_t k = 0; k < a.violations.size(); ++k) {
      ASSERT_EQ(a.violations[k].profile, b.violations[k].profile);
      ASSERT_EQ(a.violations[k].common_belief, b.violations[k].common_belief);
    }
    ASSERT_GE(b.profiles_checked, a.profiles_checked);
  }
}

TEST(Agreement, RandomCounterfactualFamilies) {
  testing::Rng rng(51);
  for (int round = 0; round < 20; ++round) {
    const auto s = testing::random_partitional(rng, 4, 2, 3);
    const auto c = build_counterfactual(s);
    EnumerationOptions opts;
    opts.max_families = std::uint64_t{1} << 30;
    FamilyEnumerator it(s, numbered_actions(2), {true, true}, opts);
    for (std::uint64_t k = 0; k < it.index_space(); k += 1 + it.index_space() / 64) {
      const auto f = it.at(k);
      if (!f) continue;
      AgreementOptions check;
      check.cross_check_iterative = true;
      const auto verdict = check_agreement(c, *f, s.all_agents(), check);
      ASSERT_TRUE(verdict.passed);
    }
  }
}

}  // namespace
}  // namespace epistemic
