#include <gtest/gtest.h>

#include <cstdlib>

#include "epistemic/errors.hpp"
#include "epistemic/kripke.hpp"
#include "epistemic/partition.hpp"
#include "support.hpp"

namespace epistemic {
namespace {

using testing::d1;
namespace oracle = testing::oracle;

std::set<testing::StateSet> as_sets(const std::vector<Event>& events) {
  std::set<testing::StateSet> out;
  for (const auto& e : events) out.insert(testing::to_set(e));
  return out;
}

TEST(Partition, D1Classes) {
  const auto s = d1();
  EXPECT_EQ(equivalence_class(s, s.agent("a"), s.state("w3")), s.event({"w2", "w3"}));
  EXPECT_EQ(equivalence_class(s, s.agent("b"), s.state("w0")), s.event({"w0"}));
  EXPECT_EQ(partition(s, s.agent("a")), (Partition{s.event({"w0", "w1"}), s.event({"w2", "w3"})}));
  EXPECT_EQ(partition(s, s.agent("b")), (Partition{s.event({"w0"}), s.event({"w1", "w2"}), s.event({"w3"})}));
}

TEST(Partition, D1Gamma) {
  const auto s = d1();
  const auto ga = gamma(s, s.agent("a"));
  EXPECT_EQ(as_sets(ga), as_sets({s.event({"w0", "w1"}), s.event({"w2", "w3"}), s.all_states()}));
  EXPECT_EQ(gamma(s, s.agent("b")).size(), 7u);
}

TEST(Partition, IdentityRelationGivesSingletons) {
  InformationStructure s({"u", "v", "w"}, {"i"}, {{"i", {{"u", "u"}, {"v", "v"}, {"w", "w"}}}});
  const auto cells = partition(s, s.agent("i"));
  ASSERT_EQ(cells.size(), 3u);
  for (const auto& c : cells) EXPECT_EQ(c.count(), 1u);
}

TEST(Partition, SingleCellAgent) {
  const auto s = testing::from_cells({"u", "v"}, {{"i", {{"u", "v"}}}});
  EXPECT_EQ(gamma(s, s.agent("i")), (GammaSet{s.all_states()}));
  const auto report = flaw_report(s, s.agent("i"));
  EXPECT_TRUE(report.not_possible_beliefs.empty());
}

TEST(Partition, PossibleBeliefs) {
  const auto s = d1();
  EXPECT_TRUE(is_possible_belief(s, s.agent("a"), s.event({"w0", "w1"})));
  EXPECT_FALSE(is_possible_belief(s, s.agent("a"), s.all_states()));
  // Works off partitional structures too.
  InformationStructure t({"u", "v"}, {"i"}, {{"i", {{"u", "v"}}}});
  EXPECT_TRUE(is_possible_belief(t, t.agent("i"), t.event({"v"})));
  EXPECT_TRUE(is_possible_belief(t, t.agent("i"), t.empty_event()));
  EXPECT_FALSE(is_possible_belief(t, t.agent("i"), t.event({"u"})));
}

TEST(Partition, D1FlawReport) {
  const auto s = d1();
  const auto fa = flaw_report(s, s.agent("a"));
  EXPECT_EQ(fa.not_possible_beliefs, (std::vector<Event>{s.all_states()}));
  // None of b's cells is an a-possibility set.
  EXPECT_EQ(fa.cross_agent_conflicts.size(), 3u);

  const auto fb = flaw_report(s, s.agent("b"));
  EXPECT_EQ(as_sets(fb.not_possible_beliefs),
            as_sets({s.event({"w0", "w1", "w2"}), s.event({"w0", "w3"}), s.event({"w1", "w2", "w3"}),
                     s.all_states()}));
  ASSERT_EQ(fb.cross_agent_conflicts.size(), 2u);
  for (const auto& c : fb.cross_agent_conflicts) EXPECT_EQ(c.other, s.agent("a"));
}

TEST(Partition, NonPartitionalInputIsRejected) {
  InformationStructure s({"u", "v"}, {"i"}, {{"i", {{"u", "v"}, {"v", "v"}}}});
  EXPECT_THROW(partition(s, s.agent("i")), PreconditionError);
  EXPECT_THROW(gamma(s, s.agent("i")), PreconditionError);
  EXPECT_THROW(equivalence_class(s, s.agent("i"), s.state("u")), PreconditionError);
  EXPECT_THROW(flaw_report(s, s.agent("i")), PreconditionError);
}

TEST(Partition, CellCapIsEnforced) {
  std::vector<std::string> states;
  std::map<std::string, std::vector<NamePair>> rel{{"i", {}}};
  for (int k = 0; k < 5; ++k) {
    states.push_back("s" + std::to_string(k));
    rel["i"].emplace_back(states.back(), states.back());
  }
  InformationStructure s(states, {"i"}, rel);
  EXPECT_THROW(gamma(s, s.agent("i"), Limits{4}), ResourceError);
  EXPECT_EQ(gamma(s, s.agent("i"), Limits{5}).size(), 31u);
}

TEST(Partition, CellCapFromEnvironment) {
  ::setenv("EPISTEMIC_MAX_CELLS", "3", 1);
  EXPECT_EQ(Limits::from_environment().max_cells, 3u);
  ::setenv("EPISTEMIC_MAX_CELLS", "zero", 1);
  EXPECT_THROW(Limits::from_environment(), InputError);
  ::setenv("EPISTEMIC_MAX_CELLS", "0", 1);
  EXPECT_THROW(Limits::from_environment(), InputError);
  ::unsetenv("EPISTEMIC_MAX_CELLS");
  EXPECT_EQ(Limits::from_environment().max_cells, Limits::kDefaultMaxCells);
}

TEST(Partition, RandomPartitionalProperties) {
  testing::Rng rng(21);
  for (int round = 0; round < 300; ++round) {
    const auto s = testing::random_partitional(rng, 6, 3, 4);
    const auto r = testing::raw(s);
    for (std::size_t i = 0; i < s.num_agents(); ++i) {
      const AgentId agent = agent_at(i);
      const auto cells = partition(s, agent);
      const auto expected_cells = oracle::cells(r, i);
      ASSERT_EQ(as_sets(cells), std::set<testing::StateSet>(expected_cells.begin(), expected_cells.end()));
      Event cover = s.empty_event();
      for (const auto& c : cells) {
        ASSERT_FALSE(c.empty());
        ASSERT_FALSE(c.intersects(cover));
        cover |= c;
      }
      ASSERT_EQ(cover, s.all_states());

      const auto g = gamma(s, agent);
      ASSERT_EQ(g.size(), (std::size_t{1} << cells.size()) - 1);
      ASSERT_EQ(as_sets(g), oracle::union_closure(expected_cells));

      // Strict unions are never possible beliefs; cells always are.
      const auto report = flaw_report(s, agent);
      std::set<testing::StateSet> strict;
      for (const auto& e : g)
        if (std::find(cells.begin(), cells.end(), e) == cells.end()) strict.insert(testing::to_set(e));
      ASSERT_EQ(as_sets(report.not_possible_beliefs), strict);
      for (const auto& c : cells) ASSERT_TRUE(is_possible_belief(s, agent, c));
    }
  }
}

}  // namespace
}  // namespace epistemic
