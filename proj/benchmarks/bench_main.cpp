#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "epistemic/agreement.hpp"
#include "epistemic/counterfactual.hpp"
#include "epistemic/kripke.hpp"

namespace {

using namespace epistemic;

// n states, two agents: one with cells of size `a`, the other shifted by one.
InformationStructure banded(std::size_t n, std::size_t a) {
  std::vector<std::string> states;
  for (std::size_t k = 0; k < n; ++k) states.push_back("s" + std::to_string(k));
  std::map<std::string, std::vector<NamePair>> rel{{"i", {}}, {"j", {}}};
  auto cell = [&](std::size_t k, std::size_t shift) { return (k + shift) / a; };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (cell(x, 0) == cell(y, 0)) rel["i"].emplace_back(states[x], states[y]);
      if (cell(x, 1) == cell(y, 1)) rel["j"].emplace_back(states[x], states[y]);
    }
  return InformationStructure(states, {"i", "j"}, rel);
}

InformationStructure random_relations(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(0.05);
  std::vector<std::string> states;
  for (std::size_t k = 0; k < n; ++k) states.push_back("s" + std::to_string(k));
  std::map<std::string, std::vector<NamePair>> rel{{"i", {}}, {"j", {}}, {"k", {}}};
  for (auto& [agent, pairs] : rel)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (edge(rng)) pairs.emplace_back(states[x], states[y]);
  return InformationStructure(states, {"i", "j", "k"}, rel);
}

void BM_BuildCounterfactual(benchmark::State& state) {
  const auto s = banded(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(build_counterfactual(s));
}
BENCHMARK(BM_BuildCounterfactual)->Arg(12)->Arg(18)->Arg(24);

void BM_CommonBeliefComponent(benchmark::State& state) {
  const auto s = random_relations(static_cast<std::size_t>(state.range(0)), 7);
  const Event e = Event::from_mask(s.num_states(), 0x5555555555555555ULL >> (64 - s.num_states()));
  for (auto _ : state) benchmark::DoNotOptimize(common_belief_component(s, s.all_agents(), e));
}
BENCHMARK(BM_CommonBeliefComponent)->Arg(16)->Arg(64);

void BM_CommonBeliefIterative(benchmark::State& state) {
  const auto s = random_relations(static_cast<std::size_t>(state.range(0)), 7);
  const Event e = Event::from_mask(s.num_states(), 0x5555555555555555ULL >> (64 - s.num_states()));
  for (auto _ : state) benchmark::DoNotOptimize(common_belief_iterative(s, s.all_agents(), e));
}
BENCHMARK(BM_CommonBeliefIterative)->Arg(16)->Arg(64);

void BM_SearchNoRelaxation(benchmark::State& state) {
  const auto s = banded(4, 2);
  SearchOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_disagreement(s, numbered_actions(2), {}, opts));
}
BENCHMARK(BM_SearchNoRelaxation)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
