#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace epistemic::testing {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

InformationStructure from_cells(const std::vector<std::string>& states,
                                const std::map<std::string, std::vector<std::vector<std::string>>>& cells) {
  std::vector<std::string> agents;
  std::map<std::string, std::vector<NamePair>> relations;
  for (const auto& [agent, partition] : cells) {
    agents.push_back(agent);
    auto& pairs = relations[agent];
    for (const auto& cell : partition)
      for (const auto& x : cell)
        for (const auto& y : cell) pairs.emplace_back(x, y);
  }
  return InformationStructure(states, agents, relations);
}

InformationStructure d1() {
  return from_cells({"w0", "w1", "w2", "w3"},
                    {{"a", {{"w0", "w1"}, {"w2", "w3"}}}, {"b", {{"w0"}, {"w1", "w2"}, {"w3"}}}});
}

namespace {

std::vector<std::string> names(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(prefix + std::to_string(k));
  return out;
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

InformationStructure random_structure(Rng& rng, std::size_t max_states, std::size_t max_agents, double density) {
  const auto states = names("s", pick(rng, 1, max_states));
  const auto agents = names("i", pick(rng, 1, max_agents));
  std::bernoulli_distribution edge(density);
  std::map<std::string, std::vector<NamePair>> relations;
  for (const auto& a : agents) {
    auto& pairs = relations[a];
    for (const auto& x : states)
      for (const auto& y : states)
        if (edge(rng)) pairs.emplace_back(x, y);
  }
  return InformationStructure(states, agents, relations);
}

InformationStructure random_partitional(Rng& rng, std::size_t max_states, std::size_t max_agents,
                                        std::size_t max_cells) {
  const auto states = names("s", pick(rng, 1, max_states));
  const auto agents = names("i", pick(rng, 1, max_agents));
  std::map<std::string, std::vector<std::vector<std::string>>> cells;
  for (const auto& a : agents) {
    const std::size_t k = pick(rng, 1, max_cells);
    std::vector<std::vector<std::string>> partition(k);
    for (const auto& s : states) partition[pick(rng, 0, k - 1)].push_back(s);
    std::erase_if(partition, [](const auto& c) { return c.empty(); });
    cells[a] = std::move(partition);
  }
  return from_cells(states, cells);
}

InformationStructure random_belief_structure(Rng& rng, std::size_t max_states, std::size_t max_agents) {
  const auto states = names("s", pick(rng, 1, max_states));
  const auto agents = names("i", pick(rng, 1, max_agents));
  std::map<std::string, std::vector<NamePair>> relations;
  for (const auto& a : agents) {
    std::vector<std::size_t> order(states.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::shuffle(order.begin(), order.end(), rng);
    // The first `clustered` states in `order` are split into clusters.
    const std::size_t clustered = pick(rng, 1, states.size());
    const std::size_t k = pick(rng, 1, clustered);
    std::vector<std::vector<std::size_t>> clusters(k);
    for (std::size_t j = 0; j < clustered; ++j) clusters[j < k ? j : pick(rng, 0, k - 1)].push_back(order[j]);
    auto& pairs = relations[a];
    auto see = [&](std::size_t from, const std::vector<std::size_t>& cluster) {
      for (auto to : cluster) pairs.emplace_back(states[from], states[to]);
    };
    for (const auto& c : clusters)
      for (auto w : c) see(w, c);
    for (std::size_t j = clustered; j < order.size(); ++j) see(order[j], clusters[pick(rng, 0, k - 1)]);
  }
  return InformationStructure(states, agents, relations);
}

Event random_event(Rng& rng, std::size_t universe) {
  Event e(universe);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t k = 0; k < universe; ++k)
    if (coin(rng)) e.insert(k);
  return e;
}

std::vector<Group> all_groups(const InformationStructure& s) {
  std::vector<Group> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s.num_agents()); ++mask) {
    Group g;
    for (std::size_t a = 0; a < s.num_agents(); ++a)
      if ((mask >> a) & 1U) g.push_back(agent_at(a));
    out.push_back(g);
  }
  return out;
}

Raw raw(const InformationStructure& s) {
  Raw r;
  r.n = s.num_states();
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < s.num_states(); ++k) index[s.state_names()[k]] = k;
  r.succ.assign(s.num_agents(), std::vector<StateSet>(r.n));
  for (std::size_t a = 0; a < s.num_agents(); ++a)
    for (const auto& [from, to] : s.relation_pairs(agent_at(a))) r.succ[a][index.at(from)].insert(index.at(to));
  return r;
}

StateSet to_set(const Event& e) {
  StateSet out;
  for (std::size_t k = 0; k < e.universe_size(); ++k)
    if (e.contains(k)) out.insert(k);
  return out;
}

Event to_event(std::size_t n, const StateSet& set) {
  Event e(n);
  for (std::size_t k : set) e.insert(k);
  return e;
}

std::vector<std::size_t> indices(const Group& g) {
  std::vector<std::size_t> out;
  for (AgentId a : g) out.push_back(index_of(a));
  return out;
}

namespace oracle {

namespace {

bool subset(const StateSet& a, const StateSet& b) {
  for (auto x : a)
    if (!b.contains(x)) return false;
  return true;
}

}  // namespace

StateSet belief(const Raw& r, std::size_t agent, const StateSet& e) {
  StateSet out;
  for (std::size_t w = 0; w < r.n; ++w)
    if (subset(r.succ[agent][w], e)) out.insert(w);
  return out;
}

StateSet mutual(const Raw& r, const std::vector<std::size_t>& group, const StateSet& e) {
  StateSet out;
  for (std::size_t w = 0; w < r.n; ++w) {
    bool all = true;
    for (auto a : group) all = all && subset(r.succ[a][w], e);
    if (all) out.insert(w);
  }
  return out;
}

StateSet reach(const Raw& r, const std::vector<std::size_t>& group, std::size_t w) {
  StateSet seen;
  std::vector<std::size_t> stack;
  for (auto a : group)
    for (auto v : r.succ[a][w])
      if (seen.insert(v).second) stack.push_back(v);
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (auto a : group)
      for (auto v : r.succ[a][u])
        if (seen.insert(v).second) stack.push_back(v);
  }
  return seen;
}

StateSet common_belief(const Raw& r, const std::vector<std::size_t>& group, const StateSet& e) {
  StateSet out;
  for (std::size_t w = 0; w < r.n; ++w)
    if (subset(reach(r, group, w), e)) out.insert(w);
  return out;
}

bool serial(const Raw& r, std::size_t a) {
  for (std::size_t w = 0; w < r.n; ++w)
    if (r.succ[a][w].empty()) return false;
  return true;
}

bool reflexive(const Raw& r, std::size_t a) {
  for (std::size_t w = 0; w < r.n; ++w)
    if (!r.succ[a][w].contains(w)) return false;
  return true;
}

bool transitive(const Raw& r, std::size_t a) {
  for (std::size_t x = 0; x < r.n; ++x)
    for (auto y : r.succ[a][x])
      for (auto z : r.succ[a][y])
        if (!r.succ[a][x].contains(z)) return false;
  return true;
}

bool euclidean(const Raw& r, std::size_t a) {
  for (std::size_t x = 0; x < r.n; ++x)
    for (auto y : r.succ[a][x])
      for (auto z : r.succ[a][x])
        if (!r.succ[a][y].contains(z)) return false;
  return true;
}

std::vector<StateSet> cells(const Raw& r, std::size_t a) {
  std::set<StateSet> distinct;
  for (std::size_t w = 0; w < r.n; ++w) distinct.insert(r.succ[a][w]);
  return {distinct.begin(), distinct.end()};
}

std::set<StateSet> union_closure(const std::vector<StateSet>& cells) {
  std::set<StateSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cells.size()); ++mask) {
    StateSet u;
    for (std::size_t k = 0; k < cells.size(); ++k)
      if ((mask >> k) & 1U) u.insert(cells[k].begin(), cells[k].end());
    out.insert(u);
  }
  return out;
}

bool stp(const std::map<StateSet, std::string>& table) {
  std::vector<std::pair<StateSet, std::string>> entries(table.begin(), table.end());
  // Every subset of entries with >= 2 members, pairwise disjoint, one action.
  std::function<bool(std::size_t, StateSet, const std::string*, int)> go =
      [&](std::size_t from, StateSet cover, const std::string* action, int size) -> bool {
    if (size >= 2) {
      auto it = table.find(cover);
      if (it != table.end() && it->second != *action) return false;
    }
    for (std::size_t k = from; k < entries.size(); ++k) {
      const auto& [e, x] = entries[k];
      if (action != nullptr && x != *action) continue;
      bool disjoint = true;
      for (auto v : e) disjoint = disjoint && !cover.contains(v);
      if (!disjoint) continue;
      StateSet next = cover;
      next.insert(e.begin(), e.end());
      if (!go(k + 1, next, &x, size + 1)) return false;
    }
    return true;
  };
  return go(0, {}, nullptr, 0);
}

}  // namespace oracle

}  // namespace epistemic::testing
