#pragma once

// Shared fixtures, random generators and brute-force oracles for the tests.
// The oracles work on std::set over plain indices and never call the library
// operators they are checked against.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "epistemic/event.hpp"
#include "epistemic/structure.hpp"

namespace epistemic::testing {

#ifdef EPISTEMIC_TEST_DATA_DIR
inline std::string data_path(const std::string& file) { return std::string(EPISTEMIC_TEST_DATA_DIR) + "/" + file; }
#endif

std::string read_text(const std::string& path);

// Builds a partitional structure from cells given per agent.
InformationStructure from_cells(const std::vector<std::string>& states,
                                const std::map<std::string, std::vector<std::vector<std::string>>>& cells);

// Four states, agents a and b; a: {w0,w1},{w2,w3}; b: {w0},{w1,w2},{w3}.
InformationStructure d1();

using Rng = std::mt19937_64;

// Arbitrary relations: each pair is present with probability `density`.
InformationStructure random_structure(Rng& rng, std::size_t max_states, std::size_t max_agents,
                                      double density = 0.3);

// Every agent gets a random partition with at most `max_cells` cells.
InformationStructure random_partitional(Rng& rng, std::size_t max_states, std::size_t max_agents,
                                        std::size_t max_cells);

// Serial, transitive and euclidean relations: some states form clusters that
// see exactly their own cluster; every other state sees one cluster.
InformationStructure random_belief_structure(Rng& rng, std::size_t max_states, std::size_t max_agents);

Event random_event(Rng& rng, std::size_t universe);

// Every non-empty subset of the agents, as groups.
std::vector<Group> all_groups(const InformationStructure& s);

// --- oracles ---------------------------------------------------------------

using StateSet = std::set<std::size_t>;

// succ[agent][state], read back through relation_pairs and the state names.
struct Raw {
  std::size_t n = 0;
  std::vector<std::vector<StateSet>> succ;
};

Raw raw(const InformationStructure& s);
StateSet to_set(const Event& e);
Event to_event(std::size_t n, const StateSet& set);

namespace oracle {

StateSet belief(const Raw& r, std::size_t agent, const StateSet& e);
StateSet mutual(const Raw& r, const std::vector<std::size_t>& group, const StateSet& e);
// States reachable by a walk of length >= 1 over the group's relations.
StateSet reach(const Raw& r, const std::vector<std::size_t>& group, std::size_t w);
// w is in the common belief of e iff everything reachable from w lies in e.
StateSet common_belief(const Raw& r, const std::vector<std::size_t>& group, const StateSet& e);

bool serial(const Raw& r, std::size_t agent);
bool reflexive(const Raw& r, std::size_t agent);
bool transitive(const Raw& r, std::size_t agent);
bool euclidean(const Raw& r, std::size_t agent);

// Equivalence classes of a partitional relation.
std::vector<StateSet> cells(const Raw& r, std::size_t agent);
// All non-empty unions of cells.
std::set<StateSet> union_closure(const std::vector<StateSet>& cells);

// Sure-thing principle over a set of events: for every family of >= 2 pairwise
// disjoint events with one action whose union is in the table, the union gets
// that action too.
bool stp(const std::map<StateSet, std::string>& table);

}  // namespace oracle

std::vector<std::size_t> indices(const Group& g);

}  // namespace epistemic::testing
