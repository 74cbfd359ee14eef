#include "epistemic/decision.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <unordered_map>

#include "epistemic/errors.hpp"
#include "epistemic/kripke.hpp"

namespace epistemic {

std::vector<Action> make_action_set(std::vector<Action> actions) {
  if (actions.empty()) throw InputError("the action set must not be empty");
  for (const auto& a : actions)
    if (!is_valid_agent_name(a)) throw InputError("invalid action name '" + a + "'");
  std::sort(actions.begin(), actions.end());
  actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
  return actions;
}

std::vector<Action> numbered_actions(std::size_t count) {
  std::vector<Action> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(std::to_string(k));
  return make_action_set(std::move(out));
}

std::string_view to_string(DomainKind kind) { return kind == DomainKind::gamma ? "gamma" : "field"; }

DomainKind parse_domain_kind(std::string_view text) {
  if (text == "gamma") return DomainKind::gamma;
  if (text == "field") return DomainKind::field;
  throw InputError("unknown decision domain kind '" + std::string(text) + "'");
}

std::string_view to_string(ViolationKind kind) { return kind == ViolationKind::stp ? "stp" : "like-minded"; }

std::vector<Event> DecisionFunction::domain() const {
  std::vector<Event> out;
  for (const auto& [e, a] : table) out.push_back(e);
  return out;
}

void validate_family(const InformationStructure& s, const DecisionFamily& family, const Limits& limits) {
  if (family.size() != s.num_agents()) throw InputError("one decision function per agent is required");
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& d = family[k];
    if (d.agent != agent_at(k)) throw InputError("decision functions must be ordered by agent");
    if (d.kind != family.front().kind) throw InputError("decision functions mix domain kinds");
    for (const auto& [e, a] : d.table) {
      s.require_event(e);
      if (e.empty()) throw InputError("decision tables cannot decide on the empty event");
    }
    if (d.kind == DomainKind::gamma) {
      const GammaSet g = gamma(s, d.agent, limits);
      std::set<Event> expected(g.begin(), g.end());
      for (const auto& e : expected)
        if (!d.find(e))
          throw InputError("decision table of agent '" + s.name(d.agent) + "' misses gamma event '" +
                           s.canonical(e) + "'");
      for (const auto& [e, a] : d.table)
        if (!expected.contains(e))
          throw InputError("decision table of agent '" + s.name(d.agent) + "' decides on '" + s.canonical(e) +
                           "', which is not a union of its cells");
    } else if (d.domain() != family.front().domain()) {
      throw InputError("field-kind decision functions must share one field");
    }
  }
}

namespace {

ActionAssignment derive(const InformationStructure& ambient, const DecisionFunction& d,
                        const std::function<Event(const Event&)>& to_domain,
                        const InformationStructure& naming) {
  ActionAssignment out{d.agent, {}};
  out.values.reserve(ambient.num_states());
  for (std::size_t w = 0; w < ambient.num_states(); ++w) {
    const Event b = to_domain(ambient.successors(d.agent, state_at(w)));
    const Action* a = d.find(b);
    if (a == nullptr)
      throw DomainError("agent '" + ambient.name(d.agent) + "' has possibility set '" + naming.canonical(b) +
                        "' at state '" + ambient.name(state_at(w)) + "', outside its decision domain");
    out.values.push_back(*a);
  }
  return out;
}

}  // namespace

ActionAssignment derive_action_function(const InformationStructure& s, const DecisionFunction& d) {
  s.require_agent(d.agent);
  for (const auto& [e, a] : d.table) s.require_event(e);
  return derive(s, d, [](const Event& e) { return e; }, s);
}

ActionAssignment derive_action_function(const CounterfactualStructure& c, const DecisionFunction& d) {
  c.structure().require_agent(d.agent);
  const InformationStructure source = c.restriction();
  for (const auto& [e, a] : d.table) source.require_event(e);
  return derive(c.structure(), d, [&](const Event& e) { return c.project(e); }, source);
}

ViolationList check_stp_gamma(const InformationStructure& s, const DecisionFunction& d, const Limits& limits) {
  const Partition cells = partition(s, d.agent);
  if (cells.size() > limits.max_cells || cells.size() >= 63)
    throw ResourceError("too many cells for the sure-thing check");
  ViolationList out;
  std::vector<const Action*> cell_action;
  for (const auto& cell : cells) {
    const Action* a = d.find(cell);
    if (a == nullptr) throw InputError("decision table misses cell '" + s.canonical(cell) + "'");
    cell_action.push_back(a);
  }
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cells.size()); ++mask) {
    if (std::popcount(mask) < 2) continue;  // a single cell is its own union
    std::vector<Event> members;
    Event u = s.empty_event();
    const Action* x = nullptr;
    bool uniform = true;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (((mask >> k) & 1U) == 0) continue;
      members.push_back(cells[k]);
      u |= cells[k];
      if (x == nullptr)
        x = cell_action[k];
      else if (*x != *cell_action[k])
        uniform = false;
    }
    if (!uniform) continue;
    const Action* got = d.find(u);
    if (got == nullptr) throw InputError("decision table misses union '" + s.canonical(u) + "'");
    if (*got != *x) out.entries.push_back({ViolationKind::stp, d.agent, std::nullopt, members, u, *x, *got});
  }
  return out;
}

namespace {

/// Enumerates sets of >= 2 pairwise-disjoint events among `candidates`
/// (positions into `events`), in index order.
void for_each_disjoint_family(const std::vector<Event>& events, const std::vector<std::size_t>& candidates,
                              const std::function<void(const std::vector<std::size_t>&, const Event&)>& visit) {
  if (candidates.empty()) return;
  std::vector<std::size_t> chosen;
  Event cover(events[candidates.front()].universe_size());
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    for (std::size_t k = from; k < candidates.size(); ++k) {
      const Event& e = events[candidates[k]];
      if (e.intersects(cover)) continue;
      chosen.push_back(candidates[k]);
      cover |= e;
      if (chosen.size() >= 2) visit(chosen, cover);
      extend(k + 1);
      cover -= e;
      chosen.pop_back();
    }
  };
  extend(0);
}

}  // namespace

ViolationList check_stp_field(std::span<const Event> field, const DecisionFunction& d,
                              const FieldStpOptions& options) {
  ViolationList out;
  if (field.empty()) return out;
  std::vector<Event> events(field.begin(), field.end());
  std::unordered_map<Event, std::size_t> position;
  for (std::size_t k = 0; k < events.size(); ++k) {
    if (d.find(events[k]) == nullptr) throw InputError("decision table does not cover the field");
    position.emplace(events[k], k);
  }
  std::map<Action, std::vector<std::size_t>> by_action;
  for (std::size_t k = 0; k < events.size(); ++k) by_action[*d.find(events[k])].push_back(k);

  std::set<std::vector<std::size_t>> reported;
  auto examine = [&](const Action& x, const std::vector<std::size_t>& chosen, const Event& u) {
    if (!position.contains(u)) return;  // constraint is vacuous outside the field
    const Action& got = *d.find(u);
    if (got == x) return;
    std::vector<std::size_t> key = chosen;
    std::sort(key.begin(), key.end());
    if (!reported.insert(key).second) return;
    std::vector<Event> members;
    for (std::size_t k : key) members.push_back(events[k]);
    out.entries.push_back({ViolationKind::stp, d.agent, std::nullopt, std::move(members), u, x, got});
  };

  const bool exhaustive = events.front().universe_size() <= options.exhaustive_state_cap;
  if (exhaustive) {
    for (const auto& [x, candidates] : by_action)
      for_each_disjoint_family(events, candidates,
                               [&](const std::vector<std::size_t>& chosen, const Event& u) { examine(x, chosen, u); });
    return out;
  }

  out.sampled = true;
  std::mt19937_64 rng(options.seed);
  for (const auto& [x, candidates] : by_action) {
    if (candidates.size() < 2) continue;
    std::vector<std::size_t> order = candidates;
    for (std::size_t round = 0; round < options.samples; ++round) {
      std::shuffle(order.begin(), order.end(), rng);
      std::uniform_int_distribution<std::size_t> size_pick(2, order.size());
      const std::size_t want = size_pick(rng);
      std::vector<std::size_t> chosen;
      Event cover(events.front().universe_size());
      for (std::size_t k : order) {
        if (chosen.size() == want) break;
        if (events[k].intersects(cover)) continue;
        chosen.push_back(k);
        cover |= events[k];
      }
      if (chosen.size() >= 2) examine(x, chosen, cover);
    }
  }
  return out;
}

ViolationList check_like_minded(const InformationStructure& s, const DecisionFamily& family) {
  ViolationList out;
  if (family.empty()) return out;
  const DomainKind kind = family.front().kind;
  for (const auto& d : family) {
    if (d.kind != kind) throw InputError("like-mindedness needs decision functions of one kind");
    s.require_agent(d.agent);
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const auto& di = family[i];
      const auto& dj = family[j];
      if (kind == DomainKind::field && di.domain() != dj.domain())
        throw InputError("field-kind decision functions must share one field");
      for (const auto& [e, x] : di.table) {
        const Action* y = dj.find(e);
        if (y != nullptr && *y != x)
          out.entries.push_back({ViolationKind::like_minded, di.agent, dj.agent, {e}, e, x, *y});
      }
    }
  }
  return out;
}

std::map<Event, Action> complete_with_stp(const InformationStructure& s, const Partition& cells,
                                          std::span<const Action> cell_actions, std::span<const Event> domain) {
  if (cells.size() != cell_actions.size()) throw InputError("one action per cell is required");
  if (cells.size() >= 63) throw ResourceError("too many cells");
  std::set<Event> in_domain(domain.begin(), domain.end());
  std::map<Event, Action> forced;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cells.size()); ++mask) {
    if (std::popcount(mask) < 2) continue;
    Event u = s.empty_event();
    const Action* x = nullptr;
    bool uniform = true;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (((mask >> k) & 1U) == 0) continue;
      u |= cells[k];
      if (x == nullptr)
        x = &cell_actions[k];
      else if (*x != cell_actions[k])
        uniform = false;
    }
    if (!uniform) continue;
    if (!in_domain.contains(u))
      throw DomainError("the sure-thing principle needs a decision on '" + s.canonical(u) +
                        "', which is outside the decision domain");
    forced.emplace(u, *x);
  }
  return forced;
}

std::vector<Event> power_set_field(const InformationStructure& s) {
  const std::size_t n = s.num_states();
  if (n > 20) throw ResourceError("power-set field over more than 20 states");
  std::vector<Event> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) out.push_back(Event::from_mask(n, mask));
  std::sort(out.begin(), out.end(), CanonicalLess{&s});
  return out;
}

// ---------------------------------------------------------------------------
// FamilyEnumerator

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t exponent, std::uint64_t cap, const char* what) {
  std::uint64_t out = 1;
  for (std::size_t k = 0; k < exponent; ++k) {
    if (out > cap / base)
      throw ResourceError(std::string(what) + " exceeds the enumeration cap of " + std::to_string(cap));
    out *= base;
  }
  return out;
}

/// Calls visit(table) for every assignment of `actions` actions to `width`
/// positions, last position fastest.
template <typename Visit>
void odometer(std::size_t width, std::size_t actions, Visit&& visit) {
  std::vector<std::uint32_t> table(width, 0);
  while (true) {
    visit(table);
    std::size_t k = width;
    while (k > 0) {
      --k;
      if (++table[k] < actions) break;
      table[k] = 0;
      if (k == 0) return;
    }
    if (width == 0) return;
  }
}

}  // namespace

FamilyEnumerator::FamilyEnumerator(const InformationStructure& s, std::vector<Action> actions,
                                   ProfileConstraints constraints, EnumerationOptions options)
    : structure_(&s), actions_(make_action_set(std::move(actions))), constraints_(constraints), kind_(options.kind) {
  const std::size_t agents = s.num_agents();
  const std::size_t n_actions = actions_.size();

  if (kind_ == DomainKind::gamma) {
    for (std::size_t a = 0; a < agents; ++a) domains_.push_back(gamma(s, agent_at(a), options.limits));
  } else {
    std::vector<Event> field = options.field.empty() ? power_set_field(s) : options.field;
    for (const auto& e : field) {
      s.require_event(e);
      if (e.empty()) throw InputError("a decision field cannot contain the empty event");
    }
    std::sort(field.begin(), field.end(), CanonicalLess{&s});
    field.erase(std::unique(field.begin(), field.end()), field.end());
    domains_.assign(agents, field);
  }

  for (std::size_t a = 0; a < agents; ++a) {
    const auto& domain = domains_[a];
    checked_power(n_actions, domain.size(), options.max_tables_per_agent, "tables per agent");
    std::vector<Table> tables;

    if (kind_ == DomainKind::field && a > 0) {
      tables = tables_.front();
    } else if (kind_ == DomainKind::gamma && constraints_.stp) {
      // Assign actions to cells, fill the forced unions, and leave unions of
      // mixed cells free.
      const Partition cells = partition(s, agent_at(a));
      std::vector<std::size_t> cell_pos;
      std::vector<std::uint64_t> members(domain.size(), 0);
      for (std::size_t p = 0; p < domain.size(); ++p)
        for (std::size_t c = 0; c < cells.size(); ++c)
          if (cells[c].is_subset_of(domain[p])) members[p] |= std::uint64_t{1} << c;
      for (const auto& cell : cells)
        cell_pos.push_back(static_cast<std::size_t>(std::find(domain.begin(), domain.end(), cell) - domain.begin()));

      odometer(cells.size(), n_actions, [&](const std::vector<std::uint32_t>& cell_actions) {
        Table base(domain.size(), 0);
        std::vector<std::size_t> free;
        for (std::size_t p = 0; p < domain.size(); ++p) {
          std::optional<std::uint32_t> x;
          bool uniform = true;
          for (std::size_t c = 0; c < cells.size(); ++c) {
            if (((members[p] >> c) & 1U) == 0) continue;
            if (!x)
              x = cell_actions[c];
            else if (*x != cell_actions[c])
              uniform = false;
          }
          if (uniform)
            base[p] = *x;
          else
            free.push_back(p);
        }
        odometer(free.size(), n_actions, [&](const std::vector<std::uint32_t>& choice) {
          Table t = base;
          for (std::size_t f = 0; f < free.size(); ++f) t[free[f]] = choice[f];
          tables.push_back(std::move(t));
        });
      });
      std::sort(tables.begin(), tables.end());
    } else if (kind_ == DomainKind::field && constraints_.stp) {
      // Precompute the disjoint families with a union in the field.
      std::unordered_map<Event, std::size_t> position;
      for (std::size_t p = 0; p < domain.size(); ++p) position.emplace(domain[p], p);
      std::vector<std::size_t> all(domain.size());
      for (std::size_t p = 0; p < domain.size(); ++p) all[p] = p;
      std::vector<std::pair<std::vector<std::size_t>, std::size_t>> families;
      for_each_disjoint_family(domain, all, [&](const std::vector<std::size_t>& chosen, const Event& u) {
        auto it = position.find(u);
        if (it == position.end()) return;
        if (families.size() >= options.max_tables_per_agent)
          throw ResourceError("too many disjoint families in the field");
        families.emplace_back(chosen, it->second);
      });
      odometer(domain.size(), n_actions, [&](const std::vector<std::uint32_t>& t) {
        for (const auto& [chosen, u] : families) {
          const std::uint32_t x = t[chosen.front()];
          bool uniform = true;
          for (std::size_t k : chosen) uniform = uniform && t[k] == x;
          if (uniform && t[u] != x) return;
        }
        tables.push_back(t);
      });
    } else {
      odometer(domain.size(), n_actions, [&](const std::vector<std::uint32_t>& t) { tables.push_back(t); });
    }
    tables_.push_back(std::move(tables));
  }

  diagonal_ = kind_ == DomainKind::field && constraints_.like_minded;
  if (kind_ == DomainKind::gamma && constraints_.like_minded) {
    for (std::size_t i = 0; i < agents; ++i)
      for (std::size_t j = i + 1; j < agents; ++j)
        for (std::size_t p = 0; p < domains_[i].size(); ++p) {
          auto it = std::find(domains_[j].begin(), domains_[j].end(), domains_[i][p]);
          if (it != domains_[j].end())
            shared_.push_back({i, p, j, static_cast<std::size_t>(it - domains_[j].begin())});
        }
  }

  if (diagonal_) {
    index_space_ = tables_.front().size();
  } else {
    index_space_ = 1;
    for (const auto& t : tables_) {
      if (t.empty()) {
        index_space_ = 0;
        break;
      }
      if (index_space_ > options.max_families / t.size())
        throw ResourceError("decision family space exceeds the enumeration cap of " +
                            std::to_string(options.max_families));
      index_space_ *= t.size();
    }
  }
}

bool FamilyEnumerator::accepts(const std::vector<const Table*>& chosen) const {
  for (const auto& sh : shared_)
    if ((*chosen[sh.agent_i])[sh.pos_i] != (*chosen[sh.agent_j])[sh.pos_j]) return false;
  return true;
}

DecisionFamily FamilyEnumerator::materialize(const std::vector<const Table*>& chosen) const {
  DecisionFamily family;
  for (std::size_t a = 0; a < chosen.size(); ++a) {
    DecisionFunction d{agent_at(a), kind_, {}};
    for (std::size_t p = 0; p < domains_[a].size(); ++p) d.table.emplace(domains_[a][p], actions_[(*chosen[a])[p]]);
    family.push_back(std::move(d));
  }
  return family;
}

std::optional<DecisionFamily> FamilyEnumerator::at(std::uint64_t index) const {
  if (index >= index_space_) return std::nullopt;
  std::vector<const Table*> chosen(tables_.size());
  if (diagonal_) {
    for (auto& c : chosen) c = &tables_.front()[index];
  } else {
    for (std::size_t a = tables_.size(); a-- > 0;) {
      chosen[a] = &tables_[a][index % tables_[a].size()];
      index /= tables_[a].size();
    }
  }
  if (!accepts(chosen)) return std::nullopt;
  return materialize(chosen);
}

std::optional<DecisionFamily> FamilyEnumerator::next() {
  while (cursor_ < index_space_) {
    if (auto f = at(cursor_++)) return f;
  }
  return std::nullopt;
}

FamilyEnumerator enumerate_decision_profiles(const InformationStructure& s, std::vector<Action> actions,
                                             ProfileConstraints constraints, EnumerationOptions options) {
  return FamilyEnumerator(s, std::move(actions), constraints, std::move(options));
}

}  // namespace epistemic
