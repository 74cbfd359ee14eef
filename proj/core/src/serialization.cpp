#include "epistemic/serialization.hpp"

#include <cstdint>
#include <cstdio>
#include <map>
#include <set>

#include "json.hpp"

#include "epistemic/errors.hpp"

namespace epistemic {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json structure_body(const InformationStructure& s) {
  ordered_json doc;
  doc["version"] = kFormatVersion;
  doc["states"] = s.state_names();
  doc["agents"] = s.agent_names();
  ordered_json relations = ordered_json::object();
  for (std::size_t a = 0; a < s.num_agents(); ++a) {
    ordered_json pairs = ordered_json::array();
    for (const auto& [from, to] : s.relation_pairs(agent_at(a))) pairs.push_back({from, to});
    relations[s.name(agent_at(a))] = std::move(pairs);
  }
  doc["relations"] = std::move(relations);
  return doc;
}

std::string emit(const ordered_json& doc) { return doc.dump(2) + "\n"; }

const ordered_json& member(const ordered_json& obj, const char* key, const char* context) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(std::string(context) + " is missing \"" + key + "\"");
  return *it;
}

std::string as_string(const ordered_json& v, const char* context) {
  if (!v.is_string()) throw InputError(std::string(context) + " must be a string");
  return v.get<std::string>();
}

std::vector<std::string> as_string_list(const ordered_json& v, const char* context) {
  if (!v.is_array()) throw InputError(std::string(context) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : v) out.push_back(as_string(item, context));
  return out;
}

void require_version(const ordered_json& doc) {
  const auto& v = member(doc, "version", "document");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
    throw InputError("unsupported document version (expected " + std::to_string(kFormatVersion) + ")");
}

void reject_unknown_keys(const ordered_json& obj, std::initializer_list<const char*> allowed, const char* context) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) throw InputError(std::string(context) + " has unknown key \"" + it.key() + "\"");
  }
}

std::vector<std::string> unique_names(std::vector<std::string> names, const char* what) {
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) throw InputError(std::string("duplicate ") + what + " name '" + n + "'");
  return names;
}

ordered_json parse_json(std::string_view text) {
  try {
    return ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace

std::string serialize_structure(const InformationStructure& s) { return emit(structure_body(s)); }

std::string serialize_structure(const CounterfactualStructure& c) {
  const InformationStructure& s = c.structure();
  const InformationStructure source = c.restriction();
  ordered_json doc = structure_body(s);
  ordered_json labels = ordered_json::array();
  for (StateId l : c.counterfactual_states()) {
    const auto& label = *c.label(l);
    ordered_json entry;
    entry["state"] = s.name(l);
    entry["agent"] = s.name(label.agent);
    entry["base"] = source.name(label.base);
    entry["event"] = source.canonical(label.event);
    labels.push_back(std::move(entry));
  }
  doc["provenance"] = {{"origin_hash", c.origin_hash()}, {"labels", std::move(labels)}};
  return emit(doc);
}

ParsedStructure parse_structure(std::string_view text) {
  const ordered_json doc = parse_json(text);
  if (!doc.is_object()) throw InputError("structure document must be a JSON object");
  reject_unknown_keys(doc, {"version", "states", "agents", "relations", "provenance"}, "structure document");
  require_version(doc);
  auto states = unique_names(as_string_list(member(doc, "states", "structure document"), "states"), "state");
  auto agents = unique_names(as_string_list(member(doc, "agents", "structure document"), "agents"), "agent");

  const auto& rel = member(doc, "relations", "structure document");
  if (!rel.is_object()) throw InputError("relations must be an object keyed by agent");
  std::map<std::string, std::vector<NamePair>> relations;
  for (auto it = rel.begin(); it != rel.end(); ++it) {
    if (!it.value().is_array()) throw InputError("relation of agent '" + it.key() + "' must be an array of pairs");
    auto& pairs = relations[it.key()];
    for (const auto& p : it.value()) {
      if (!p.is_array() || p.size() != 2)
        throw InputError("relation of agent '" + it.key() + "' has an entry that is not a [from, to] pair");
      pairs.emplace_back(as_string(p[0], "relation endpoint"), as_string(p[1], "relation endpoint"));
    }
  }
  auto prov = doc.find("provenance");
  InformationStructure s(std::move(states), std::move(agents), relations,
                         prov == doc.end() ? StateNames::plain : StateNames::with_duplicates);

  if (prov == doc.end()) return s;
  if (!prov->is_object()) throw InputError("provenance must be an object");
  reject_unknown_keys(*prov, {"origin_hash", "labels"}, "provenance");
  const std::string origin = as_string(member(*prov, "origin_hash", "provenance"), "origin_hash");
  const auto& label_list = member(*prov, "labels", "provenance");
  if (!label_list.is_array()) throw InputError("provenance labels must be an array");

  struct RawLabel {
    StateId state;
    AgentId agent;
    std::string base;
    std::string event;
  };
  std::vector<RawLabel> raw;
  Event labelled(s.num_states());
  for (const auto& entry : label_list) {
    if (!entry.is_object()) throw InputError("provenance label must be an object");
    reject_unknown_keys(entry, {"state", "agent", "base", "event"}, "provenance label");
    const StateId state = s.state(as_string(member(entry, "state", "label"), "label state"));
    if (labelled.contains(index_of(state))) throw InputError("state '" + s.name(state) + "' is labelled twice");
    labelled.insert(index_of(state));
    raw.push_back({state, s.agent(as_string(member(entry, "agent", "label"), "label agent")),
                   as_string(member(entry, "base", "label"), "label base"),
                   as_string(member(entry, "event", "label"), "label event")});
  }
  const InformationStructure source = s.restrict_to(~labelled);
  std::map<StateId, CounterfactualLabel> labels;
  for (const auto& r : raw) labels.emplace(r.state, CounterfactualLabel{r.agent, source.state(r.base), source.parse_event(r.event)});
  return CounterfactualStructure::from_parts(std::move(s), std::move(labels), origin);
}

const InformationStructure& underlying(const ParsedStructure& parsed) {
  if (const auto* c = std::get_if<CounterfactualStructure>(&parsed)) return c->structure();
  return std::get<InformationStructure>(parsed);
}

std::string structure_hash(const InformationStructure& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_structure(s)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

std::string serialize_decisions(const InformationStructure& s, const DecisionDocument& doc) {
  ordered_json out;
  out["version"] = kFormatVersion;
  out["actions"] = make_action_set(doc.actions);
  ordered_json agents = ordered_json::object();
  std::vector<const DecisionFunction*> by_agent;
  for (const auto& d : doc.family) by_agent.push_back(&d);
  std::sort(by_agent.begin(), by_agent.end(),
            [&](const auto* a, const auto* b) { return s.name(a->agent) < s.name(b->agent); });
  for (const DecisionFunction* d : by_agent) {
    std::map<std::string, std::string> table;  // canonical order
    for (const auto& [e, a] : d->table) table.emplace(s.canonical(e), a);
    ordered_json t = ordered_json::object();
    for (const auto& [e, a] : table) t[e] = a;
    agents[s.name(d->agent)] = {{"kind", std::string(to_string(d->kind))}, {"table", std::move(t)}};
  }
  out["agents"] = std::move(agents);
  return emit(out);
}

DecisionDocument parse_decisions(std::string_view text, const InformationStructure& s) {
  const ordered_json doc = parse_json(text);
  if (!doc.is_object()) throw InputError("decision document must be a JSON object");
  reject_unknown_keys(doc, {"version", "actions", "agents"}, "decision document");
  require_version(doc);
  DecisionDocument out;
  auto declared = unique_names(as_string_list(member(doc, "actions", "decision document"), "actions"), "action");
  out.actions = make_action_set(declared);
  const std::set<Action> known(out.actions.begin(), out.actions.end());

  const auto& agents = member(doc, "agents", "decision document");
  if (!agents.is_object()) throw InputError("agents must be an object keyed by agent");
  for (auto it = agents.begin(); it != agents.end(); ++it) s.agent(it.key());
  for (std::size_t a = 0; a < s.num_agents(); ++a) {
    const std::string& name = s.name(agent_at(a));
    auto entry = agents.find(name);
    if (entry == agents.end()) throw InputError("no decision function for agent '" + name + "'");
    if (!entry->is_object()) throw InputError("decision function of agent '" + name + "' must be an object");
    reject_unknown_keys(*entry, {"kind", "table"}, "decision function");
    DecisionFunction d{agent_at(a), parse_domain_kind(as_string(member(*entry, "kind", "decision function"), "kind")),
                       {}};
    const auto& table = member(*entry, "table", "decision function");
    if (!table.is_object()) throw InputError("decision table of agent '" + name + "' must be an object");
    for (auto t = table.begin(); t != table.end(); ++t) {
      const Event e = s.parse_event(t.key());
      if (e.empty()) throw InputError("decision table of agent '" + name + "' decides on the empty event");
      if (s.canonical(e) != t.key())
        throw InputError("event key '" + t.key() + "' is not in canonical form ('" + s.canonical(e) + "')");
      const Action action = as_string(t.value(), "table action");
      if (!known.contains(action)) throw InputError("action '" + action + "' is not declared");
      if (!d.table.emplace(e, action).second) throw InputError("event '" + t.key() + "' appears twice");
    }
    out.family.push_back(std::move(d));
  }
  return out;
}

}  // namespace epistemic
