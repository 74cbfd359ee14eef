#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "epistemic/agreement.hpp"
#include "epistemic/counterfactual.hpp"
#include "epistemic/decision.hpp"
#include "epistemic/errors.hpp"
#include "epistemic/kripke.hpp"
#include "epistemic/partition.hpp"
#include "epistemic/serialization.hpp"
#include "json.hpp"

namespace epistemic::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  std::ostream& out;
  bool json = false;
  Limits limits{};
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

std::string show(const InformationStructure& s, const Event& e) { return e.empty() ? "{}" : s.canonical(e); }

void emit_json(Context& ctx, const ordered_json& j) { ctx.out << j.dump(2) << "\n"; }

// Events over a counterfactual structure: actual states by name, duplicates by count.
std::string summarize(const InformationStructure& s, const CounterfactualStructure* c, const Event& e) {
  if (c == nullptr) return show(s, e);
  const Event actual = e & c->actual();
  const std::size_t duplicates = e.count() - actual.count();
  std::string out = show(c->restriction(), c->project(e));
  if (duplicates > 0) out += " and " + std::to_string(duplicates) + " duplicate" + (duplicates == 1 ? "" : "s");
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// The actual-state structure: the source of a counterfactual document, or the document itself.
InformationStructure actual_structure(const ParsedStructure& parsed) {
  if (const auto* c = std::get_if<CounterfactualStructure>(&parsed)) return c->restriction();
  return std::get<InformationStructure>(parsed);
}

Group parse_group(const InformationStructure& s, const std::vector<std::string>& names) {
  return names.empty() ? s.all_agents() : s.group(names);
}

ordered_json violations_json(const InformationStructure& s, const ViolationList& list) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : list.entries) {
    ordered_json j;
    j["kind"] = std::string(to_string(v.kind));
    j["agent"] = s.name(v.agent);
    if (v.other) j["other"] = s.name(*v.other);
    ordered_json w = ordered_json::array();
    for (const auto& e : v.witnesses) w.push_back(s.canonical(e));
    j["witnesses"] = std::move(w);
    j["target"] = s.canonical(v.target);
    j["expected"] = v.expected;
    j["actual"] = v.actual;
    arr.push_back(std::move(j));
  }
  return arr;
}

void print_violations(Context& ctx, const InformationStructure& s, const ViolationList& list) {
  for (const auto& v : list.entries) {
    if (v.kind == ViolationKind::stp) {
      ctx.out << "stp: agent " << s.name(v.agent) << " chooses " << v.expected << " on";
      for (const auto& e : v.witnesses) ctx.out << " " << s.canonical(e);
      ctx.out << " but " << v.actual << " on " << s.canonical(v.target) << "\n";
    } else {
      ctx.out << "like-minded: on " << s.canonical(v.target) << " agent " << s.name(v.agent) << " chooses "
              << v.expected << " but agent " << s.name(*v.other) << " chooses " << v.actual << "\n";
    }
  }
  if (list.sampled) ctx.out << "(field disjoint families were sampled)\n";
}

// validate -----------------------------------------------------------------

int cmd_validate(Context& ctx, const std::string& path, const std::string& verify_source) {
  const ParsedStructure parsed = parse_structure(read_file(path));
  const InformationStructure& s = underlying(parsed);
  const PropertyReport report = relation_properties(s);
  const auto* cf = std::get_if<CounterfactualStructure>(&parsed);

  std::optional<EuclideanCounterexample> euclid;
  std::optional<AxiomCounterexample> five;
  if (report.classification != Classification::partitional && report.classification != Classification::belief) {
    euclid = find_euclidean_counterexample(s);
    five = find_axiom_counterexample(s, Axiom::Five);
  }

  std::optional<VerificationReport> verification;
  if (!verify_source.empty()) {
    if (cf == nullptr) throw InputError("--verify needs a counterfactual document (one with provenance)");
    const ParsedStructure source = parse_structure(read_file(verify_source));
    if (std::holds_alternative<CounterfactualStructure>(source))
      throw InputError("the --verify source must be a plain structure document");
    VerifyOptions opts;
    opts.limits = ctx.limits;
    verification = verify_counterfactual(std::get<InformationStructure>(source), *cf, opts);
  }

  if (ctx.json) {
    ordered_json j;
    ordered_json agents = ordered_json::array();
    for (std::size_t a = 0; a < s.num_agents(); ++a) {
      const auto& p = report.agents[a];
      agents.push_back({{"agent", s.name(agent_at(a))},
                        {"serial", p.serial},
                        {"reflexive", p.reflexive},
                        {"transitive", p.transitive},
                        {"euclidean", p.euclidean}});
    }
    j["agents"] = std::move(agents);
    j["classification"] = std::string(to_string(report.classification));
    if (cf != nullptr) j["counterfactual_states"] = cf->counterfactual_states().size();
    if (euclid)
      j["euclidean_counterexample"] = {{"agent", s.name(euclid->agent)},
                                       {"from", s.name(euclid->from)},
                                       {"left", s.name(euclid->left)},
                                       {"right", s.name(euclid->right)}};
    if (five)
      j["negative_introspection_counterexample"] = {
          {"agent", s.name(five->agent)}, {"event", s.canonical(five->e)}, {"state", s.name(five->state)}};
    if (verification) {
      ordered_json checks = ordered_json::array();
      for (const auto& c : verification->checks)
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"informational", c.informational},
                          {"cases", c.cases},
                          {"failures", c.failures},
                          {"witness", c.witness}});
      j["verification"] = {{"passed", verification->passed()}, {"checks", std::move(checks)}};
    }
    emit_json(ctx, j);
  } else {
    ctx.out << std::left << std::setw(12) << "agent" << std::setw(8) << "serial" << std::setw(11) << "reflexive"
            << std::setw(12) << "transitive"
            << "euclidean\n";
    for (std::size_t a = 0; a < s.num_agents(); ++a) {
      const auto& p = report.agents[a];
      ctx.out << std::setw(12) << s.name(agent_at(a)) << std::setw(8) << yes_no(p.serial) << std::setw(11)
              << yes_no(p.reflexive) << std::setw(12) << yes_no(p.transitive) << yes_no(p.euclidean) << "\n";
    }
    ctx.out << "classification: " << to_string(report.classification) << "\n";
    if (cf != nullptr)
      ctx.out << "states: " << s.num_states() << " (" << cf->counterfactual_states().size() << " counterfactual)\n";
    if (euclid)
      ctx.out << "euclidean counterexample: agent " << s.name(euclid->agent) << ", " << s.name(euclid->from)
              << " reaches " << s.name(euclid->left) << " and " << s.name(euclid->right) << " but "
              << s.name(euclid->left) << " does not reach " << s.name(euclid->right) << "\n";
    if (five)
      ctx.out << "negative introspection fails: agent " << s.name(five->agent) << " at " << s.name(five->state)
              << " for event " << show(s, five->e) << "\n";
    if (verification) {
      for (const auto& c : verification->checks) {
        ctx.out << (c.passed ? "ok      " : (c.informational ? "note    " : "FAILED  ")) << c.name << " (" << c.cases
                << " cases";
        if (c.failures > 0) ctx.out << ", " << c.failures << " failures";
        ctx.out << ")";
        if (!c.witness.empty()) ctx.out << ": " << c.witness;
        ctx.out << "\n";
      }
      ctx.out << "verification: " << (verification->passed() ? "passed" : "failed") << "\n";
    }
  }
  return verification && !verification->passed() ? kFail : kPass;
}

// counterfactual -----------------------------------------------------------

int cmd_counterfactual(Context& ctx, const std::string& path, const std::string& output) {
  const ParsedStructure parsed = parse_structure(read_file(path));
  const CounterfactualStructure c = build_counterfactual(underlying(parsed), ctx.limits);
  const std::string text = serialize_structure(c);
  if (output.empty()) {
    ctx.out << text;
    return kPass;
  }
  write_file(output, text);
  if (ctx.json) {
    emit_json(ctx, {{"output", output},
                    {"states", c.structure().num_states()},
                    {"counterfactual_states", c.counterfactual_states().size()},
                    {"origin_hash", c.origin_hash()}});
  } else {
    ctx.out << "wrote " << output << ": " << c.structure().num_states() << " states ("
            << c.counterfactual_states().size() << " counterfactual)\n";
  }
  return kPass;
}

// query --------------------------------------------------------------------

struct QueryArgs {
  std::string op;
  std::string agent;
  std::string state;
  std::vector<std::string> group;
  std::vector<std::string> event;
  bool event_given = false;
  std::string reading = "include-self";
};

int cmd_query(Context& ctx, const std::string& path, const QueryArgs& q) {
  const ParsedStructure parsed = parse_structure(read_file(path));
  const InformationStructure& s = underlying(parsed);
  auto need = [&](bool present, const char* flag) {
    if (!present) throw UsageError("--op " + q.op + " needs " + flag);
  };
  Event result = s.empty_event();
  if (q.op == "possibility") {
    need(!q.agent.empty(), "--agent");
    need(!q.state.empty(), "--state");
    result = possibility_set(s, s.agent(q.agent), s.state(q.state));
  } else if (q.op == "belief") {
    need(!q.agent.empty(), "--agent");
    need(q.event_given, "--event");
    result = belief(s, s.agent(q.agent), s.event(q.event));
  } else if (q.op == "mutual") {
    need(q.event_given, "--event");
    result = mutual_belief(s, parse_group(s, q.group), s.event(q.event));
  } else if (q.op == "common") {
    need(q.event_given, "--event");
    result = common_belief_component(s, parse_group(s, q.group), s.event(q.event));
  } else {
    need(!q.state.empty(), "--state");
    const Reachability reading =
        q.reading == "successors-only" ? Reachability::successors_only : Reachability::include_self;
    result = component(s, parse_group(s, q.group), s.state(q.state), reading);
  }
  if (ctx.json) {
    ordered_json states = ordered_json::array();
    result.for_each([&](std::size_t w) { states.push_back(s.name(state_at(w))); });
    emit_json(ctx, {{"op", q.op}, {"event", s.canonical(result)}, {"states", std::move(states)}});
  } else {
    ctx.out << s.canonical(result) << "\n";
  }
  return kPass;
}

// decisions ----------------------------------------------------------------

struct Loaded {
  ParsedStructure parsed;
  InformationStructure source;
  DecisionDocument doc;
};

Loaded load(Context& ctx, const std::string& structure_path, const std::string& decisions_path) {
  ParsedStructure parsed = parse_structure(read_file(structure_path));
  InformationStructure source = actual_structure(parsed);
  DecisionDocument doc = parse_decisions(read_file(decisions_path), source);
  validate_family(source, doc.family, ctx.limits);
  return {std::move(parsed), std::move(source), std::move(doc)};
}

int report_violations(Context& ctx, const InformationStructure& s, const ViolationList& list, const char* what) {
  if (ctx.json) {
    emit_json(ctx, {{"check", what},
                    {"passed", list.empty()},
                    {"sampled", list.sampled},
                    {"violations", violations_json(s, list)}});
  } else {
    print_violations(ctx, s, list);
    ctx.out << what << ": " << (list.empty() ? "passed" : "failed") << " (" << list.size() << " violations)\n";
  }
  return list.empty() ? kPass : kFail;
}

int cmd_check_stp(Context& ctx, const std::string& structure_path, const std::string& decisions_path) {
  const Loaded in = load(ctx, structure_path, decisions_path);
  ViolationList all;
  for (const auto& d : in.doc.family) {
    ViolationList part = d.kind == DomainKind::gamma ? check_stp_gamma(in.source, d, ctx.limits)
                                                     : check_stp_field(d.domain(), d);
    all.sampled = all.sampled || part.sampled;
    for (auto& v : part.entries) all.entries.push_back(std::move(v));
  }
  return report_violations(ctx, in.source, all, "stp");
}

int cmd_check_like_minded(Context& ctx, const std::string& structure_path, const std::string& decisions_path) {
  const Loaded in = load(ctx, structure_path, decisions_path);
  return report_violations(ctx, in.source, check_like_minded(in.source, in.doc.family), "like-minded");
}

ordered_json profile_json(const InformationStructure& s, const ActionProfile& p) {
  ordered_json j = ordered_json::object();
  for (const auto& [agent, action] : p.assignments) j[s.name(agent)] = action;
  return j;
}

std::string profile_text(const InformationStructure& s, const ActionProfile& p) {
  std::string out;
  for (const auto& [agent, action] : p.assignments) {
    if (!out.empty()) out += " ";
    out += s.name(agent) + "=" + action;
  }
  return out;
}

int cmd_check_agreement(Context& ctx, const std::string& structure_path, const std::string& decisions_path,
                        const std::vector<std::string>& group_names, bool no_prune) {
  const Loaded in = load(ctx, structure_path, decisions_path);
  if (in.doc.family.empty()) throw InputError("decision document has no agents");
  const DomainKind kind = in.doc.family.front().kind;
  AgreementOptions opts;
  opts.prune = !no_prune;
  opts.limits = ctx.limits;

  std::optional<CounterfactualStructure> built;
  const InformationStructure* ambient = nullptr;
  AgreementVerdict verdict;
  if (kind == DomainKind::field) {
    if (std::holds_alternative<CounterfactualStructure>(in.parsed))
      throw InputError("field-kind decisions are checked on a partitional structure, not a counterfactual one");
    ambient = &in.source;
    verdict = check_agreement(in.source, in.doc.family, parse_group(in.source, group_names), opts);
  } else {
    if (const auto* c = std::get_if<CounterfactualStructure>(&in.parsed)) {
      built = *c;
    } else {
      built = build_counterfactual(in.source, ctx.limits);
    }
    ambient = &built->structure();
    verdict = check_agreement(*built, in.doc.family, parse_group(in.source, group_names), opts);
  }
  const InformationStructure& s = *ambient;
  const CounterfactualStructure* cf = built ? &*built : nullptr;

  if (ctx.json) {
    ordered_json group = ordered_json::array();
    for (AgentId a : verdict.group) group.push_back(s.name(a));
    ordered_json violations = ordered_json::array();
    for (const auto& v : verdict.violations)
      violations.push_back({{"profile", profile_json(s, v.profile)},
                            {"witness", s.name(v.witness)},
                            {"agreement_event", s.canonical(v.agreement_event)},
                            {"common_belief", s.canonical(v.common_belief)}});
    emit_json(ctx, {{"mode", std::string(to_string(verdict.mode))},
                    {"group", std::move(group)},
                    {"profiles_checked", verdict.profiles_checked},
                    {"hypotheses_met", verdict.hypotheses_met},
                    {"hypothesis_violations", violations_json(in.source, verdict.hypothesis_violations)},
                    {"violations", std::move(violations)},
                    {"passed", verdict.passed}});
  } else {
    ctx.out << "mode: " << to_string(verdict.mode) << "\n";
    ctx.out << "profiles checked: " << verdict.profiles_checked << "\n";
    ctx.out << "hypotheses: " << (verdict.hypotheses_met ? "met" : "not met") << "\n";
    print_violations(ctx, in.source, verdict.hypothesis_violations);
    for (const auto& v : verdict.violations)
      ctx.out << "commonly believed disagreement: " << profile_text(s, v.profile) << " at " << s.name(v.witness)
              << ", agreement event " << summarize(s, cf, v.agreement_event) << ", common belief "
              << summarize(s, cf, v.common_belief) << "\n";
    ctx.out << "agreement: " << (verdict.passed ? "passed" : "failed") << "\n";
  }
  return verdict.passed ? kPass : kFail;
}

// search -------------------------------------------------------------------

struct SearchArgs {
  std::size_t actions = 2;
  std::vector<std::string> relax;
  std::string mode = "theorem2";
  std::vector<std::string> group;
  unsigned threads = 1;
};

int cmd_search(Context& ctx, const std::string& path, const SearchArgs& a) {
  const ParsedStructure parsed = parse_structure(read_file(path));
  const InformationStructure source = actual_structure(parsed);
  Relaxation relax;
  for (const auto& r : a.relax) {
    if (r == "stp") {
      relax.stp = true;
    } else if (r == "like_minded" || r == "like-minded") {
      relax.like_minded = true;
    } else {
      throw UsageError("unknown hypothesis '" + r + "' (expected stp or like_minded)");
    }
  }
  SearchOptions opts;
  opts.mode = parse_theorem_mode(a.mode);
  opts.threads = a.threads;
  opts.enumeration.limits = ctx.limits;
  if (!a.group.empty()) opts.group = source.group(a.group);
  const std::vector<Action> actions = numbered_actions(a.actions);

  std::optional<CounterfactualStructure> c;
  SearchResult result;
  if (opts.mode == TheoremMode::theorem2) {
    if (const auto* given = std::get_if<CounterfactualStructure>(&parsed)) {
      c = *given;
    } else {
      c = build_counterfactual(source, ctx.limits);
    }
    result = search_disagreement(*c, actions, relax, opts);
  } else {
    if (std::holds_alternative<CounterfactualStructure>(parsed))
      throw InputError("theorem1 search needs a partitional structure");
    result = search_disagreement(source, actions, relax, opts);
  }
  const InformationStructure& ambient = c ? c->structure() : source;

  if (ctx.json) {
    ordered_json j;
    j["families_checked"] = result.families_checked;
    if (result.witness) {
      const auto& w = *result.witness;
      ordered_json group = ordered_json::array();
      for (AgentId g : w.group) group.push_back(ambient.name(g));
      j["witness"] = {{"mode", std::string(to_string(w.mode))},
                      {"family_index", w.family_index},
                      {"group", std::move(group)},
                      {"profile", profile_json(ambient, w.profile)},
                      {"agreement_event", ambient.canonical(w.agreement_event)},
                      {"common_belief", ambient.canonical(w.common_belief)},
                      {"decisions", ordered_json::parse(serialize_decisions(source, {actions, w.family}))}};
    } else {
      j["witness"] = nullptr;
    }
    emit_json(ctx, j);
  } else if (result.witness) {
    const auto& w = *result.witness;
    ctx.out << "witness: family " << w.family_index << " (" << result.families_checked << " families checked)\n";
    ctx.out << "mode: " << to_string(w.mode) << "\n";
    ctx.out << "profile: " << profile_text(ambient, w.profile) << "\n";
    const CounterfactualStructure* cf = c ? &*c : nullptr;
    ctx.out << "agreement event: " << summarize(ambient, cf, w.agreement_event) << "\n";
    ctx.out << "common belief: " << summarize(ambient, cf, w.common_belief) << "\n";
    ctx.out << "decisions:\n" << serialize_decisions(source, {actions, w.family});
  } else {
    ctx.out << "no witness (" << result.families_checked << " families checked)\n";
  }
  return result.witness ? kFail : kPass;
}

// flaws --------------------------------------------------------------------

int cmd_flaws(Context& ctx, const std::string& path) {
  const ParsedStructure parsed = parse_structure(read_file(path));
  const InformationStructure& s = underlying(parsed);
  require_partitional(s, "flaws");
  const CounterfactualStructure c = build_counterfactual(s, ctx.limits);
  const InformationStructure& cs = c.structure();

  bool resolved = true;
  ordered_json agents = ordered_json::array();
  for (std::size_t i = 0; i < s.num_agents(); ++i) {
    const AgentId agent = agent_at(i);
    const FlawReport report = flaw_report(s, agent, ctx.limits);
    ordered_json beliefs = ordered_json::array();
    if (!ctx.json) ctx.out << "agent " << s.name(agent) << "\n";
    for (const Event& e : report.not_possible_beliefs) {
      // Any duplicate of a state inside e realizes e; report the first.
      const StateId base = state_at(e.first());
      const StateId lambda = counterfactual_state(c, agent, base, e);
      const bool ok = possibility_set(cs, agent, lambda) == c.lift(e) &&
                      is_possible_belief(cs, agent, c.lift(e));
      resolved = resolved && ok;
      if (ctx.json) {
        beliefs.push_back({{"event", s.canonical(e)}, {"witness", cs.name(lambda)}, {"resolved", ok}});
      } else {
        ctx.out << "  not a possible belief: " << s.canonical(e) << "; counterfactually held at " << cs.name(lambda)
                << (ok ? "" : " (NOT RESOLVED)") << "\n";
      }
    }
    ordered_json conflicts = ordered_json::array();
    for (const auto& conflict : report.cross_agent_conflicts) {
      if (ctx.json) {
        conflicts.push_back({{"other", s.name(conflict.other)}, {"cell", s.canonical(conflict.cell)}});
      } else {
        ctx.out << "  cell " << s.canonical(conflict.cell) << " of agent " << s.name(conflict.other)
                << " is not a possible belief\n";
      }
    }
    if (ctx.json)
      agents.push_back({{"agent", s.name(agent)},
                        {"not_possible_beliefs", std::move(beliefs)},
                        {"cross_agent_conflicts", std::move(conflicts)}});
  }
  if (ctx.json) {
    emit_json(ctx, {{"agents", std::move(agents)}, {"resolved", resolved}});
  } else {
    ctx.out << "counterfactual resolution: " << (resolved ? "confirmed" : "failed") << "\n";
  }
  return resolved ? kPass : kFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite information structures, counterfactual extensions and agreement checks", "epistemic"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable output");

  std::string structure_path, decisions_path, output, verify_source;
  std::vector<std::string> group;

  auto* validate = app.add_subcommand("validate", "Relation properties and classification");
  validate->add_option("structure", structure_path)->required();
  validate->add_option("--verify", verify_source, "Verify a counterfactual document against its source");

  auto* counterfactual = app.add_subcommand("counterfactual", "Build the counterfactual extension");
  counterfactual->add_option("structure", structure_path)->required();
  counterfactual->add_option("-o,--output", output, "Output file (default: stdout)");

  QueryArgs q;
  auto* query = app.add_subcommand("query", "Evaluate an operator; prints a canonical event");
  query->add_option("structure", structure_path)->required();
  query->add_option("--op", q.op)
      ->required()
      ->check(CLI::IsMember({"possibility", "belief", "mutual", "common", "component"}));
  query->add_option("--agent", q.agent);
  query->add_option("--state", q.state);
  query->add_option("--group", q.group)->delimiter(',');
  auto* event_opt = query->add_option("--event", q.event)->delimiter(',')->expected(0, -1);
  query->add_option("--reading", q.reading)->check(CLI::IsMember({"include-self", "successors-only"}));

  auto* check_stp = app.add_subcommand("check-stp", "Sure-thing principle of each decision function");
  auto* check_lm = app.add_subcommand("check-like-minded", "Like-mindedness of a decision family");
  auto* check_agr = app.add_subcommand("check-agreement", "Agreement check (mode follows the decision kind)");
  for (auto* sub : {check_stp, check_lm, check_agr}) {
    sub->add_option("structure", structure_path)->required();
    sub->add_option("decisions", decisions_path)->required();
  }
  bool no_prune = false;
  check_agr->add_option("--group", group)->delimiter(',');
  check_agr->add_flag("--no-prune", no_prune, "Also check profiles with an empty agreement event");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Look for a commonly believed disagreement");
  search->add_option("structure", structure_path)->required();
  search->add_option("--actions", sa.actions, "Number of actions")->check(CLI::Range(1, 64));
  search->add_option("--relax", sa.relax, "Hypotheses to drop: stp, like_minded")->delimiter(',');
  search->add_option("--mode", sa.mode)->check(CLI::IsMember({"theorem1", "theorem2"}));
  search->add_option("--group", sa.group)->delimiter(',');
  search->add_option("--threads", sa.threads)->check(CLI::Range(1, 256));

  auto* flaws = app.add_subcommand("flaws", "Impossible beliefs and their counterfactual resolution");
  flaws->add_option("structure", structure_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    Context ctx{out, json, Limits::from_environment()};
    if (*validate) return cmd_validate(ctx, structure_path, verify_source);
    if (*counterfactual) return cmd_counterfactual(ctx, structure_path, output);
    if (*query) {
      q.event_given = event_opt->count() > 0;
      return cmd_query(ctx, structure_path, q);
    }
    if (*check_stp) return cmd_check_stp(ctx, structure_path, decisions_path);
    if (*check_lm) return cmd_check_like_minded(ctx, structure_path, decisions_path);
    if (*check_agr) return cmd_check_agreement(ctx, structure_path, decisions_path, group, no_prune);
    if (*search) return cmd_search(ctx, structure_path, sa);
    return cmd_flaws(ctx, structure_path);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace epistemic::cli
