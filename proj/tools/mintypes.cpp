// mintypes: command-line front end.
//
// Exit codes
//   0  inhabited / derivable / valid / no mismatches
//   1  empty / underivable / invalid / mismatches found
//   2  input error (bad flags, parse errors, operation outside its domain)
//   3  fuel or budget exhausted
//   4  undetermined (non-normal subject in a system without subject expansion)

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mintypes/derive.hpp"
#include "mintypes/inhabit.hpp"
#include "mintypes/json.hpp"
#include "mintypes/oracle.hpp"
#include "mintypes/textio.hpp"

using namespace mintypes;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kInput = 2;
constexpr int kFuel = 3;
constexpr int kUndetermined = 4;

// Thrown after a diagnostic has already been written.
struct InputFailure {};

template <class F>
auto parse_or_fail(const std::string& what, const std::string& text, F f) {
  try {
    return f(text);
  } catch (const ParseError& e) {
    std::cerr << what << ": " << render_diagnostic(text, e) << "\n";
    throw InputFailure{};
  }
}

SystemId system_arg(const std::string& name) {
  auto s = parse_system(name);
  if (!s) {
    std::cerr << "error: unknown system '" << name << "' (expected H, Hw, He, Hew, S or Sw)\n";
    throw InputFailure{};
  }
  return *s;
}

std::string goal_text(const Goal& g) {
  if (auto s = std::get_if<SType>(&g)) return print_type(*s);
  return print_mtype(std::get<MType>(g));
}

void print_run(std::ostream& os, const RunTree& r, int depth) {
  os << std::string(2 * depth + 2, ' ') << run_rule_name(r.rule) << " " << form_name(r.form) << "  "
     << print_env(r.env);
  if (r.head_type) os << (r.env.empty() ? "" : " ") << "; " << r.head_var << ":" << print_mtype(MType::single(*r.head_type));
  os << " |- " << goal_text(r.goal) << "  => " << print_term(r.output) << "  [" << run_measure(r) << "]\n";
  for (const auto& p : r.premises) print_run(os, *p, depth + 1);
}

void print_derivation(std::ostream& os, const Derivation& d, int depth) {
  os << std::string(2 * depth + 2, ' ') << rule_name(d.rule) << "  " << print_env(d.env()) << " |- "
     << print_term(d.subject()) << " : " << goal_text(d.goal()) << "\n";
  for (const auto& p : d.premises) print_derivation(os, p, depth + 1);
}

void emit_json(json j) {
  json out{{"format", 1}};
  out.update(j);
  std::cout << out.dump(2) << "\n";
}

// --- inhabit -----------------------------------------------------------------

struct InhabitArgs {
  std::string system, env, type;
  bool all = false, first = false, as_json = false, show_runs = false;
  std::optional<std::size_t> budget;
};

int cmd_inhabit(const InhabitArgs& a) {
  SystemId sys = system_arg(a.system);
  Env env = parse_or_fail("--env", a.env, parse_env);
  SType goal = parse_or_fail("--type", a.type, parse_type);
  bool first = a.first && !a.all;

  json j{{"command", "inhabit"}, {"system", system_name(sys)}, {"env", print_env(env)},
         {"type", print_type(goal)}};
  json sols = json::array();
  bool inhabited = false;

  if (sys == SystemId::He || sys == SystemId::S) {
    auto r = sys == SystemId::He ? inhabit_He(env, goal) : inhabit_S(env, goal);
    inhabited = r.inhabited;
    if (first && r.witnesses.size() > 1) r.witnesses.erase(r.witnesses.begin() + 1, r.witnesses.end());
    for (const auto& w : r.witnesses) {
      if (a.as_json) {
        sols.push_back({{"term", print_term(w.term)}, {"derivation", derivation_to_json(w.derivation)}});
        continue;
      }
      std::cout << print_term(w.term) << "\n";
      if (a.show_runs) print_derivation(std::cout, w.derivation, 0);
    }
  } else {
    Query q;
    q.sys = sys;
    q.env = env;
    q.goal = goal;
    q.mode = first ? SearchMode::First : SearchMode::All;
    q.budget = a.budget;
    auto res = inhabit(q);
    inhabited = !res.empty();
    for (const auto& s : res) {
      if (a.as_json) {
        json e{{"term", print_term(s.term)}};
        if (a.show_runs) e["run"] = run_to_json(*s.run);
        sols.push_back(e);
        continue;
      }
      std::cout << print_term(s.term) << "\n";
      if (a.show_runs) print_run(std::cout, *s.run, 0);
    }
  }
  if (a.as_json) {
    j["inhabited"] = inhabited;
    j["solutions"] = sols;
    emit_json(j);
  }
  return inhabited ? kOk : kNo;
}

// --- check -------------------------------------------------------------------

struct CheckArgs {
  std::string system;
  std::optional<std::string> env, type, term, derivation_file;
  std::optional<std::size_t> fuel;
  bool as_json = false;
};

int report_check(const CheckArgs& a, SystemId sys, const std::string& verdict, const std::string& detail,
                 const std::optional<Derivation>& witness, int code) {
  if (a.as_json) {
    json j{{"command", "check"}, {"system", system_name(sys)}, {"result", verdict}};
    if (!detail.empty()) j["note"] = detail;
    if (witness) j["derivation"] = derivation_to_json(*witness);
    emit_json(j);
  } else {
    std::cout << verdict << "\n";
    if (!detail.empty()) std::cout << detail << "\n";
  }
  return code;
}

int check_file(const CheckArgs& a, SystemId sys) {
  std::ifstream in(*a.derivation_file);
  if (!in) {
    std::cerr << "error: cannot read " << *a.derivation_file << "\n";
    throw InputFailure{};
  }
  std::optional<Derivation> d;
  try {
    json j = json::parse(in);
    d = derivation_from_json(j.contains("derivation") ? j.at("derivation") : j);
  } catch (const json::exception& e) {
    std::cerr << "error: " << *a.derivation_file << ": " << e.what() << "\n";
    throw InputFailure{};
  } catch (const ParseError& e) {
    std::cerr << "error: " << *a.derivation_file << ": " << e.message() << "\n";
    throw InputFailure{};
  } catch (const Error& e) {
    std::cerr << "error: " << *a.derivation_file << ": " << e.what() << "\n";
    throw InputFailure{};
  }

  std::vector<std::string> problems;
  for (const auto& diag : check_derivation(*d, sys)) problems.push_back(diag.to_string());
  if (a.env && parse_or_fail("--env", *a.env, parse_env) != d->env())
    problems.push_back("conclusion environment differs from --env");
  if (a.term && !alpha_equal(parse_or_fail("--term", *a.term, parse_term), d->subject()))
    problems.push_back("conclusion subject differs from --term");
  if (a.type) {
    SType want = parse_or_fail("--type", *a.type, parse_type);
    auto got = std::get_if<SType>(&d->goal());
    if (!got || *got != want) problems.push_back("conclusion type differs from --type");
  }
  std::string head = print_env(d->env()) + " |- " + print_term(d->subject()) + " : " + goal_text(d->goal());
  if (problems.empty()) return report_check(a, sys, "valid", head, d, kOk);
  std::string detail = head;
  for (const auto& p : problems) detail += "\n  " + p;
  return report_check(a, sys, "invalid", detail, std::nullopt, kNo);
}

std::optional<Derivation> first_derivation(const Env& env, const Term& t, const SType& goal, SystemId sys) {
  auto ds = derive_search(env, t, goal, sys, SearchOptions{1});
  if (ds.empty()) return std::nullopt;
  return ds.front();
}

int cmd_check(const CheckArgs& a) {
  SystemId sys = system_arg(a.system);
  if (a.derivation_file) return check_file(a, sys);
  if (!a.term || !a.type) {
    std::cerr << "error: check needs --term and --type (or --derivation FILE)\n";
    throw InputFailure{};
  }
  Env env = parse_or_fail("--env", a.env.value_or(""), parse_env);
  SType goal = parse_or_fail("--type", *a.type, parse_type);
  Term t = parse_or_fail("--term", *a.term, parse_term);
  bool approx_system = sys == SystemId::H || sys == SystemId::Hw;

  if (approx_system ? is_anf(t) : is_normal(t)) {
    auto w = first_derivation(env, t, goal, sys);
    return w ? report_check(a, sys, "derivable", "", w, kOk) : report_check(a, sys, "underivable", "", w, kNo);
  }
  if (!is_pure(t)) {
    std::cerr << "error: * may only occur in approximate normal forms, and only in H or Hw\n";
    throw InputFailure{};
  }
  if (!a.fuel) {
    std::cerr << "error: the subject is not normal; pass --fuel N to reduce it first\n";
    throw InputFailure{};
  }

  if (approx_system) {
    // t is typable iff one of its approximants is.
    auto ap = approximants(t, *a.fuel);
    for (const auto& b : ap.terms) {
      if (b.is_omega()) continue;
      if (auto w = first_derivation(env, b, goal, sys))
        return report_check(a, sys, "derivable", "via approximant " + print_term(b), w, kOk);
    }
    if (ap.truncated)
      return report_check(a, sys, "fuel exhausted",
                          "no approximant found within fuel " + std::to_string(*a.fuel) + " is derivable",
                          std::nullopt, kFuel);
    return report_check(a, sys, "underivable", "no approximant is derivable", std::nullopt, kNo);
  }

  auto nf = normalize(t, *a.fuel);
  if (nf.exhausted)
    return report_check(a, sys, "fuel exhausted",
                        "no normal form within " + std::to_string(nf.steps) + " steps", std::nullopt, kFuel);
  auto w = first_derivation(env, nf.term, goal, sys);
  std::string where = "normal form " + print_term(nf.term) + " is " + (w ? "derivable" : "underivable");
  bool has_sr = sys == SystemId::Hew || sys == SystemId::Sw;
  if (!w && has_sr)
    return report_check(a, sys, "underivable", where + "; by subject reduction so is the subject", std::nullopt,
                        kNo);
  std::string why = has_sr ? "; without subject expansion this does not decide the subject"
                           : std::string("; ") + system_name(sys) +
                                 " has neither subject reduction nor subject expansion, so this does not decide "
                                 "the subject";
  return report_check(a, sys, "undetermined", where + why, w, kUndetermined);
}

// --- reduce / approximants -----------------------------------------------------

int cmd_reduce(const std::string& text, std::size_t fuel, bool bw) {
  Term t = parse_or_fail("--term", text, parse_term);
  if (!bw && !is_pure(t)) {
    std::cerr << "error: * needs --bw\n";
    throw InputFailure{};
  }
  auto r = bw ? betaomega_normalize(t, fuel) : normalize(t, fuel);
  if (r.exhausted) {
    std::cout << "fuel exhausted after " << r.steps << " steps: " << print_term(r.term) << "\n";
    return kFuel;
  }
  std::cout << print_term(r.term) << "\n";
  return kOk;
}

int cmd_approximants(const std::string& text, std::size_t fuel) {
  Term t = parse_or_fail("--term", text, parse_term);
  auto r = approximants(t, fuel);
  for (const auto& a : r.terms) std::cout << print_term(a) << "\n";
  auto join = anf_join(r.terms);
  std::cout << "join: " << (join ? print_term(*join) : std::string("none")) << "\n";
  if (r.truncated) {
    std::cout << "truncated: reduction graph not fully explored within fuel " << fuel << "\n";
    return kFuel;
  }
  return kOk;
}

// --- oracle-diff ---------------------------------------------------------------

std::string term_set(const std::vector<Term>& ts) {
  std::string s = "{";
  for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? ", " : "") + print_term(ts[i]);
  return s + "}";
}

int cmd_oracle_diff(const std::string& system, std::size_t max_degree, const std::string& alphabet,
                    std::size_t type_depth, std::size_t bindings) {
  SystemId sys = system_arg(system);
  if (sys == SystemId::He || sys == SystemId::S) {
    std::cerr << "error: oracle-diff covers H, Hw, Hew and Sw\n";
    throw InputFailure{};
  }
  QueryBudget qb;
  qb.type_depth = type_depth;
  qb.max_bindings = bindings;
  qb.max_degree = max_degree;
  qb.allow_empty = !forbids_empty(sys);
  qb.alphabet.clear();
  std::stringstream ss(alphabet);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    parse_or_fail("--alphabet", item, parse_type);  // rejects non-identifiers
    qb.alphabet.push_back(item);
  }
  if (qb.alphabet.empty()) {
    std::cerr << "error: --alphabet needs at least one base type\n";
    throw InputFailure{};
  }

  auto queries = enum_queries(qb);
  std::size_t mismatches = 0;
  for (const auto& [env, goal] : queries) {
    auto brute = brute_inhabit(env, goal, sys);
    auto algo = inhabit_terms(sys, env, goal);
    std::sort(algo.begin(), algo.end(), term_display_less);
    bool same = brute.size() == algo.size();
    for (std::size_t i = 0; same && i < brute.size(); ++i) same = alpha_equal(brute[i], algo[i]);
    if (same) continue;
    ++mismatches;
    std::cout << "mismatch: " << print_env(env) << " |- " << print_type(goal) << "  brute " << term_set(brute)
              << "  inhabit " << term_set(algo) << "\n";
  }
  std::cout << queries.size() << " queries\n" << mismatches << " mismatches\n";
  return mismatches ? kNo : kOk;
}

// --- systems -------------------------------------------------------------------

int cmd_systems() {
  std::cout << R"(axes: x = weakening, y = empty multitype, z = characterizes strong normalization

          H ------------ Hw        y=1 z=0
         /|             /|
        S ------------ Sw |        y=1 z=1
         \|             \|
          He ----------- Hew       y=0 z=1
        x=0            x=1

system  weakening  []   characterizes   subject reduction  inhabitation
H       no         yes  solvability     yes                direct
Hw      yes        yes  solvability     yes                direct
He      no         no   strong norm.    no                 through Hew
Hew     yes        no   strong norm.    yes                direct
S       no         yes  strong norm.    no                 through Sw
Sw      yes        yes  strong norm.    yes                direct
)";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inhabitation and type checking for non-idempotent intersection types"};
  app.require_subcommand(1);

  InhabitArgs ia;
  auto* inh = app.add_subcommand("inhabit", "Solve an inhabitation query");
  inh->add_option("--system", ia.system, "H, Hw, He, Hew, S or Sw")->required();
  inh->add_option("--env", ia.env, "Environment, e.g. \"x:[a], y:[[a]->a]\" (default empty)");
  inh->add_option("--type", ia.type, "Goal type")->required();
  auto* all_flag = inh->add_flag("--all", ia.all, "All solutions (default)");
  inh->add_flag("--first", ia.first, "Stop at the first solution")->excludes(all_flag);
  inh->add_flag("--json", ia.as_json, "JSON output");
  inh->add_flag("--show-runs", ia.show_runs, "Print the run (or witness derivation) under each solution");
  inh->add_option("--budget", ia.budget, "Give up after expanding this many judgements");

  CheckArgs ca;
  auto* chk = app.add_subcommand("check", "Decide a typing judgement or validate a derivation");
  chk->add_option("--system", ca.system, "H, Hw, He, Hew, S or Sw")->required();
  chk->add_option("--env", ca.env, "Environment (default empty)");
  chk->add_option("--type", ca.type, "Strict type");
  chk->add_option("--term", ca.term, "Subject; * is Omega");
  chk->add_option("--fuel", ca.fuel, "Reduction steps allowed for non-normal subjects");
  chk->add_option("--derivation", ca.derivation_file, "JSON derivation to validate instead of searching");
  chk->add_flag("--json", ca.as_json, "JSON output with a witness derivation");

  std::string term;
  std::size_t fuel = 1000;
  bool bw = false;
  auto* red = app.add_subcommand("reduce", "Normalize a term");
  red->add_option("--term", term, "Term to reduce")->required();
  red->add_option("--fuel", fuel, "Maximum number of steps")->capture_default_str();
  red->add_flag("--bw", bw, "Also use  * t -> *  and  \\x.* -> *");

  auto* apx = app.add_subcommand("approximants", "Set of approximants and their join");
  apx->add_option("--term", term, "Term whose approximants are wanted")->required();
  apx->add_option("--fuel", fuel, "Bound on the explored reduction graph")->capture_default_str();

  std::string od_system, alphabet = "a";
  std::size_t max_degree = 3, type_depth = 2, bindings = 2;
  auto* od = app.add_subcommand("oracle-diff", "Compare inhabit against the brute-force oracle");
  od->add_option("--system", od_system, "H, Hw, Hew or Sw")->required();
  od->add_option("--max-degree", max_degree, "Largest degree of a query")->capture_default_str();
  od->add_option("--alphabet", alphabet, "Comma-separated base types")->capture_default_str();
  od->add_option("--type-depth", type_depth, "Nesting height of enumerated types")->capture_default_str();
  od->add_option("--bindings", bindings, "Maximum environment size")->capture_default_str();

  auto* sys = app.add_subcommand("systems", "Show the six systems and how they relate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*inh) return cmd_inhabit(ia);
    if (*chk) return cmd_check(ca);
    if (*red) return cmd_reduce(term, fuel, bw);
    if (*apx) return cmd_approximants(term, fuel);
    if (*od) return cmd_oracle_diff(od_system, max_degree, alphabet, type_depth, bindings);
    if (*sys) return cmd_systems();
  } catch (const InputFailure&) {
    return kInput;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kFuel;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
