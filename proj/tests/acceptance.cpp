// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mintypes/derive.hpp"
#include "mintypes/inhabit.hpp"
#include "mintypes/oracle.hpp"
#include "mintypes/textio.hpp"

using namespace mintypes;

namespace {

using Clock = std::chrono::steady_clock;
using QueryList = std::vector<std::pair<Env, SType>>;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;  // first few, for the log

  void fail(const std::string& why) {
    if (pass || failures.size() < 5) failures.push_back(why);
    pass = false;
  }

  // Wall-clock targets only bind optimized builds; sanitizer and debug runs just report.
  void within(double took, double limit) {
#ifdef NDEBUG
    if (took >= limit) fail("took " + std::to_string(took) + "s, target " + std::to_string(limit) + "s");
#else
    (void)took;
    (void)limit;
#endif
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

std::set<std::string> keys(const std::vector<Term>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) out.insert(alpha_key(t));
  return out;
}

std::string judgement(const Env& g, const SType& s) { return print_env(g) + " |- " + print_type(s); }

SType ty(const char* s) { return parse_type(s); }
Env env(const char* s) { return parse_env(s); }
Term T(const char* s) { return parse_term(s); }

bool no_empty(const Env& g, const SType& s) { return !has_empty_multiset(g) && !has_empty_multiset(s); }

void walk_runs(const RunTree& r, const std::function<void(const RunTree&, const RunTree&)>& edge) {
  for (const auto& p : r.premises) {
    edge(r, *p);
    walk_runs(*p, edge);
  }
}

void walk_derivation(const Derivation& d, const std::function<void(const Derivation&)>& f) {
  f(d);
  for (const auto& p : d.premises) walk_derivation(p, f);
}

// Results shared between criteria.
struct Shared {
  QueryList sweep;  // degree <= 4, two bases, two bindings
  std::map<SystemId, std::vector<std::vector<Solution>>> sols;  // per system, per sweep query
};

// --- 1 ------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  auto t0 = Clock::now();
  if (keys(inhabit_terms(SystemId::H, Env{}, ty("[[a]->a]->[a]->a"))) != keys({T("\\x.\\y.x y"), T("\\x.x")}))
    o.fail("example 1 gave a different set");
  if (keys(inhabit_terms(SystemId::H, Env{}, ty("[[]->a]->a"))) != keys({T("\\x. x *")}))
    o.fail("example 2 gave a different set");
  if (!inhabit_terms(SystemId::H, Env{}, ty("[a1]->a2")).empty()) o.fail("example 3 is not empty");

  SType sigma = ty("[a0, a1] -> [] -> tau");
  Derivation xy = make_elim(Rule::ArrE, make_var("x", sigma),
                            make_m(T("y"), {make_var("y", ty("a0")), make_var("y", ty("a1"))}));
  Derivation pi = make_elim(Rule::ArrE, xy, make_m(T("(\\z. z) (\\w. w w)"), {}));
  if (!is_valid(pi, SystemId::H)) o.fail("measure example does not check");
  if (meas(pi) != 5) o.fail("meas = " + std::to_string(meas(pi)));
  if (typed_positions(pi).size() != 4) o.fail("typed positions = " + std::to_string(typed_positions(pi).size()));
  if (!alpha_equal(derivation_approximant(pi), T("x y *"))) o.fail("approximant of the measure example");

  auto ap = approximants(T("\\x.(\\y.y y)((\\z.z)(\\z.z))"), 10);
  if (ap.truncated || keys(ap.terms) != keys({T("*"), T("\\x.*"), T("\\x.\\y.*"), T("\\x.\\y.y")}))
    o.fail("approximant set of \\x.D(I I)");
  auto join = anf_join(ap.terms);
  if (!join || !alpha_equal(*join, T("\\x.\\y.y"))) o.fail("join of the approximants");

  for (int n = 0; n <= 3; ++n) {
    std::string body = "x";
    for (int i = 0; i < n; ++i) body = "f (" + body + ")";
    auto ts = infer_principal_nf(T(("\\f. \\x. " + body).c_str()), SystemId::H);
    std::vector<SType> fs(n, ty("[a1] -> a1"));
    SType want = SType::arrows({MType(fs), MType::single(ty("a1"))}, ty("a1"));
    bool found = false;
    for (const auto& [g, s] : ts) found = found || (g.empty() && s == want);
    if (!found) o.fail("Church numeral " + std::to_string(n));
  }
  o.within(seconds_since(t0), 1.0);  // all of them together under the per-example bound
  o.detail = "inhabitation examples 1-3, measure example, approximants of \\x.D(I I), numerals 0-3, " +
             secs(seconds_since(t0));
  return o;
}

// --- 2 ------------------------------------------------------------------------

Outcome criterion2(Shared& sh) {
  Outcome o;
  auto t0 = Clock::now();
  QueryBudget qb;
  qb.type_depth = 2;
  qb.alphabet = {"a", "b"};
  qb.max_bindings = 2;
  qb.max_degree = 4;
  sh.sweep = enum_queries(qb);

  std::size_t inhabited = 0;
  for (auto sys : {SystemId::H, SystemId::Hw}) {
    auto& store = sh.sols[sys];
    store.reserve(sh.sweep.size());
    for (const auto& [g, s] : sh.sweep) {
      Query q;
      q.sys = sys;
      q.env = g;
      q.goal = s;
      auto sols = inhabit(q);
      std::vector<Term> ts;
      for (const auto& x : sols) ts.push_back(x.term);
      if (!ts.empty()) ++inhabited;
      if (keys(brute_inhabit(g, s, sys)) != keys(ts)) o.fail(std::string(system_name(sys)) + " " + judgement(g, s));
      store.push_back(std::move(sols));
    }
  }

  // Degree-5 spot checks.
  qb.max_degree = 5;
  QueryList five;
  for (auto& q : enum_queries(qb))
    if (degree(q.first, q.second) == 5) five.push_back(std::move(q));
  std::mt19937 rng(20240611);
  std::shuffle(five.begin(), five.end(), rng);
  if (five.size() > 300) five.erase(five.begin() + 300, five.end());
  for (const auto& [g, s] : five)
    for (auto sys : {SystemId::H, SystemId::Hw})
      if (keys(brute_inhabit(g, s, sys)) != keys(inhabit_terms(sys, g, s)))
        o.fail(std::string("degree 5 ") + system_name(sys) + " " + judgement(g, s));

  // Doubling the oracle's depth bound finds nothing new (every 4th query, both systems).
  std::size_t widened = 0;
  for (std::size_t i = 0; i < sh.sweep.size(); i += 4) {
    const auto& [g, s] = sh.sweep[i];
    for (auto sys : {SystemId::H, SystemId::Hw}) {
      std::size_t depth = brute_budget(g, s, sys).max_depth;
      if (keys(brute_inhabit(g, s, sys)) != keys(brute_inhabit(g, s, sys, depth)))
        o.fail(std::string("doubled depth changes ") + system_name(sys) + " " + judgement(g, s));
      ++widened;
    }
  }

  o.within(seconds_since(t0), 60.0);
  o.detail = std::to_string(sh.sweep.size()) + " queries x {H, Hw} (" + std::to_string(inhabited) +
             " inhabited), " + std::to_string(five.size()) + " degree-5 samples, " + std::to_string(widened) +
             " doubled-depth checks, " + secs(seconds_since(t0));
  return o;
}

// --- 3 ------------------------------------------------------------------------

Outcome criterion3(Shared& sh) {
  Outcome o;
  auto t0 = Clock::now();
  std::map<std::string, std::size_t> checked;
  std::map<std::string, double> took;

  for (auto sys : {SystemId::H, SystemId::Hw}) {
    auto ts = Clock::now();
    const auto& store = sh.sols[sys];
    for (std::size_t i = 0; i < sh.sweep.size(); ++i)
      for (const auto& sol : store[i]) {
        ++checked[system_name(sys)];
        if (!derivable(sh.sweep[i].first, sol.term, sh.sweep[i].second, sys))
          o.fail(std::string(system_name(sys)) + " emitted " + print_term(sol.term));
      }
    took[system_name(sys)] = seconds_since(ts);
  }

  for (auto sys : {SystemId::Hew, SystemId::Sw}) {
    auto ts = Clock::now();
    auto& store = sh.sols[sys];
    store.resize(sh.sweep.size());
    for (std::size_t i = 0; i < sh.sweep.size(); ++i) {
      const auto& [g, s] = sh.sweep[i];
      if (forbids_empty(sys) && !no_empty(g, s)) continue;
      Query q;
      q.sys = sys;
      q.env = g;
      q.goal = s;
      store[i] = inhabit(q);
      for (const auto& sol : store[i]) {
        ++checked[system_name(sys)];
        auto ds = derive_search(g, sol.term, s, sys);
        if (ds.empty()) {
          o.fail(std::string(system_name(sys)) + " emitted " + print_term(sol.term) + " for " + judgement(g, s));
          continue;
        }
        if (sys != SystemId::Sw) continue;
        bool standard = false;
        for (const auto& d : ds) {
          if (standard) break;
          try {
            Derivation st = standardize(d);
            standard = standard || (is_standard(st) && is_valid(st, SystemId::Sw) &&
                                    alpha_equal(st.subject(), sol.term));
          } catch (const Error&) {
          }
        }
        if (!standard) o.fail("Sw output without a standard derivation: " + print_term(sol.term));
      }
    }
    took[system_name(sys)] = seconds_since(ts);
  }

  // He and S witnesses may contain redexes, so they are checked through their derivations.
  for (auto sys : {SystemId::He, SystemId::S}) {
    auto ts = Clock::now();
    for (const auto& [g, s] : sh.sweep) {
      if (forbids_empty(sys) && !no_empty(g, s)) continue;
      auto r = sys == SystemId::He ? inhabit_He(g, s) : inhabit_S(g, s);
      for (const auto& w : r.witnesses) {
        ++checked[system_name(sys)];
        bool ok = is_valid(w.derivation, sys) && alpha_equal(w.derivation.subject(), w.term) &&
                  w.derivation.env() == g && w.derivation.strict_goal() == s;
        if (ok && is_normal(w.term)) ok = derivable(g, w.term, s, sys);
        if (!ok) o.fail(std::string(system_name(sys)) + " witness " + print_term(w.term) + " for " + judgement(g, s));
      }
    }
    took[system_name(sys)] = seconds_since(ts);
  }

  std::ostringstream d;
  for (const auto& [name, n] : checked) d << name << " " << n << " (" << secs(took[name]) << "), ";
  o.within(seconds_since(t0), 60.0);
  o.detail = "terms checked: " + d.str() + secs(seconds_since(t0));
  return o;
}

// --- 4 ------------------------------------------------------------------------

// Derivations of redex-bearing terms built by expansion from principal typings.
struct RedexFactory {
  std::vector<Derivation> out;

  std::optional<Derivation> first(const Env& g, const Term& t, const SType& s) {
    auto ds = derive_search(g, t, s, SystemId::H, SearchOptions{1});
    if (ds.empty()) return std::nullopt;
    return ds[0];
  }

  // (\x. M) w  with every x-resource of M's principal typing a base, instantiated to w's type.
  void typed_redex(const Term& m, const Term& w) {
    auto pm = infer_principal_nf(m, SystemId::H);
    std::set<std::string> used = base_names(pm.front().first);
    for (const auto& n : base_names(pm.front().second)) used.insert(n);
    auto pw = infer_principal_nf(w, SystemId::H, used);
    if (pm.empty() || pw.empty()) return;
    auto [gm, sm] = pm.front();
    auto [dw_env, rho] = pw.front();
    MType xs = gm.get("x");
    std::map<std::string, SType> theta;
    for (const auto& t : xs.items()) {
      if (!t.is_base()) return;
      theta.emplace(t.name(), rho);
    }
    Env g = rename_bases(gm, theta);
    SType s = rename_bases(sm, theta);
    auto dm = first(g, m, s);
    auto dw = first(dw_env, w, rho);
    if (!dm || !dw) return;
    std::vector<Derivation> copies(g.get("x").size(), *dw);
    Derivation lam = make_intro(Rule::ArrI, "x", *dm);
    out.push_back(make_elim(Rule::ArrE, lam, make_m(w, copies)));
  }

  // (\x. M) w  with x untyped in M, w anything.
  void erasing_redex(const Term& m, const Term& w) {
    auto pm = infer_principal_nf(m, SystemId::H);
    if (pm.empty()) return;
    auto [g, s] = pm.front();
    if (g.has("x")) return;
    auto dm = first(g, m, s);
    if (!dm) return;
    out.push_back(make_elim(Rule::ArrE, make_intro(Rule::ArrI, "x", *dm), make_m(w, {})));
  }

  // ANF derivations with their Omegas replaced by redexes.
  void lifted(const Term& a, const Term& filler) {
    auto pa = infer_principal_nf(a, SystemId::H);
    if (pa.empty()) return;
    auto [g, s] = pa.front();
    auto d = first(g, a, s);
    if (!d) return;
    std::function<Term(const Term&)> fill = [&](const Term& t) -> Term {
      switch (t.kind()) {
        case TermKind::Omega: return filler;
        case TermKind::Var: return t;
        case TermKind::Abs: return Term::abs(t.name(), fill(t.body()));
        case TermKind::App: return Term::app(fill(t.fun()), fill(t.arg()));
      }
      return t;
    };
    out.push_back(lift_derivation(*d, hygienize(fill(a))));
  }

  // Contexts around an existing redex derivation.
  void contexts(Derivation d) {  // by value: out grows below
    std::set<std::string> avoid = all_names(d.subject());
    for (const auto& n : d.env().domain()) avoid.insert(n);
    out.push_back(make_intro(Rule::ArrI, fresh_name("z", avoid), d));
    std::string h = fresh_name("h", avoid);
    SType tau = d.strict_goal();
    SType twice = SType::arrow(MType({tau, tau}), SType::base("c"));
    out.push_back(make_elim(Rule::ArrE, make_var(h, twice), make_m(d.subject(), {d, d})));
  }
};

Outcome criterion4() {
  Outcome o;
  auto t0 = Clock::now();
  RedexFactory f;

  EnumBudget b;
  b.max_var_positions = 3;
  b.alphabet = {"x", "y"};
  b.max_depth = 4;
  b.max_binders = 2;
  b.max_args = 2;
  auto bodies = enum_nf(b);
  b.alphabet = {"y", "z"};
  b.max_var_positions = 2;
  auto args = enum_nf(b);
  std::vector<Term> with_x;
  for (const auto& m : bodies)
    if (free_vars(m).count("x")) with_x.push_back(m);

  for (std::size_t i = 0; i < with_x.size() && f.out.size() < 600; i += 5)
    for (std::size_t j = 0; j < args.size(); j += 11) f.typed_redex(with_x[i], args[j]);
  std::size_t typed = f.out.size();

  Term dd = T("(\\u. u u) (\\u. u u)");
  std::vector<Term> no_x;
  for (const auto& m : bodies)
    if (!free_vars(m).count("x")) no_x.push_back(m);
  for (std::size_t i = 0; i < no_x.size() && f.out.size() < typed + 150; i += 3) {
    f.erasing_redex(no_x[i], dd);
    f.erasing_redex(no_x[i], T("(\\u. u) y"));
  }

  b.alphabet = {"x", "y"};
  b.max_var_positions = 3;
  std::size_t lifted_from = f.out.size();
  for (const auto& a : enum_anf(b)) {
    if (f.out.size() >= lifted_from + 150) break;
    bool has_omega = false;
    std::function<void(const Term&)> look = [&](const Term& t) {
      if (t.is_omega()) has_omega = true;
      else if (t.is_abs()) look(t.body());
      else if (t.is_app()) { look(t.fun()); look(t.arg()); }
    };
    look(a);
    if (!has_omega || a.is_omega()) continue;
    f.lifted(a, (f.out.size() % 2) ? dd : T("(\\u. u) (\\u. u)"));
  }

  std::size_t base_count = f.out.size();
  for (std::size_t i = 0; i < base_count; i += 4) f.contexts(f.out[i]);

  std::size_t steps = 0, strict = 0, valid_inputs = 0;
  for (const auto& d : f.out) {
    if (!is_valid(d, SystemId::H)) {
      o.fail("generated derivation does not check: " + print_term(d.subject()));
      continue;
    }
    ++valid_inputs;
    auto typed_pos = typed_positions(d);
    for (const auto& p : redex_positions(d.subject())) {
      ++steps;
      try {
        Derivation r = subject_reduce(d, p, SystemId::H);
        bool ok = is_valid(r, SystemId::H) && alpha_equal(r.subject(), contract_at(d.subject(), p)) &&
                  r.env() == d.env() && r.strict_goal() == d.strict_goal();
        bool is_typed = typed_pos.count(p) > 0;
        if (is_typed) ++strict;
        ok = ok && (is_typed ? meas(r) < meas(d) : meas(r) <= meas(d));
        if (!ok) o.fail("step at " + position_string(p) + " of " + print_term(d.subject()));
      } catch (const Error& e) {
        o.fail("step at " + position_string(p) + " of " + print_term(d.subject()) + ": " + e.what());
      }
    }
  }
  if (valid_inputs < 500) o.fail("only " + std::to_string(valid_inputs) + " derivations generated");
  o.detail = std::to_string(valid_inputs) + " derivations, " + std::to_string(steps) + " steps (" +
             std::to_string(strict) + " at typed redexes), " + secs(seconds_since(t0));
  return o;
}

// --- 5 ------------------------------------------------------------------------

Outcome criterion5() {
  Outcome o;
  SType s = ty("s"), t = ty("t");
  Term id = T("\\z. z");

  // He: x:[s] |- (\y. I) x : [t] -> t, but not x:[s] |- I : [t] -> t.
  Derivation he = make_elim(
      Rule::ArrE,
      make_intro(Rule::ArrIEmpty, "y", make_intro(Rule::ArrINonempty, "z", make_var("z", t)), s),
      make_m(T("x"), {make_var("x", s)}));
  if (!is_valid(he, SystemId::He)) o.fail("He redex derivation");
  if (derivable(env("x:[s]"), id, ty("[t]->t"), SystemId::He)) o.fail("He derives the reduct");
  bool he_throws = false;
  try {
    subject_reduce(he, {}, SystemId::He);
  } catch (const Error&) {
    he_throws = true;
  }
  if (!he_throws) o.fail("He subject_reduce did not refuse");
  auto hew_inh = inhabit_He(env("x:[s]"), ty("[t]->t"));
  if (!hew_inh.inhabited) o.fail("inhabit_He misses x:[s] |- [t] -> t");

  // Hew: the same pair, with the discarded resource carried by weakening.
  Derivation hew = make_elim(
      Rule::ArrE,
      make_intro(Rule::ArrI, "y",
                 make_intro(Rule::ArrI, "z", make_var_w(env("z:[t], y:[s]"), "z", t))),
      make_m(T("x"), {make_var_w(env("x:[s]"), "x", s)}));
  if (!is_valid(hew, SystemId::Hew)) o.fail("Hew redex derivation");
  try {
    Derivation r = subject_reduce(hew, {}, SystemId::Hew);
    if (!is_valid(r, SystemId::Hew) || !alpha_equal(r.subject(), id) || r.env() != env("x:[s]"))
      o.fail("Hew reduct derivation");
  } catch (const Error& e) {
    o.fail(std::string("Hew subject_reduce: ") + e.what());
  }
  if (!derivable(env("x:[s]"), id, ty("[t]->t"), SystemId::Hew)) o.fail("Hew does not derive the reduct");

  // S: x:[s] |- (\y. I) x : [a] -> a, but not I.
  SType a = ty("a");
  Derivation sd = make_elim(Rule::ArrEEmpty,
                            make_intro(Rule::ArrI, "y", make_intro(Rule::ArrI, "z", make_var("z", a))),
                            make_m(T("x"), {make_var("x", s)}));
  if (!is_valid(sd, SystemId::S)) o.fail("S redex derivation");
  if (derivable(env("x:[s]"), id, ty("[a]->a"), SystemId::S)) o.fail("S derives the reduct");
  bool s_throws = false;
  try {
    subject_reduce(sd, {}, SystemId::S);
  } catch (const Error&) {
    s_throws = true;
  }
  if (!s_throws) o.fail("S subject_reduce did not refuse");

  // Sw repairs it.
  Derivation sw = make_elim(Rule::ArrEEmpty,
                            make_intro(Rule::ArrI, "y", make_intro(Rule::ArrI, "z", make_var_w(env("z:[a]"), "z", a))),
                            make_m(T("x"), {make_var_w(env("x:[s]"), "x", s)}));
  if (!is_valid(sw, SystemId::Sw)) o.fail("Sw redex derivation");
  try {
    Derivation r = subject_reduce(sw, {}, SystemId::Sw);
    if (!is_valid(r, SystemId::Sw) || !alpha_equal(r.subject(), id)) o.fail("Sw reduct derivation");
  } catch (const Error& e) {
    o.fail(std::string("Sw subject_reduce: ") + e.what());
  }
  if (!derivable(env("x:[s]"), id, ty("[a]->a"), SystemId::Sw)) o.fail("Sw does not derive the reduct");

  o.detail = "He and S lose the typing of (\\y.I)x -> I; Hew and Sw keep it";
  return o;
}

// --- 6 ------------------------------------------------------------------------

Outcome criterion6(const Shared& sh) {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t edges = 0, trees = 0;
  for (const auto& [sys, store] : sh.sols)
    for (const auto& sols : store)
      for (const auto& sol : sols) {
        ++trees;
        walk_runs(*sol.run, [&](const RunTree& parent, const RunTree& child) {
          ++edges;
          if (run_measure(child) >= run_measure(parent))
            o.fail(std::string(system_name(sys)) + " run edge " + run_rule_name(parent.rule) + " -> " +
                   run_rule_name(child.rule) + " for " + print_term(sol.term));
        });
      }
  std::size_t same = 0;
  for (const auto& [g, s] : sh.sweep) {
    if (keys(inhabit_basic_H(g, s)) == keys(inhabit_terms(SystemId::H, g, s))) ++same;
    else o.fail("basic head rule differs on " + judgement(g, s));
  }
  o.detail = std::to_string(trees) + " runs, " + std::to_string(edges) + " edges; basic = inhabit on " +
             std::to_string(same) + "/" + std::to_string(sh.sweep.size()) + " queries, " + secs(seconds_since(t0));
  return o;
}

// --- 7 ------------------------------------------------------------------------

Outcome criterion7(const Shared& sh) {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t derivations = 0, nodes = 0;
  for (auto sys : {SystemId::H, SystemId::Hw}) {
    const auto& store = sh.sols.at(sys);
    for (std::size_t i = 0; i < sh.sweep.size(); ++i) {
      const auto& [g, s] = sh.sweep[i];
      for (const auto& sol : store[i]) {
        for (const auto& d : derive_search(g, sol.term, s, sys)) {
          ++derivations;
          if (typed_variable_positions(d) > degree(g, s))
            o.fail("degree bound on " + print_term(sol.term) + " for " + judgement(g, s));
          walk_derivation(d, [&](const Derivation& sub) {
            ++nodes;
            if (!is_subtype(sub.goal(), s) && !is_subtype(sub.goal(), g))
              o.fail("subformula property in " + print_term(sol.term) + " for " + judgement(g, s));
          });
        }
      }
    }
  }
  o.detail = std::to_string(derivations) + " derivations, " + std::to_string(nodes) + " subderivations, " +
             secs(seconds_since(t0));
  return o;
}

// --- 8 ------------------------------------------------------------------------

Outcome criterion8() {
  Outcome o;
  auto t0 = Clock::now();
  QueryBudget qb;
  qb.type_depth = 2;
  qb.alphabet = {"a", "b"};
  qb.max_bindings = 2;
  qb.max_degree = 3;
  qb.allow_empty = false;
  auto qs = enum_queries(qb);
  std::size_t he_yes = 0, s_yes = 0, witnesses = 0;
  for (const auto& [g, s] : qs) {
    for (auto [target, weak] : {std::pair{SystemId::He, SystemId::Hew}, std::pair{SystemId::S, SystemId::Sw}}) {
      bool weak_inhabited = !inhabit_terms(weak, g, s).empty();
      auto r = target == SystemId::He ? inhabit_He(g, s) : inhabit_S(g, s);
      if (r.inhabited != weak_inhabited || (r.inhabited && r.witnesses.empty()))
        o.fail(std::string(system_name(target)) + " disagrees on " + judgement(g, s));
      for (const auto& w : r.witnesses) {
        ++witnesses;
        if (!check_derivation(w.derivation, target).empty())
          o.fail(std::string(system_name(target)) + " witness fails the checker: " + print_term(w.term));
      }
      if (r.inhabited) ++(target == SystemId::He ? he_yes : s_yes);
    }
  }
  o.detail = std::to_string(qs.size()) + " queries; He inhabited " + std::to_string(he_yes) + ", S inhabited " +
             std::to_string(s_yes) + ", " + std::to_string(witnesses) + " witnesses checked, " +
             secs(seconds_since(t0));
  return o;
}

// --- 9 ------------------------------------------------------------------------

Outcome criterion9(const Shared& sh) {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t terms = 0, types = 0, envs = 0;
  auto term_rt = [&](const Term& t) {
    ++terms;
    try {
      if (!alpha_equal(parse_term(print_term(t)), t)) o.fail("term " + print_term(t));
    } catch (const ParseError& e) {
      o.fail("term " + print_term(t) + ": " + e.message());
    }
  };
  EnumBudget b;
  b.max_var_positions = 3;
  b.alphabet = {"x", "y"};
  b.max_depth = 5;
  b.max_binders = 2;
  b.max_args = 2;
  for (const auto& t : enum_anf(b)) term_rt(t);
  for (const auto& t : enum_nf(b)) term_rt(t);
  for (const auto& [sys, store] : sh.sols)
    for (const auto& sols : store)
      for (const auto& sol : sols) term_rt(sol.term);

  for (const auto& s : enum_types(2, {"a", "b"}, 4, true)) {
    ++types;
    if (parse_type(print_type(s)) != s) o.fail("type " + print_type(s));
  }
  for (const auto& [g, s] : sh.sweep) {
    ++envs;
    if (parse_env(print_env(g)) != g) o.fail("env " + print_env(g));
    for (const auto& [x, a] : g.bindings())
      if (parse_mtype(print_mtype(a)) != a) o.fail("multiset " + print_mtype(a));
    if (parse_type(print_type(s)) != s) o.fail("type " + print_type(s));
  }
  o.detail = std::to_string(terms) + " terms, " + std::to_string(types) + " types, " + std::to_string(envs) +
             " environments, " + secs(seconds_since(t0));
  return o;
}

}  // namespace

// Optional arguments pick criteria; 3, 6, 7 and 9 pull in the sweeps they read.
int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  if (wanted.count(6) || wanted.count(7) || wanted.count(9)) wanted.insert({2, 3});
  if (wanted.count(3)) wanted.insert(2);
  Shared sh;
  struct Item {
    int n;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Item> items{
      {1, "worked examples", [] { return criterion1(); }},
      {2, "differential completeness", [&] { return criterion2(sh); }},
      {3, "soundness sweep", [&] { return criterion3(sh); }},
      {4, "weighted subject reduction", [] { return criterion4(); }},
      {5, "subject reduction failure and repair", [] { return criterion5(); }},
      {6, "termination metric", [&] { return criterion6(sh); }},
      {7, "degree bound and subformulas", [&] { return criterion7(sh); }},
      {8, "reduction to the weak systems", [] { return criterion8(); }},
      {9, "round trip", [&] { return criterion9(sh); }},
  };
  bool all = true;
  for (const auto& it : items) {
    if (!wanted.empty() && !wanted.count(it.n)) continue;
    Outcome o;
    try {
      o = it.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << "criterion " << it.n << " (" << it.name << "): " << (o.pass ? "PASS" : "FAIL") << "  "
              << o.detail << "\n";
    for (const auto& f : o.failures) std::cout << "    " << f << "\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}
