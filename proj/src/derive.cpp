#include "mintypes/derive.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "mintypes/error.hpp"
#include "mintypes/textio.hpp"

namespace mintypes {

const char* system_name(SystemId s) {
  switch (s) {
    case SystemId::H: return "H";
    case SystemId::Hw: return "Hw";
    case SystemId::He: return "He";
    case SystemId::Hew: return "Hew";
    case SystemId::S: return "S";
    case SystemId::Sw: return "Sw";
  }
  return "?";
}

std::optional<SystemId> parse_system(std::string_view name) {
  for (SystemId s : all_systems())
    if (name == system_name(s)) return s;
  return std::nullopt;
}

const std::vector<SystemId>& all_systems() {
  static const std::vector<SystemId> v{SystemId::H,   SystemId::Hw, SystemId::He,
                                       SystemId::Hew, SystemId::S,  SystemId::Sw};
  return v;
}

bool is_weak(SystemId s) { return s == SystemId::Hw || s == SystemId::Hew || s == SystemId::Sw; }
bool forbids_empty(SystemId s) { return s == SystemId::He || s == SystemId::Hew; }
bool splits_application(SystemId s) { return s == SystemId::S || s == SystemId::Sw; }

namespace {
const std::pair<Rule, const char*> kRuleNames[] = {
    {Rule::Var, "var"},
    {Rule::VarW, "var_w"},
    {Rule::ArrI, "arrI"},
    {Rule::ArrINonempty, "arrI_nonempty"},
    {Rule::ArrIEmpty, "arrI_empty"},
    {Rule::ArrE, "arrE"},
    {Rule::ArrENonempty, "arrE_nonempty"},
    {Rule::ArrEEmpty, "arrE_empty"},
    {Rule::M, "m"},
};
}  // namespace

const char* rule_name(Rule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

std::optional<Rule> parse_rule(std::string_view name) {
  for (const auto& [rule, n] : kRuleNames)
    if (name == n) return rule;
  return std::nullopt;
}

bool is_intro(Rule r) { return r == Rule::ArrI || r == Rule::ArrINonempty || r == Rule::ArrIEmpty; }
bool is_elim(Rule r) { return r == Rule::ArrE || r == Rule::ArrENonempty || r == Rule::ArrEEmpty; }
bool is_axiom(Rule r) { return r == Rule::Var || r == Rule::VarW; }

// ---------------------------------------------------------------------------

Derivation make_var(const std::string& x, const SType& rho) {
  return {Rule::Var, {Env{{x, MType::single(rho)}}, Term::var(x), rho}, {}};
}

Derivation make_var_w(const Env& env, const std::string& x, const SType& rho) {
  return {Rule::VarW, {env, Term::var(x), rho}, {}};
}

Derivation make_intro(Rule r, const std::string& x, const Derivation& premise,
                      const std::optional<SType>& guessed) {
  const SType& tau = premise.strict_goal();
  Term subject = Term::abs(x, premise.subject());
  if (r == Rule::ArrIEmpty) {
    if (!guessed) throw Error("arrI_empty needs the guessed domain type");
    return {r, {premise.env(), subject, SType::arrow(MType::single(*guessed), tau)}, {premise}};
  }
  return {r, {premise.env().without(x), subject, SType::arrow(premise.env().get(x), tau)}, {premise}};
}

Derivation make_elim(Rule r, const Derivation& major, const Derivation& minor) {
  return {r,
          {major.env().plus(minor.env()), Term::app(major.subject(), minor.subject()),
           major.strict_goal().codomain()},
          {major, minor}};
}

namespace {
bool premise_less(const Derivation& a, const Derivation& b) {
  int c = compare(a.strict_goal(), b.strict_goal());
  if (c != 0) return c < 0;
  return derivation_key(a) < derivation_key(b);
}
}  // namespace

Derivation make_m(const Term& subject, std::vector<Derivation> premises) {
  std::sort(premises.begin(), premises.end(), premise_less);
  std::vector<SType> goals;
  std::vector<Env> envs;
  for (const auto& p : premises) {
    goals.push_back(p.strict_goal());
    envs.push_back(p.env());
  }
  return {Rule::M, {env_sum(envs), subject, MType(std::move(goals))}, std::move(premises)};
}

std::string Diagnostic::to_string() const {
  std::string path = "root";
  for (auto i : node_path) path += "." + std::to_string(i);
  return std::string(system_name(system)) + ": node " + path + " (" + rule + "): " + constraint;
}

// ---------------------------------------------------------------------------

namespace {

bool rule_allowed(Rule r, SystemId s) {
  switch (r) {
    case Rule::M: return true;
    case Rule::Var: return !is_weak(s);
    case Rule::VarW: return is_weak(s);
    case Rule::ArrI: return s != SystemId::He;
    case Rule::ArrINonempty:
    case Rule::ArrIEmpty: return s == SystemId::He;
    case Rule::ArrE: return !splits_application(s);
    case Rule::ArrENonempty:
    case Rule::ArrEEmpty: return splits_application(s);
  }
  return false;
}

std::string goal_text(const Goal& g) {
  if (auto s = std::get_if<SType>(&g)) return print_type(*s);
  return print_mtype(std::get<MType>(g));
}

class Checker {
 public:
  explicit Checker(SystemId sys) : sys_(sys) {}
  std::vector<Diagnostic> out;

  void node(const Derivation& d, std::vector<std::size_t>& path) {
    auto fail = [&](const std::string& what) {
      out.push_back({path, rule_name(d.rule), what, sys_});
    };
    if (!rule_allowed(d.rule, sys_)) fail("rule not part of this system");

    bool multi_goal = std::holds_alternative<MType>(d.goal());
    if ((d.rule == Rule::M) != multi_goal)
      fail(d.rule == Rule::M ? "(m) must conclude a multiset type" : "conclusion must be a strict type");

    if (forbids_empty(sys_)) {
      bool bad = has_empty_multiset(d.env());
      if (auto s = std::get_if<SType>(&d.goal())) bad = bad || has_empty_multiset(*s);
      else bad = bad || has_empty_multiset(std::get<MType>(d.goal()));
      if (bad) fail("empty multiset used");
    }

    const Term& t = d.subject();
    switch (d.rule) {
      case Rule::Var:
      case Rule::VarW: {
        if (!d.premises.empty()) fail("axiom with premises");
        if (!t.is_var()) {
          fail("axiom subject must be a variable");
          break;
        }
        if (multi_goal) break;
        const SType& rho = d.strict_goal();
        if (d.rule == Rule::Var) {
          if (d.env() != Env{{t.name(), MType::single(rho)}})
            fail("environment must be exactly " + t.name() + ":[" + print_type(rho) + "]");
        } else if (!d.env().get(t.name()).contains(rho)) {
          fail("environment does not offer " + t.name() + ":" + print_type(rho));
        }
        break;
      }
      case Rule::ArrI:
      case Rule::ArrINonempty:
      case Rule::ArrIEmpty: {
        if (d.premises.size() != 1) {
          fail("introduction needs exactly one premise");
          break;
        }
        const Derivation& p = d.premises[0];
        if (!t.is_abs()) {
          fail("subject must be an abstraction");
          break;
        }
        if (!alpha_equal(p.subject(), t.body())) fail("premise subject is not the abstraction body");
        if (multi_goal || !std::holds_alternative<SType>(p.goal())) break;
        const SType& g = d.strict_goal();
        if (!g.is_arrow()) {
          fail("type of an abstraction must be an arrow");
          break;
        }
        const std::string& x = t.name();
        if (g.codomain() != p.strict_goal()) fail("arrow codomain differs from premise type");
        if (d.rule == Rule::ArrIEmpty) {
          if (p.env().has(x)) fail("bound variable must not be in the premise environment");
          if (g.domain().size() != 1) fail("domain must be a singleton [s]");
          if (d.env() != p.env()) fail("environment must equal the premise environment");
        } else {
          if (g.domain() != p.env().get(x)) fail("arrow domain differs from the premise binding of " + x);
          if (d.env() != p.env().without(x)) fail("environment must be the premise environment without " + x);
          if ((d.rule == Rule::ArrINonempty || sys_ == SystemId::Hew) && !p.env().has(x))
            fail("bound variable must be in the premise environment");
        }
        break;
      }
      case Rule::ArrE:
      case Rule::ArrENonempty:
      case Rule::ArrEEmpty: {
        if (d.premises.size() != 2) {
          fail("elimination needs exactly two premises");
          break;
        }
        const Derivation &maj = d.premises[0], &min = d.premises[1];
        if (!t.is_app()) {
          fail("subject must be an application");
          break;
        }
        if (!alpha_equal(maj.subject(), t.fun())) fail("major premise subject is not the function");
        if (!alpha_equal(min.subject(), t.arg())) fail("minor premise subject is not the argument");
        if (min.rule != Rule::M) fail("minor premise must be an (m) node");
        if (multi_goal || !std::holds_alternative<SType>(maj.goal()) ||
            !std::holds_alternative<MType>(min.goal()))
          break;
        const SType& f = maj.strict_goal();
        if (!f.is_arrow()) {
          fail("major premise must have an arrow type");
          break;
        }
        if (f.codomain() != d.strict_goal()) fail("conclusion type is not the arrow codomain");
        const MType& arg = min.multi_goal();
        if (d.rule == Rule::ArrEEmpty) {
          if (!f.domain().empty()) fail("major premise domain must be []");
          if (arg.size() != 1) fail("minor premise must have a singleton type [s]");
        } else {
          if (f.domain() != arg) fail("argument type differs from the arrow domain");
          if (d.rule == Rule::ArrENonempty && arg.empty()) fail("domain must not be []");
        }
        if (d.env() != maj.env().plus(min.env())) fail("environment is not the sum of the premise environments");
        break;
      }
      case Rule::M: {
        std::vector<SType> goals;
        std::vector<Env> envs;
        bool shapes_ok = true;
        for (const auto& p : d.premises) {
          if (p.rule == Rule::M) fail("(m) cannot be iterated");
          if (!alpha_equal(p.subject(), t)) fail("premise subject differs from the (m) subject");
          if (!std::holds_alternative<SType>(p.goal())) {
            shapes_ok = false;
            continue;
          }
          goals.push_back(p.strict_goal());
          envs.push_back(p.env());
        }
        if (forbids_empty(sys_) && d.premises.empty()) fail("(m) needs at least one premise");
        if (shapes_ok && multi_goal) {
          if (MType(goals) != d.multi_goal()) fail("multiset is not the collection of premise types");
          if (env_sum(envs) != d.env()) fail("environment is not the sum of the premise environments");
        }
        break;
      }
    }

    for (std::size_t i = 0; i < d.premises.size(); ++i) {
      path.push_back(i);
      node(d.premises[i], path);
      path.pop_back();
    }
  }

 private:
  SystemId sys_;
};

}  // namespace

std::vector<Diagnostic> check_derivation(const Derivation& d, SystemId sys) {
  Checker c(sys);
  std::vector<std::size_t> path;
  c.node(d, path);
  return c.out;
}

bool is_valid(const Derivation& d, SystemId sys) { return check_derivation(d, sys).empty(); }

// ---------------------------------------------------------------------------

std::size_t meas(const Derivation& d) {
  std::size_t n = d.rule == Rule::M ? 0 : 1;
  for (const auto& p : d.premises) n += meas(p);
  return n;
}

namespace {
void positions(const Derivation& d, Position& cur, std::set<Position>& out) {
  if (d.rule == Rule::M) {
    for (const auto& p : d.premises) positions(p, cur, out);
    return;
  }
  out.insert(cur);
  if (is_intro(d.rule)) {
    cur.push_back(Step::UnderLambda);
    positions(d.premises[0], cur, out);
    cur.pop_back();
  } else if (is_elim(d.rule)) {
    cur.push_back(Step::AppLeft);
    positions(d.premises[0], cur, out);
    cur.back() = Step::AppRight;
    positions(d.premises[1], cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::set<Position> typed_positions(const Derivation& d) {
  std::set<Position> out;
  Position cur;
  positions(d, cur, out);
  return out;
}

std::size_t typed_variable_positions(const Derivation& d) {
  std::size_t n = 0;
  for (const auto& p : typed_positions(d)) {
    auto s = subterm_at(d.subject(), p);
    if (s && s->is_var()) ++n;
  }
  return n;
}

bool is_pi_normal(const Derivation& d) {
  for (const auto& p : typed_positions(d)) {
    auto s = subterm_at(d.subject(), p);
    if (s && s->is_app() && s->fun().is_abs()) return false;
  }
  return true;
}

namespace {
Term approx(const Derivation& d) {
  if (is_axiom(d.rule)) return d.subject();
  if (is_intro(d.rule)) return Term::abs(d.subject().name(), approx(d.premises[0]));
  if (is_elim(d.rule)) return Term::app(approx(d.premises[0]), approx(d.premises[1]));
  std::vector<Term> parts;
  for (const auto& p : d.premises) parts.push_back(approx(p));
  auto j = anf_join(parts);
  if (!j) throw Error("premises of an (m) node have incompatible approximants");
  return *j;
}
}  // namespace

Term derivation_approximant(const Derivation& d) {
  if (!is_pi_normal(d)) throw PreconditionError("derivation approximant needs a Pi-normal subject");
  return approx(d);
}

// ---------------------------------------------------------------------------

namespace {
std::set<std::string> derivation_names(const Derivation& d) {
  std::set<std::string> out = all_names(d.subject());
  for (const auto& x : d.env().domain()) out.insert(x);
  for (const auto& p : d.premises)
    for (const auto& n : derivation_names(p)) out.insert(n);
  return out;
}

Env rename_key(const Env& g, const std::string& from, const std::string& to) {
  if (!g.has(from)) return g;
  return g.without(from).with(to, g.get(from));
}

// Rename free `from` to the fresh name `to` throughout.
Derivation rename_free(const Derivation& d, const std::string& from, const std::string& to) {
  Derivation r = d;
  r.conclusion.env = rename_key(d.env(), from, to);
  r.conclusion.subject = substitute(d.subject(), from, Term::var(to));
  if (is_intro(d.rule) && d.subject().name() == from) return d;  // shadowed below
  for (auto& p : r.premises) p = rename_free(p, from, to);
  return r;
}

Derivation lift(const Derivation& d, const Term& t) {
  auto mismatch = [] { return PreconditionError("subject is not below the lifting target"); };
  Derivation r = d;
  if (d.rule == Rule::M) {
    for (auto& p : r.premises) p = lift(p, t);
    r.conclusion.subject = r.premises.empty() ? t : r.premises[0].subject();
    return r;
  }
  if (is_axiom(d.rule)) {
    if (!t.is_var() || t.name() != d.subject().name()) throw mismatch();
    r.conclusion.subject = t;
    return r;
  }
  if (is_elim(d.rule)) {
    if (!t.is_app()) throw mismatch();
    r.premises[0] = lift(d.premises[0], t.fun());
    r.premises[1] = lift(d.premises[1], t.arg());
    r.conclusion.subject = Term::app(r.premises[0].subject(), r.premises[1].subject());
    return r;
  }
  // introduction: align the target binder with ours
  if (!t.is_abs()) throw mismatch();
  const std::string& x = d.subject().name();
  std::string binder = x;
  Derivation premise = d.premises[0];
  Term body = t.body();
  if (t.name() != x) {
    if (!free_vars(body).count(x)) {
      body = substitute(body, t.name(), Term::var(x));
    } else {
      std::set<std::string> avoid = derivation_names(premise);
      for (const auto& n : all_names(body)) avoid.insert(n);
      binder = fresh_name(x, avoid);
      premise = rename_free(premise, x, binder);
      body = substitute(body, t.name(), Term::var(binder));
    }
  }
  r.premises[0] = lift(premise, body);
  r.conclusion.subject = Term::abs(binder, r.premises[0].subject());
  return r;
}
}  // namespace

Derivation lift_derivation(const Derivation& d, const Term& target) {
  if (!anf_leq(d.subject(), target)) throw PreconditionError("subject is not below the lifting target");
  return lift(d, target);
}

// ---------------------------------------------------------------------------

std::string derivation_key(const Derivation& d) {
  std::string k = rule_name(d.rule);
  k += '{';
  k += print_env(d.env());
  k += '|';
  k += alpha_key(d.subject());
  k += '|';
  k += goal_text(d.goal());
  for (const auto& p : d.premises) k += derivation_key(p);
  k += '}';
  return k;
}

// ---------------------------------------------------------------------------

Term identity_term() { return Term::abs("y0", Term::var("y0")); }

bool is_standard(const Derivation& d) {
  if (d.rule == Rule::ArrEEmpty) {
    const Derivation& minor = d.premises.at(1);
    if (minor.premises.size() != 1) return false;
    const Derivation& arg = minor.premises[0];
    if (!alpha_equal(arg.subject(), identity_term())) return false;
    const SType& g = arg.strict_goal();
    if (!g.is_arrow() || !g.codomain().is_base() || g.domain() != MType::single(g.codomain()))
      return false;
  }
  for (const auto& p : d.premises)
    if (!is_standard(p)) return false;
  return true;
}

namespace {
std::set<std::string> derivation_bases(const Derivation& d) {
  std::set<std::string> out = base_names(d.env());
  if (auto s = std::get_if<SType>(&d.goal())) {
    for (const auto& n : base_names(*s)) out.insert(n);
  } else {
    for (const auto& n : base_names(std::get<MType>(d.goal()))) out.insert(n);
  }
  for (const auto& p : d.premises)
    for (const auto& n : derivation_bases(p)) out.insert(n);
  return out;
}

Derivation standard_identity(const Env& delta, const SType& alpha) {
  std::string y = fresh_name("y0", delta.domain());
  Derivation ax = make_var_w(delta.with(y, MType::single(alpha)), y, alpha);
  return make_intro(Rule::ArrI, y, ax);
}

Derivation standardize_node(const Derivation& d, const SType& alpha) {
  Derivation r = d;
  for (auto& p : r.premises) p = standardize_node(p, alpha);
  if (d.rule == Rule::ArrEEmpty) {
    const Derivation& minor = d.premises[1];
    Derivation probe = d;
    probe.premises[0] = r.premises[0];
    if (!is_standard(probe)) {
      Derivation id = standard_identity(minor.env(), alpha);
      r.premises[1] = make_m(id.subject(), {id});
    }
  }
  if (is_intro(d.rule)) {
    r.conclusion.subject = Term::abs(d.subject().name(), r.premises[0].subject());
  } else if (is_elim(d.rule)) {
    r.conclusion.subject = Term::app(r.premises[0].subject(), r.premises[1].subject());
  } else if (d.rule == Rule::M && !r.premises.empty()) {
    for (const auto& p : r.premises)
      if (!alpha_equal(p.subject(), r.premises[0].subject()))
        throw Error("premises of an (m) node standardize to different subjects");
    r.conclusion.subject = r.premises[0].subject();
  }
  return r;
}
}  // namespace

Derivation standardize(const Derivation& d) {
  if (!is_valid(d, SystemId::Sw)) throw PreconditionError("standardize expects a valid Sw derivation");
  SType alpha = SType::base(fresh_name("a", derivation_bases(d)));
  return standardize_node(d, alpha);
}

// ---------------------------------------------------------------------------

namespace {
Derivation rebuild_subject(Derivation r) {
  if (is_intro(r.rule)) r.conclusion.subject = Term::abs(r.subject().name(), r.premises[0].subject());
  else if (is_elim(r.rule)) r.conclusion.subject = Term::app(r.premises[0].subject(), r.premises[1].subject());
  else if (r.rule == Rule::M && !r.premises.empty()) r.conclusion.subject = r.premises[0].subject();
  return r;
}
}  // namespace

Derivation weaken(const Derivation& d, const Env& extra) {
  if (extra.empty()) return d;
  Derivation r = d;
  switch (d.rule) {
    case Rule::VarW:
      r.conclusion.env = d.env().plus(extra);
      return r;
    case Rule::Var: throw Error("cannot weaken a relevant axiom");
    case Rule::M:
      if (d.premises.empty()) throw Error("cannot weaken an empty (m) node");
      r.premises[0] = weaken(d.premises[0], extra);
      r.conclusion.env = d.env().plus(extra);
      return r;
    default:
      if (is_intro(d.rule) && extra.has(d.subject().name()))
        throw Error("weakening would capture a bound variable");
      r.premises[0] = weaken(d.premises[0], extra);
      r.conclusion.env = d.env().plus(extra);
      return r;
  }
}

namespace {
Derivation hyg_node(const Derivation& d, std::set<std::string>& used) {
  Derivation r = d;
  if (d.rule == Rule::M) {
    if (d.premises.empty()) {
      r.conclusion.subject = hygienize(d.subject(), used);
      for (const auto& n : all_names(r.subject())) used.insert(n);
      return r;
    }
    // Premises type one subject; give them identical renamings.
    std::set<std::string> start = used, merged = used;
    for (auto& p : r.premises) {
      std::set<std::string> local = start;
      p = hyg_node(p, local);
      merged.insert(local.begin(), local.end());
    }
    used = merged;
    return rebuild_subject(r);
  }
  if (is_intro(d.rule)) {
    std::string x = d.subject().name();
    Derivation premise = d.premises[0];
    if (used.count(x)) {
      std::set<std::string> avoid = used;
      for (const auto& n : derivation_names(premise)) avoid.insert(n);
      std::string x2 = fresh_name(x, avoid);
      premise = rename_free(premise, x, x2);
      x = x2;
    }
    used.insert(x);
    r.premises[0] = hyg_node(premise, used);
    r.conclusion.subject = Term::abs(x, r.premises[0].subject());
    return r;
  }
  for (auto& p : r.premises) p = hyg_node(p, used);
  return rebuild_subject(r);
}

bool same_goal(const Derivation& d, const SType& s) { return d.strict_goal() == s; }

// Replace the x-resources of d by the derivations in pool (one per resource).
Derivation substitute_resources(const Derivation& d, const std::string& x, const Term& w,
                                std::vector<Derivation> pool) {
  MType need = d.env().get(x);
  Derivation r = d;
  if (d.rule == Rule::M && d.premises.empty()) {
    r.conclusion.subject = substitute(d.subject(), x, w);
    return r;
  }
  if (is_axiom(d.rule)) {
    std::vector<Env> junk;
    if (d.subject().name() == x) {
      auto it = std::find_if(pool.begin(), pool.end(),
                             [&](const Derivation& p) { return same_goal(p, d.strict_goal()); });
      if (it == pool.end()) throw Error("no argument derivation for a variable occurrence");
      Derivation chosen = *it;
      pool.erase(it);
      Env rest = d.env().without(x);
      for (const auto& p : pool) rest = rest.plus(p.env());
      if (!rest.empty() && d.rule == Rule::Var) throw Error("relevant axiom would need weakening");
      return weaken(chosen, rest);
    }
    if (pool.empty()) return d;
    if (d.rule == Rule::Var) throw Error("relevant axiom would need weakening");
    Env g = d.env().without(x);
    for (const auto& p : pool) g = g.plus(p.env());
    r.conclusion.env = g;
    return r;
  }
  // Distribute the pool over the premises according to their x-resources.
  std::vector<std::vector<Derivation>> parts(d.premises.size());
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    MType own = d.premises[i].env().get(x);
    for (const auto& s : own.items()) {
      auto it = std::find_if(pool.begin(), pool.end(),
                             [&](const Derivation& p) { return same_goal(p, s); });
      if (it == pool.end()) throw Error("argument derivations do not cover the variable's resources");
      parts[i].push_back(*it);
      pool.erase(it);
    }
  }
  if (!pool.empty()) throw Error("argument derivations left over");
  (void)need;
  std::vector<Env> envs;
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    r.premises[i] = substitute_resources(d.premises[i], x, w, parts[i]);
    envs.push_back(r.premises[i].env());
  }
  if (is_intro(d.rule)) {
    const std::string& z = d.subject().name();
    r.conclusion.env = d.rule == Rule::ArrIEmpty ? envs[0] : envs[0].without(z);
  } else {
    r.conclusion.env = env_sum(envs);
  }
  return rebuild_subject(r);
}

Derivation contract(const Derivation& d, SystemId sys) {
  if (!is_elim(d.rule)) throw PreconditionError("typed redex must be concluded by an elimination");
  const Derivation& lam = d.premises[0];
  const Derivation& minor = d.premises[1];
  const std::string& x = lam.subject().name();
  const Term& w = minor.subject();
  const Derivation& body = lam.premises.at(0);
  std::vector<Derivation> pool = minor.premises;
  bool uses_x = body.env().has(x);
  if (!uses_x) {
    Derivation r = substitute_resources(body, x, w, {});
    if (!minor.env().empty()) {
      if (!is_weak(sys)) throw Error(std::string("no subject reduction in ") + system_name(sys) +
                                     ": the discarded argument's resources need weakening");
      r = weaken(r, minor.env());
    }
    return r;
  }
  return substitute_resources(body, x, w, pool);
}

Derivation reduce_at(const Derivation& d, const Position& p, std::size_t i, SystemId sys) {
  Derivation r = d;
  if (d.rule == Rule::M) {
    if (d.premises.empty()) {
      Position rest(p.begin() + static_cast<long>(i), p.end());
      r.conclusion.subject = contract_at(d.subject(), rest);
      return r;
    }
    for (auto& q : r.premises) q = reduce_at(q, p, i, sys);
    return rebuild_subject(r);
  }
  if (i == p.size()) return contract(d, sys);
  Step s = p[i];
  if (is_intro(d.rule) && s == Step::UnderLambda) {
    r.premises[0] = reduce_at(d.premises[0], p, i + 1, sys);
  } else if (is_elim(d.rule) && s != Step::UnderLambda) {
    std::size_t k = s == Step::AppLeft ? 0 : 1;
    r.premises[k] = reduce_at(d.premises[k], p, i + 1, sys);
  } else {
    throw PreconditionError("position does not follow the derivation");
  }
  return rebuild_subject(r);
}
}  // namespace

Derivation hygienize_derivation(const Derivation& d) {
  std::set<std::string> used = free_vars(d.subject());
  for (const auto& x : d.env().domain()) used.insert(x);
  return hyg_node(d, used);
}

Derivation subject_reduce(const Derivation& d, const Position& p, SystemId sys) {
  auto sub = subterm_at(d.subject(), p);
  if (!sub || !sub->is_app() || !sub->fun().is_abs())
    throw PreconditionError("no beta-redex at position " + position_string(p));
  return reduce_at(hygienize_derivation(d), p, 0, sys);
}

}  // namespace mintypes
