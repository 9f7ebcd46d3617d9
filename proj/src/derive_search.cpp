// Syntax-directed proof search and principal typings of normal forms.
#include <algorithm>
#include <memory>
#include <map>
#include <set>

#include "mintypes/derive.hpp"
#include "mintypes/error.hpp"
#include "mintypes/textio.hpp"

namespace mintypes {

namespace {

using Subst = std::map<std::string, SType>;

bool match_type(const SType& pat, const SType& target, const std::set<std::string>& vars, Subst& th);

// All ways to match pattern items against target items. exact: bijection; else injection.
void match_items(const std::vector<SType>& pats, std::size_t i, std::vector<SType> pool,
                 const std::set<std::string>& vars, const Subst& th, bool exact,
                 std::vector<Subst>& out) {
  if (i == pats.size()) {
    if (!exact || pool.empty()) out.push_back(th);
    return;
  }
  std::set<SType> tried;
  for (std::size_t j = 0; j < pool.size(); ++j) {
    if (!tried.insert(pool[j]).second) continue;
    Subst th2 = th;
    if (!match_type(pats[i], pool[j], vars, th2)) continue;
    std::vector<SType> rest = pool;
    rest.erase(rest.begin() + static_cast<long>(j));
    match_items(pats, i + 1, rest, vars, th2, exact, out);
  }
}

bool match_type(const SType& pat, const SType& target, const std::set<std::string>& vars, Subst& th) {
  if (pat.is_base()) {
    if (!vars.count(pat.name())) return target.is_base() && target.name() == pat.name();
    auto it = th.find(pat.name());
    if (it != th.end()) return it->second == target;
    th.emplace(pat.name(), target);
    return true;
  }
  if (!target.is_arrow() || pat.domain().size() != target.domain().size()) return false;
  if (!match_type(pat.codomain(), target.codomain(), vars, th)) return false;
  std::vector<Subst> found;
  match_items(pat.domain().items(), 0, target.domain().items(), vars, th, true, found);
  if (found.empty()) return false;
  th = found.front();  // domains of principal types are singletons in practice
  return true;
}

// Every substitution th with th(delta) == gamma (exact) or th(delta) included in gamma.
std::vector<Subst> match_env(const Env& delta, const Env& gamma, const std::set<std::string>& vars,
                             bool exact) {
  std::vector<Subst> cur{Subst{}};
  if (exact && delta.domain() != gamma.domain()) return {};
  for (const auto& [x, a] : delta.bindings()) {
    std::vector<Subst> next;
    for (const auto& th : cur) match_items(a.items(), 0, gamma.get(x).items(), vars, th, exact, next);
    cur = std::move(next);
    if (cur.empty()) break;
  }
  return cur;
}

// Search works on shared nodes; value Derivations are built only for the final answers.
struct Node;
using NodeP = std::shared_ptr<const Node>;

std::string goal_text(const Goal& g) {
  if (auto s = std::get_if<SType>(&g)) return print_type(*s);
  return print_mtype(std::get<MType>(g));
}

struct Node {
  Rule rule;
  Judgement conclusion;
  std::vector<NodeP> premises;

  const SType& goal() const { return std::get<SType>(conclusion.goal); }

  // Same text as derivation_key of the finished tree; most nodes never need it.
  const std::string& key() const {
    if (key_.empty()) {
      key_ = rule_name(rule);
      key_ += '{';
      key_ += print_env(conclusion.env);
      key_ += '|';
      key_ += alpha_key(conclusion.subject);
      key_ += '|';
      key_ += goal_text(conclusion.goal);
      for (const auto& p : premises) key_ += p->key();
      key_ += '}';
    }
    return key_;
  }

  mutable std::string key_;
};

NodeP node(Rule r, Judgement j, std::vector<NodeP> premises) {
  return std::make_shared<const Node>(Node{r, std::move(j), std::move(premises), {}});
}

// Mirrors make_var, make_var_w, make_intro, make_elim and make_m.
NodeP var_node(const std::string& x, const SType& rho) {
  return node(Rule::Var, {Env{{x, MType::single(rho)}}, Term::var(x), rho}, {});
}

NodeP var_w_node(const Env& env, const std::string& x, const SType& rho) {
  return node(Rule::VarW, {env, Term::var(x), rho}, {});
}

NodeP intro_node(Rule r, const std::string& x, const NodeP& p, const std::optional<SType>& guessed = std::nullopt) {
  const Env& g = p->conclusion.env;
  Term subject = Term::abs(x, p->conclusion.subject);
  if (r == Rule::ArrIEmpty) return node(r, {g, subject, SType::arrow(MType::single(*guessed), p->goal())}, {p});
  return node(r, {g.without(x), subject, SType::arrow(g.get(x), p->goal())}, {p});
}

NodeP elim_node(Rule r, const NodeP& major, const NodeP& minor) {
  return node(r,
              {major->conclusion.env.plus(minor->conclusion.env),
               Term::app(major->conclusion.subject, minor->conclusion.subject), major->goal().codomain()},
              {major, minor});
}

NodeP m_node(const Term& subject, std::vector<NodeP> premises) {
  std::sort(premises.begin(), premises.end(), [](const NodeP& a, const NodeP& b) {
    int c = compare(a->goal(), b->goal());
    if (c != 0) return c < 0;
    return a->key() < b->key();
  });
  std::vector<SType> goals;
  std::vector<Env> envs;
  for (const auto& p : premises) {
    goals.push_back(p->goal());
    envs.push_back(p->conclusion.env);
  }
  return node(Rule::M, {env_sum(envs), subject, MType(std::move(goals))}, std::move(premises));
}

Derivation to_derivation(const Node& n) {
  Derivation d{n.rule, n.conclusion, {}};
  d.premises.reserve(n.premises.size());
  for (const auto& p : n.premises) d.premises.push_back(to_derivation(*p));
  return d;
}

class Searcher {
 public:
  Searcher(SystemId sys, std::set<std::string> bases) : sys_(sys), bases_(std::move(bases)) {}

  // Results live in memo_ (map nodes are stable), so callers get references.
  const std::vector<NodeP>& strict(const Env& g, const Term& t, const SType& s) {
    std::string key = "S" + print_env(g) + "|" + print_term(t) + "|" + print_type(s);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<NodeP> out;
    if (t.is_var()) {
      if (is_weak(sys_)) {
        if (g.get(t.name()).contains(s)) out.push_back(var_w_node(g, t.name(), s));
      } else if (g == Env{{t.name(), MType::single(s)}}) {
        out.push_back(var_node(t.name(), s));
      }
    } else if (t.is_abs()) {
      abstraction(g, t, s, out);
    } else if (t.is_app()) {
      spine(g, t, s, out);
    }
    return memo_[key] = std::move(out);
  }

  const std::vector<NodeP>& multi(const Env& g, const Term& t, const MType& a) {
    std::string key = "M" + print_env(g) + "|" + print_term(t) + "|" + print_mtype(a);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<NodeP> out;
    std::set<std::string> seen;
    const auto& items = a.items();
    if (items.empty()) {
      if (g.empty() && !forbids_empty(sys_)) out.push_back(m_node(t, {}));
    } else {
      for_each_split(g, items.size(), [&](const std::vector<Env>& parts) {
        std::vector<const std::vector<NodeP>*> options;
        for (std::size_t i = 0; i < items.size(); ++i) {
          options.push_back(&strict(parts[i], t, items[i]));
          if (options.back()->empty()) return;
        }
        std::vector<NodeP> chosen;
        product(options, 0, chosen, [&](const std::vector<NodeP>& ps) {
          NodeP m = m_node(t, ps);
          if (seen.insert(m->key()).second) out.push_back(std::move(m));
        });
      });
    }
    return memo_[key] = std::move(out);
  }

 private:
  template <class F>
  void product(const std::vector<const std::vector<NodeP>*>& options, std::size_t i, std::vector<NodeP>& chosen,
               const F& f) {
    if (i == options.size()) {
      f(chosen);
      return;
    }
    for (const auto& d : *options[i]) {
      chosen.push_back(d);
      product(options, i + 1, chosen, f);
      chosen.pop_back();
    }
  }

  void abstraction(const Env& g, const Term& t, const SType& s, std::vector<NodeP>& out) {
    if (!s.is_arrow()) return;
    std::string x = t.name();
    Term body = t.body();
    if (g.has(x)) {
      std::set<std::string> avoid = g.domain();
      for (const auto& n : all_names(t)) avoid.insert(n);
      std::string x2 = fresh_name(x, avoid);
      body = substitute(body, x, Term::var(x2));
      x = x2;
    }
    const MType& a = s.domain();
    const SType& tau = s.codomain();
    if (sys_ == SystemId::He) {
      if (!a.empty())
        for (const auto& p : strict(g.plus(Env{{x, a}}), body, tau)) out.push_back(intro_node(Rule::ArrINonempty, x, p));
      if (a.size() == 1)
        for (const auto& p : strict(g, body, tau))
          if (!p->conclusion.env.has(x)) out.push_back(intro_node(Rule::ArrIEmpty, x, p, a.items()[0]));
      return;
    }
    for (const auto& p : strict(g.plus(Env{{x, a}}), body, tau)) {
      if (sys_ == SystemId::Hew && !p->conclusion.env.has(x)) continue;
      out.push_back(intro_node(Rule::ArrI, x, p));
    }
  }

  void spine(const Env& g, const Term& t, const SType& s, std::vector<NodeP>& out) {
    Term head = spine_head(t);
    if (!head.is_var()) return;
    std::vector<Term> args = spine_args(t);
    const std::string& x = head.name();
    std::size_t n = args.size();
    for (const auto& [rho, count] : g.get(x).grouped()) {
      (void)count;
      if (rho.arity() < n || rho.strip(n) != s) continue;
      std::vector<MType> doms = rho.domains(n);
      if (is_weak(sys_)) {
        for_each_split(g, n + 1, [&](const std::vector<Env>& parts) {
          if (!parts[0].get(x).contains(rho)) return;
          NodeP ax = var_w_node(parts[0], x, rho);
          std::vector<Env> rest(parts.begin() + 1, parts.end());
          chain(ax, args, doms, rest, out);
        });
      } else {
        Env rest_env = g.without(x);
        MType left = g.get(x).without(rho);
        if (!left.empty()) rest_env = rest_env.with(x, left);
        NodeP ax = var_node(x, rho);
        for_each_split(rest_env, n, [&](const std::vector<Env>& parts) { chain(ax, args, doms, parts, out); });
      }
    }
  }

  using Minor = std::pair<Rule, NodeP>;

  // Minor premises for argument i under environment part g.
  std::vector<Minor> minors(const Env& g, const Term& arg, const MType& dom) {
    std::vector<Minor> res;
    if (!splits_application(sys_)) {
      for (const auto& m : multi(g, arg, dom)) res.emplace_back(Rule::ArrE, m);
      return res;
    }
    if (!dom.empty()) {
      for (const auto& m : multi(g, arg, dom)) res.emplace_back(Rule::ArrENonempty, m);
      return res;
    }
    std::set<std::string> seen;
    for (const SType& cand : erased_candidates(g, arg)) {
      for (const auto& p : strict(g, arg, cand)) {
        NodeP m = m_node(arg, {p});
        if (seen.insert(m->key()).second) res.emplace_back(Rule::ArrEEmpty, std::move(m));
      }
    }
    return res;
  }

  // Types worth trying for an argument in an erased position: instances of its
  // principal typings that fit the available environment part.
  std::vector<SType> erased_candidates(const Env& g, const Term& arg) {
    std::set<std::string> avoid = bases_;
    for (const auto& b : base_names(g)) avoid.insert(b);
    std::vector<SType> out;
    std::set<SType> seen;
    for (const auto& [delta, sigma] : infer_principal_nf(arg, sys_, avoid)) {
      std::set<std::string> vars = base_names(delta);
      for (const auto& b : base_names(sigma)) vars.insert(b);
      for (const auto& b : avoid) vars.erase(b);
      for (const auto& th : match_env(delta, g, vars, !is_weak(sys_))) {
        SType c = rename_bases(sigma, th);
        if (seen.insert(c).second) out.push_back(c);
      }
    }
    return out;
  }

  void chain(const NodeP& ax, const std::vector<Term>& args, const std::vector<MType>& doms,
             const std::vector<Env>& parts, std::vector<NodeP>& out) {
    std::vector<std::vector<Minor>> opts;
    for (std::size_t i = 0; i < args.size(); ++i) {
      opts.push_back(minors(parts[i], args[i], doms[i]));
      if (opts.back().empty()) return;
    }
    build(ax, opts, 0, out);
  }

  void build(const NodeP& major, const std::vector<std::vector<Minor>>& opts, std::size_t i,
             std::vector<NodeP>& out) {
    if (i == opts.size()) {
      out.push_back(major);
      return;
    }
    for (const auto& [rule, minor] : opts[i]) build(elim_node(rule, major, minor), opts, i + 1, out);
  }

  SystemId sys_;
  std::set<std::string> bases_;
  std::map<std::string, std::vector<NodeP>> memo_;
};

void check_search_input(const Env& g, const Term& t, const Goal& goal, SystemId sys) {
  if (sys == SystemId::H || sys == SystemId::Hw) {
    if (!is_anf(t) && !is_normal(t))
      throw PreconditionError("derive_search in " + std::string(system_name(sys)) +
                              " needs an approximate normal form, got " + print_term(t));
  } else if (!is_normal(t)) {
    throw PreconditionError("derive_search in " + std::string(system_name(sys)) +
                            " needs a pure normal form, got " + print_term(t));
  }
  if (forbids_empty(sys)) {
    bool bad = has_empty_multiset(g);
    if (auto s = std::get_if<SType>(&goal)) bad = bad || has_empty_multiset(*s);
    else bad = bad || has_empty_multiset(std::get<MType>(goal));
    if (bad) throw PreconditionError("[] is not a type in " + std::string(system_name(sys)));
  }
}

}  // namespace

std::vector<Derivation> derive_search(const Env& env, const Term& subject, const Goal& goal,
                                      SystemId sys, const SearchOptions& opts) {
  check_search_input(env, subject, goal, sys);
  std::set<std::string> bases = base_names(env);
  if (auto s = std::get_if<SType>(&goal)) {
    for (const auto& b : base_names(*s)) bases.insert(b);
  } else {
    for (const auto& b : base_names(std::get<MType>(goal))) bases.insert(b);
  }
  Searcher search(sys, bases);
  const std::vector<NodeP>& found = std::holds_alternative<SType>(goal)
                                        ? search.strict(env, subject, std::get<SType>(goal))
                                        : search.multi(env, subject, std::get<MType>(goal));
  std::size_t n = opts.limit ? std::min(opts.limit, found.size()) : found.size();
  std::vector<Derivation> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(to_derivation(*found[i]));
  return out;
}

bool derivable(const Env& env, const Term& subject, const Goal& goal, SystemId sys) {
  return !derive_search(env, subject, goal, sys, {1}).empty();
}

// ---------------------------------------------------------------------------

namespace {

class Principal {
 public:
  Principal(SystemId sys, std::set<std::string> avoid) : sys_(sys), used_(std::move(avoid)) {}

  SType fresh() {
    std::string n = fresh_name("a1", used_);
    used_.insert(n);
    made_.push_back(n);
    return SType::base(n);
  }

  std::optional<std::pair<Env, SType>> infer(const Term& t) {
    switch (t.kind()) {
      case TermKind::Omega: return std::nullopt;
      case TermKind::Var: {
        SType a = fresh();
        return std::make_pair(Env{{t.name(), MType::single(a)}}, a);
      }
      case TermKind::Abs: {
        auto b = infer(t.body());
        if (!b) return std::nullopt;
        auto& [delta, tau] = *b;
        MType dom = delta.get(t.name());
        if (!dom.empty()) return std::make_pair(delta.without(t.name()), SType::arrow(dom, tau));
        if (forbids_empty(sys_)) return std::make_pair(delta, SType::arrow(MType::single(fresh()), tau));
        return std::make_pair(delta, SType::arrow(MType(), tau));
      }
      case TermKind::App: {
        Term head = spine_head(t);
        if (!head.is_var()) return std::nullopt;
        std::vector<MType> doms;
        std::vector<Env> envs;
        for (const auto& a : spine_args(t)) {
          if (a.is_omega()) {
            if (sys_ != SystemId::H && sys_ != SystemId::Hw) return std::nullopt;
            doms.emplace_back();
            continue;
          }
          auto r = infer(a);
          if (!r) return std::nullopt;
          envs.push_back(r->first);
          doms.push_back(MType::single(r->second));
        }
        SType beta = fresh();
        envs.push_back(Env{{head.name(), MType::single(SType::arrows(doms, beta))}});
        return std::make_pair(env_sum(envs), beta);
      }
    }
    return std::nullopt;
  }

  const std::vector<std::string>& made() const { return made_; }

 private:
  SystemId sys_;
  std::set<std::string> used_;
  std::vector<std::string> made_;
};

}  // namespace

std::vector<std::pair<Env, SType>> infer_principal_nf(const Term& t, SystemId sys,
                                                      const std::set<std::string>& avoid) {
  if (sys == SystemId::H || sys == SystemId::Hw) {
    if (!is_anf(t) && !is_normal(t)) throw PreconditionError("infer_principal_nf needs an ANF");
  } else if (!is_normal(t)) {
    throw PreconditionError("infer_principal_nf needs a pure normal form");
  }
  std::set<std::string> used = avoid;
  for (const auto& n : all_names(t)) used.insert(n);
  Principal p(sys, used);
  auto r = p.infer(t);
  if (!r) return {};
  std::vector<std::pair<Env, SType>> out{*r};
  if (p.made().size() > 1) {
    std::map<std::string, SType> th;
    SType one = SType::base(p.made().front());
    for (const auto& n : p.made()) th.emplace(n, one);
    std::pair<Env, SType> c{rename_bases(r->first, th), rename_bases(r->second, th)};
    if (c.first != r->first || c.second != r->second) out.push_back(c);
  }
  return out;
}

}  // namespace mintypes
