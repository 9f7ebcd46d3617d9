#include "mintypes/inhabit.hpp"

#include <map>
#include <set>

#include "mintypes/error.hpp"
#include "mintypes/textio.hpp"

namespace mintypes {

const char* run_rule_name(RunRule r) {
  switch (r) {
    case RunRule::Abs: return "Abs";
    case RunRule::Union: return "Union";
    case RunRule::HeadGt0: return "Head_gt0";
    case RunRule::HeadGt0Empty: return "Head_gt0_empty";
    case RunRule::Head0: return "Head_0";
    case RunRule::Head: return "Head";
    case RunRule::HeadB: return "Head_b";
  }
  return "?";
}

const char* form_name(Form f) {
  switch (f) {
    case Form::T: return "T";
    case Form::TI: return "TI";
    case Form::Hx: return "H";
  }
  return "?";
}

namespace {

using Node = std::shared_ptr<const RunTree>;
using Sols = std::vector<Solution>;

std::string names_key(const std::set<std::string>& s) {
  std::string k;
  for (const auto& n : s) k += n + ",";
  return k;
}

class Engine {
 public:
  Engine(SystemId sys, bool basic, std::optional<std::size_t> budget)
      : sys_(sys), basic_(basic), budget_(budget) {
    if (sys == SystemId::He || sys == SystemId::S)
      throw PreconditionError("no direct inhabitation algorithm for " + std::string(system_name(sys)) +
                              "; use inhabit_He / inhabit_S");
  }

  Sols t(const Env& g, const SType& s, const std::set<std::string>& scope) {
    std::string key = "T" + print_env(g) + "|" + print_type(s) + "|" + names_key(scope);
    if (auto hit = lookup(key)) return *hit;
    Sols out;
    std::set<std::string> seen;
    auto add = [&](Term term, RunRule rule, std::vector<Node> prem) {
      if (!seen.insert(alpha_key(term)).second) return;
      auto node = std::make_shared<RunTree>(RunTree{rule, Form::T, g, s, "", std::nullopt, term, std::move(prem)});
      out.push_back({term, node});
    };
    if (s.is_arrow()) {
      std::set<std::string> avoid = scope;
      for (const auto& x : g.domain()) avoid.insert(x);
      std::string x = next_binder(avoid);
      std::set<std::string> inner = scope;
      inner.insert(x);
      Env g2 = s.domain().empty() ? g : g.plus(Env{{x, s.domain()}});
      for (const auto& sol : t(g2, s.codomain(), inner)) add(Term::abs(x, sol.term), RunRule::Abs, {sol.run});
    }
    for (const auto& [y, a] : g.bindings()) {
      for (const auto& [rho, count] : a.grouped()) {
        (void)count;
        if (rho.arity() < s.arity() || rho.strip(rho.arity() - s.arity()) != s) continue;
        Env rest = g.without(y);
        MType left = a.without(rho);
        if (!left.empty()) rest = rest.with(y, left);
        if (basic_) {
          head_basic(y, rho, rest, s, scope, add);
        } else {
          for (const auto& sol : hx(y, rho, rest, s, scope)) add(sol.term, RunRule::Head, {sol.run});
        }
      }
    }
    store(key, out);
    return out;
  }

  Sols ti(const Env& g, const MType& a, const std::set<std::string>& scope) {
    std::string key = "I" + print_env(g) + "|" + print_mtype(a) + "|" + names_key(scope);
    if (auto hit = lookup(key)) return *hit;
    Sols out;
    std::set<std::string> seen;
    auto add = [&](const Term& term, std::vector<Node> prem) {
      if (!seen.insert(alpha_key(term)).second) return;
      auto node = std::make_shared<RunTree>(RunTree{RunRule::Union, Form::TI, g, a, "", std::nullopt, term, std::move(prem)});
      out.push_back({term, node});
    };
    const auto& items = a.items();
    if (items.empty()) {
      if (g.empty() && !forbids_empty(sys_) && sys_ != SystemId::Sw) add(Term::omega(), {});
    } else {
      for_each_split(g, items.size(), [&](const std::vector<Env>& parts) {
        std::vector<Sols> opts;
        for (std::size_t i = 0; i < items.size(); ++i) {
          opts.push_back(t(parts[i], items[i], scope));
          if (opts.back().empty()) return;
        }
        std::vector<Node> prem;
        if (sys_ == SystemId::H || sys_ == SystemId::Hw) {
          join_product(opts, 0, std::nullopt, prem, add);
        } else {
          common(opts, add);
        }
      });
    }
    store(key, out);
    return out;
  }

 private:
  template <class Add>
  void join_product(const std::vector<Sols>& opts, std::size_t i, const std::optional<Term>& acc,
                    std::vector<Node>& prem, const Add& add) {
    if (i == opts.size()) {
      add(*acc, prem);
      return;
    }
    for (const auto& sol : opts[i]) {
      std::optional<Term> next = acc ? anf_join({*acc, sol.term}) : std::optional<Term>(sol.term);
      if (!next) continue;
      prem.push_back(sol.run);
      join_product(opts, i + 1, next, prem, add);
      prem.pop_back();
    }
  }

  // One term shared by every premise.
  template <class Add>
  void common(const std::vector<Sols>& opts, const Add& add) {
    for (const auto& first : opts[0]) {
      std::string k = alpha_key(first.term);
      std::vector<Node> prem{first.run};
      bool ok = true;
      for (std::size_t i = 1; i < opts.size() && ok; ++i) {
        ok = false;
        for (const auto& sol : opts[i]) {
          if (alpha_key(sol.term) == k) {
            prem.push_back(sol.run);
            ok = true;
            break;
          }
        }
      }
      if (ok) add(first.term, prem);
    }
  }

  Sols hx(const std::string& y, const SType& rho, const Env& g, const SType& goal,
          const std::set<std::string>& scope) {
    std::string key = "H" + y + ":" + print_type(rho) + "|" + print_env(g) + "|" + print_type(goal) + "|" +
                      names_key(scope);
    if (auto hit = lookup(key)) return *hit;
    Sols out;
    std::set<std::string> seen;
    auto add = [&](Term term, RunRule rule, std::vector<Node> prem) {
      if (!seen.insert(alpha_key(term)).second) return;
      auto node = std::make_shared<RunTree>(RunTree{rule, Form::Hx, g, goal, y, rho, term, std::move(prem)});
      out.push_back({term, node});
    };
    std::size_t m = rho.arity() - goal.arity();
    if (m == 0) {
      if (g.empty() || is_weak(sys_)) add(Term::var(y), RunRule::Head0, {});
    } else {
      MType b = rho.domains(m)[m - 1];
      SType prev = rho.strip(m - 1);
      if (b.empty() && sys_ == SystemId::Sw) {
        for (const auto& sol : hx(y, rho, g, prev, scope))
          add(Term::app(sol.term, identity_term()), RunRule::HeadGt0Empty, {sol.run});
      } else {
        for_each_split(g, 2, [&](const std::vector<Env>& parts) {
          Sols heads = hx(y, rho, parts[0], prev, scope);
          if (heads.empty()) return;
          Sols args = ti(parts[1], b, scope);
          for (const auto& h : heads)
            for (const auto& a : args) add(Term::app(h.term, a.term), RunRule::HeadGt0, {h.run, a.run});
        });
      }
    }
    store(key, out);
    return out;
  }

  // Head_b: x b1 ... bm in one step.
  template <class Add>
  void head_basic(const std::string& y, const SType& rho, const Env& g, const SType& goal,
                  const std::set<std::string>& scope, const Add& add) {
    std::size_t m = rho.arity() - goal.arity();
    std::vector<MType> doms = rho.domains(m);
    for_each_split(g, m, [&](const std::vector<Env>& parts) {
      std::vector<Sols> opts;
      for (std::size_t i = 0; i < m; ++i) {
        opts.push_back(ti(parts[i], doms[i], scope));
        if (opts.back().empty()) return;
      }
      std::vector<Node> prem;
      std::vector<Term> args;
      basic_product(opts, 0, y, rho, args, prem, add);
    });
  }

  template <class Add>
  void basic_product(const std::vector<Sols>& opts, std::size_t i, const std::string& y, const SType& rho,
                     std::vector<Term>& args, std::vector<Node>& prem, const Add& add) {
    if (i == opts.size()) {
      (void)rho;
      add(Term::apps(Term::var(y), args), RunRule::HeadB, prem);
      return;
    }
    for (const auto& sol : opts[i]) {
      args.push_back(sol.term);
      prem.push_back(sol.run);
      basic_product(opts, i + 1, y, rho, args, prem, add);
      args.pop_back();
      prem.pop_back();
    }
  }

  const Sols* lookup(const std::string& key) {
    auto it = memo_.find(key);
    if (it != memo_.end()) return &it->second;
    if (budget_ && ++expanded_ > *budget_)
      throw BudgetExceeded("inhabitation search expanded more than " + std::to_string(*budget_) +
                           " judgements");
    return nullptr;
  }

  void store(const std::string& key, const Sols& out) { memo_[key] = out; }

  SystemId sys_;
  bool basic_;
  std::optional<std::size_t> budget_;
  std::size_t expanded_ = 0;
  std::map<std::string, Sols> memo_;
};

void check_query(SystemId sys, const Env& env, const Goal& goal) {
  if (!forbids_empty(sys)) return;
  bool bad = has_empty_multiset(env);
  if (auto s = std::get_if<SType>(&goal)) bad = bad || has_empty_multiset(*s);
  else bad = bad || has_empty_multiset(std::get<MType>(goal));
  if (bad) throw PreconditionError("[] is not a type in " + std::string(system_name(sys)));
}

Sols finish(Sols raw, const Env& env, SearchMode mode) {
  Sols out;
  std::set<std::string> seen;
  for (auto& s : raw) {
    Term t = hygienize(s.term, env.domain());
    if (!seen.insert(alpha_key(t)).second) continue;
    out.push_back({t, s.run});
    if (mode == SearchMode::First) break;
  }
  return out;
}

}  // namespace

std::vector<Solution> inhabit(const Query& q) {
  check_query(q.sys, q.env, q.goal);
  Engine e(q.sys, false, q.budget);
  Sols raw;
  if (auto s = std::get_if<SType>(&q.goal)) raw = e.t(q.env, *s, {});
  else raw = e.ti(q.env, std::get<MType>(q.goal), {});
  return finish(std::move(raw), q.env, q.mode);
}

std::vector<Term> inhabit_terms(SystemId sys, const Env& env, const SType& goal) {
  Query q;
  q.sys = sys;
  q.env = env;
  q.goal = goal;
  std::vector<Term> out;
  for (const auto& s : inhabit(q)) out.push_back(s.term);
  return out;
}

std::vector<Term> inhabit_basic_H(const Env& env, const SType& goal) {
  Engine e(SystemId::H, true, std::nullopt);
  std::vector<Term> out;
  for (const auto& s : finish(e.t(env, goal, {}), env, SearchMode::All)) out.push_back(s.term);
  return out;
}

std::size_t run_measure(const RunTree& node) {
  std::size_t env = measure_env(node.env);
  switch (node.form) {
    case Form::T: return env + measure_type(std::get<SType>(node.goal));
    case Form::TI: return env + measure_mtype(std::get<MType>(node.goal));
    case Form::Hx: {
      const SType& rho = *node.head_type;
      std::size_t m = rho.arity() - std::get<SType>(node.goal).arity();
      std::size_t n = env + m;
      for (const auto& a : rho.domains(m)) n += measure_mtype(a);
      return n;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// From weak derivations to relevant ones: unused resources are consumed by
// dummy redexes (\z. t) y.

namespace {

struct Converted {
  Term term;
  Derivation d;
  Env junk;
};

class Relevantizer {
 public:
  Relevantizer(SystemId target, std::set<std::string> names) : target_(target), names_(std::move(names)) {}

  // (\z. t) y with y:[rho] consumed by the argument.
  void wrap(Term& t, Derivation& d, const std::string& y, const SType& rho) {
    std::string z = fresh_name("z", names_);
    names_.insert(z);
    Derivation arg = make_m(Term::var(y), {make_var(y, rho)});
    if (target_ == SystemId::He) {
      d = make_elim(Rule::ArrE, make_intro(Rule::ArrIEmpty, z, d, rho), arg);
    } else {
      d = make_elim(Rule::ArrEEmpty, make_intro(Rule::ArrI, z, d), arg);
    }
    t = Term::app(Term::abs(z, t), Term::var(y));
  }

  std::optional<Converted> convert(const Derivation& d) {
    switch (d.rule) {
      case Rule::VarW: {
        const std::string& x = d.subject().name();
        const SType& rho = d.strict_goal();
        return Converted{d.subject(), make_var(x, rho), d.env().minus(Env{{x, MType::single(rho)}})};
      }
      case Rule::ArrI: {
        auto p = convert(d.premises[0]);
        if (!p) return std::nullopt;
        const std::string& x = d.subject().name();
        MType jx = p->junk.get(x);
        Env junk = p->junk.without(x);
        Term body = p->term;
        Derivation pd = p->d;
        Derivation out = pd;
        if (!pd.env().has(x) && jx.size() == 1 && target_ == SystemId::He) {
          out = make_intro(Rule::ArrIEmpty, x, pd, jx.items()[0]);
        } else {
          for (const auto& rho : jx.items()) wrap(body, pd, x, rho);
          out = make_intro(target_ == SystemId::He ? Rule::ArrINonempty : Rule::ArrI, x, pd);
        }
        return Converted{Term::abs(x, body), out, junk};
      }
      case Rule::ArrE:
      case Rule::ArrENonempty:
      case Rule::ArrEEmpty: {
        auto f = convert(d.premises[0]);
        auto a = f ? convert(d.premises[1]) : std::nullopt;
        if (!a) return std::nullopt;
        return Converted{Term::app(f->term, a->term), make_elim(d.rule, f->d, a->d), f->junk.plus(a->junk)};
      }
      case Rule::M: {
        if (d.premises.empty()) return Converted{d.subject(), d, Env{}};
        std::vector<Derivation> ps;
        Env junk;
        std::optional<Term> term;
        for (const auto& p : d.premises) {
          auto c = convert(p);
          if (!c) return std::nullopt;
          if (term && !alpha_equal(*term, c->term)) return std::nullopt;  // premises diverged
          if (!term) term = c->term;
          ps.push_back(c->d);
          junk = junk.plus(c->junk);
        }
        return Converted{*term, make_m(*term, ps), junk};
      }
      default: return std::nullopt;
    }
  }

 private:
  SystemId target_;
  std::set<std::string> names_;
};

RelevantResult relevant_inhabit(const Env& env, const SType& goal, SystemId weak, SystemId target) {
  RelevantResult r;
  Query q;
  q.sys = weak;
  q.env = env;
  q.goal = goal;
  auto sols = inhabit(q);
  r.inhabited = !sols.empty();
  for (const auto& sol : sols) {
    for (const auto& d : derive_search(env, sol.term, goal, weak)) {
      std::set<std::string> names = all_names(sol.term);
      for (const auto& x : env.domain()) names.insert(x);
      Relevantizer conv(target, names);
      auto c = conv.convert(d);
      if (!c) continue;
      for (const auto& [y, a] : c->junk.bindings())
        for (const auto& rho : a.items()) conv.wrap(c->term, c->d, y, rho);
      if (!is_valid(c->d, target)) continue;
      r.witnesses.push_back({c->d.subject(), c->d});
      break;
    }
  }
  return r;
}

}  // namespace

RelevantResult inhabit_He(const Env& env, const SType& goal) {
  check_query(SystemId::He, env, goal);
  return relevant_inhabit(env, goal, SystemId::Hew, SystemId::He);
}

RelevantResult inhabit_S(const Env& env, const SType& goal) {
  return relevant_inhabit(env, goal, SystemId::Sw, SystemId::S);
}

}  // namespace mintypes
