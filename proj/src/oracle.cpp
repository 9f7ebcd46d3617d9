#include "mintypes/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "mintypes/error.hpp"
#include "mintypes/textio.hpp"

namespace mintypes {

std::size_t enum_depth(const Term& t) {
  if (t.is_omega()) return 0;
  std::size_t k = 0;
  Term body = t;
  while (body.is_abs()) {
    ++k;
    body = body.body();
  }
  std::vector<Term> args = spine_args(body);
  std::size_t d = std::max(k, args.size());
  for (const auto& a : args) d = std::max(d, enum_depth(a));
  return d + 1;
}

namespace {

class Generator {
 public:
  Generator(const EnumBudget& b, bool with_omega)
      : omega_(with_omega),
        v_(b.max_var_positions),
        max_k_(b.max_binders),
        max_n_(b.max_args),
        alphabet_(b.alphabet),
        avoid_(alphabet_.begin(), alphabet_.end()) {}

  const std::string& binder(std::size_t level) {
    while (binders_.size() <= level) {
      binders_.push_back(next_binder(avoid_));
      avoid_.insert(binders_.back());
    }
    return binders_[level];
  }

  // by_count[v] = terms with exactly v variable positions, depth <= d, under `level` binders.
  const std::vector<std::vector<Term>>& heads(std::size_t d, std::size_t level) {
    auto key = std::make_pair(d, level);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<std::vector<Term>> out(v_ + 1);
    if (d > 0 && v_ > 0) {
      for (std::size_t k = 0; k < d && k <= max_k_; ++k) {
        std::size_t inner = level + k;
        std::vector<std::string> names(alphabet_);
        for (std::size_t j = 0; j < inner; ++j) names.push_back(binder(j));
        std::vector<std::vector<Term>> args = arguments(d - 1, inner);
        for (std::size_t n = 0; n < d && n <= max_n_; ++n) {
          std::vector<Term> chosen;
          tuples(args, n, v_ - 1, chosen, [&](const std::vector<Term>& as, std::size_t used) {
            for (const auto& h : names) {
              Term t = Term::apps(Term::var(h), as);
              for (std::size_t j = inner; j > level; --j) t = Term::abs(binder(j - 1), t);
              out[used + 1].push_back(t);
            }
          });
        }
      }
    }
    return memo_[key] = std::move(out);
  }

  std::vector<Term> all(std::size_t d) {
    std::vector<Term> out;
    if (omega_) out.push_back(Term::omega());
    const auto& by = heads(d, 0);
    for (const auto& ts : by) out.insert(out.end(), ts.begin(), ts.end());
    return out;
  }

 private:
  std::vector<std::vector<Term>> arguments(std::size_t d, std::size_t level) {
    std::vector<std::vector<Term>> a = heads(d, level);
    if (omega_) a[0].insert(a[0].begin(), Term::omega());
    return a;
  }

  void tuples(const std::vector<std::vector<Term>>& by, std::size_t n, std::size_t budget,
              std::vector<Term>& chosen,
              const std::function<void(const std::vector<Term>&, std::size_t)>& f, std::size_t used = 0) {
    if (chosen.size() == n) {
      f(chosen, used);
      return;
    }
    for (std::size_t c = 0; c <= budget; ++c) {
      for (const auto& t : by[c]) {
        chosen.push_back(t);
        tuples(by, n, budget - c, chosen, f, used + c);
        chosen.pop_back();
      }
    }
  }

  bool omega_;
  std::size_t v_;
  std::size_t max_k_;
  std::size_t max_n_;
  std::vector<std::string> alphabet_;
  std::set<std::string> avoid_;
  std::vector<std::string> binders_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<Term>>> memo_;
};

std::size_t count_empty(const SType& s);
std::size_t count_empty(const MType& a) {
  std::size_t n = a.empty() ? 1 : 0;
  for (const auto& s : a.items()) n += count_empty(s);
  return n;
}
std::size_t count_empty(const SType& s) {
  if (s.is_base()) return 0;
  return count_empty(s.domain()) + count_empty(s.codomain());
}

}  // namespace

std::vector<Term> enum_anf(const EnumBudget& b) { return Generator(b, true).all(b.max_depth); }
std::vector<Term> enum_nf(const EnumBudget& b) { return Generator(b, false).all(b.max_depth); }

EnumBudget brute_budget(const Env& gamma, const SType& goal, SystemId sys) {
  EnumBudget b;
  b.max_var_positions = degree(gamma, goal);
  if (sys == SystemId::Sw) {
    // each erased argument costs one more variable (the y0 of I)
    for (const auto& [x, a] : gamma.bindings()) b.max_var_positions += count_empty(a);
    b.max_var_positions += count_empty(goal);
  }
  std::size_t arity = 0;
  std::set<SType> subs = strict_subformulas(gamma);
  for (const auto& s : strict_subformulas(goal)) subs.insert(s);
  for (const auto& s : subs) arity = std::max(arity, s.arity());
  if (sys == SystemId::Sw) arity = std::max<std::size_t>(arity, 1);
  // Every nesting level of arguments holds a typed head variable, and binder runs and
  // argument lists are no longer than the longest arrow chain.
  b.max_depth = arity + b.max_var_positions;
  b.max_binders = arity;
  b.max_args = arity;
  for (const auto& x : gamma.domain()) b.alphabet.push_back(x);
  return b;
}

namespace {

std::size_t var_positions(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: return 1;
    case TermKind::Abs: return var_positions(t.body());
    case TermKind::App: return var_positions(t.fun()) + var_positions(t.arg());
    case TermKind::Omega: return 0;
  }
  return 0;
}

// Candidate generator for brute_inhabit. It types terms with sets instead of multisets
// and never splits environments, so it accepts a superset of the typable terms; the exact
// check is left to derive_search.
class Candidates {
 public:
  using Scope = std::vector<std::pair<std::string, std::vector<SType>>>;

  explicit Candidates(SystemId sys) : sys_(sys) {}

  std::vector<Term> of(const SType& goal, const Scope& scope, std::size_t budget) {
    if (budget == 0) return {};
    std::string key = print_type(goal) + "#" + std::to_string(budget);
    for (const auto& [x, ts] : scope) {
      key += "|" + x + ":";
      for (const auto& s : ts) key += print_type(s) + ";";
    }
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<Term> out;
    std::set<std::string> seen;
    auto add = [&](const Term& t) {
      if (var_positions(t) <= budget && seen.insert(alpha_key(t)).second) out.push_back(t);
    };
    if (goal.is_arrow()) {
      std::set<std::string> names;
      for (const auto& [x, ts] : scope) names.insert(x);
      std::string x = next_binder(names);
      Scope inner = scope;
      std::set<SType> dom(goal.domain().items().begin(), goal.domain().items().end());
      inner.emplace_back(x, std::vector<SType>(dom.begin(), dom.end()));
      for (const auto& b : of(goal.codomain(), inner, budget)) add(Term::abs(x, b));
    }
    for (const auto& [h, ts] : scope) {
      for (const auto& rho : ts) {
        if (rho.arity() < goal.arity()) continue;
        std::size_t n = rho.arity() - goal.arity();
        if (rho.strip(n) != goal) continue;
        std::vector<std::vector<Term>> opts;
        for (const auto& a : rho.domains(n)) {
          opts.push_back(arguments(a, scope, budget - 1));
          if (opts.back().empty()) break;
        }
        if (opts.size() < n || (n > 0 && opts.back().empty())) continue;
        std::vector<Term> chosen;
        spine(Term::var(h), opts, 0, budget - 1, chosen, add);
      }
    }
    memo_[key] = out;
    return out;
  }

 private:
  template <class Add>
  void spine(const Term& head, const std::vector<std::vector<Term>>& opts, std::size_t i, std::size_t left,
             std::vector<Term>& chosen, const Add& add) {
    if (i == opts.size()) {
      add(Term::apps(head, chosen));
      return;
    }
    for (const auto& a : opts[i]) {
      std::size_t c = var_positions(a);
      if (c > left) continue;
      chosen.push_back(a);
      spine(head, opts, i + 1, left - c, chosen, add);
      chosen.pop_back();
    }
  }

  std::vector<Term> arguments(const MType& a, const Scope& scope, std::size_t budget) {
    if (a.empty()) {
      if (sys_ == SystemId::H || sys_ == SystemId::Hw) return {Term::omega()};
      if (sys_ == SystemId::Sw && budget >= 1) return {identity_term()};
      return {};
    }
    if (sys_ == SystemId::H || sys_ == SystemId::Hw) {
      // approximant of an (m) node: join of one candidate per element
      std::vector<Term> out;
      std::set<std::string> seen;
      std::vector<std::vector<Term>> per;
      for (const auto& s : a.items()) {
        per.push_back(of(s, scope, budget));
        if (per.back().empty()) return {};
      }
      joins(per, 0, std::nullopt, budget, out, seen);
      return out;
    }
    // one term for every element
    std::vector<Term> common;
    bool first = true;
    for (const auto& [s, count] : a.grouped()) {
      (void)count;
      std::vector<Term> here = of(s, scope, budget);
      if (first) {
        common = here;
        first = false;
        continue;
      }
      std::set<std::string> keys;
      for (const auto& t : here) keys.insert(alpha_key(t));
      std::vector<Term> kept;
      for (const auto& t : common)
        if (keys.count(alpha_key(t))) kept.push_back(t);
      common = std::move(kept);
    }
    return common;
  }

  void joins(const std::vector<std::vector<Term>>& per, std::size_t i, const std::optional<Term>& acc,
             std::size_t budget, std::vector<Term>& out, std::set<std::string>& seen) {
    if (i == per.size()) {
      if (seen.insert(alpha_key(*acc)).second) out.push_back(*acc);
      return;
    }
    for (const auto& t : per[i]) {
      std::optional<Term> next = acc ? anf_join({*acc, t}) : std::optional<Term>(t);
      if (!next || var_positions(*next) > budget) continue;
      joins(per, i + 1, next, budget, out, seen);
    }
  }

  SystemId sys_;
  std::map<std::string, std::vector<Term>> memo_;
};

}  // namespace

std::vector<Term> brute_inhabit(const Env& gamma, const SType& goal, SystemId sys, std::size_t depth_margin) {
  if (sys == SystemId::He || sys == SystemId::S)
    throw PreconditionError("brute_inhabit covers H, Hw, Hew and Sw");
  if (forbids_empty(sys) && (has_empty_multiset(gamma) || has_empty_multiset(goal)))
    throw PreconditionError("[] is not a type in " + std::string(system_name(sys)));
  EnumBudget b = brute_budget(gamma, goal, sys);
  b.max_depth += depth_margin;
  bool approx = sys == SystemId::H || sys == SystemId::Hw;
  Candidates::Scope scope;
  for (const auto& [x, a] : gamma.bindings()) {
    std::set<SType> ts(a.items().begin(), a.items().end());
    scope.emplace_back(x, std::vector<SType>(ts.begin(), ts.end()));
  }
  std::vector<Term> out;
  for (const auto& t : Candidates(sys).of(goal, scope, b.max_var_positions)) {
    if (enum_depth(t) > b.max_depth) continue;
    bool keep = false;
    for (const auto& d : derive_search(gamma, t, goal, sys)) {
      if (approx) keep = alpha_equal(derivation_approximant(d), t);
      else if (sys == SystemId::Sw) keep = is_standard(d);
      else keep = true;
      if (keep) break;
    }
    if (keep) out.push_back(hygienize(t, gamma.domain()));
  }
  std::sort(out.begin(), out.end(), term_display_less);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Multisets of size >= 1 drawn from pool with total degree <= max.
void multisets(const std::vector<SType>& pool, std::size_t start, std::size_t budget, std::vector<SType>& cur,
               std::vector<MType>& out) {
  if (!cur.empty()) out.emplace_back(cur);
  for (std::size_t i = start; i < pool.size(); ++i) {
    std::size_t cost = 1 + degree(pool[i]);
    if (cost > budget) continue;
    cur.push_back(pool[i]);
    multisets(pool, i, budget - cost, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<SType> enum_types(std::size_t height, const std::vector<std::string>& alphabet,
                              std::size_t max_degree, bool allow_empty) {
  std::vector<SType> level;
  for (const auto& a : alphabet) level.push_back(SType::base(a));
  for (std::size_t h = 1; h <= height; ++h) {
    std::vector<MType> doms;
    if (allow_empty) doms.emplace_back();
    std::vector<SType> cur;
    multisets(level, 0, max_degree, cur, doms);
    std::vector<SType> next;
    std::set<SType> seen;
    for (const auto& d : doms)
      for (const auto& c : level) {
        SType s = SType::arrow(d, c);
        if (degree(s) <= max_degree && seen.insert(s).second) next.push_back(s);
      }
    for (const auto& s : level)
      if (seen.insert(s).second) next.push_back(s);
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }
  return level;
}

std::vector<std::pair<Env, SType>> enum_queries(const QueryBudget& b) {
  std::vector<SType> types = enum_types(b.type_depth, b.alphabet, b.max_degree, b.allow_empty);
  std::vector<MType> bags;
  std::vector<SType> cur;
  multisets(types, 0, b.max_degree, cur, bags);
  std::vector<std::string> vars;
  std::set<std::string> avoid;
  for (std::size_t i = 0; i < b.max_bindings; ++i) {
    vars.push_back(next_binder(avoid));
    avoid.insert(vars.back());
  }
  // Environments over a prefix of vars, each binding non-empty. Degree is additive,
  // so it is carried along instead of recomputed.
  std::vector<std::size_t> bag_deg, type_deg;
  for (const auto& bag : bags) bag_deg.push_back(degree(bag));
  for (const auto& s : types) type_deg.push_back(degree(s));
  std::vector<std::pair<Env, std::size_t>> envs;
  std::function<void(std::size_t, const Env&, std::size_t)> build = [&](std::size_t i, const Env& g, std::size_t d) {
    envs.emplace_back(g, d);
    if (i == vars.size()) return;
    for (std::size_t k = 0; k < bags.size(); ++k)
      if (d + bag_deg[k] <= b.max_degree) build(i + 1, g.with(vars[i], bags[k]), d + bag_deg[k]);
  };
  build(0, Env{}, 0);
  std::vector<std::pair<Env, SType>> out;
  for (const auto& [g, d] : envs)
    for (std::size_t k = 0; k < types.size(); ++k)
      if (d + type_deg[k] <= b.max_degree) out.emplace_back(g, types[k]);
  return out;
}

}  // namespace mintypes
