#include "mintypes/syntax.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "mintypes/error.hpp"

namespace mintypes {

// A null node is Omega; that keeps Term() cheap and breaks the recursion
// between TermNode and its default-constructed children.
Term::Term() = default;

Term Term::var(std::string name) {
  return Term(std::make_shared<const TermNode>(TermNode{TermKind::Var, std::move(name), {}, {}}));
}
Term Term::abs(std::string binder, Term body) {
  return Term(std::make_shared<const TermNode>(
      TermNode{TermKind::Abs, std::move(binder), std::move(body), {}}));
}
Term Term::app(Term fun, Term arg) {
  return Term(std::make_shared<const TermNode>(
      TermNode{TermKind::App, {}, std::move(fun), std::move(arg)}));
}
Term Term::omega() { return Term(); }

Term Term::apps(Term head, const std::vector<Term>& args) {
  for (const auto& a : args) head = app(std::move(head), a);
  return head;
}

TermKind Term::kind() const { return node_ ? node_->kind : TermKind::Omega; }

namespace {
const std::string kNoName;
const Term kOmega;
}  // namespace

const std::string& Term::name() const { return node_ ? node_->name : kNoName; }
const Term& Term::body() const { return node_ ? node_->left : kOmega; }
const Term& Term::fun() const { return node_ ? node_->left : kOmega; }
const Term& Term::arg() const { return node_ ? node_->right : kOmega; }

std::size_t term_size(const Term& t) {
  switch (t.kind()) {
    case TermKind::Abs: return 1 + term_size(t.body());
    case TermKind::App: return 1 + term_size(t.fun()) + term_size(t.arg());
    default: return 1;
  }
}

namespace {
void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Var:
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
      break;
    case TermKind::Abs:
      bound.push_back(t.name());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      break;
    case TermKind::App:
      collect_free(t.fun(), bound, out);
      collect_free(t.arg(), bound, out);
      break;
    case TermKind::Omega: break;
  }
}

bool occurs_free(const Term& t, const std::string& x) {
  switch (t.kind()) {
    case TermKind::Var: return t.name() == x;
    case TermKind::Abs: return t.name() != x && occurs_free(t.body(), x);
    case TermKind::App: return occurs_free(t.fun(), x) || occurs_free(t.arg(), x);
    case TermKind::Omega: return false;
  }
  return false;
}
}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(t, bound, out);
  return out;
}

std::set<std::string> all_names(const Term& t) {
  std::set<std::string> out;
  std::function<void(const Term&)> go = [&](const Term& u) {
    switch (u.kind()) {
      case TermKind::Var: out.insert(u.name()); break;
      case TermKind::Abs: out.insert(u.name()); go(u.body()); break;
      case TermKind::App: go(u.fun()); go(u.arg()); break;
      case TermKind::Omega: break;
    }
  };
  go(t);
  return out;
}

bool is_pure(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: return true;
    case TermKind::Abs: return is_pure(t.body());
    case TermKind::App: return is_pure(t.fun()) && is_pure(t.arg());
    case TermKind::Omega: return false;
  }
  return false;
}

bool has_redex(const Term& t) {
  switch (t.kind()) {
    case TermKind::Abs: return has_redex(t.body());
    case TermKind::App:
      return t.fun().is_abs() || has_redex(t.fun()) || has_redex(t.arg());
    default: return false;
  }
}

bool is_normal(const Term& t) { return is_pure(t) && !has_redex(t); }

namespace {
bool anf_a(const Term& t);
bool anf_l(const Term& t) {
  if (t.is_var()) return true;
  return t.is_app() && anf_l(t.fun()) && anf_a(t.arg());
}
bool anf_n(const Term& t) { return t.is_abs() ? anf_n(t.body()) : anf_l(t); }
bool anf_a(const Term& t) { return t.is_omega() || anf_n(t); }
}  // namespace

bool is_anf(const Term& t) { return anf_a(t); }

Term spine_head(const Term& t) {
  const Term* h = &t;
  while (h->is_app()) h = &h->fun();
  return *h;
}

std::vector<Term> spine_args(const Term& t) {
  std::vector<Term> args;
  const Term* h = &t;
  while (h->is_app()) {
    args.push_back(h->arg());
    h = &h->fun();
  }
  std::reverse(args.begin(), args.end());
  return args;
}

std::optional<Term> subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (Step s : p) {
    if (s == Step::UnderLambda && cur->is_abs()) cur = &cur->body();
    else if (s == Step::AppLeft && cur->is_app()) cur = &cur->fun();
    else if (s == Step::AppRight && cur->is_app()) cur = &cur->arg();
    else return std::nullopt;
  }
  return *cur;
}

namespace {
Term replace_from(const Term& t, const Position& p, std::size_t i, const Term& u) {
  if (i == p.size()) return u;
  switch (p[i]) {
    case Step::UnderLambda:
      if (!t.is_abs()) break;
      return Term::abs(t.name(), replace_from(t.body(), p, i + 1, u));
    case Step::AppLeft:
      if (!t.is_app()) break;
      return Term::app(replace_from(t.fun(), p, i + 1, u), t.arg());
    case Step::AppRight:
      if (!t.is_app()) break;
      return Term::app(t.fun(), replace_from(t.arg(), p, i + 1, u));
  }
  throw PreconditionError("position " + position_string(p) + " does not address a subterm");
}

void collect_redexes(const Term& t, Position& cur, std::vector<Position>& out) {
  switch (t.kind()) {
    case TermKind::Abs:
      cur.push_back(Step::UnderLambda);
      collect_redexes(t.body(), cur, out);
      cur.pop_back();
      break;
    case TermKind::App:
      if (t.fun().is_abs()) out.push_back(cur);
      cur.push_back(Step::AppLeft);
      collect_redexes(t.fun(), cur, out);
      cur.back() = Step::AppRight;
      collect_redexes(t.arg(), cur, out);
      cur.pop_back();
      break;
    default: break;
  }
}
}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& u) { return replace_from(t, p, 0, u); }

std::vector<Position> redex_positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  collect_redexes(t, cur, out);
  return out;
}

std::string position_string(const Position& p) {
  if (p.empty()) return "e";
  std::string s;
  for (Step st : p) s += st == Step::UnderLambda ? 'B' : st == Step::AppLeft ? 'L' : 'R';
  return s;
}

// ---------------------------------------------------------------------------

namespace {
std::pair<std::string, long> split_suffix(const std::string& name) {
  std::size_t i = name.size();
  while (i > 0 && name[i - 1] >= '0' && name[i - 1] <= '9') --i;
  if (i == name.size() || i == 0) return {name, -1};
  // Keep suffixes short enough for stol; longer ones are just part of the stem.
  if (name.size() - i > 9) return {name, -1};
  return {name.substr(0, i), std::stol(name.substr(i))};
}
}  // namespace

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  auto [stem, suffix] = split_suffix(base);
  long best = std::max(suffix, 0L);
  for (const auto& n : avoid) {
    auto [s, k] = split_suffix(n);
    if (s == stem) best = std::max(best, k);
  }
  std::string cand = stem + std::to_string(best + 1);
  while (avoid.count(cand)) cand = stem + std::to_string(++best + 1);
  return cand;
}

std::string next_binder(const std::set<std::string>& avoid) {
  static const char* const kNames[] = {"x", "y", "z", "w", "v", "u", "s", "r", "q", "p"};
  for (int round = 0;; ++round) {
    for (const char* n : kNames) {
      std::string cand = round == 0 ? std::string(n) : n + std::to_string(round);
      if (!avoid.count(cand)) return cand;
    }
  }
}

Term substitute(const Term& t, const std::string& x, const Term& u) {
  switch (t.kind()) {
    case TermKind::Var: return t.name() == x ? u : t;
    case TermKind::Omega: return t;
    case TermKind::App: return Term::app(substitute(t.fun(), x, u), substitute(t.arg(), x, u));
    case TermKind::Abs: {
      const std::string& y = t.name();
      if (y == x || !occurs_free(t.body(), x)) return t;
      if (occurs_free(u, y)) {
        std::set<std::string> avoid = free_vars(u);
        for (const auto& n : all_names(t.body())) avoid.insert(n);
        avoid.insert(x);
        std::string y2 = fresh_name(y, avoid);
        Term body = substitute(t.body(), y, Term::var(y2));
        return Term::abs(y2, substitute(body, x, u));
      }
      return Term::abs(y, substitute(t.body(), x, u));
    }
  }
  return t;
}

namespace {
Term hyg(const Term& t, std::set<std::string>& used) {
  switch (t.kind()) {
    case TermKind::Abs: {
      std::string y = t.name();
      Term body = t.body();
      if (used.count(y)) {
        std::string y2 = fresh_name(y, used);
        body = substitute(body, y, Term::var(y2));
        y = y2;
      }
      used.insert(y);
      return Term::abs(y, hyg(body, used));
    }
    case TermKind::App: {
      Term f = hyg(t.fun(), used);
      return Term::app(f, hyg(t.arg(), used));
    }
    default: return t;
  }
}
}  // namespace

Term hygienize(const Term& t, const std::set<std::string>& reserved) {
  std::set<std::string> used = reserved;
  for (const auto& n : free_vars(t)) used.insert(n);
  return hyg(t, used);
}

namespace {
int bound_index(const std::vector<std::string>& stack, const std::string& x) {
  for (std::size_t i = stack.size(); i > 0; --i)
    if (stack[i - 1] == x) return static_cast<int>(stack.size() - i);
  return -1;
}

bool alpha_eq(const Term& a, const Term& b, std::vector<std::string>& sa, std::vector<std::string>& sb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Omega: return true;
    case TermKind::Var: {
      int i = bound_index(sa, a.name()), j = bound_index(sb, b.name());
      if (i != j) return false;
      return i >= 0 || a.name() == b.name();
    }
    case TermKind::Abs: {
      sa.push_back(a.name());
      sb.push_back(b.name());
      bool r = alpha_eq(a.body(), b.body(), sa, sb);
      sa.pop_back();
      sb.pop_back();
      return r;
    }
    case TermKind::App:
      return alpha_eq(a.fun(), b.fun(), sa, sb) && alpha_eq(a.arg(), b.arg(), sa, sb);
  }
  return false;
}

void key_into(const Term& t, std::vector<std::string>& stack, std::string& out) {
  switch (t.kind()) {
    case TermKind::Omega: out += '*'; break;
    case TermKind::Var: {
      int i = bound_index(stack, t.name());
      if (i >= 0) out += '#' + std::to_string(i);
      else out += '\'' + t.name();
      out += ' ';
      break;
    }
    case TermKind::Abs:
      out += '\\';
      stack.push_back(t.name());
      key_into(t.body(), stack, out);
      stack.pop_back();
      break;
    case TermKind::App:
      out += '@';
      key_into(t.fun(), stack, out);
      key_into(t.arg(), stack, out);
      break;
  }
}
}  // namespace

bool alpha_equal(const Term& a, const Term& b) {
  std::vector<std::string> sa, sb;
  return alpha_eq(a, b, sa, sb);
}

std::string alpha_key(const Term& t) {
  std::vector<std::string> stack;
  std::string out;
  key_into(t, stack, out);
  return out;
}

bool term_display_less(const Term& a, const Term& b) {
  std::size_t sa = term_size(a), sb = term_size(b);
  if (sa != sb) return sa < sb;
  return alpha_key(a) < alpha_key(b);
}

// ---------------------------------------------------------------------------

namespace {
Term contract_root(const Term& t) { return substitute(t.fun().body(), t.fun().name(), t.arg()); }

// Leftmost-outermost step; with_omega enables the two Omega rules.
std::optional<Term> step(const Term& t, bool with_omega) {
  switch (t.kind()) {
    case TermKind::Abs: {
      if (with_omega && t.body().is_omega()) return Term::omega();
      if (auto b = step(t.body(), with_omega)) return Term::abs(t.name(), *b);
      return std::nullopt;
    }
    case TermKind::App: {
      if (t.fun().is_abs()) return contract_root(t);
      if (with_omega && t.fun().is_omega()) return Term::omega();
      if (auto f = step(t.fun(), with_omega)) return Term::app(*f, t.arg());
      if (auto a = step(t.arg(), with_omega)) return Term::app(t.fun(), *a);
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

ReduceResult run(const Term& t, std::size_t fuel, bool with_omega) {
  ReduceResult r{t, 0, false};
  while (true) {
    auto next = step(r.term, with_omega);
    if (!next) return r;
    if (r.steps == fuel) {
      r.exhausted = true;
      return r;
    }
    r.term = *next;
    ++r.steps;
  }
}
}  // namespace

std::optional<Term> beta_step(const Term& t) { return step(t, false); }

Term contract_at(const Term& t, const Position& p) {
  auto sub = subterm_at(t, p);
  if (!sub || !sub->is_app() || !sub->fun().is_abs())
    throw PreconditionError("no beta-redex at position " + position_string(p));
  return replace_at(t, p, contract_root(*sub));
}

std::vector<Term> beta_reducts(const Term& t) {
  std::vector<Term> out;
  for (const auto& p : redex_positions(t)) out.push_back(contract_at(t, p));
  return out;
}

ReduceResult normalize(const Term& t, std::size_t fuel) { return run(t, fuel, false); }
ReduceResult betaomega_normalize(const Term& t, std::size_t fuel) { return run(t, fuel, true); }

// ---------------------------------------------------------------------------

namespace {
bool leq(const Term& a, const Term& b, std::vector<std::string>& sa, std::vector<std::string>& sb) {
  if (a.is_omega()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Var: {
      int i = bound_index(sa, a.name()), j = bound_index(sb, b.name());
      return i == j && (i >= 0 || a.name() == b.name());
    }
    case TermKind::Abs: {
      sa.push_back(a.name());
      sb.push_back(b.name());
      bool r = leq(a.body(), b.body(), sa, sb);
      sa.pop_back();
      sb.pop_back();
      return r;
    }
    case TermKind::App: return leq(a.fun(), b.fun(), sa, sb) && leq(a.arg(), b.arg(), sa, sb);
    default: return false;
  }
}

std::optional<Term> join2(const Term& a, const Term& b) {
  if (a.is_omega()) return b;
  if (b.is_omega()) return a;
  if (a.kind() != b.kind()) return std::nullopt;
  switch (a.kind()) {
    case TermKind::Var:
      if (a.name() == b.name()) return a;
      return std::nullopt;
    case TermKind::App: {
      auto f = join2(a.fun(), b.fun());
      if (!f) return std::nullopt;
      auto x = join2(a.arg(), b.arg());
      if (!x) return std::nullopt;
      return Term::app(*f, *x);
    }
    case TermKind::Abs: {
      const std::string &x = a.name(), &y = b.name();
      Term ab = a.body(), bb = b.body();
      std::string z = x;
      if (x != y) {
        if (!occurs_free(bb, x)) {
          bb = substitute(bb, y, Term::var(x));
        } else if (!occurs_free(ab, y)) {
          z = y;
          ab = substitute(ab, x, Term::var(y));
        } else {
          std::set<std::string> avoid = free_vars(ab);
          for (const auto& n : free_vars(bb)) avoid.insert(n);
          z = fresh_name(x, avoid);
          ab = substitute(ab, x, Term::var(z));
          bb = substitute(bb, y, Term::var(z));
        }
      }
      auto body = join2(ab, bb);
      if (!body) return std::nullopt;
      return Term::abs(z, *body);
    }
    default: return std::nullopt;
  }
}

// Replace each outermost redex by Omega.
Term cut_redexes(const Term& t) {
  switch (t.kind()) {
    case TermKind::Abs: return Term::abs(t.name(), cut_redexes(t.body()));
    case TermKind::App:
      if (t.fun().is_abs()) return Term::omega();
      return Term::app(cut_redexes(t.fun()), cut_redexes(t.arg()));
    default: return t;
  }
}
}  // namespace

bool anf_leq(const Term& a, const Term& b) {
  std::vector<std::string> sa, sb;
  return leq(a, b, sa, sb);
}

std::optional<Term> anf_join(const std::vector<Term>& items) {
  Term acc = Term::omega();
  for (const auto& t : items) {
    auto j = join2(acc, t);
    if (!j) return std::nullopt;
    acc = *j;
  }
  return acc;
}

Term direct_approximant(const Term& t) {
  Term cut = cut_redexes(t);
  // Only Omega rules can fire now, each shrinks the term.
  return betaomega_normalize(cut, term_size(cut) + 1).term;
}

std::vector<Term> approximants_below(const Term& b) {
  std::vector<Term> out{Term::omega()};
  if (b.is_abs()) {
    for (const auto& a : approximants_below(b.body()))
      out.push_back(Term::abs(b.name(), a));
    return out;
  }
  Term head = spine_head(b);
  if (!head.is_var()) return out;
  std::vector<std::vector<Term>> choices;
  for (const auto& arg : spine_args(b)) choices.push_back(approximants_below(arg));
  std::vector<Term> partial{head};
  for (const auto& opts : choices) {
    std::vector<Term> next;
    for (const auto& p : partial)
      for (const auto& o : opts) next.push_back(Term::app(p, o));
    partial = std::move(next);
  }
  out.insert(out.end(), partial.begin(), partial.end());
  return out;
}

ApproxResult approximants(const Term& t, std::size_t fuel) {
  // Breadth-first walk of the reduction graph; fuel is the depth reached.
  std::map<std::string, std::size_t> index;
  std::vector<Term> nodes;
  std::vector<std::vector<std::size_t>> edges;
  std::deque<std::pair<std::size_t, std::size_t>> queue;  // node, depth
  ApproxResult result;

  auto intern = [&](const Term& u) -> std::pair<std::size_t, bool> {
    auto [it, fresh] = index.emplace(alpha_key(u), nodes.size());
    if (fresh) {
      nodes.push_back(u);
      edges.emplace_back();
    }
    return {it->second, fresh};
  };

  intern(t);
  queue.emplace_back(0, 0);
  while (!queue.empty()) {
    auto [n, depth] = queue.front();
    queue.pop_front();
    if (!has_redex(nodes[n])) continue;
    if (depth >= fuel) {
      result.truncated = true;
      continue;
    }
    Term cur = nodes[n];
    for (const auto& r : beta_reducts(cur)) {
      auto [m, fresh] = intern(r);
      edges[n].push_back(m);
      if (fresh) queue.emplace_back(m, depth + 1);
    }
  }

  if (!result.truncated) {
    // A cycle means the term is not strongly normalizing; report that too.
    std::vector<int> color(nodes.size(), 0);
    std::function<bool(std::size_t)> cyclic = [&](std::size_t v) {
      color[v] = 1;
      for (auto w : edges[v]) {
        if (color[w] == 1) return true;
        if (color[w] == 0 && cyclic(w)) return true;
      }
      color[v] = 2;
      return false;
    };
    for (std::size_t v = 0; v < nodes.size() && !result.truncated; ++v)
      if (color[v] == 0 && cyclic(v)) result.truncated = true;
  }

  std::map<std::string, Term> set;
  for (const auto& u : nodes)
    for (const auto& a : approximants_below(direct_approximant(u))) set.emplace(alpha_key(a), a);
  for (auto& [k, a] : set) result.terms.push_back(a);
  std::sort(result.terms.begin(), result.terms.end(), term_display_less);
  return result;
}

}  // namespace mintypes
