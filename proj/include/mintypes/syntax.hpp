#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mintypes {

enum class TermKind { Var, Abs, App, Omega };

struct TermNode;

// Immutable lambda-term with the extra constant Omega. Copies share structure.
class Term {
 public:
  Term();  // Omega

  static Term var(std::string name);
  static Term abs(std::string binder, Term body);
  static Term app(Term fun, Term arg);
  static Term omega();
  // Left-nested application spine: app(app(h, a1), a2)...
  static Term apps(Term head, const std::vector<Term>& args);

  TermKind kind() const;
  bool is_var() const { return kind() == TermKind::Var; }
  bool is_abs() const { return kind() == TermKind::Abs; }
  bool is_app() const { return kind() == TermKind::App; }
  bool is_omega() const { return kind() == TermKind::Omega; }

  // Variable name for Var, binder for Abs.
  const std::string& name() const;
  const Term& body() const;
  const Term& fun() const;
  const Term& arg() const;

  // Physical identity; alpha-equality is alpha_equal().
  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  TermKind kind;
  std::string name;
  Term left;   // body for Abs, function for App
  Term right;  // argument for App
};

enum class Step { UnderLambda, AppLeft, AppRight };
using Position = std::vector<Step>;

// --- structure -------------------------------------------------------------

std::size_t term_size(const Term& t);
std::set<std::string> free_vars(const Term& t);
// Every identifier occurring in t, bound or free.
std::set<std::string> all_names(const Term& t);
bool is_pure(const Term& t);
bool has_redex(const Term& t);
// Pure and redex-free.
bool is_normal(const Term& t);
// Matches  a ::= Omega | N,  N ::= \x.N | L,  L ::= x | L a.
bool is_anf(const Term& t);

// Head and arguments of an application spine; head is t itself when t is no App.
Term spine_head(const Term& t);
std::vector<Term> spine_args(const Term& t);

std::optional<Term> subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& u);
std::vector<Position> redex_positions(const Term& t);  // preorder, leftmost-outermost first
std::string position_string(const Position& p);

// --- names -----------------------------------------------------------------

// name itself when unused, otherwise stem + (1 + largest numeric suffix of that stem in avoid).
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);
// Binder for inhabitants: first of x, y, z, w, v, u, s, r, q, p not in avoid, then x1, y1, ...
std::string next_binder(const std::set<std::string>& avoid);
// Rename binders so that no binder shadows another binder or a free variable,
// and none collides with `reserved`. Free variables are untouched.
Term hygienize(const Term& t, const std::set<std::string>& reserved = {});

bool alpha_equal(const Term& a, const Term& b);
// Canonical string, equal exactly for alpha-equivalent terms.
std::string alpha_key(const Term& t);

// Capture-avoiding t{u/x}.
Term substitute(const Term& t, const std::string& x, const Term& u);

// --- reduction -------------------------------------------------------------

std::optional<Term> beta_step(const Term& t);
// Contract the beta-redex at p; throws PreconditionError if there is none.
Term contract_at(const Term& t, const Position& p);
// All one-step beta reducts, one per redex, in redex_positions order.
std::vector<Term> beta_reducts(const Term& t);

struct ReduceResult {
  Term term;
  std::size_t steps = 0;
  bool exhausted = false;  // fuel ran out; term is the last one reached
};

ReduceResult normalize(const Term& t, std::size_t fuel);
// beta plus  Omega t -> Omega  and  \x.Omega -> Omega.
ReduceResult betaomega_normalize(const Term& t, std::size_t fuel);

// --- approximants ----------------------------------------------------------

// Omega-below order: b is a with some Omegas replaced (modulo alpha).
bool anf_leq(const Term& a, const Term& b);
// Least upper bound; nullopt when incompatible. Empty list joins to Omega.
std::optional<Term> anf_join(const std::vector<Term>& items);
Term direct_approximant(const Term& t);
// Every a <= b, b the input; Omega included.
std::vector<Term> approximants_below(const Term& b);

struct ApproxResult {
  std::vector<Term> terms;  // sorted by (size, printed form)
  // Reduction graph not certified finite and acyclic within the fuel.
  bool truncated = false;
};
ApproxResult approximants(const Term& t, std::size_t fuel);

// Ordering used for deterministic output of term sets.
bool term_display_less(const Term& a, const Term& b);

}  // namespace mintypes
