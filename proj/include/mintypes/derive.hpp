#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mintypes/syntax.hpp"
#include "mintypes/types.hpp"

namespace mintypes {

enum class SystemId { H, Hw, He, Hew, S, Sw };

const char* system_name(SystemId s);
std::optional<SystemId> parse_system(std::string_view name);
const std::vector<SystemId>& all_systems();
// Axioms may discard resources.
bool is_weak(SystemId s);
// [] is not a type at all.
bool forbids_empty(SystemId s);
// Uses the split application rules.
bool splits_application(SystemId s);

enum class Rule { Var, VarW, ArrI, ArrINonempty, ArrIEmpty, ArrE, ArrENonempty, ArrEEmpty, M };

const char* rule_name(Rule r);
std::optional<Rule> parse_rule(std::string_view name);
bool is_intro(Rule r);
bool is_elim(Rule r);
bool is_axiom(Rule r);

using Goal = std::variant<SType, MType>;

struct Judgement {
  Env env;
  Term subject;
  Goal goal;
};

struct Derivation {
  Rule rule;
  Judgement conclusion;
  std::vector<Derivation> premises;

  const Env& env() const { return conclusion.env; }
  const Term& subject() const { return conclusion.subject; }
  const Goal& goal() const { return conclusion.goal; }
  const SType& strict_goal() const { return std::get<SType>(conclusion.goal); }
  const MType& multi_goal() const { return std::get<MType>(conclusion.goal); }
};

// Small constructors; they compute the conclusion from the premises and do not validate.
Derivation make_var(const std::string& x, const SType& rho);
Derivation make_var_w(const Env& env, const std::string& x, const SType& rho);
Derivation make_intro(Rule r, const std::string& x, const Derivation& premise,
                      const std::optional<SType>& guessed = std::nullopt);
Derivation make_elim(Rule r, const Derivation& major, const Derivation& minor);
Derivation make_m(const Term& subject, std::vector<Derivation> premises);

struct Diagnostic {
  std::vector<std::size_t> node_path;  // premise indices from the root
  std::string rule;
  std::string constraint;
  SystemId system;
  std::string to_string() const;
};

// Empty result means the derivation is valid in sys.
std::vector<Diagnostic> check_derivation(const Derivation& d, SystemId sys);
bool is_valid(const Derivation& d, SystemId sys);

std::size_t meas(const Derivation& d);
std::set<Position> typed_positions(const Derivation& d);
std::size_t typed_variable_positions(const Derivation& d);
bool is_pi_normal(const Derivation& d);
Term derivation_approximant(const Derivation& d);
Derivation lift_derivation(const Derivation& d, const Term& target);

// Canonical text used to compare and deduplicate derivations.
std::string derivation_key(const Derivation& d);

struct SearchOptions {
  // Stop after this many derivations (0 = all).
  std::size_t limit = 0;
};

// Every derivation of env |- subject : goal in sys, for ANF (H, Hw) or normal subjects.
std::vector<Derivation> derive_search(const Env& env, const Term& subject, const Goal& goal,
                                      SystemId sys, const SearchOptions& opts = {});
bool derivable(const Env& env, const Term& subject, const Goal& goal, SystemId sys);

// Principal typing with fresh base types, followed by its single-base collapse when different.
std::vector<std::pair<Env, SType>> infer_principal_nf(const Term& t, SystemId sys,
                                                      const std::set<std::string>& avoid = {});

// The designated fake argument  \y0. y0.
Term identity_term();
bool is_standard(const Derivation& d);
Derivation standardize(const Derivation& d);

// Add extra resources at the leftmost axiom (weak systems only).
Derivation weaken(const Derivation& d, const Env& extra);
// Rename binders so that no arrI binder shadows a free or previously bound name.
Derivation hygienize_derivation(const Derivation& d);
// Derivation for the reduct of the redex at p. Throws Error where the system has no
// subject reduction for this step (H_e and S need weakening in some cases).
Derivation subject_reduce(const Derivation& d, const Position& p, SystemId sys);

}  // namespace mintypes
