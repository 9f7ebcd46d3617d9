#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mintypes/derive.hpp"

namespace mintypes {

struct EnumBudget {
  std::size_t max_var_positions = 0;
  std::vector<std::string> alphabet;  // free variables
  std::size_t max_depth = 0;
  // Longest binder run and longest argument list; unlimited by default.
  std::size_t max_binders = SIZE_MAX;
  std::size_t max_args = SIZE_MAX;
};

// Depth of  \x1..xk. h a1..an  is max(k, n, depth a_i) + 1; Omega has depth 0.
std::size_t enum_depth(const Term& t);

// Binders are named by lambda-nesting level, so alpha-equal terms come out identical.
// ANFs including Omega.
std::vector<Term> enum_anf(const EnumBudget& b);
// Pure normal forms.
std::vector<Term> enum_nf(const EnumBudget& b);

// Budget used by brute_inhabit for this query.
EnumBudget brute_budget(const Env& gamma, const SType& goal, SystemId sys);

// Solution set by generate-and-test; sys in {H, Hw, Hew, Sw}. depth_margin widens the
// depth bound of brute_budget (used to check that the bound is not binding).
std::vector<Term> brute_inhabit(const Env& gamma, const SType& goal, SystemId sys,
                                std::size_t depth_margin = 0);

struct QueryBudget {
  std::size_t type_depth = 1;
  std::vector<std::string> alphabet{"a"};  // base types
  std::size_t max_bindings = 1;
  std::size_t max_degree = 2;
  bool allow_empty = true;  // allow [] anywhere
};

// Every (env, goal) within the budget, env variables taken from x, y, z, ...
std::vector<std::pair<Env, SType>> enum_queries(const QueryBudget& b);

std::vector<SType> enum_types(std::size_t height, const std::vector<std::string>& alphabet,
                              std::size_t max_degree, bool allow_empty);

}  // namespace mintypes
