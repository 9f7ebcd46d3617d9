#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mintypes/derive.hpp"

namespace mintypes {

enum class SearchMode { All, First };

struct Query {
  SystemId sys = SystemId::H;
  Env env;
  Goal goal = SType::base("a");
  SearchMode mode = SearchMode::All;
  // Maximum number of distinct judgements expanded; nullopt = unlimited.
  std::optional<std::size_t> budget;
};

enum class RunRule { Abs, Union, HeadGt0, HeadGt0Empty, Head0, Head, HeadB };
enum class Form { T, TI, Hx };

const char* run_rule_name(RunRule r);
const char* form_name(Form f);

struct RunTree {
  RunRule rule;
  Form form;
  Env env;
  Goal goal;
  // Head binding x:[rho], only for Form::Hx.
  std::string head_var;
  std::optional<SType> head_type;
  Term output;
  std::vector<std::shared_ptr<const RunTree>> premises;
};

struct Solution {
  Term term;
  std::shared_ptr<const RunTree> run;
};

// q.sys must be H, Hw, Hew or Sw. Solutions come in search order, one per
// alpha-class of outputs.
std::vector<Solution> inhabit(const Query& q);
std::vector<Term> inhabit_terms(SystemId sys, const Env& env, const SType& goal);

// Same solution set for H, computed with the one-shot head rule.
std::vector<Term> inhabit_basic_H(const Env& env, const SType& goal);

std::size_t run_measure(const RunTree& node);

struct Witness {
  Term term;
  Derivation derivation;
};

struct RelevantResult {
  bool inhabited = false;
  std::vector<Witness> witnesses;
};

// Decided through Hew / Sw; each witness is checked in He / S before it is returned.
RelevantResult inhabit_He(const Env& env, const SType& goal);
RelevantResult inhabit_S(const Env& env, const SType& goal);

}  // namespace mintypes
