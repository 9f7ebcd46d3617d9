// Python bindings. Everything crosses the boundary as text in the CLI syntaxes.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mintypes/derive.hpp"
#include "mintypes/inhabit.hpp"
#include "mintypes/json.hpp"
#include "mintypes/oracle.hpp"
#include "mintypes/textio.hpp"

namespace py = pybind11;
using namespace mintypes;

namespace {

SystemId sys_of(const std::string& name) {
  auto s = parse_system(name);
  if (!s) throw PreconditionError("unknown system " + name);
  return *s;
}

std::vector<std::string> printed(const std::vector<Term>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(print_term(t));
  return out;
}

// He and S answer with witnesses (which may contain redexes); the others with solutions.
std::vector<std::string> py_inhabit(const std::string& system, const std::string& env, const std::string& type,
                                    bool first, std::optional<std::size_t> budget) {
  SystemId sys = sys_of(system);
  Env g = parse_env(env);
  SType s = parse_type(type);
  if (sys == SystemId::He || sys == SystemId::S) {
    auto r = sys == SystemId::He ? inhabit_He(g, s) : inhabit_S(g, s);
    std::vector<std::string> out;
    for (const auto& w : r.witnesses) {
      out.push_back(print_term(w.term));
      if (first) break;
    }
    return out;
  }
  Query q;
  q.sys = sys;
  q.env = g;
  q.goal = s;
  q.mode = first ? SearchMode::First : SearchMode::All;
  q.budget = budget;
  std::vector<std::string> out;
  for (const auto& sol : inhabit(q)) out.push_back(print_term(sol.term));
  return out;
}

}  // namespace

PYBIND11_MODULE(_mintypes, m) {
  m.doc() = "Non-idempotent intersection types: inhabitation, checking, reduction";

  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());

  m.def("systems", [] {
    std::vector<std::string> out;
    for (auto s : all_systems()) out.emplace_back(system_name(s));
    return out;
  });

  m.def("inhabit", &py_inhabit, py::arg("system"), py::arg("env"), py::arg("type"), py::arg("first") = false,
        py::arg("budget") = std::nullopt,
        "Inhabitants of env |- ? : type, in search order. He and S give one witness per solution.");

  m.def(
      "brute_inhabit",
      [](const std::string& system, const std::string& env, const std::string& type) {
        return printed(brute_inhabit(parse_env(env), parse_type(type), sys_of(system)));
      },
      py::arg("system"), py::arg("env"), py::arg("type"), "Generate-and-test oracle (H, Hw, Hew, Sw).");

  m.def(
      "derivable",
      [](const std::string& system, const std::string& env, const std::string& term, const std::string& type) {
        return derivable(parse_env(env), parse_term(term), Goal{parse_type(type)}, sys_of(system));
      },
      py::arg("system"), py::arg("env"), py::arg("term"), py::arg("type"),
      "Proof search; the term must be normal (or an approximate normal form in H, Hw).");

  m.def(
      "check_derivation",
      [](const std::string& system, const std::string& json_text) {
        Derivation d = derivation_from_json(nlohmann::json::parse(json_text));
        std::vector<std::string> out;
        for (const auto& diag : check_derivation(d, sys_of(system))) out.push_back(diag.rule + ": " + diag.constraint);
        return out;
      },
      py::arg("system"), py::arg("derivation_json"), "Violated constraints of a JSON derivation; empty when valid.");

  m.def(
      "normalize",
      [](const std::string& term, std::size_t fuel, bool betaomega) {
        Term t = parse_term(term);
        auto r = betaomega ? betaomega_normalize(t, fuel) : normalize(t, fuel);
        return py::make_tuple(print_term(r.term), r.steps, r.exhausted);
      },
      py::arg("term"), py::arg("fuel") = 1000, py::arg("betaomega") = false,
      "(term, steps, exhausted) after leftmost-outermost reduction.");

  m.def(
      "approximants",
      [](const std::string& term, std::size_t fuel) {
        auto r = approximants(parse_term(term), fuel);
        auto j = anf_join(r.terms);
        py::object join = j ? py::object(py::str(print_term(*j))) : py::object(py::none());
        return py::make_tuple(printed(r.terms), r.truncated, join);
      },
      py::arg("term"), py::arg("fuel") = 1000, "(approximants, truncated, join).");

  m.def(
      "canonical_term", [](const std::string& term) { return print_term(parse_term(term)); }, py::arg("term"));
  m.def(
      "canonical_type", [](const std::string& type) { return print_type(parse_type(type)); }, py::arg("type"));
  m.def(
      "canonical_env", [](const std::string& env) { return print_env(parse_env(env)); }, py::arg("env"));
  m.def(
      "alpha_equal",
      [](const std::string& a, const std::string& b) { return alpha_equal(parse_term(a), parse_term(b)); },
      py::arg("a"), py::arg("b"));
  m.def(
      "degree",
      [](const std::string& env, const std::string& type) { return degree(parse_env(env), parse_type(type)); },
      py::arg("env"), py::arg("type"));
}
