#include "mintypes/json.hpp"

#include "mintypes/error.hpp"
#include "mintypes/textio.hpp"

namespace mintypes {

namespace {
std::string goal_text(const Goal& g) {
  if (auto s = std::get_if<SType>(&g)) return print_type(*s);
  return print_mtype(std::get<MType>(g));
}

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(std::string("derivation node lacks \"") + name + "\"");
  return j.at(name);
}

std::string text_field(const nlohmann::json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_string()) throw Error(std::string("\"") + name + "\" must be a string");
  return v.get<std::string>();
}
}  // namespace

nlohmann::json derivation_to_json(const Derivation& d) {
  nlohmann::json premises = nlohmann::json::array();
  for (const auto& p : d.premises) premises.push_back(derivation_to_json(p));
  return {{"rule", rule_name(d.rule)},
          {"env", print_env(d.env())},
          {"subject", print_term(d.subject())},
          {"type", goal_text(d.goal())},
          {"premises", premises}};
}

Derivation derivation_from_json(const nlohmann::json& j) {
  std::string rule_text = text_field(j, "rule");
  auto rule = parse_rule(rule_text);
  if (!rule) throw Error("unknown rule \"" + rule_text + "\"");
  Derivation d{*rule, {parse_env(text_field(j, "env")), parse_term_exact(text_field(j, "subject")), SType::base("a")}, {}};
  std::string type = text_field(j, "type");
  if (*rule == Rule::M) d.conclusion.goal = parse_mtype(type);
  else d.conclusion.goal = parse_type(type);
  if (j.contains("premises")) {
    const auto& ps = j.at("premises");
    if (!ps.is_array()) throw Error("\"premises\" must be an array");
    for (const auto& p : ps) d.premises.push_back(derivation_from_json(p));
  }
  return d;
}

nlohmann::json run_to_json(const RunTree& r) {
  nlohmann::json premises = nlohmann::json::array();
  for (const auto& p : r.premises) premises.push_back(run_to_json(*p));
  nlohmann::json j{{"rule", run_rule_name(r.rule)},
                   {"form", form_name(r.form)},
                   {"env", print_env(r.env)},
                   {"goal", goal_text(r.goal)},
                   {"output", print_term(r.output)},
                   {"measure", run_measure(r)},
                   {"premises", premises}};
  if (r.head_type) j["head"] = r.head_var + ":" + print_mtype(MType::single(*r.head_type));
  return j;
}

nlohmann::json solution_to_json(const Solution& s) {
  return {{"term", print_term(s.term)}, {"run", run_to_json(*s.run)}};
}

}  // namespace mintypes
