#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace mintypes {

class SType;

// Multiset of strict types, kept sorted so equal multisets are equal vectors.
class MType {
 public:
  MType() = default;
  explicit MType(std::vector<SType> items);
  static MType single(const SType& s);

  const std::vector<SType>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  bool contains(const SType& s) const;
  std::size_t count(const SType& s) const;
  MType plus(const MType& other) const;
  MType with(const SType& s) const;
  // Removes one copy; throws if absent.
  MType without(const SType& s) const;
  // this - other; throws unless other is a sub-multiset.
  MType minus(const MType& other) const;
  bool includes(const MType& other) const;
  // Distinct elements with multiplicity, in order.
  std::vector<std::pair<SType, std::size_t>> grouped() const;

 private:
  std::vector<SType> items_;
};

struct STypeNode;

class SType {
 public:
  static SType base(std::string name);
  static SType arrow(MType domain, SType codomain);
  // A1 -> ... -> An -> target
  static SType arrows(const std::vector<MType>& domains, SType target);

  bool is_base() const;
  bool is_arrow() const { return !is_base(); }
  const std::string& name() const;
  const MType& domain() const;
  const SType& codomain() const;

  // Number of leading arrows.
  std::size_t arity() const;
  // Codomain after peeling n arrows (n <= arity()).
  SType strip(std::size_t n) const;
  std::vector<MType> domains(std::size_t n) const;

 private:
  explicit SType(std::shared_ptr<const STypeNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const STypeNode> node_;
  friend int compare(const SType&, const SType&);
};

struct STypeNode {
  bool arrow = false;
  std::string name;
  MType domain;
  std::optional<SType> codomain;  // set for arrows
};

int compare(const SType& a, const SType& b);
int compare(const MType& a, const MType& b);
inline bool operator==(const SType& a, const SType& b) { return compare(a, b) == 0; }
inline bool operator!=(const SType& a, const SType& b) { return compare(a, b) != 0; }
inline bool operator<(const SType& a, const SType& b) { return compare(a, b) < 0; }
inline bool operator==(const MType& a, const MType& b) { return compare(a, b) == 0; }
inline bool operator!=(const MType& a, const MType& b) { return compare(a, b) != 0; }
inline bool operator<(const MType& a, const MType& b) { return compare(a, b) < 0; }

// Typing environment; bindings to [] are never stored.
class Env {
 public:
  Env() = default;
  Env(std::initializer_list<std::pair<const std::string, MType>> init);

  const std::map<std::string, MType>& bindings() const { return map_; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  bool has(const std::string& x) const { return map_.count(x) > 0; }
  // [] when x is not in the domain.
  MType get(const std::string& x) const;
  std::set<std::string> domain() const;

  Env with(const std::string& x, const MType& a) const;  // adds a to x's multiset
  Env without(const std::string& x) const;               // drops x entirely
  Env plus(const Env& other) const;
  // this - other pointwise; throws unless other is included.
  Env minus(const Env& other) const;
  bool includes(const Env& other) const;

  friend bool operator==(const Env& a, const Env& b) { return a.map_ == b.map_; }
  friend bool operator!=(const Env& a, const Env& b) { return !(a == b); }
  friend bool operator<(const Env& a, const Env& b) { return a.map_ < b.map_; }

 private:
  std::map<std::string, MType> map_;
};

Env env_sum(const std::vector<Env>& gammas);

// Calls f on every k-tuple summing to gamma, each exactly once.
void for_each_split(const Env& gamma, std::size_t k,
                    const std::function<void(const std::vector<Env>&)>& f);
std::vector<std::vector<Env>> env_splits(const Env& gamma, std::size_t k);
// Number of k-splits, computed without enumerating.
std::size_t count_splits(const Env& gamma, std::size_t k);

std::size_t degree(const SType& s);
std::size_t degree(const MType& a);
std::size_t degree(const Env& g);
std::size_t degree(const Env& g, const SType& s);

std::size_t measure_type(const SType& s);
std::size_t measure_mtype(const MType& a);
std::size_t measure_env(const Env& g);

// Subformula closure used by the subtype relation.
using TypeRef = std::variant<SType, MType>;
bool is_subtype(const TypeRef& a, const SType& b);
bool is_subtype(const TypeRef& a, const MType& b);
bool is_subtype(const TypeRef& a, const Env& b);

// Every SType occurring anywhere inside (including the argument itself).
std::set<SType> strict_subformulas(const SType& s);
std::set<SType> strict_subformulas(const Env& g);

std::set<std::string> base_names(const SType& s);
std::set<std::string> base_names(const MType& a);
std::set<std::string> base_names(const Env& g);
bool has_empty_multiset(const SType& s);
bool has_empty_multiset(const MType& a);
bool has_empty_multiset(const Env& g);
// Substitute base types by strict types.
SType rename_bases(const SType& s, const std::map<std::string, SType>& theta);
MType rename_bases(const MType& a, const std::map<std::string, SType>& theta);
Env rename_bases(const Env& g, const std::map<std::string, SType>& theta);

}  // namespace mintypes
