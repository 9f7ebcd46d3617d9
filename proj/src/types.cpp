#include "mintypes/types.hpp"

#include <algorithm>

#include "mintypes/error.hpp"

namespace mintypes {

MType::MType(std::vector<SType> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
}

MType MType::single(const SType& s) { return MType(std::vector<SType>{s}); }

bool MType::contains(const SType& s) const { return std::binary_search(items_.begin(), items_.end(), s); }

std::size_t MType::count(const SType& s) const {
  auto [lo, hi] = std::equal_range(items_.begin(), items_.end(), s);
  return static_cast<std::size_t>(hi - lo);
}

MType MType::plus(const MType& other) const {
  MType r;
  r.items_.reserve(items_.size() + other.items_.size());
  std::merge(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
             std::back_inserter(r.items_));
  return r;
}

MType MType::with(const SType& s) const {
  MType r = *this;
  r.items_.insert(std::upper_bound(r.items_.begin(), r.items_.end(), s), s);
  return r;
}

MType MType::without(const SType& s) const {
  MType r = *this;
  auto it = std::lower_bound(r.items_.begin(), r.items_.end(), s);
  if (it == r.items_.end() || *it != s) throw Error("multiset does not contain the type to remove");
  r.items_.erase(it);
  return r;
}

bool MType::includes(const MType& other) const {
  return std::includes(items_.begin(), items_.end(), other.items_.begin(), other.items_.end());
}

MType MType::minus(const MType& other) const {
  if (!includes(other)) throw Error("multiset difference of a non-included multiset");
  MType r;
  std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                      std::back_inserter(r.items_));
  return r;
}

std::vector<std::pair<SType, std::size_t>> MType::grouped() const {
  std::vector<std::pair<SType, std::size_t>> out;
  for (const auto& s : items_) {
    if (!out.empty() && out.back().first == s) ++out.back().second;
    else out.emplace_back(s, 1);
  }
  return out;
}

// ---------------------------------------------------------------------------

SType SType::base(std::string name) {
  auto n = std::make_shared<STypeNode>();
  n->name = std::move(name);
  return SType(std::move(n));
}

SType SType::arrow(MType domain, SType codomain) {
  auto n = std::make_shared<STypeNode>();
  n->arrow = true;
  n->domain = std::move(domain);
  n->codomain = std::move(codomain);
  return SType(std::move(n));
}

SType SType::arrows(const std::vector<MType>& domains, SType target) {
  for (auto it = domains.rbegin(); it != domains.rend(); ++it) target = arrow(*it, target);
  return target;
}

bool SType::is_base() const { return !node_->arrow; }
const std::string& SType::name() const { return node_->name; }
const MType& SType::domain() const { return node_->domain; }
const SType& SType::codomain() const { return *node_->codomain; }

std::size_t SType::arity() const {
  std::size_t n = 0;
  const SType* cur = this;
  while (cur->is_arrow()) {
    ++n;
    cur = &cur->codomain();
  }
  return n;
}

SType SType::strip(std::size_t n) const {
  SType cur = *this;
  for (std::size_t i = 0; i < n; ++i) {
    if (!cur.is_arrow()) throw Error("strip past the arity of a type");
    cur = cur.codomain();
  }
  return cur;
}

std::vector<MType> SType::domains(std::size_t n) const {
  std::vector<MType> out;
  const SType* cur = this;
  for (std::size_t i = 0; i < n; ++i) {
    if (!cur->is_arrow()) throw Error("domains past the arity of a type");
    out.push_back(cur->domain());
    cur = &cur->codomain();
  }
  return out;
}

int compare(const SType& a, const SType& b) {
  if (a.node_ == b.node_) return 0;
  if (a.is_base() != b.is_base()) return a.is_base() ? -1 : 1;
  if (a.is_base()) return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
  if (int c = compare(a.domain(), b.domain())) return c;
  return compare(a.codomain(), b.codomain());
}

int compare(const MType& a, const MType& b) {
  const auto &x = a.items(), &y = b.items();
  std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare(x[i], y[i])) return c;
  if (x.size() == y.size()) return 0;
  return x.size() < y.size() ? -1 : 1;
}

// ---------------------------------------------------------------------------

Env::Env(std::initializer_list<std::pair<const std::string, MType>> init) {
  for (const auto& [x, a] : init)
    if (!a.empty()) map_[x] = map_.count(x) ? map_[x].plus(a) : a;
}

MType Env::get(const std::string& x) const {
  auto it = map_.find(x);
  return it == map_.end() ? MType() : it->second;
}

std::set<std::string> Env::domain() const {
  std::set<std::string> d;
  for (const auto& [x, a] : map_) d.insert(x);
  return d;
}

Env Env::with(const std::string& x, const MType& a) const {
  if (a.empty()) return *this;
  Env r = *this;
  auto it = r.map_.find(x);
  if (it == r.map_.end()) r.map_.emplace(x, a);
  else it->second = it->second.plus(a);
  return r;
}

Env Env::without(const std::string& x) const {
  Env r = *this;
  r.map_.erase(x);
  return r;
}

Env Env::plus(const Env& other) const {
  Env r = *this;
  for (const auto& [x, a] : other.map_) r = r.with(x, a);
  return r;
}

bool Env::includes(const Env& other) const {
  for (const auto& [x, a] : other.map_)
    if (!get(x).includes(a)) return false;
  return true;
}

Env Env::minus(const Env& other) const {
  Env r = *this;
  for (const auto& [x, a] : other.map_) {
    MType left = get(x).minus(a);
    if (left.empty()) r.map_.erase(x);
    else r.map_[x] = left;
  }
  return r;
}

Env env_sum(const std::vector<Env>& gammas) {
  Env r;
  for (const auto& g : gammas) r = r.plus(g);
  return r;
}

namespace {
// All ways to place m identical items into k ordered bins.
void compositions(std::size_t m, std::size_t k, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() + 1 == k) {
    cur.push_back(m);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t i = 0; i <= m; ++i) {
    cur.push_back(i);
    compositions(m - i, k, cur, out);
    cur.pop_back();
  }
}

// Every way to distribute multiset a over k ordered parts.
std::vector<std::vector<MType>> mtype_splits(const MType& a, std::size_t k) {
  std::vector<std::vector<std::vector<SType>>> acc{std::vector<std::vector<SType>>(k)};
  for (const auto& [s, m] : a.grouped()) {
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::size_t> cur;
    compositions(m, k, cur, comps);
    std::vector<std::vector<std::vector<SType>>> next;
    for (const auto& partial : acc)
      for (const auto& c : comps) {
        auto p = partial;
        for (std::size_t j = 0; j < k; ++j) p[j].insert(p[j].end(), c[j], s);
        next.push_back(std::move(p));
      }
    acc = std::move(next);
  }
  std::vector<std::vector<MType>> out;
  for (auto& parts : acc) {
    std::vector<MType> row;
    for (auto& p : parts) row.emplace_back(std::move(p));
    out.push_back(std::move(row));
  }
  return out;
}

std::size_t binom(std::size_t n, std::size_t r) {
  std::size_t res = 1;
  for (std::size_t i = 1; i <= r; ++i) res = res * (n - r + i) / i;
  return res;
}
}  // namespace

void for_each_split(const Env& gamma, std::size_t k,
                    const std::function<void(const std::vector<Env>&)>& f) {
  if (k == 0) {
    if (gamma.empty()) f({});
    return;
  }
  std::vector<std::pair<std::string, std::vector<std::vector<MType>>>> per;
  for (const auto& [x, a] : gamma.bindings()) per.emplace_back(x, mtype_splits(a, k));
  std::vector<Env> parts(k);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == per.size()) {
      f(parts);
      return;
    }
    const auto& [x, options] = per[i];
    for (const auto& opt : options) {
      std::vector<Env> saved = parts;
      for (std::size_t j = 0; j < k; ++j) parts[j] = parts[j].with(x, opt[j]);
      go(i + 1);
      parts = std::move(saved);
    }
  };
  go(0);
}

std::vector<std::vector<Env>> env_splits(const Env& gamma, std::size_t k) {
  std::vector<std::vector<Env>> out;
  for_each_split(gamma, k, [&](const std::vector<Env>& t) { out.push_back(t); });
  return out;
}

std::size_t count_splits(const Env& gamma, std::size_t k) {
  if (k == 0) return gamma.empty() ? 1 : 0;
  std::size_t n = 1;
  for (const auto& [x, a] : gamma.bindings())
    for (const auto& [s, m] : a.grouped()) n *= binom(m + k - 1, k - 1);
  return n;
}

// ---------------------------------------------------------------------------

std::size_t degree(const SType& s) {
  return s.is_base() ? 0 : degree(s.domain()) + degree(s.codomain());
}

std::size_t degree(const MType& a) {
  std::size_t d = a.size();
  for (const auto& s : a.items()) d += degree(s);
  return d;
}

std::size_t degree(const Env& g) {
  std::size_t d = 0;
  for (const auto& [x, a] : g.bindings()) d += degree(a);
  return d;
}

std::size_t degree(const Env& g, const SType& s) { return degree(g) + degree(s); }

std::size_t measure_type(const SType& s) {
  return s.is_base() ? 1 : measure_mtype(s.domain()) + measure_type(s.codomain()) + 1;
}

std::size_t measure_mtype(const MType& a) {
  std::size_t m = 1;
  for (const auto& s : a.items()) m += measure_type(s);
  return m;
}

std::size_t measure_env(const Env& g) {
  std::size_t m = 0;
  for (const auto& [x, a] : g.bindings()) m += measure_mtype(a);
  return m;
}

// ---------------------------------------------------------------------------

namespace {
void closure(const SType& s, std::set<SType>& ss, std::set<MType>& ms);
void closure(const MType& a, std::set<SType>& ss, std::set<MType>& ms) {
  if (!ms.insert(a).second) return;
  for (const auto& s : a.items()) closure(s, ss, ms);
}
void closure(const SType& s, std::set<SType>& ss, std::set<MType>& ms) {
  if (!ss.insert(s).second) return;
  if (s.is_arrow()) {
    closure(s.domain(), ss, ms);
    closure(s.codomain(), ss, ms);
  }
}

bool member(const TypeRef& a, const std::set<SType>& ss, const std::set<MType>& ms) {
  if (auto s = std::get_if<SType>(&a)) return ss.count(*s) > 0;
  return ms.count(std::get<MType>(a)) > 0;
}
}  // namespace

bool is_subtype(const TypeRef& a, const SType& b) {
  std::set<SType> ss;
  std::set<MType> ms;
  closure(b, ss, ms);
  return member(a, ss, ms);
}

bool is_subtype(const TypeRef& a, const MType& b) {
  std::set<SType> ss;
  std::set<MType> ms;
  closure(b, ss, ms);
  return member(a, ss, ms);
}

bool is_subtype(const TypeRef& a, const Env& b) {
  std::set<SType> ss;
  std::set<MType> ms;
  for (const auto& [x, m] : b.bindings()) closure(m, ss, ms);
  return member(a, ss, ms);
}

std::set<SType> strict_subformulas(const SType& s) {
  std::set<SType> ss;
  std::set<MType> ms;
  closure(s, ss, ms);
  return ss;
}

std::set<SType> strict_subformulas(const Env& g) {
  std::set<SType> ss;
  std::set<MType> ms;
  for (const auto& [x, m] : g.bindings()) closure(m, ss, ms);
  return ss;
}

std::set<std::string> base_names(const SType& s) {
  std::set<std::string> out;
  for (const auto& t : strict_subformulas(s))
    if (t.is_base()) out.insert(t.name());
  return out;
}

std::set<std::string> base_names(const MType& a) {
  std::set<std::string> out;
  for (const auto& s : a.items())
    for (const auto& n : base_names(s)) out.insert(n);
  return out;
}

std::set<std::string> base_names(const Env& g) {
  std::set<std::string> out;
  for (const auto& [x, a] : g.bindings())
    for (const auto& n : base_names(a)) out.insert(n);
  return out;
}

bool has_empty_multiset(const SType& s) {
  return s.is_arrow() && (has_empty_multiset(s.domain()) || has_empty_multiset(s.codomain()));
}

bool has_empty_multiset(const MType& a) {
  if (a.empty()) return true;
  for (const auto& s : a.items())
    if (has_empty_multiset(s)) return true;
  return false;
}

bool has_empty_multiset(const Env& g) {
  for (const auto& [x, a] : g.bindings())
    if (has_empty_multiset(a)) return true;
  return false;
}

SType rename_bases(const SType& s, const std::map<std::string, SType>& theta) {
  if (s.is_base()) {
    auto it = theta.find(s.name());
    return it == theta.end() ? s : it->second;
  }
  return SType::arrow(rename_bases(s.domain(), theta), rename_bases(s.codomain(), theta));
}

MType rename_bases(const MType& a, const std::map<std::string, SType>& theta) {
  std::vector<SType> items;
  for (const auto& s : a.items()) items.push_back(rename_bases(s, theta));
  return MType(std::move(items));
}

Env rename_bases(const Env& g, const std::map<std::string, SType>& theta) {
  Env r;
  for (const auto& [x, a] : g.bindings()) r = r.with(x, rename_bases(a, theta));
  return r;
}

}  // namespace mintypes
