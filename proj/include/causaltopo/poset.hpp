#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "causaltopo/bits.hpp"
#include "causaltopo/errors.hpp"

namespace causaltopo {

namespace caps {

/// way_below enumerates every directed subset; it is an oracle, not a
/// production algorithm, so the carrier is hard-capped.
inline constexpr std::size_t way_below_carrier = 12;

/// Default carrier cap for operations whose result is a powerset
/// (from_poset, and the Minkowski region-family builder).
inline std::size_t default_carrier_cap() {
  if (const char* env = std::getenv("CAUSALTOPO_CAP")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 12;
}

}  // namespace caps

/// "{a,b,c}" — the canonical display form of a set of identifiers.
inline std::string set_literal(const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  out += "}";
  return out;
}

/// Fixed-width numeric labels ("F03") so that lexicographic point order
/// matches numeric order.
inline std::string padded_label(const char* prefix, std::size_t k, std::size_t largest) {
  std::size_t width = 1;
  for (std::size_t t = largest; t >= 10; t /= 10) ++width;
  std::string num = std::to_string(k);
  return std::string(prefix) + std::string(width - num.size(), '0') + num;
}

/// Finite partial order over opaque string identifiers.
///
/// Elements are held in lexicographic order (the canonical order used for all
/// deterministic output). The relation is a dense bit matrix: row(i) is the
/// up-set of element i, col(i) its down-set. Values are immutable once built.
class Poset {
 public:
  Poset() = default;

  /// Reflexive-transitive closure of the given covers. Fails with CycleError
  /// when the closure would break antisymmetry.
  static Poset from_cover(std::vector<std::string> elements,
                          const std::vector<std::pair<std::string, std::string>>& covers) {
    Poset p = init(std::move(elements));
    const std::size_t n = p.size();
    for (const auto& [lo, hi] : covers) {
      p.up_[p.index_of(lo)].set(p.index_of(hi));
    }
    // Standard cubic closure on bitset rows.
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (p.up_[i].test(k)) p.up_[i] |= p.up_[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p.up_[i].test(j) && p.up_[j].test(i))
          throw CycleError("cycle through elements '" + p.name(i) + "' and '" + p.name(j) + "'");
    p.fill_down();
    return p;
  }

  /// Builds directly from a full relation matrix (row i = up-set of i).
  /// `validate` may be false only when the caller can prove the matrix is a
  /// partial order already (e.g. subset order on masks).
  static Poset from_relation(std::vector<std::string> elements, std::vector<Bits> rows,
                             bool validate = true) {
    Poset p = init(std::move(elements));
    const std::size_t n = p.size();
    if (rows.size() != n) throw SchemaError("relation size does not match carrier");
    p.up_ = std::move(rows);
    if (validate) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!p.up_[i].test(i)) throw ValidationError("relation is not reflexive at " + p.name(i));
        for (std::size_t j = p.up_[i].find_first(); j != Bits::npos; j = p.up_[i].find_next(j)) {
          if (i != j && p.up_[j].test(i))
            throw CycleError("cycle through elements '" + p.name(i) + "' and '" + p.name(j) + "'");
          if (!p.up_[j].is_subset_of(p.up_[i]))
            throw ValidationError("relation is not transitive at " + p.name(i) + " <= " + p.name(j));
        }
      }
    }
    p.fill_down();
    return p;
  }

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }

  const std::string& name(std::size_t i) const { return elements_[i]; }

  std::size_t index_of(const std::string& id) const {
    const auto it = std::lower_bound(elements_.begin(), elements_.end(), id);
    if (it == elements_.end() || *it != id) throw UnknownElement("unknown element '" + id + "'");
    return static_cast<std::size_t>(it - elements_.begin());
  }

  bool contains(const std::string& id) const {
    return std::binary_search(elements_.begin(), elements_.end(), id);
  }

  bool leq(std::size_t i, std::size_t j) const { return up_[i].test(j); }
  bool leq(const std::string& a, const std::string& b) const { return leq(index_of(a), index_of(b)); }
  bool strictly_less(std::size_t i, std::size_t j) const { return i != j && up_[i].test(j); }

  const Bits& up(std::size_t i) const { return up_[i]; }
  const Bits& down(std::size_t i) const { return down_[i]; }

  std::optional<std::size_t> bottom() const {
    for (std::size_t i = 0; i < size(); ++i)
      if (up_[i].count() == size()) return i;
    return std::nullopt;
  }

  /// Least upper bound of {i, j}, if it exists.
  std::optional<std::size_t> join(std::size_t i, std::size_t j) const {
    Bits ub = up_[i] & up_[j];
    const std::size_t first = ub.find_first();
    if (first == Bits::npos) return std::nullopt;
    // One pass keeps a running minimal candidate; a least element, when it
    // exists, survives the pass and the final subset check.
    std::size_t best = first;
    for (std::size_t m = ub.find_next(first); m != Bits::npos; m = ub.find_next(m))
      if (leq(m, best)) best = m;
    if (ub.is_subset_of(up_[best])) return best;
    return std::nullopt;
  }

  std::optional<std::size_t> join_all(const Bits& members) const {
    std::size_t i = members.find_first();
    if (i == Bits::npos) return bottom();
    std::optional<std::size_t> acc = i;
    for (i = members.find_next(i); i != Bits::npos; i = members.find_next(i)) {
      acc = join(*acc, i);
      if (!acc) return std::nullopt;
    }
    return acc;
  }

  /// Hasse diagram edges (the covers), in canonical order.
  std::vector<std::pair<std::string, std::string>> covers() const {
    std::vector<std::pair<std::string, std::string>> out;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = up_[i].find_first(); j != Bits::npos; j = up_[i].find_next(j)) {
        if (i == j) continue;
        bool direct = true;
        for (std::size_t k = up_[i].find_first(); k != Bits::npos; k = up_[i].find_next(k))
          if (k != i && k != j && up_[k].test(j)) {
            direct = false;
            break;
          }
        if (direct) out.emplace_back(name(i), name(j));
      }
    return out;
  }

  bool same_order(const Poset& other) const {
    return elements_ == other.elements_ && up_ == other.up_;
  }

  std::vector<std::string> names_of(const Bits& b) const {
    std::vector<std::string> out;
    for_each_bit(b, [&](std::size_t i) { out.push_back(name(i)); });
    return out;
  }

 private:
  static Poset init(std::vector<std::string> elements) {
    Poset p;
    std::sort(elements.begin(), elements.end());
    for (std::size_t i = 0; i + 1 < elements.size(); ++i)
      if (elements[i] == elements[i + 1])
        throw DuplicateElement("duplicate element '" + elements[i] + "'");
    p.elements_ = std::move(elements);
    p.up_.assign(p.size(), Bits(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) p.up_[i].set(i);
    return p;
  }

  void fill_down() {
    down_.assign(size(), Bits(size()));
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = up_[i].find_first(); j != Bits::npos; j = up_[i].find_next(j))
        down_[j].set(i);
  }

  std::vector<std::string> elements_;
  std::vector<Bits> up_;
  std::vector<Bits> down_;
};

inline Poset poset_from_cover(std::vector<std::string> elements,
                              const std::vector<std::pair<std::string, std::string>>& covers) {
  return Poset::from_cover(std::move(elements), covers);
}

struct OrderReport {
  bool has_bottom = false;
  std::optional<std::string> bottom;
  bool has_binary_joins = false;
  std::optional<std::pair<std::string, std::string>> join_witness_failure;
};

inline OrderReport order_report(const Poset& p) {
  OrderReport r;
  if (const auto b = p.bottom()) {
    r.has_bottom = true;
    r.bottom = p.name(*b);
  }
  r.has_binary_joins = true;
  for (std::size_t i = 0; i < p.size() && r.has_binary_joins; ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (!p.join(i, j)) {
        r.has_binary_joins = false;
        r.join_witness_failure = {p.name(i), p.name(j)};
        break;
      }
  return r;
}

/// Minimal elements of the carrier minus bottom.
inline std::vector<std::string> atoms(const Poset& p) {
  const auto b = p.bottom();
  if (!b) throw NoBottom("poset has no least element");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i == *b) continue;
    Bits below = p.down(i);
    below.reset(i);
    below.reset(*b);
    if (below.none()) out.push_back(p.name(i));
  }
  return out;
}

namespace detail {

/// Directed: non-empty and every pair has an upper bound inside the set.
inline bool is_directed(const Poset& p, const Bits& d) {
  if (d.none()) return false;
  const auto idx = bit_indices(d);
  for (std::size_t a : idx)
    for (std::size_t b : idx) {
      Bits ub = p.up(a) & p.up(b) & d;
      if (ub.none()) return false;
    }
  return true;
}

/// Least upper bound of an arbitrary subset, if it exists.
inline std::optional<std::size_t> sup_of(const Poset& p, const Bits& d) {
  Bits ub(p.size());
  ub.set();
  for_each_bit(d, [&](std::size_t i) { ub &= p.up(i); });
  const std::size_t first = ub.find_first();
  if (first == Bits::npos) return std::nullopt;
  std::size_t best = first;
  for (std::size_t m = ub.find_next(first); m != Bits::npos; m = ub.find_next(m))
    if (p.leq(m, best)) best = m;
  if (ub.is_subset_of(p.up(best))) return best;
  return std::nullopt;
}

}  // namespace detail

/// x << y, decided by exhaustive enumeration of all directed subsets.
inline bool way_below(const Poset& p, const std::string& x, const std::string& y) {
  if (p.size() > caps::way_below_carrier)
    throw CapExceeded("way_below is capped at carrier size 12");
  const std::size_t xi = p.index_of(x), yi = p.index_of(y);
  const std::size_t n = p.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Bits d = bits_from_mask(n, mask);
    if (!detail::is_directed(p, d)) continue;
    const auto s = detail::sup_of(p, d);
    if (!s || !p.leq(yi, *s)) continue;
    bool hit = false;
    for_each_bit(d, [&](std::size_t di) { hit = hit || p.leq(xi, di); });
    if (!hit) return false;
  }
  return true;
}

/// Continuity in the domain-theoretic sense: every x is the directed sup of
/// its way-below set. True on every finite poset; computed from definitions.
inline bool is_continuous(const Poset& p) {
  for (std::size_t x = 0; x < p.size(); ++x) {
    Bits wb(p.size());
    for (std::size_t t = 0; t < p.size(); ++t)
      if (way_below(p, p.name(t), p.name(x))) wb.set(t);
    if (!detail::is_directed(p, wb)) return false;
    const auto s = detail::sup_of(p, wb);
    if (!s || *s != x) return false;
  }
  return true;
}

/// Order-disjoint union; identifiers are tagged "<summand index>.<id>".
inline Poset disjoint_sum(const std::vector<Poset>& ps) {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const std::string tag = std::to_string(k) + ".";
    for (const auto& e : ps[k].elements()) elements.push_back(tag + e);
    for (const auto& [a, b] : ps[k].covers()) covers.emplace_back(tag + a, tag + b);
  }
  return Poset::from_cover(std::move(elements), covers);
}

inline std::vector<std::string> up_set(const Poset& p, const std::string& x) {
  return p.names_of(p.up(p.index_of(x)));
}

inline std::vector<std::string> down_set(const Poset& p, const std::string& x) {
  return p.names_of(p.down(p.index_of(x)));
}

}  // namespace causaltopo
