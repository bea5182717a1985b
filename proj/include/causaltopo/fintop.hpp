#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causaltopo/bits.hpp"
#include "causaltopo/errors.hpp"
#include "causaltopo/poset.hpp"

namespace causaltopo {

namespace caps {
/// Topologies are materialized as full closed-set lattices; beyond 16 points
/// the lattice may not fit, so this is a hard error, not a soft limit.
inline constexpr std::size_t topology_points = 16;
inline constexpr std::size_t homeo_points = 8;
}  // namespace caps

/// Finite topological space, materialized as the full lattice of closed sets.
/// The generating closed subbase is kept alongside for reporting and for the
/// subbase-level compactness checks.
class FiniteTopSpace {
 public:
  FiniteTopSpace() = default;

  /// Closed sets are all intersections of finite unions of subbase members,
  /// plus the empty set and the whole carrier.
  static FiniteTopSpace from_closed_subbase(std::vector<std::string> points,
                                            std::vector<Bits> subbase) {
    FiniteTopSpace s = init(std::move(points));
    const std::size_t n = s.size();
    for (const auto& m : subbase)
      if (m.size() != n) throw SchemaError("subbase member has wrong carrier size");
    // All finite unions first (the empty union gives the empty set), then all
    // intersections of those; by distributivity the result is union-closed.
    // Folding in one generator at a time is complete for either operation.
    std::set<Bits> unions;
    unions.insert(Bits(n));
    for (const auto& m : subbase) {
      std::vector<Bits> fresh;
      for (const auto& u : unions) {
        Bits v = u | m;
        if (!unions.count(v)) fresh.push_back(std::move(v));
      }
      for (auto& v : fresh) unions.insert(std::move(v));
    }
    Bits full(n);
    full.set();
    std::set<Bits> closed;
    closed.insert(full);  // the empty intersection
    for (const auto& u : unions) {
      std::vector<Bits> fresh;
      if (!closed.count(u)) fresh.push_back(u);
      for (const auto& c : closed) {
        Bits v = c & u;
        if (!closed.count(v)) fresh.push_back(std::move(v));
      }
      for (auto& v : fresh) closed.insert(std::move(v));
    }
    s.closed_.assign(closed.begin(), closed.end());
    std::sort(subbase.begin(), subbase.end());
    subbase.erase(std::unique(subbase.begin(), subbase.end()), subbase.end());
    s.subbase_ = std::move(subbase);
    return s;
  }

  /// Builds from an explicit closed-set family. Validates that the family is
  /// a lattice (contains empty/full, closed under pairwise union and
  /// intersection) unless the caller can prove it is.
  static FiniteTopSpace from_closed_sets(std::vector<std::string> points, std::vector<Bits> closed,
                                         bool validate = true) {
    FiniteTopSpace s = init(std::move(points));
    const std::size_t n = s.size();
    std::sort(closed.begin(), closed.end());
    closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
    if (validate) {
      if (closed.size() > 4096)
        throw CapExceeded("closed-set family too large to validate; pass a subbase instead");
      Bits empty(n), full(n);
      full.set();
      const auto has = [&](const Bits& b) {
        return std::binary_search(closed.begin(), closed.end(), b);
      };
      if (!has(empty) || !has(full))
        throw ValidationError("closed-set family must contain the empty set and the carrier");
      for (std::size_t i = 0; i < closed.size(); ++i)
        for (std::size_t j = i + 1; j < closed.size(); ++j) {
          if (!has(closed[i] | closed[j]))
            throw ValidationError("closed sets are not closed under union");
          if (!has(closed[i] & closed[j]))
            throw ValidationError("closed sets are not closed under intersection");
        }
    }
    s.closed_ = std::move(closed);
    s.subbase_ = s.closed_;
    return s;
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& name(std::size_t i) const { return points_[i]; }

  std::size_t index_of(const std::string& id) const {
    const auto it = std::lower_bound(points_.begin(), points_.end(), id);
    if (it == points_.end() || *it != id) throw UnknownElement("unknown point '" + id + "'");
    return static_cast<std::size_t>(it - points_.begin());
  }

  const std::vector<Bits>& closed_sets() const { return closed_; }
  const std::vector<Bits>& closed_subbase() const { return subbase_; }

  std::vector<Bits> open_sets() const {
    std::vector<Bits> out;
    out.reserve(closed_.size());
    for (const auto& c : closed_) out.push_back(~c);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_closed(const Bits& b) const {
    return std::binary_search(closed_.begin(), closed_.end(), b);
  }
  bool is_open(const Bits& b) const { return is_closed(~b); }

  Bits closure(const Bits& b) const {
    Bits acc(size());
    acc.set();
    for (const auto& c : closed_)
      if (b.is_subset_of(c)) acc &= c;
    return acc;
  }

  /// Smallest open set containing the point (finite spaces are Alexandrov).
  Bits min_open_neighborhood(std::size_t i) const {
    Bits acc(size());
    acc.set();
    for (const auto& c : closed_)
      if (!c.test(i)) acc &= ~c;
    return acc;
  }

  /// Specialization preorder: row(i) = {j : i <= j}, where i <= j iff
  /// i lies in the closure of {j}.
  std::vector<Bits> specialization_rows() const {
    const std::size_t n = size();
    std::vector<Bits> cl(n);
    for (std::size_t j = 0; j < n; ++j) cl[j] = closure(bits_of(n, {j}));
    std::vector<Bits> rows(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (cl[j].test(i)) rows[i].set(j);
    return rows;
  }

  bool same_space(const FiniteTopSpace& other) const {
    return points_ == other.points_ && closed_ == other.closed_;
  }

  std::vector<std::string> names_of(const Bits& b) const {
    std::vector<std::string> out;
    for_each_bit(b, [&](std::size_t i) { out.push_back(name(i)); });
    return out;
  }

 private:
  static FiniteTopSpace init(std::vector<std::string> points) {
    if (points.size() > caps::topology_points)
      throw CapExceeded("finite topologies are materialized in full; capped at 16 points");
    FiniteTopSpace s;
    std::sort(points.begin(), points.end());
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
      if (points[i] == points[i + 1]) throw DuplicateElement("duplicate point '" + points[i] + "'");
    s.points_ = std::move(points);
    return s;
  }

  std::vector<std::string> points_;
  std::vector<Bits> closed_;
  std::vector<Bits> subbase_;
};

/// Convenience: subbase given as lists of point names.
inline FiniteTopSpace space_from_names(std::vector<std::string> points,
                                       const std::vector<std::vector<std::string>>& subbase) {
  std::vector<std::string> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Bits> sb;
  for (const auto& member : subbase) {
    Bits b(sorted.size());
    for (const auto& id : member) {
      const auto it = std::lower_bound(sorted.begin(), sorted.end(), id);
      if (it == sorted.end() || *it != id)
        throw OutOfCarrier("subbase member mentions unknown point '" + id + "'");
      b.set(static_cast<std::size_t>(it - sorted.begin()));
    }
    sb.push_back(std::move(b));
  }
  return FiniteTopSpace::from_closed_subbase(std::move(points), std::move(sb));
}

inline bool is_T0(const FiniteTopSpace& s) {
  const auto rows = s.specialization_rows();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (rows[i].test(j) && rows[j].test(i)) return false;
  return true;
}

inline bool is_T1(const FiniteTopSpace& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!s.is_closed(bits_of(s.size(), {i}))) return false;
  return true;
}

/// Finite subcover check for an explicit open cover.
inline bool is_compact(const FiniteTopSpace& s, const std::vector<Bits>& cover) {
  Bits all(s.size());
  for (const auto& u : cover) {
    if (!s.is_open(u)) throw CoverNotOpen("cover member is not open");
    all |= u;
  }
  return all.count() == s.size();  // any finite family that covers is its own finite subcover
}

/// Every finite subfamily of `family` has a non-empty intersection. On a
/// finite family this is equivalent to the whole intersection being
/// non-empty (the family is a finite subcollection of itself), but the
/// subfamilies are enumerated literally so the equivalence stays under test.
inline bool has_fip(const FiniteTopSpace& s, const std::vector<Bits>& family) {
  if (family.size() > 20) throw CapExceeded("FIP enumeration is capped at 20 sets");
  for (std::uint32_t sub = 1; sub < (std::uint32_t{1} << family.size()); ++sub) {
    Bits acc(s.size());
    acc.set();
    for (std::size_t i = 0; i < family.size(); ++i)
      if (sub >> i & 1u) acc &= family[i];
    if (acc.none()) return false;
  }
  return true;
}

/// Compactness in the closed-family form: every family of closed sets with
/// the finite intersection property has a common point. Both sides are
/// enumerated literally, which costs 3^|closed sets|, so this is strictly a
/// small-space oracle.
inline bool is_compact_fip(const FiniteTopSpace& s) {
  const auto& closed = s.closed_sets();
  if (closed.size() > 12) throw CapExceeded("FIP compactness is capped at 12 closed sets");
  for (std::uint32_t fam = 1; fam < (std::uint32_t{1} << closed.size()); ++fam) {
    std::vector<Bits> members;
    Bits total(s.size());
    total.set();
    for (std::size_t i = 0; i < closed.size(); ++i)
      if (fam >> i & 1u) {
        members.push_back(closed[i]);
        total &= closed[i];
      }
    if (has_fip(s, members) && total.none()) return false;
  }
  return true;
}

/// No two non-empty open sets are disjoint. It suffices to test the minimal
/// open neighborhoods.
inline bool is_superconnected(const FiniteTopSpace& s) {
  if (s.size() == 0) return true;
  std::vector<Bits> mins;
  for (std::size_t i = 0; i < s.size(); ++i) mins.push_back(s.min_open_neighborhood(i));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      Bits common = mins[i] & mins[j];
      if (common.none()) return false;
    }
  return true;
}

/// Specialization order as a Poset; fails with CycleError when the space is
/// not T0 (the preorder is then not antisymmetric).
inline Poset specialization(const FiniteTopSpace& s) {
  return Poset::from_relation(s.points(), s.specialization_rows(), /*validate=*/true);
}

/// Saturated sets (intersections of opens) = up-sets of the specialization
/// preorder; no quotienting is performed for non-T0 input.
inline std::vector<Bits> saturated_sets(const FiniteTopSpace& s) {
  const std::size_t n = s.size();
  const auto rows = s.specialization_rows();
  std::vector<Bits> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Bits b = bits_from_mask(n, mask);
    bool up_closed = true;
    for (std::size_t i = b.find_first(); i != Bits::npos && up_closed; i = b.find_next(i))
      up_closed = rows[i].is_subset_of(b);
    if (up_closed) out.push_back(std::move(b));
  }
  return out;
}

/// de Groot (co-compact) dual: the closed sets of the dual are generated by
/// the compact saturated sets of the input; every subset of a finite space is
/// compact, so the generating family is the saturated sets. Up-set families
/// are already lattices, so no further closure is required.
inline FiniteTopSpace degroot_dual(const FiniteTopSpace& s) {
  return FiniteTopSpace::from_closed_sets(s.points(), saturated_sets(s), /*validate=*/false);
}

struct DualSequence {
  /// [tau, tau^G, ...] up to and including the first repetition.
  std::vector<FiniteTopSpace> topologies;
  std::size_t cycle_start = 0;     ///< index the last entry repeats
  std::size_t distinct_count = 0;  ///< number of distinct topologies seen
};

inline DualSequence dual_sequence(const FiniteTopSpace& s) {
  DualSequence seq;
  seq.topologies.push_back(s);
  for (;;) {
    FiniteTopSpace next = degroot_dual(seq.topologies.back());
    bool repeated = false;
    for (std::size_t i = 0; i < seq.topologies.size(); ++i)
      if (seq.topologies[i].same_space(next)) {
        seq.cycle_start = i;
        repeated = true;
        break;
      }
    seq.topologies.push_back(std::move(next));
    if (repeated) break;
  }
  seq.distinct_count = seq.topologies.size() - 1;
  if (seq.distinct_count > 4)
    throw Error("dual sequence produced more than four distinct topologies");
  return seq;
}

struct HomeoResult {
  bool homeomorphic = false;
  /// witness[i] = index in b of the image of point i of a (when homeomorphic)
  std::vector<std::size_t> witness;
};

namespace detail {

inline std::vector<std::size_t> point_profile(const FiniteTopSpace& s, std::size_t i) {
  std::size_t deg = 0;
  for (const auto& c : s.closed_sets())
    if (c.test(i)) ++deg;
  return {deg, s.closure(bits_of(s.size(), {i})).count(), s.min_open_neighborhood(i).count()};
}

inline bool homeo_backtrack(const FiniteTopSpace& a, const FiniteTopSpace& b,
                            std::vector<std::size_t>& map, std::vector<bool>& used,
                            const std::vector<std::vector<std::size_t>>& pa,
                            const std::vector<std::vector<std::size_t>>& pb, std::size_t i) {
  const std::size_t n = a.size();
  if (i == n) {
    std::vector<Bits> image;
    for (const auto& c : a.closed_sets()) {
      Bits m(n);
      for_each_bit(c, [&](std::size_t x) { m.set(map[x]); });
      image.push_back(std::move(m));
    }
    std::sort(image.begin(), image.end());
    return image == b.closed_sets();
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (used[j] || pa[i] != pb[j]) continue;
    map[i] = j;
    used[j] = true;
    if (homeo_backtrack(a, b, map, used, pa, pb, i + 1)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace detail

/// Exhaustive bijection search with lattice-cardinality and per-point
/// degree pruning.
inline HomeoResult is_homeomorphic(const FiniteTopSpace& a, const FiniteTopSpace& b) {
  if (a.size() > caps::homeo_points || b.size() > caps::homeo_points)
    throw SizeCapExceeded("homeomorphism search is capped at 8 points");
  HomeoResult r;
  if (a.size() != b.size() || a.closed_sets().size() != b.closed_sets().size()) return r;
  std::vector<std::vector<std::size_t>> pa, pb;
  for (std::size_t i = 0; i < a.size(); ++i) pa.push_back(detail::point_profile(a, i));
  for (std::size_t j = 0; j < b.size(); ++j) pb.push_back(detail::point_profile(b, j));
  {
    auto sa = pa, sb = pb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return r;
  }
  std::vector<std::size_t> map(a.size());
  std::vector<bool> used(a.size(), false);
  if (detail::homeo_backtrack(a, b, map, used, pa, pb, 0)) {
    r.homeomorphic = true;
    r.witness = std::move(map);
  }
  return r;
}

inline FiniteTopSpace discrete_space(std::vector<std::string> points) {
  std::vector<Bits> singletons;
  for (std::size_t i = 0; i < points.size(); ++i) singletons.push_back(bits_of(points.size(), {i}));
  return FiniteTopSpace::from_closed_subbase(std::move(points), std::move(singletons));
}

inline FiniteTopSpace indiscrete_space(std::vector<std::string> points) {
  return FiniteTopSpace::from_closed_subbase(std::move(points), {});
}

}  // namespace causaltopo
