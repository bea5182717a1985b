#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "causaltopo/bits.hpp"
#include "causaltopo/errors.hpp"
#include "causaltopo/fintop.hpp"

namespace causaltopo {

namespace caps {
inline constexpr std::size_t framework_iso_places = 8;
inline constexpr std::size_t model_places = 8;
inline constexpr std::size_t model_points = 10;
/// Work budget for the topological-model search; beyond this the search
/// errors out instead of silently timing out.
inline constexpr std::size_t model_work_budget = 20'000'000;
}  // namespace caps

/// A set of places with a distinguished family of place subsets (the
/// framology). Members are deduplicated and kept canonically sorted.
class Framework {
 public:
  Framework() = default;

  static Framework make(std::vector<std::string> places, std::vector<Bits> framology) {
    Framework f;
    std::sort(places.begin(), places.end());
    for (std::size_t i = 0; i + 1 < places.size(); ++i)
      if (places[i] == places[i + 1]) throw DuplicateElement("duplicate place '" + places[i] + "'");
    f.places_ = std::move(places);
    for (const auto& m : framology)
      if (m.size() != f.places_.size()) throw SchemaError("framology member has wrong carrier size");
    std::sort(framology.begin(), framology.end());
    framology.erase(std::unique(framology.begin(), framology.end()), framology.end());
    f.framology_ = std::move(framology);
    return f;
  }

  static Framework from_names(std::vector<std::string> places,
                              const std::vector<std::vector<std::string>>& framology) {
    std::vector<std::string> sorted = places;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Bits> members;
    for (const auto& member : framology) {
      Bits b(sorted.size());
      for (const auto& id : member) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), id);
        if (it == sorted.end() || *it != id)
          throw OutOfCarrier("framology member mentions unknown place '" + id + "'");
        b.set(static_cast<std::size_t>(it - sorted.begin()));
      }
      members.push_back(std::move(b));
    }
    return make(std::move(places), std::move(members));
  }

  std::size_t places_count() const { return places_.size(); }
  const std::vector<std::string>& places() const { return places_; }
  const std::string& place(std::size_t i) const { return places_[i]; }

  std::size_t index_of(const std::string& id) const {
    const auto it = std::lower_bound(places_.begin(), places_.end(), id);
    if (it == places_.end() || *it != id) throw UnknownElement("unknown place '" + id + "'");
    return static_cast<std::size_t>(it - places_.begin());
  }

  const std::vector<Bits>& framology() const { return framology_; }

  /// The abstract point of x: indices of framology members containing x.
  Bits abstract_point(std::size_t x) const {
    Bits b(framology_.size());
    for (std::size_t k = 0; k < framology_.size(); ++k)
      if (framology_[k].test(x)) b.set(k);
    return b;
  }

  std::vector<std::string> names_of(const Bits& member) const {
    std::vector<std::string> out;
    for_each_bit(member, [&](std::size_t i) { out.push_back(place(i)); });
    return out;
  }

  std::string member_literal(std::size_t k) const { return set_literal(names_of(framology_[k])); }

  bool operator==(const Framework& o) const {
    return places_ == o.places_ && framology_ == o.framology_;
  }

 private:
  std::vector<std::string> places_;
  std::vector<Bits> framology_;
};

/// Dual framework: places become the framology members, the new framology is
/// the family of abstract points. Dual places are named by set literals.
inline Framework dual(const Framework& f) {
  std::vector<std::string> dual_places;
  for (std::size_t k = 0; k < f.framology().size(); ++k) dual_places.push_back(f.member_literal(k));
  // Names are canonical for distinct members, so sorting them permutes the
  // member indexing; rebuild abstract points against the sorted order.
  std::vector<std::size_t> order(dual_places.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return dual_places[a] < dual_places[b]; });
  std::vector<std::size_t> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::vector<Bits> framology;
  for (std::size_t x = 0; x < f.places_count(); ++x) {
    Bits pt = f.abstract_point(x);
    Bits remapped(pt.size());
    for_each_bit(pt, [&](std::size_t k) { remapped.set(pos[k]); });
    framology.push_back(std::move(remapped));
  }
  std::sort(dual_places.begin(), dual_places.end());
  return Framework::make(std::move(dual_places), std::move(framology));
}

inline Framework double_dual(const Framework& f) { return dual(dual(f)); }

inline bool is_T0(const Framework& f) {
  for (std::size_t x = 0; x < f.places_count(); ++x)
    for (std::size_t y = x + 1; y < f.places_count(); ++y)
      if (f.abstract_point(x) == f.abstract_point(y)) return false;
  return true;
}

struct QuotientResult {
  Framework quotient;
  /// class_of[place index] = quotient place name
  std::vector<std::string> class_of;
};

/// Identifies places with equal abstract points; the framology is pushed
/// forward along the quotient map (with set semantics, so images may merge).
inline QuotientResult t0_quotient(const Framework& f) {
  const std::size_t n = f.places_count();
  std::vector<Bits> pts;
  for (std::size_t x = 0; x < n; ++x) pts.push_back(f.abstract_point(x));
  std::vector<std::size_t> cls(n);
  std::vector<Bits> class_members;  // members of each class, by first-seen order
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t found = class_members.size();
    for (std::size_t c = 0; c < class_members.size(); ++c)
      if (pts[class_members[c].find_first()] == pts[x]) {
        found = c;
        break;
      }
    if (found == class_members.size()) class_members.push_back(Bits(n));
    class_members[found].set(x);
    cls[x] = found;
  }
  std::vector<std::string> class_names;
  for (const auto& cm : class_members) class_names.push_back(set_literal(f.names_of(cm)));
  // Sort classes by name for the canonical carrier, then remap.
  std::vector<std::size_t> order(class_names.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return class_names[a] < class_names[b]; });
  std::vector<std::size_t> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::vector<Bits> framology;
  for (const auto& U : f.framology()) {
    Bits img(class_names.size());
    for_each_bit(U, [&](std::size_t x) { img.set(pos[cls[x]]); });
    framology.push_back(std::move(img));
  }
  std::vector<std::string> sorted_names = class_names;
  std::sort(sorted_names.begin(), sorted_names.end());
  QuotientResult r{Framework::make(std::move(sorted_names), std::move(framology)), {}};
  for (std::size_t x = 0; x < n; ++x) r.class_of.push_back(class_names[cls[x]]);
  return r;
}

/// Checks that `mapping` (source place index -> target place index) is a
/// framework isomorphism: a place bijection carrying framology onto framology.
inline bool verify_isomorphism(const Framework& f, const Framework& g,
                               const std::vector<std::size_t>& mapping) {
  if (f.places_count() != g.places_count() || mapping.size() != f.places_count()) return false;
  if (f.framology().size() != g.framology().size()) return false;
  std::vector<bool> used(g.places_count(), false);
  for (std::size_t x = 0; x < mapping.size(); ++x) {
    if (mapping[x] >= g.places_count() || used[mapping[x]]) return false;
    used[mapping[x]] = true;
  }
  std::vector<Bits> image;
  for (const auto& U : f.framology()) {
    Bits img(g.places_count());
    for_each_bit(U, [&](std::size_t x) { img.set(mapping[x]); });
    image.push_back(std::move(img));
  }
  std::sort(image.begin(), image.end());
  return image == g.framology();
}

struct IsoResult {
  bool isomorphic = false;
  std::vector<std::size_t> witness;
};

/// The canonical map x -> pi(x) from a T0 framework to its double dual, as a
/// place map usable with verify_isomorphism. Dual places are named by set
/// literals, so pi(x) can be rendered as a double-dual place name directly.
inline std::vector<std::size_t> canonical_double_dual_map(const Framework& f,
                                                          const Framework& dd) {
  std::vector<std::size_t> map;
  for (std::size_t x = 0; x < f.places_count(); ++x) {
    const Bits pt = f.abstract_point(x);
    std::vector<std::string> names;
    for_each_bit(pt, [&](std::size_t k) { names.push_back(f.member_literal(k)); });
    std::sort(names.begin(), names.end());
    map.push_back(dd.index_of(set_literal(names)));
  }
  return map;
}

namespace detail {

inline std::size_t place_degree(const Framework& f, std::size_t x) {
  std::size_t d = 0;
  for (const auto& U : f.framology())
    if (U.test(x)) ++d;
  return d;
}

inline bool iso_backtrack(const Framework& f, const Framework& g, std::vector<std::size_t>& map,
                          std::vector<bool>& used, const std::vector<std::size_t>& df,
                          const std::vector<std::size_t>& dg, std::size_t x) {
  if (x == f.places_count()) return verify_isomorphism(f, g, map);
  for (std::size_t y = 0; y < g.places_count(); ++y) {
    if (used[y] || df[x] != dg[y]) continue;
    map[x] = y;
    used[y] = true;
    if (iso_backtrack(f, g, map, used, df, dg, x + 1)) return true;
    used[y] = false;
  }
  return false;
}

}  // namespace detail

/// Exhaustive bijection search; witness-producing, capped at 8 places.
inline IsoResult are_isomorphic(const Framework& f, const Framework& g) {
  if (f.places_count() > caps::framework_iso_places ||
      g.places_count() > caps::framework_iso_places)
    throw SizeCapExceeded("framework isomorphism search is capped at 8 places");
  IsoResult r;
  if (f.places_count() != g.places_count() || f.framology().size() != g.framology().size())
    return r;
  {
    std::vector<std::size_t> sf, sg;
    for (const auto& U : f.framology()) sf.push_back(U.count());
    for (const auto& U : g.framology()) sg.push_back(U.count());
    std::sort(sf.begin(), sf.end());
    std::sort(sg.begin(), sg.end());
    if (sf != sg) return r;
  }
  std::vector<std::size_t> df, dg;
  for (std::size_t x = 0; x < f.places_count(); ++x) df.push_back(detail::place_degree(f, x));
  for (std::size_t y = 0; y < g.places_count(); ++y) dg.push_back(detail::place_degree(g, y));
  {
    auto a = df, b = dg;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return r;
  }
  std::vector<std::size_t> map(f.places_count());
  std::vector<bool> used(f.places_count(), false);
  if (detail::iso_backtrack(f, g, map, used, df, dg, 0)) {
    r.isomorphic = true;
    r.witness = std::move(map);
  }
  return r;
}

/// Place map between frameworks; the image of every framology member of the
/// source must land in the target framology.
class FrameworkMap {
 public:
  static FrameworkMap make(Framework source, Framework target, std::vector<std::size_t> assignment) {
    if (assignment.size() != source.places_count())
      throw SchemaError("assignment size does not match source places");
    for (std::size_t y : assignment)
      if (y >= target.places_count()) throw UnknownElement("assignment leaves the target carrier");
    for (const auto& U : source.framology()) {
      Bits img(target.places_count());
      for_each_bit(U, [&](std::size_t x) { img.set(assignment[x]); });
      if (!std::binary_search(target.framology().begin(), target.framology().end(), img))
        throw ValidationError("image of a framology member is not in the target framology");
    }
    FrameworkMap m;
    m.source_ = std::move(source);
    m.target_ = std::move(target);
    m.assignment_ = std::move(assignment);
    return m;
  }

  const Framework& source() const { return source_; }
  const Framework& target() const { return target_; }
  const std::vector<std::size_t>& assignment() const { return assignment_; }

  static FrameworkMap compose(const FrameworkMap& g, const FrameworkMap& f) {
    if (!(f.target_ == g.source_)) throw ValidationError("maps are not composable");
    std::vector<std::size_t> a;
    for (std::size_t x = 0; x < f.assignment_.size(); ++x)
      a.push_back(g.assignment_[f.assignment_[x]]);
    return make(f.source_, g.target_, std::move(a));
  }

 private:
  Framework source_, target_;
  std::vector<std::size_t> assignment_;
};

enum class ModelMode { open, closed };

namespace detail {

struct ModelSearch {
  const Framework& fw;
  const std::vector<Bits>& lattice;  // opens or closeds of the space
  std::size_t n_points;
  std::size_t budget = caps::model_work_budget;

  // realizer[k] = point realizing framology member k; SIZE_MAX = unassigned
  std::vector<std::size_t> realizer;
  std::vector<bool> point_used;

  bool spend(std::size_t units) {
    if (units >= budget) throw SizeCapExceeded("topological-model search exceeded its work budget");
    budget -= units;
    return true;
  }

  /// In/Out constraints for one place under the current partial realizers.
  void place_masks(std::size_t p, Bits& in, Bits& out) const {
    in = Bits(n_points);
    out = Bits(n_points);
    const auto& fam = fw.framology();
    for (std::size_t k = 0; k < fam.size(); ++k) {
      if (realizer[k] == SIZE_MAX) continue;
      if (fam[k].test(p))
        in.set(realizer[k]);
      else
        out.set(realizer[k]);
    }
  }

  bool injection_exists() {
    // Distinct lattice sets per place, each containing the In-points and
    // avoiding the Out-points of that place.
    const std::size_t m = fw.places_count();
    std::vector<std::vector<std::size_t>> candidates(m);
    for (std::size_t p = 0; p < m; ++p) {
      Bits in, out;
      place_masks(p, in, out);
      for (std::size_t s = 0; s < lattice.size(); ++s) {
        spend(1);
        if (in.is_subset_of(lattice[s]) && (lattice[s] & out).none())
          candidates[p].push_back(s);
      }
      if (candidates[p].empty()) return false;
    }
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return candidates[a].size() < candidates[b].size();
    });
    std::vector<bool> taken(lattice.size(), false);
    return match(order, candidates, taken, 0);
  }

  bool match(const std::vector<std::size_t>& order,
             const std::vector<std::vector<std::size_t>>& candidates, std::vector<bool>& taken,
             std::size_t i) {
    if (i == order.size()) return true;
    for (std::size_t s : candidates[order[i]]) {
      spend(1);
      if (taken[s]) continue;
      taken[s] = true;
      if (match(order, candidates, taken, i + 1)) return true;
      taken[s] = false;
    }
    return false;
  }

  bool assign_realizers(std::size_t k) {
    const auto& fam = fw.framology();
    if (k == fam.size()) return injection_exists();
    for (std::size_t x = 0; x < n_points; ++x) {
      spend(1);
      if (point_used[x]) continue;
      realizer[k] = x;
      point_used[x] = true;
      bool feasible = true;
      // Early prune: some place may already be unseparable.
      for (std::size_t p = 0; p < fw.places_count() && feasible; ++p) {
        Bits in, out;
        place_masks(p, in, out);
        if ((in & out).any()) {
          feasible = false;
          break;
        }
        bool any = false;
        for (const auto& s : lattice) {
          spend(1);
          if (in.is_subset_of(s) && (s & out).none()) {
            any = true;
            break;
          }
        }
        feasible = any;
      }
      if (feasible && assign_realizers(k + 1)) return true;
      point_used[x] = false;
      realizer[k] = SIZE_MAX;
    }
    return false;
  }
};

}  // namespace detail

/// Does the framework embed into the space's open (closed) lattice with the
/// framology realized by abstract points of some subset of the space?
/// The search iterates over realizer points for each framology member, then
/// over injections of places into the lattice.
inline bool is_topological_model(const Framework& fw, const FiniteTopSpace& space, ModelMode mode) {
  if (fw.places_count() > caps::model_places)
    throw SizeCapExceeded("topological-model search is capped at 8 places");
  if (space.size() > caps::model_points)
    throw SizeCapExceeded("topological-model search is capped at 10 points");
  if (fw.framology().size() > space.size()) return false;  // realizers must be distinct
  const std::vector<Bits> lattice =
      mode == ModelMode::open ? space.open_sets() : space.closed_sets();
  if (fw.places_count() > lattice.size()) return false;
  detail::ModelSearch search{fw, lattice, space.size(), caps::model_work_budget, {}, {}};
  search.realizer.assign(fw.framology().size(), SIZE_MAX);
  search.point_used.assign(space.size(), false);
  return search.assign_realizers(0);
}

}  // namespace causaltopo
