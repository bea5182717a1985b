#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "causaltopo/bits.hpp"
#include "causaltopo/causal_site.hpp"
#include "causaltopo/errors.hpp"
#include "causaltopo/poset.hpp"

namespace causaltopo {

/// Integer spacetime coordinates, time first, c = 1.
using Event = std::vector<long long>;

/// All region machinery here works on event masks; 16 events is plenty for
/// desk-scale instances and keeps every set inside one word.
using EventMask = std::uint64_t;

namespace caps {
inline constexpr std::size_t minkowski_events = 16;
inline constexpr std::size_t diamond_pair_budget = 20'000'000;
inline std::size_t region_family_cap() { return std::size_t{1} << std::min<std::size_t>(default_carrier_cap(), from_poset_absolute); }
}  // namespace caps

/// Exact causal order: a <= b iff dt >= 0 and dt^2 >= sum dx_i^2. The null
/// boundary is included (causal J, not chronological I). Integer arithmetic
/// keeps null-cone membership exact.
inline bool causal_leq(const Event& a, const Event& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw DimensionMismatch("events must share a dimension of 1+1 or 3+1");
  const __int128 dt = static_cast<__int128>(b[0]) - a[0];
  if (dt < 0) return false;
  __int128 space = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    const __int128 d = static_cast<__int128>(b[i]) - a[i];
    space += d * d;
  }
  return dt * dt >= space;
}

inline std::string event_name(const Event& e) {
  std::string out = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(e[i]);
  }
  out += ")";
  return out;
}

/// A finite set of distinct integer events with its derived causal order.
class EventSet {
 public:
  static EventSet make(int dim, std::vector<Event> events) {
    if (dim != 2 && dim != 4) throw SchemaError("dim must be 2 (1+1) or 4 (3+1)");
    if (events.size() > caps::minkowski_events)
      throw CapExceeded("event sets are capped at 16 events");
    for (const auto& e : events)
      if (static_cast<int>(e.size()) != dim)
        throw DimensionMismatch("event arity does not match dim");
    std::sort(events.begin(), events.end());
    for (std::size_t i = 0; i + 1 < events.size(); ++i)
      if (events[i] == events[i + 1])
        throw DuplicateEvent("duplicate event " + event_name(events[i]));
    EventSet s;
    s.dim_ = dim;
    s.events_ = std::move(events);
    const std::size_t n = s.events_.size();
    s.future_.assign(n, 0);
    s.past_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (causal_leq(s.events_[i], s.events_[j])) {
          s.future_[i] |= EventMask{1} << j;
          s.past_[j] |= EventMask{1} << i;
        }
    return s;
  }

  int dim() const { return dim_; }
  std::size_t size() const { return events_.size(); }
  const std::vector<Event>& events() const { return events_; }
  const Event& event(std::size_t i) const { return events_[i]; }
  std::string name(std::size_t i) const { return event_name(events_[i]); }

  std::size_t index_of(const Event& e) const {
    const auto it = std::lower_bound(events_.begin(), events_.end(), e);
    if (it == events_.end() || *it != e) throw UnknownEvent("unknown event " + event_name(e));
    return static_cast<std::size_t>(it - events_.begin());
  }

  bool leq(std::size_t i, std::size_t j) const { return future_[i] >> j & 1u; }

  EventMask future(std::size_t i) const { return future_[i]; }
  EventMask past(std::size_t i) const { return past_[i]; }
  EventMask strict_future(std::size_t i) const { return future_[i] & ~(EventMask{1} << i); }
  EventMask strict_past(std::size_t i) const { return past_[i] & ~(EventMask{1} << i); }
  EventMask all_mask() const {
    return size() == 64 ? ~EventMask{0} : (EventMask{1} << size()) - 1;
  }

  std::vector<Event> events_of(EventMask m) const {
    std::vector<Event> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (m >> i & 1u) out.push_back(events_[i]);
    return out;
  }

  std::string region_name(EventMask m) const {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < size(); ++i)
      if (m >> i & 1u) names.push_back(name(i));
    return set_literal(names);
  }

 private:
  int dim_ = 2;
  std::vector<Event> events_;
  std::vector<EventMask> future_, past_;
};

inline std::vector<Event> j_plus(const EventSet& s, const Event& p) {
  return s.events_of(s.future(s.index_of(p)));
}

inline std::vector<Event> j_minus(const EventSet& s, const Event& p) {
  return s.events_of(s.past(s.index_of(p)));
}

/// F <> G = the common causal future of F intersected with the common causal
/// past of G, restricted to the event set.
inline EventMask diamond_eval(const EventSet& s, EventMask f_mask, EventMask g_mask) {
  EventMask acc = s.all_mask();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (f_mask >> i & 1u) acc &= s.future(i);
    if (g_mask >> i & 1u) acc &= s.past(i);
  }
  return acc;
}

struct Region {
  EventMask events = 0;
};

inline Region multi_diamond(const EventSet& s, const std::vector<Event>& F,
                            const std::vector<Event>& G) {
  if (F.empty() || G.empty()) throw EmptyGenerator("multi-diamond generators must be non-empty");
  EventMask fm = 0, gm = 0;
  for (const auto& p : F) fm |= EventMask{1} << s.index_of(p);
  for (const auto& q : G) gm |= EventMask{1} << s.index_of(q);
  return Region{diamond_eval(s, fm, gm)};
}

/// A < B iff every element of A strictly causally precedes every element of
/// B; vacuously true when either region is empty, which gives the bottom the
/// behavior the site axioms force on it.
inline bool region_prec(const EventSet& s, EventMask a, EventMask b) {
  EventMask allowed = s.all_mask();
  for (std::size_t i = 0; i < s.size(); ++i)
    if (a >> i & 1u) allowed &= s.strict_future(i);
  return (b & ~allowed) == 0;
}

struct RegionFamily {
  std::vector<EventMask> diamonds;  ///< D, deduplicated, in discovery order
  std::vector<std::pair<EventMask, EventMask>> generators;  ///< first (F,G) seen per diamond
  std::vector<EventMask> regions;   ///< P, including the empty region
  std::vector<std::vector<std::size_t>> components;  ///< canonical D-decomposition per region
  std::unordered_map<EventMask, std::size_t> region_index;
  std::unordered_map<EventMask, std::size_t> diamond_index;

  bool contains(EventMask m) const { return region_index.count(m) != 0; }
  std::size_t index(EventMask m) const { return region_index.at(m); }
};

namespace detail {

inline void enumerate_masks(std::size_t n, std::size_t max_pop, std::vector<EventMask>& out) {
  const EventMask limit = n == 64 ? ~EventMask{0} : (EventMask{1} << n) - 1;
  for (EventMask m = 1; m <= limit; ++m)
    if (static_cast<std::size_t>(__builtin_popcountll(m)) <= max_pop) out.push_back(m);
}

}  // namespace detail

/// D = all non-empty multi-diamonds with generator sizes within the caps;
/// P = all unions of at most maxUnion members of D, plus the empty region.
/// The produced P is verified closed under pairwise union and intersection
/// (the site construction needs both); too-small caps are a hard error.
inline RegionFamily build_region_family(const EventSet& s, std::size_t maxF, std::size_t maxG,
                                        std::size_t maxUnion) {
  if (maxF == 0 || maxG == 0 || maxUnion == 0)
    throw ValidationError("region-family caps must be positive");
  const std::size_t n = s.size();
  RegionFamily fam;

  std::vector<EventMask> f_masks, g_masks;
  detail::enumerate_masks(n, maxF, f_masks);
  detail::enumerate_masks(n, maxG, g_masks);
  if (f_masks.size() * g_masks.size() > caps::diamond_pair_budget)
    throw CapExceeded("diamond enumeration exceeds the work budget; lower maxF/maxG");
  for (EventMask fm : f_masks)
    for (EventMask gm : g_masks) {
      const EventMask d = diamond_eval(s, fm, gm);
      if (d == 0) continue;
      if (fam.diamond_index.emplace(d, fam.diamonds.size()).second) {
        fam.diamonds.push_back(d);
        fam.generators.emplace_back(fm, gm);
      }
    }

  const auto add_region = [&](EventMask m, std::vector<std::size_t> comps) {
    if (fam.region_index.emplace(m, fam.regions.size()).second) {
      fam.regions.push_back(m);
      fam.components.push_back(std::move(comps));
      if (fam.regions.size() > caps::region_family_cap())
        throw CapExceeded("region family exceeds the carrier cap");
      return true;
    }
    return false;
  };

  add_region(0, {});
  // Breadth-first over union counts so each distinct region keeps the
  // shortest (first found) decomposition.
  std::vector<std::size_t> frontier;
  for (std::size_t d = 0; d < fam.diamonds.size(); ++d)
    if (add_region(fam.diamonds[d], {d})) frontier.push_back(fam.regions.size() - 1);
  for (std::size_t level = 2; level <= maxUnion && !frontier.empty(); ++level) {
    std::vector<std::size_t> next;
    for (std::size_t ri : frontier) {
      const EventMask base = fam.regions[ri];
      const std::size_t last = fam.components[ri].back();
      for (std::size_t d = last + 1; d < fam.diamonds.size(); ++d) {
        const EventMask u = base | fam.diamonds[d];
        auto comps = fam.components[ri];
        comps.push_back(d);
        if (add_region(u, std::move(comps))) next.push_back(fam.regions.size() - 1);
      }
    }
    frontier = std::move(next);
  }

  // Closure checks: the carrier must support union joins and the paper's
  // distribution of intersections over diamond components.
  for (std::size_t i = 0; i < fam.regions.size(); ++i)
    for (std::size_t j = i; j < fam.regions.size(); ++j) {
      if (!fam.contains(fam.regions[i] | fam.regions[j]))
        throw CapExceeded("region family is not union-closed; raise maxUnion (or maxF/maxG)");
      if (!fam.contains(fam.regions[i] & fam.regions[j]))
        throw CapExceeded("region family is not intersection-closed; raise the caps");
    }
  return fam;
}

/// The region family as a causal site: inclusion is the subset order with
/// bottom the empty region and joins given by unions; the causal relation is
/// region_prec.
struct MinkowskiSite {
  EventSet events;
  RegionFamily family;
  CausalSite site;
  std::vector<EventMask> mask_of_carrier;             // carrier index -> event mask
  std::unordered_map<EventMask, std::size_t> carrier_of_mask;

  std::size_t carrier_index(EventMask m) const { return carrier_of_mask.at(m); }
};

inline MinkowskiSite build_causal_site(const EventSet& s, std::size_t maxF, std::size_t maxG,
                                       std::size_t maxUnion) {
  RegionFamily fam = build_region_family(s, maxF, maxG, maxUnion);
  const std::size_t N = fam.regions.size();

  std::vector<std::pair<std::string, EventMask>> named;
  named.reserve(N);
  for (EventMask m : fam.regions) named.emplace_back(s.region_name(m), m);
  std::sort(named.begin(), named.end());
  std::vector<std::string> names(N);
  std::vector<EventMask> mask_of(N);
  for (std::size_t i = 0; i < N; ++i) {
    names[i] = named[i].first;
    mask_of[i] = named[i].second;
  }

  std::vector<Bits> up(N, Bits(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if ((mask_of[i] & ~mask_of[j]) == 0) up[i].set(j);
  Poset inclusion = Poset::from_relation(names, std::move(up), /*validate=*/false);

  std::vector<Bits> prec(N, Bits(N));
  for (std::size_t i = 0; i < N; ++i) {
    EventMask allowed = s.all_mask();
    for (std::size_t e = 0; e < s.size(); ++e)
      if (mask_of[i] >> e & 1u) allowed &= s.strict_future(e);
    for (std::size_t j = 0; j < N; ++j)
      if ((mask_of[j] & ~allowed) == 0) prec[i].set(j);
  }

  MinkowskiSite out{s, std::move(fam), CausalSite::make(std::move(inclusion), std::move(prec)), {}, {}};
  out.mask_of_carrier = std::move(mask_of);
  for (std::size_t i = 0; i < N; ++i) out.carrier_of_mask.emplace(out.mask_of_carrier[i], i);
  return out;
}

/// O_A: events strictly causally below every event of the region.
inline EventMask o_set(const EventSet& s, EventMask region) {
  EventMask acc = s.all_mask();
  for (std::size_t i = 0; i < s.size(); ++i)
    if (region >> i & 1u) acc &= s.strict_past(i);
  return acc;
}

/// M_A: the causally maximal events of O_A.
inline EventMask m_set(const EventSet& s, EventMask region) {
  const EventMask o = o_set(s, region);
  EventMask out = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if ((o >> i & 1u) && (s.strict_future(i) & o) == 0) out |= EventMask{1} << i;
  return out;
}

/// A_bottom = union of the causal pasts of M_A.
inline EventMask a_bottom(const EventSet& s, EventMask region) {
  const EventMask m = m_set(s, region);
  EventMask acc = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (m >> i & 1u) acc |= s.past(i);
  return acc;
}

/// The cutting computed by the region formula B_A = B n A_bottom for single
/// diamonds, extended over a union A = U A_i by B_A = n_i B_{A_i}.
inline EventMask section6_cutting(const MinkowskiSite& ms, EventMask b, EventMask a) {
  const auto it = ms.family.region_index.find(a);
  if (it == ms.family.region_index.end()) throw UnknownElement("region is not in the family");
  const auto& comps = ms.family.components[it->second];
  if (comps.empty()) return b & a_bottom(ms.events, 0);
  EventMask acc = ~EventMask{0};
  for (std::size_t d : comps) acc &= b & a_bottom(ms.events, ms.family.diamonds[d]);
  return acc;
}

struct PointCorrespondence {
  std::vector<std::size_t> event_to_family;  ///< f: event index -> family index
  std::vector<std::size_t> family_to_event;  ///< g: family index -> event index
  FiniteTopSpace weakly;                     ///< the weakly causal topology
  HomeoResult discrete_homeo;                ///< witness against the discrete space
};

/// f(p) = all regions containing p; g(Q) = the unique common event. Requires
/// the family to separate events (every singleton is a diamond).
inline PointCorrespondence point_correspondence(const MinkowskiSite& ms) {
  const EventSet& s = ms.events;
  for (std::size_t p = 0; p < s.size(); ++p)
    if (!ms.family.diamond_index.count(EventMask{1} << p))
      throw SeparationFailure("caps too small: singleton region missing for event " + s.name(p));

  const auto families = maximal_centered(ms.site);
  PointCorrespondence pc;
  pc.event_to_family.assign(s.size(), SIZE_MAX);
  pc.family_to_event.assign(families.size(), SIZE_MAX);
  if (families.size() != s.size())
    throw SeparationFailure("family count does not match event count");

  for (std::size_t p = 0; p < s.size(); ++p) {
    Bits fp(ms.site.size());
    for (std::size_t i = 0; i < ms.site.size(); ++i)
      if (ms.mask_of_carrier[i] >> p & 1u) fp.set(i);
    std::size_t found = SIZE_MAX;
    for (std::size_t k = 0; k < families.size(); ++k)
      if (families[k].members == fp) {
        found = k;
        break;
      }
    if (found == SIZE_MAX)
      throw SeparationFailure("f(" + s.name(p) + ") is not a maximal centered family");
    pc.event_to_family[p] = found;
  }
  for (std::size_t k = 0; k < families.size(); ++k) {
    EventMask common = s.all_mask();
    for_each_bit(families[k].members, [&](std::size_t i) { common &= ms.mask_of_carrier[i]; });
    if (__builtin_popcountll(common) != 1)
      throw SeparationFailure("family intersection is not a single event");
    pc.family_to_event[k] = static_cast<std::size_t>(__builtin_ctzll(common));
  }
  for (std::size_t p = 0; p < s.size(); ++p)
    if (pc.family_to_event[pc.event_to_family[p]] != p)
      throw SeparationFailure("f and g are not mutually inverse");

  pc.weakly = weakly_causal_topology(ms.site);
  std::vector<std::string> names;
  for (std::size_t p = 0; p < s.size(); ++p) names.push_back(s.name(p));
  pc.discrete_homeo = is_homeomorphic(pc.weakly, discrete_space(names));
  return pc;
}

}  // namespace causaltopo
