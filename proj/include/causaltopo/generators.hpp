#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "causaltopo/bits.hpp"
#include "causaltopo/fintop.hpp"
#include "causaltopo/framework.hpp"
#include "causaltopo/minkowski.hpp"
#include "causaltopo/poset.hpp"

namespace causaltopo {

// ---------------------------------------------------------------------------
// Exhaustive enumeration. These back the "for every ..." suites; they scan
// candidate relation masks directly, which is feasible to 5 elements.
// ---------------------------------------------------------------------------

namespace detail {

/// Off-diagonal pair list for an n-element carrier.
inline std::vector<std::pair<std::size_t, std::size_t>> ordered_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out.emplace_back(i, j);
  return out;
}

}  // namespace detail

/// Every partial order on the given labeled carrier (all 219 on four
/// elements, all 4231 on five).
inline std::vector<Poset> all_labeled_posets(const std::vector<std::string>& names) {
  const std::size_t n = names.size();
  const auto pairs = detail::ordered_pairs(n);
  std::vector<Poset> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<std::uint32_t> row(n, 0);
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if (mask >> p & 1u) row[pairs[p].first] |= std::uint32_t{1} << pairs[p].second;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (row[i] >> i & 1u) ok = false;
      for (std::size_t j = 0; j < n && ok; ++j)
        if (row[i] >> j & 1u) {
          if (row[j] >> i & 1u) ok = false;              // antisymmetry
          else if ((row[j] & ~row[i]) != 0) ok = false;  // transitivity
        }
    }
    if (!ok) continue;
    std::vector<Bits> rows(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i) {
      rows[i].set(i);
      for (std::size_t j = 0; j < n; ++j)
        if (row[i] >> j & 1u) rows[i].set(j);
    }
    out.push_back(Poset::from_relation(names, std::move(rows), /*validate=*/false));
  }
  return out;
}

/// Every preorder on the carrier, as full relation rows (diagonal included).
inline std::vector<std::vector<std::uint32_t>> all_preorders(std::size_t n) {
  const auto pairs = detail::ordered_pairs(n);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<std::uint32_t> row(n, 0);
    for (std::size_t i = 0; i < n; ++i) row[i] |= std::uint32_t{1} << i;
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if (mask >> p & 1u) row[pairs[p].first] |= std::uint32_t{1} << pairs[p].second;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        if ((row[i] >> j & 1u) && (row[j] & ~row[i]) != 0) ok = false;
    if (ok) out.push_back(std::move(row));
  }
  return out;
}

/// The finite space associated with a preorder (rows[i] = {j : i <= j},
/// i <= j meaning i lies in the closure of {j}): closed sets are exactly the
/// down-sets. This is the Alexandrov correspondence, a bijection between
/// preorders and topologies on the carrier.
inline FiniteTopSpace space_from_preorder(const std::vector<std::string>& names,
                                          const std::vector<std::uint32_t>& rows) {
  const std::size_t n = names.size();
  std::vector<std::uint32_t> below(n, 0);  // below[i] = {k : k <= i}
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (rows[k] >> i & 1u) below[i] |= std::uint32_t{1} << k;
  std::vector<Bits> closed;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
    bool down_closed = true;
    for (std::size_t i = 0; i < n && down_closed; ++i)
      if ((m >> i & 1u) && (below[i] & ~m) != 0) down_closed = false;
    if (down_closed) closed.push_back(bits_from_mask(n, m));
  }
  // Down-set families are lattices, so no validation pass is needed.
  return FiniteTopSpace::from_closed_sets(names, std::move(closed), /*validate=*/false);
}

/// Every topology on the given labeled carrier (355 on four points, 6942 on
/// five).
inline std::vector<FiniteTopSpace> all_topologies(const std::vector<std::string>& names) {
  std::vector<FiniteTopSpace> out;
  for (const auto& rows : all_preorders(names.size()))
    out.push_back(space_from_preorder(names, rows));
  return out;
}

/// Visits every framework on the given places (2^(2^n) framologies).
template <typename Fn>
void for_each_framework(const std::vector<std::string>& places, Fn&& fn) {
  const std::size_t n = places.size();
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << subsets); ++pick) {
    std::vector<Bits> framology;
    for (std::uint64_t k = 0; k < subsets; ++k)
      if (pick >> k & 1u) framology.push_back(bits_from_mask(n, k));
    fn(Framework::make(places, std::move(framology)));
  }
}

inline std::vector<std::string> default_names(std::size_t n, const std::string& prefix = "e") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(padded_label(prefix.c_str(), i, n ? n - 1 : 0));
  return out;
}

// ---------------------------------------------------------------------------
// Seeded random structures.
// ---------------------------------------------------------------------------

/// Random poset: random edges over a shuffled linear extension, then closure.
inline Poset random_poset(std::mt19937_64& rng, std::size_t n, double edge_prob = 0.35) {
  const auto names = default_names(n);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution flip(edge_prob);
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (flip(rng)) covers.emplace_back(names[perm[i]], names[perm[j]]);
  return Poset::from_cover(names, covers);
}

/// Random union-closed mask family with the empty set: a poset under subset
/// order with a bottom and binary joins (joins are unions).
inline Poset random_join_semilattice(std::mt19937_64& rng, std::size_t max_size,
                                     std::size_t universe = 6) {
  for (;;) {
    std::uniform_int_distribution<std::uint32_t> pick(1, (std::uint32_t{1} << universe) - 1);
    std::uniform_int_distribution<std::size_t> count(1, universe);
    std::set<std::uint32_t> family{0};
    const std::size_t seeds = count(rng);
    for (std::size_t i = 0; i < seeds; ++i) family.insert(pick(rng));
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::uint32_t> fresh;
      for (auto a : family)
        for (auto b : family)
          if (!family.count(a | b)) fresh.push_back(a | b);
      for (auto m : fresh) grew |= family.insert(m).second;
    }
    if (family.size() > max_size) continue;
    std::vector<std::string> names;
    std::vector<std::uint32_t> masks(family.begin(), family.end());
    for (auto m : masks) names.push_back(padded_label("s", m, std::uint32_t{1} << universe));
    std::vector<Bits> rows(masks.size(), Bits(masks.size()));
    for (std::size_t i = 0; i < masks.size(); ++i)
      for (std::size_t j = 0; j < masks.size(); ++j)
        if ((masks[i] & ~masks[j]) == 0) rows[i].set(j);
    return Poset::from_relation(names, std::move(rows), /*validate=*/false);
  }
}

inline Framework random_framework(std::mt19937_64& rng, std::size_t places,
                                  std::size_t max_members = 6) {
  const auto names = default_names(places, "p");
  std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << places) - 1);
  std::uniform_int_distribution<std::size_t> count(0, max_members);
  std::vector<Bits> framology;
  const std::size_t members = count(rng);
  for (std::size_t i = 0; i < members; ++i) framology.push_back(bits_from_mask(places, pick(rng)));
  return Framework::make(names, std::move(framology));
}

/// Random distinct integer events. Time coordinates are skewed positive so
/// random sets reliably contain causal pairs.
inline EventSet random_event_set(std::mt19937_64& rng, int dim, std::size_t n,
                                 long long range = 3) {
  std::uniform_int_distribution<long long> time(0, 2 * range);
  std::uniform_int_distribution<long long> spatial(-range, range);
  std::set<Event> chosen;
  std::size_t guard = 0;
  while (chosen.size() < n && guard++ < 10000) {
    Event e(dim);
    e[0] = time(rng);
    for (int i = 1; i < dim; ++i) e[i] = spatial(rng);
    chosen.insert(std::move(e));
  }
  return EventSet::make(dim, std::vector<Event>(chosen.begin(), chosen.end()));
}

}  // namespace causaltopo
