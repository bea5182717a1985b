#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "causaltopo/bits.hpp"
#include "causaltopo/errors.hpp"
#include "causaltopo/fintop.hpp"
#include "causaltopo/framework.hpp"

namespace causaltopo {

namespace caps {
/// sigma sweeps all 2^P place subsets.
inline constexpr std::size_t sigma_places = 16;
inline constexpr std::size_t ultra_filter_points = 12;
inline constexpr std::size_t wallman_points = 12;
}  // namespace caps

/// Induced subframework: places K, framology restricted to K.
inline Framework restrict_framework(const Framework& f, const std::vector<std::string>& K) {
  Bits keep(f.places_count());
  for (const auto& id : K) {
    if (!std::binary_search(f.places().begin(), f.places().end(), id))
      throw OutOfCarrier("restriction mentions unknown place '" + id + "'");
    keep.set(f.index_of(id));
  }
  // Indices of kept places in the original carrier, ascending; the restricted
  // carrier keeps the same relative order.
  const auto kept = bit_indices(keep);
  std::vector<std::string> places;
  for (std::size_t i : kept) places.push_back(f.place(i));
  std::vector<Bits> framology;
  for (const auto& U : f.framology()) {
    Bits m(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k)
      if (U.test(kept[k])) m.set(k);
    framology.push_back(std::move(m));
  }
  return Framework::make(std::move(places), std::move(framology));
}

/// sigma = all W with W n K in pi_K for every K. The sweep visits every W;
/// the restriction at K = P already pins W to a framology member, and for
/// W in pi the member W itself witnesses W n K in pi_K at every smaller K,
/// so no further K needs scanning.
///
/// On a finite carrier sigma can therefore never outgrow pi; the completion
/// only becomes strictly larger on infinite carriers, which this engine does
/// not model. The full-powerset framology (sigma = 2^P, mu = {P}) is the
/// finite stand-in for that regime and is what the suites exercise.
inline std::vector<Bits> sigma(const Framework& f) {
  const std::size_t n = f.places_count();
  if (n > caps::sigma_places) throw CapExceeded("sigma enumerates 2^P; capped at 16 places");
  std::vector<Bits> out;
  const auto& pi = f.framology();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Bits w = bits_from_mask(n, mask);
    if (std::binary_search(pi.begin(), pi.end(), w)) out.push_back(std::move(w));
  }
  return out;
}

namespace detail {

inline std::vector<Bits> maximal_sets(const std::vector<Bits>& family) {
  std::vector<Bits> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < family.size() && maximal; ++j)
      if (i != j && family[i].is_subset_of(family[j]) && family[i] != family[j]) maximal = false;
    if (maximal) out.push_back(family[i]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// mu = the maximal elements of sigma.
inline std::vector<Bits> mu(const Framework& f) { return detail::maximal_sets(sigma(f)); }

/// A framework together with its completion sigma and the maximal layer mu.
struct ApproximationState {
  Framework base;
  std::vector<Bits> sigma;
  std::vector<Bits> mu;
};

inline ApproximationState approximate(const Framework& f) {
  ApproximationState st{f, causaltopo::sigma(f), {}};
  st.mu = detail::maximal_sets(st.sigma);
  return st;
}

/// The dual framework of (X, closed sets): place k stands for the k-th
/// closed set in the space's canonical order (padded labels keep the place
/// indexing aligned with closed-set indices); framology is {C(x) : x in X}.
inline Framework closed_set_framework(const FiniteTopSpace& space) {
  const auto& closed = space.closed_sets();
  std::vector<std::string> places;
  for (std::size_t k = 0; k < closed.size(); ++k)
    places.push_back(padded_label("C", k, closed.empty() ? 0 : closed.size() - 1));
  std::vector<Bits> framology;
  for (std::size_t x = 0; x < space.size(); ++x) {
    Bits cx(closed.size());
    for (std::size_t k = 0; k < closed.size(); ++k)
      if (closed[k].test(x)) cx.set(k);
    framology.push_back(std::move(cx));
  }
  return Framework::make(std::move(places), std::move(framology));
}

/// All maximal families of closed sets with the finite intersection
/// property. On a finite space every filter is contained in some fixed
/// family C(x), so the maximal FIP families are the maximal C(x).
inline std::vector<Bits> ultra_closed_filters(const FiniteTopSpace& space) {
  if (space.size() > caps::ultra_filter_points)
    throw CapExceeded("ultra-closed-filter enumeration is capped at 12 points");
  const auto& closed = space.closed_sets();
  std::vector<Bits> cx;
  for (std::size_t x = 0; x < space.size(); ++x) {
    Bits fam(closed.size());
    for (std::size_t k = 0; k < closed.size(); ++k)
      if (closed[k].test(x)) fam.set(k);
    cx.push_back(std::move(fam));
  }
  return detail::maximal_sets(cx);
}

struct WallmanResult {
  FiniteTopSpace space;                  ///< the compactification
  std::vector<std::size_t> embedding;    ///< point x -> index into mu_members
  std::vector<Bits> mu_members;          ///< mu, over closed-set indices (canonical closed order)
  Framework dual_base;                   ///< the framework (closed sets, {C(x)})
};

/// Wallman compactification of a finite T1 space: the dual of (P, mu) for
/// the closed-set framework. mu is computed as the maximal framology
/// members: on a finite carrier the full-carrier restriction already forces
/// sigma = pi, so no 2^P sweep is needed (or possible at 2^X places).
inline WallmanResult wallman_space(const FiniteTopSpace& space) {
  if (!is_T1(space)) throw NotT1("wallman_space requires a T1 space");
  if (space.size() > caps::wallman_points)
    throw CapExceeded("wallman_space is capped at 12 points");
  const auto& closed = space.closed_sets();

  // mu over closed-set indices in the canonical (sorted bitset) order.
  std::vector<Bits> cx;
  for (std::size_t x = 0; x < space.size(); ++x) {
    Bits fam(closed.size());
    for (std::size_t k = 0; k < closed.size(); ++k)
      if (closed[k].test(x)) fam.set(k);
    cx.push_back(fam);
  }
  std::vector<Bits> mu_members = detail::maximal_sets(cx);

  std::vector<std::string> points;
  for (std::size_t k = 0; k < mu_members.size(); ++k)
    points.push_back(padded_label("W", k, mu_members.empty() ? 0 : mu_members.size() - 1));
  std::vector<Bits> subbase;
  for (std::size_t c = 0; c < closed.size(); ++c) {
    Bits muc(mu_members.size());
    for (std::size_t k = 0; k < mu_members.size(); ++k)
      if (mu_members[k].test(c)) muc.set(k);
    subbase.push_back(std::move(muc));
  }
  WallmanResult r{FiniteTopSpace::from_closed_subbase(std::move(points), std::move(subbase)),
                  {},
                  std::move(mu_members),
                  closed_set_framework(space)};
  for (std::size_t x = 0; x < space.size(); ++x) {
    const auto it = std::lower_bound(r.mu_members.begin(), r.mu_members.end(), cx[x]);
    if (it == r.mu_members.end() || *it != cx[x])
      throw Error("T1 input must embed: C(x) should be maximal");
    r.embedding.push_back(static_cast<std::size_t>(it - r.mu_members.begin()));
  }
  return r;
}

}  // namespace causaltopo
