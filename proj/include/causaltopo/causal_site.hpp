#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "causaltopo/bits.hpp"
#include "causaltopo/errors.hpp"
#include "causaltopo/fintop.hpp"
#include "causaltopo/poset.hpp"

namespace causaltopo {

struct AxiomViolation {
  /// one of: order, joins, strict-order, i, ii, iii, iv
  std::string axiom;
  /// witness elements in role order: (a,b,c) for axioms i-iii, (a,b) for iv
  std::vector<std::string> witness;
};

struct AxiomReport {
  bool passed = false;
  std::vector<AxiomViolation> violations;
};

namespace detail {

/// Greatest element of `members`, if any: one running-candidate pass plus a
/// final dominance check.
inline std::optional<std::size_t> greatest_of(const Poset& p, const Bits& members) {
  std::size_t best = members.find_first();
  if (best == Bits::npos) return std::nullopt;
  for (std::size_t m = members.find_next(best); m != Bits::npos; m = members.find_next(m))
    if (p.leq(best, m)) best = m;
  if (members.is_subset_of(p.down(best))) return best;
  return std::nullopt;
}

inline std::vector<std::size_t> maximal_members(const Poset& p, const Bits& members) {
  std::vector<std::size_t> out;
  for_each_bit(members, [&](std::size_t i) {
    Bits above = p.up(i) & members;
    above.reset(i);
    if (above.none()) out.push_back(i);
  });
  return out;
}

}  // namespace detail

/// Verifies the full axiom set for a candidate (inclusion, causal) pair.
/// Axiom failures are data, not errors: each violated axiom is reported once,
/// with the first witness in canonical element order.
inline AxiomReport check_axioms(const Poset& p, const std::vector<Bits>& prec) {
  const std::size_t n = p.size();
  if (prec.size() != n) throw SchemaError("causal relation size does not match carrier");
  std::vector<Bits> prec_below(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = prec[i].find_first(); j != Bits::npos; j = prec[i].find_next(j))
      prec_below[j].set(i);

  AxiomReport report;
  const auto add = [&](const std::string& ax, std::vector<std::size_t> idx) {
    AxiomViolation v{ax, {}};
    for (std::size_t i : idx) v.witness.push_back(p.name(i));
    report.violations.push_back(std::move(v));
  };

  // order: the inclusion (a partial order by construction) must have a least
  // element.
  const auto bottom = p.bottom();
  if (!bottom) {
    std::vector<std::size_t> mins;
    for (std::size_t i = 0; i < n && mins.size() < 2; ++i) {
      Bits below = p.down(i);
      below.reset(i);
      if (below.none()) mins.push_back(i);
    }
    add("order", mins);
  }

  // joins: every pair needs a least upper bound. The table also feeds the
  // axiom (iii) scan, which would otherwise recompute joins quadratically.
  std::vector<std::int32_t> join_of(n * n, -1);
  bool joins_ok = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const auto jj = p.join(i, j);
      if (jj) {
        join_of[i * n + j] = static_cast<std::int32_t>(*jj);
        join_of[j * n + i] = static_cast<std::int32_t>(*jj);
      } else if (joins_ok) {
        joins_ok = false;
        add("joins", {i, j});
      }
    }

  // strict-order: anti-reflexive and transitive on the carrier minus bottom.
  {
    bool found = false;
    for (std::size_t a = 0; a < n && !found; ++a) {
      if (bottom && a == *bottom) continue;
      if (prec[a].test(a)) {
        add("strict-order", {a});
        found = true;
      }
    }
    for (std::size_t a = 0; a < n && !found; ++a) {
      if (bottom && a == *bottom) continue;
      for (std::size_t b = prec[a].find_first(); b != Bits::npos && !found; b = prec[a].find_next(b)) {
        if (bottom && b == *bottom) continue;
        Bits beyond = prec[b];
        if (bottom) beyond.reset(*bottom);
        if (!beyond.is_subset_of(prec[a]))
          for (std::size_t c = beyond.find_first(); c != Bits::npos; c = beyond.find_next(c))
            if (!prec[a].test(c)) {
              add("strict-order", {a, b, c});
              found = true;
              break;
            }
      }
    }
  }

  // (i) b <= a and a < c implies b < c.
  bool axiom_i_ok = true;
  for (std::size_t a = 0; a < n && axiom_i_ok; ++a)
    for (std::size_t c = prec[a].find_first(); c != Bits::npos; c = prec[a].find_next(c))
      if (!p.down(a).is_subset_of(prec_below[c])) {
        for (std::size_t b = p.down(a).find_first(); b != Bits::npos; b = p.down(a).find_next(b))
          if (!prec_below[c].test(b)) {
            add("i", {a, b, c});
            break;
          }
        axiom_i_ok = false;
        break;
      }

  // (ii) b <= a and c < a implies c < b.
  {
    bool found = false;
    for (std::size_t a = 0; a < n && !found; ++a)
      for (std::size_t c = prec_below[a].find_first(); c != Bits::npos;
           c = prec_below[a].find_next(c))
        if (!p.down(a).is_subset_of(prec[c])) {
          for (std::size_t b = p.down(a).find_first(); b != Bits::npos; b = p.down(a).find_next(b))
            if (!prec[c].test(b)) {
              add("ii", {a, b, c});
              break;
            }
          found = true;
          break;
        }
  }

  // (iii) a < c and b < c implies a|b < c. When axiom (i) holds, it is enough
  // to test the inclusion-maximal predecessors of each c: any other join is
  // below a maximal join and inherits < c by (i). Small carriers are scanned
  // in full so that witnesses are canonical.
  if (joins_ok) {
    bool found = false;
    const bool reduce = axiom_i_ok && n > 256;
    for (std::size_t c = 0; c < n && !found; ++c) {
      std::vector<std::size_t> pre;
      if (reduce)
        pre = detail::maximal_members(p, prec_below[c]);
      else
        pre = bit_indices(prec_below[c]);
      for (std::size_t ai = 0; ai < pre.size() && !found; ++ai)
        for (std::size_t bi = ai; bi < pre.size(); ++bi) {
          const std::int32_t j = join_of[pre[ai] * n + pre[bi]];
          if (j >= 0 && !prec[static_cast<std::size_t>(j)].test(c)) {
            add("iii", {pre[ai], pre[bi], c});
            found = true;
            break;
          }
        }
    }
  }

  // (iv) every pair (a,b) admits a cutting: the set {c : c < a, c <= b} has
  // an inclusion-greatest element.
  {
    bool found = false;
    for (std::size_t a = 0; a < n && !found; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Bits candidates = prec_below[a] & p.down(b);
        if (!detail::greatest_of(p, candidates)) {
          add("iv", {a, b});
          found = true;
          break;
        }
      }
  }

  report.passed = report.violations.empty();
  return report;
}

inline std::vector<Bits> prec_rows_from_pairs(
    const Poset& p, const std::vector<std::pair<std::string, std::string>>& causal) {
  std::vector<Bits> rows(p.size(), Bits(p.size()));
  for (const auto& [a, b] : causal) rows[p.index_of(a)].set(p.index_of(b));
  return rows;
}

inline AxiomReport check_axioms(const Poset& p,
                                const std::vector<std::pair<std::string, std::string>>& causal) {
  return check_axioms(p, prec_rows_from_pairs(p, causal));
}

/// A verified causal site. Instances exist only for data that passed
/// check_axioms; all operations may therefore rely on the axioms.
class CausalSite {
 public:
  static CausalSite make(Poset inclusion, std::vector<Bits> prec) {
    const AxiomReport report = check_axioms(inclusion, prec);
    if (!report.passed) {
      std::string what = "causal-site axioms violated:";
      for (const auto& v : report.violations) what += " " + v.axiom;
      throw AxiomError(what);
    }
    CausalSite s;
    s.inclusion_ = std::move(inclusion);
    s.prec_ = std::move(prec);
    const std::size_t n = s.inclusion_.size();
    s.prec_below_.assign(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = s.prec_[i].find_first(); j != Bits::npos; j = s.prec_[i].find_next(j))
        s.prec_below_[j].set(i);
    s.bottom_ = *s.inclusion_.bottom();
    return s;
  }

  static CausalSite make(Poset inclusion,
                         const std::vector<std::pair<std::string, std::string>>& causal) {
    auto rows = prec_rows_from_pairs(inclusion, causal);
    return make(std::move(inclusion), std::move(rows));
  }

  const Poset& inclusion() const { return inclusion_; }
  std::size_t size() const { return inclusion_.size(); }
  std::size_t bottom() const { return bottom_; }
  const std::string& name(std::size_t i) const { return inclusion_.name(i); }
  std::size_t index_of(const std::string& id) const { return inclusion_.index_of(id); }

  bool prec(std::size_t a, std::size_t b) const { return prec_[a].test(b); }
  const Bits& prec_row(std::size_t a) const { return prec_[a]; }
  const Bits& prec_below(std::size_t a) const { return prec_below_[a]; }

  std::vector<std::pair<std::string, std::string>> causal_pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = prec_[i].find_first(); j != Bits::npos; j = prec_[i].find_next(j))
        out.emplace_back(name(i), name(j));
    return out;
  }

 private:
  Poset inclusion_;
  std::vector<Bits> prec_;
  std::vector<Bits> prec_below_;
  std::size_t bottom_ = 0;
};

/// The weakest causal relation compatible with the given inclusion order:
/// bottom precedes everything (itself included) and nothing else is related.
inline CausalSite weakest_causal(const Poset& inclusion) {
  const auto b = inclusion.bottom();
  if (!b) throw MissingBottom("inclusion order has no least element");
  const auto report = order_report(inclusion);
  if (!report.has_binary_joins)
    throw MissingJoins("inclusion order lacks a binary join for (" +
                       report.join_witness_failure->first + ", " +
                       report.join_witness_failure->second + ")");
  std::vector<Bits> rows(inclusion.size(), Bits(inclusion.size()));
  rows[*b].set();
  return CausalSite::make(inclusion, std::move(rows));
}

namespace caps {
/// from_poset builds a 2^|p| carrier; the bit matrices stop being sane well
/// before 2^16 entries.
inline constexpr std::size_t from_poset_absolute = 14;
}  // namespace caps

/// The finite-subset causal site of a poset: carrier is the powerset ordered
/// by inclusion, and K < L iff k < l for every pair (k,l) in K x L (vacuously
/// true when either side is empty).
inline CausalSite from_poset(const Poset& p, std::size_t cap = caps::default_carrier_cap()) {
  if (p.size() > cap || p.size() > caps::from_poset_absolute)
    throw CapExceeded("from_poset carrier would be 2^" + std::to_string(p.size()) +
                      "; cap is " + std::to_string(std::min(cap, caps::from_poset_absolute)));
  const std::size_t n = p.size();
  const std::size_t N = std::size_t{1} << n;

  std::vector<std::pair<std::string, std::uint64_t>> named(N);
  for (std::uint64_t mask = 0; mask < N; ++mask) {
    std::vector<std::string> members;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) members.push_back(p.name(i));
    named[mask] = {set_literal(members), mask};
  }
  std::sort(named.begin(), named.end());
  std::vector<std::string> names(N);
  std::vector<std::uint64_t> mask_of(N);
  for (std::size_t i = 0; i < N; ++i) {
    names[i] = named[i].first;
    mask_of[i] = named[i].second;
  }

  std::vector<Bits> up(N, Bits(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if ((mask_of[i] & ~mask_of[j]) == 0) up[i].set(j);
  // Subset order on masks: a partial order by construction.
  Poset inclusion = Poset::from_relation(names, std::move(up), /*validate=*/false);

  // strictly_after[e] = elements strictly above base element e.
  std::vector<Bits> strictly_after(n, Bits(n));
  for (std::size_t e = 0; e < n; ++e)
    for (std::size_t f = 0; f < n; ++f)
      if (p.strictly_less(e, f)) strictly_after[e].set(f);

  std::vector<Bits> prec(N, Bits(N));
  for (std::size_t i = 0; i < N; ++i) {
    Bits allowed(n);
    allowed.set();
    for (std::size_t e = 0; e < n; ++e)
      if (mask_of[i] >> e & 1u) allowed &= strictly_after[e];
    const std::uint64_t allowed_mask = mask_from_bits(allowed);
    for (std::size_t j = 0; j < N; ++j)
      if ((mask_of[j] & ~allowed_mask) == 0) prec[i].set(j);
  }
  return CausalSite::make(std::move(inclusion), std::move(prec));
}

/// Cutting of a by b: the inclusion-greatest region that causally precedes a
/// and is included in b. Existence is axiom (iv), so this cannot fail on a
/// valid site.
inline std::string cutting(const CausalSite& s, const std::string& b, const std::string& a) {
  const std::size_t ai = s.index_of(a), bi = s.index_of(b);
  Bits candidates = s.prec_below(ai) & s.inclusion().down(bi);
  const auto g = detail::greatest_of(s.inclusion(), candidates);
  if (!g) throw AxiomError("cutting does not exist; the site value is corrupt");
  return s.name(*g);
}

/// N(x): regions causally incomparable with x.
inline std::vector<std::string> n_set(const CausalSite& s, const std::string& x) {
  const std::size_t xi = s.index_of(x);
  Bits related = s.prec_row(xi) | s.prec_below(xi);
  return s.inclusion().names_of(~related);
}

struct CenteredFamily {
  Bits members;  ///< carrier indices
};

/// Centeredness of a finite family reduces to one common non-bottom lower
/// bound (the defining condition quantifies over finite subfamilies, and the
/// family itself is finite).
inline bool is_centered(const CausalSite& s, const Bits& family) {
  Bits common(s.size());
  common.set();
  for_each_bit(family, [&](std::size_t x) { common &= s.inclusion().down(x); });
  common.reset(s.bottom());
  return common.any();
}

/// All maximal centered subsets of the carrier. Every centered family lies
/// under the up-set of an atom, and atom up-sets are pairwise incomparable,
/// so the up-sets of atoms are exactly the maximal centered families.
inline std::vector<CenteredFamily> maximal_centered(const CausalSite& s) {
  std::vector<Bits> families;
  for (const auto& atom_name : atoms(s.inclusion()))
    families.push_back(s.inclusion().up(s.index_of(atom_name)));
  std::sort(families.begin(), families.end());
  families.erase(std::unique(families.begin(), families.end()), families.end());
  std::vector<CenteredFamily> out;
  for (auto& f : families) out.push_back(CenteredFamily{std::move(f)});
  return out;
}

/// The weakly causal topology: points are the maximal centered families
/// (point "Fk" is the k-th family in canonical order), closed subbase is
/// {pi(x) : x in S} where pi(x) collects the families containing region x.
inline FiniteTopSpace weakly_causal_topology(const CausalSite& s) {
  const auto families = maximal_centered(s);
  const std::size_t m = families.size();
  std::vector<std::string> points;
  for (std::size_t k = 0; k < m; ++k) points.push_back(padded_label("F", k, m ? m - 1 : 0));
  std::vector<Bits> subbase;
  for (std::size_t x = 0; x < s.size(); ++x) {
    Bits pi(m);
    for (std::size_t k = 0; k < m; ++k)
      if (families[k].members.test(x)) pi.set(k);
    subbase.push_back(std::move(pi));
  }
  return FiniteTopSpace::from_closed_subbase(std::move(points), std::move(subbase));
}

}  // namespace causaltopo
