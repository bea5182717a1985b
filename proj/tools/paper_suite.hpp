#pragma once

// The paper-suite: one reproduction check per statement the library models,
// each printed as a PASS/FAIL line. Returns the number of failures.

#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "causaltopo/approximation.hpp"
#include "causaltopo/causal_site.hpp"
#include "causaltopo/generators.hpp"
#include "causaltopo/minkowski.hpp"

namespace causaltopo::suite {

struct Check {
  std::string name;
  std::function<bool(std::mt19937_64&)> run;
};

inline std::vector<Bits> prec_rows_of(const CausalSite& s) {
  std::vector<Bits> rows;
  for (std::size_t i = 0; i < s.size(); ++i) rows.push_back(s.prec_row(i));
  return rows;
}

inline std::vector<Check> paper_checks() {
  std::vector<Check> checks;
  const auto add = [&](std::string name, std::function<bool(std::mt19937_64&)> run) {
    checks.push_back({std::move(name), std::move(run)});
  };

  add("atoms of a two-chain fan sit directly over the bottom", [](std::mt19937_64&) {
    const Poset fig = poset_from_cover(
        {"bot", "1", "2", "3", "4", "5", "6"},
        {{"bot", "1"}, {"bot", "2"}, {"1", "3"}, {"3", "5"}, {"2", "4"}, {"4", "6"}});
    auto a = atoms(fig);
    std::sort(a.begin(), a.end());
    return a == std::vector<std::string>{"1", "2"};
  });

  add("finite-subset construction always yields a causal site", [](std::mt19937_64& rng) {
    for (const auto& base : all_labeled_posets(default_names(3)))
      if (!check_axioms(from_poset(base).inclusion(), prec_rows_of(from_poset(base))).passed)
        return false;
    for (int t = 0; t < 25; ++t) {
      const CausalSite s = from_poset(random_poset(rng, 4));
      if (!check_axioms(s.inclusion(), prec_rows_of(s)).passed) return false;
    }
    return true;
  });

  add("chains carry a unique causal content, with the weakest relation minimum",
      [](std::mt19937_64&) {
        // Every relation satisfying the axioms over a chain contains the
        // weakest one and agrees with it on all pairs whose target is not
        // the bottom; only the inessential x-below-bottom fringe may vary.
        const Poset chain = poset_from_cover({"bot", "a", "b"}, {{"bot", "a"}, {"a", "b"}});
        const CausalSite weakest = weakest_causal(chain);
        const auto wrows = prec_rows_of(weakest);
        const std::size_t n = chain.size();
        const std::size_t bot = *chain.bottom();
        std::size_t passing = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
          std::vector<Bits> rows(n, Bits(n));
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              if (mask >> (i * n + j) & 1u) rows[i].set(j);
          if (!check_axioms(chain, rows).passed) continue;
          ++passing;
          for (std::size_t i = 0; i < n; ++i) {
            if (!wrows[i].is_subset_of(rows[i])) return false;
            Bits essential = rows[i];
            essential.reset(bot);
            Bits wessential = wrows[i];
            wessential.reset(bot);
            if (essential != wessential) return false;
          }
        }
        return passing >= 1;
      });

  add("the bottom causally precedes every region and itself", [](std::mt19937_64& rng) {
    for (int t = 0; t < 20; ++t) {
      const CausalSite s = from_poset(random_poset(rng, 3));
      const std::size_t bot = s.bottom();
      if (!s.prec(bot, bot)) return false;
      for (std::size_t a = 0; a < s.size(); ++a)
        if (!s.prec(bot, a)) return false;
    }
    return true;
  });

  add("inclusion chains are causal antichains", [](std::mt19937_64& rng) {
    for (int t = 0; t < 20; ++t) {
      const CausalSite s = from_poset(random_poset(rng, 3));
      for (std::size_t x = 0; x < s.size(); ++x)
        for (std::size_t y = 0; y < s.size(); ++y) {
          if (x == y || x == s.bottom() || y == s.bottom()) continue;
          if (s.inclusion().leq(x, y) && (s.prec(x, y) || s.prec(y, x))) return false;
        }
    }
    return true;
  });

  add("incomparability sets of distinct regions always meet", [](std::mt19937_64& rng) {
    for (int t = 0; t < 15; ++t) {
      const CausalSite s = from_poset(random_poset(rng, 3));
      for (std::size_t x = 0; x < s.size(); ++x)
        for (std::size_t y = x + 1; y < s.size(); ++y) {
          if (x == s.bottom() || y == s.bottom()) continue;
          const auto j = s.inclusion().join(x, y);
          if (!j) return false;
          Bits nx = ~(s.prec_row(x) | s.prec_below(x));
          Bits ny = ~(s.prec_row(y) | s.prec_below(y));
          if (!(nx & ny).test(*j)) return false;
        }
    }
    return true;
  });

  add("no inclusion order supports a strictly linear causal relation",
      [](std::mt19937_64&) {
        const std::vector<std::string> names = {"x1", "x2", "x3"};
        const std::vector<std::pair<std::string, std::string>> linear = {
            {"x1", "x2"}, {"x2", "x3"}, {"x1", "x3"}};
        for (const auto& incl : all_labeled_posets(names))
          if (check_axioms(incl, prec_rows_from_pairs(incl, linear)).passed) return false;
        return true;
      });

  add("subset-site cutting picks the events below the whole target", [](std::mt19937_64& rng) {
    for (int t = 0; t < 10; ++t) {
      const Poset base = random_poset(rng, 3);
      const CausalSite s = from_poset(base);
      // B_A = {b in B : b < a for every a in A}, computed on names.
      for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b) {
          const auto inside = [&](const std::string& region) {
            std::vector<std::string> out;
            std::string body = region.substr(1, region.size() - 2);
            std::size_t start = 0;
            while (start < body.size()) {
              auto end = body.find(',', start);
              if (end == std::string::npos) end = body.size();
              out.push_back(body.substr(start, end - start));
              start = end + 1;
            }
            return out;
          };
          const auto amem = inside(s.name(a)), bmem = inside(s.name(b));
          std::vector<std::string> keep;
          for (const auto& bb : bmem) {
            bool below_all = true;
            for (const auto& aa : amem)
              below_all = below_all && base.leq(bb, aa) && bb != aa;
            if (below_all) keep.push_back(bb);
          }
          if (cutting(s, s.name(b), s.name(a)) != set_literal(keep)) return false;
        }
    }
    return true;
  });

  add("dual frameworks are T0", [](std::mt19937_64& rng) {
    for (int t = 0; t < 40; ++t)
      if (!is_T0(dual(random_framework(rng, 5)))) return false;
    return true;
  });

  add("the double dual is the T0 quotient", [](std::mt19937_64& rng) {
    for (int t = 0; t < 30; ++t) {
      const Framework f = random_framework(rng, 5);
      if (!are_isomorphic(double_dual(f), t0_quotient(f).quotient).isomorphic) return false;
    }
    return true;
  });

  add("T0 frameworks are fixed by the double dual", [](std::mt19937_64& rng) {
    int seen = 0;
    for (int t = 0; t < 60 && seen < 20; ++t) {
      const Framework f = random_framework(rng, 4);
      if (!is_T0(f)) continue;
      ++seen;
      if (!are_isomorphic(double_dual(f), f).isomorphic) return false;
    }
    return seen > 0;
  });

  add("the dual equals the triple dual", [](std::mt19937_64& rng) {
    for (int t = 0; t < 30; ++t) {
      const Framework d = dual(random_framework(rng, 4));
      if (!are_isomorphic(d, double_dual(d)).isomorphic) return false;
    }
    return true;
  });

  add("the overlap chain has digital-line and interval models", [](std::mt19937_64&) {
    const Framework chain = Framework::from_names(
        {"p1", "p2", "p3", "p4"}, {{"p1", "p2"}, {"p2", "p3"}, {"p3", "p4"}});
    const std::vector<std::string> pts = {"1", "2", "3", "4", "5", "6", "7"};
    const std::vector<std::vector<std::string>> open_base = {
        {"1"}, {"1", "2", "3"}, {"3"}, {"3", "4", "5"}, {"5"}, {"5", "6", "7"}, {"7"}};
    std::vector<std::vector<std::string>> closed_subbase;
    for (const auto& u : open_base) {
      std::vector<std::string> comp;
      for (const auto& p : pts)
        if (std::find(u.begin(), u.end(), p) == u.end()) comp.push_back(p);
      closed_subbase.push_back(std::move(comp));
    }
    const auto khalimsky = space_from_names(pts, closed_subbase);
    const auto line9 = discrete_space({"1", "2", "3", "4", "5", "6", "7", "8", "9"});
    return is_topological_model(chain, khalimsky, ModelMode::open) &&
           is_topological_model(chain, line9, ModelMode::closed) &&
           !is_topological_model(chain, discrete_space({"a", "b"}), ModelMode::open);
  });

  add("weakly causal topologies are compact T1", [](std::mt19937_64& rng) {
    for (int t = 0; t < 15; ++t) {
      const CausalSite s = from_poset(random_poset(rng, 3));
      const auto space = weakly_causal_topology(s);
      if (!is_T1(space)) return false;
      if (!is_compact(space, space.open_sets())) return false;
      // Subbase-level FIP: for every non-bottom y, the pi(x) over the up-set
      // of y share a point; this generates every centered family case.
      const auto families = maximal_centered(s);
      for (std::size_t y = 0; y < s.size(); ++y) {
        if (y == s.bottom()) continue;
        Bits common(families.size());
        common.set();
        for_each_bit(s.inclusion().up(y), [&](std::size_t x) {
          Bits pix(families.size());
          for (std::size_t k = 0; k < families.size(); ++k)
            if (families[k].members.test(x)) pix.set(k);
          common &= pix;
        });
        if (common.none()) return false;
      }
    }
    return true;
  });

  add("diamond families are closed under intersection", [](std::mt19937_64& rng) {
    for (int t = 0; t < 10; ++t) {
      const EventSet s = random_event_set(rng, t % 2 ? 2 : 4, 5);
      if (s.size() == 0) continue;
      const auto fam = build_region_family(s, s.size(), s.size(), s.size());
      if (!fam.contains(0)) return false;
      for (std::size_t i = 0; i < fam.diamonds.size(); ++i)
        for (std::size_t j = 0; j < fam.diamonds.size(); ++j) {
          const auto [f1, g1] = fam.generators[i];
          const auto [f2, g2] = fam.generators[j];
          if (diamond_eval(s, f1 | f2, g1 | g2) != (fam.diamonds[i] & fam.diamonds[j]))
            return false;
          if (!fam.contains(fam.diamonds[i] & fam.diamonds[j])) return false;
        }
    }
    return true;
  });

  add("event-set region families are causal sites", [](std::mt19937_64& rng) {
    for (int t = 0; t < 10; ++t) {
      const EventSet s = random_event_set(rng, t % 2 ? 2 : 4, 5);
      const auto ms = build_causal_site(s, s.size(), s.size(), s.size());
      if (!check_axioms(ms.site.inclusion(), prec_rows_of(ms.site)).passed) return false;
    }
    return true;
  });

  add("the region cutting formula matches the generic cutting", [](std::mt19937_64& rng) {
    for (int t = 0; t < 8; ++t) {
      const EventSet s = random_event_set(rng, t % 2 ? 2 : 4, 4);
      const auto ms = build_causal_site(s, s.size(), s.size(), s.size());
      for (std::size_t b = 0; b < ms.site.size(); ++b)
        for (std::size_t a = 0; a < ms.site.size(); ++a) {
          const auto via = section6_cutting(ms, ms.mask_of_carrier[b], ms.mask_of_carrier[a]);
          if (ms.site.name(ms.carrier_index(via)) !=
              cutting(ms.site, ms.site.name(b), ms.site.name(a)))
            return false;
        }
    }
    return true;
  });

  add("maximal common-past events dominate the common past", [](std::mt19937_64& rng) {
    for (int t = 0; t < 10; ++t) {
      const EventSet s = random_event_set(rng, 2, 6);
      const auto fam = build_region_family(s, s.size(), s.size(), s.size());
      for (EventMask d : fam.diamonds) {
        const EventMask o = o_set(s, d), m = m_set(s, d);
        for (std::size_t x = 0; x < s.size(); ++x) {
          if (!(o >> x & 1u)) continue;
          bool below = false;
          for (std::size_t y = 0; y < s.size() && !below; ++y)
            if ((m >> y & 1u) && s.leq(x, y)) below = true;
          if (!below) return false;
        }
      }
    }
    return true;
  });

  add("events correspond to maximal centered families", [](std::mt19937_64& rng) {
    for (int t = 0; t < 6; ++t) {
      const EventSet s = random_event_set(rng, t % 2 ? 2 : 4, 4);
      if (s.size() == 0) continue;
      const auto ms = build_causal_site(s, s.size(), s.size(), s.size());
      const auto pc = point_correspondence(ms);
      if (!pc.discrete_homeo.homeomorphic) return false;
      for (std::size_t p = 0; p < s.size(); ++p)
        if (pc.family_to_event[pc.event_to_family[p]] != p) return false;
    }
    return true;
  });

  add("full framologies have sigma the powerset and mu the carrier",
      [](std::mt19937_64&) {
        const auto names = default_names(4, "n");
        std::vector<Bits> framology;
        for (std::uint64_t m = 0; m < 16; ++m) framology.push_back(bits_from_mask(4, m));
        const Framework f = Framework::make(names, framology);
        const auto sig = sigma(f);
        const auto m = mu(f);
        Bits full(4);
        full.set();
        return sig.size() == 16 && m.size() == 1 && m[0] == full;
      });

  add("mu equals the ultra-closed filters on finite T1 spaces", [](std::mt19937_64& rng) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto space = discrete_space(default_names(n, "x"));
      if (wallman_space(space).mu_members != ultra_closed_filters(space)) return false;
      if (mu(closed_set_framework(space)) != ultra_closed_filters(space)) return false;
    }
    (void)rng;
    return true;
  });

  add("every fixed closed family is maximal (pi inside mu)", [](std::mt19937_64&) {
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto space = discrete_space(default_names(n, "x"));
      const auto w = wallman_space(space);
      const auto base = closed_set_framework(space);
      for (const auto& member : base.framology())
        if (!std::binary_search(w.mu_members.begin(), w.mu_members.end(), member)) return false;
    }
    return true;
  });

  add("the compactification of a finite T1 space is the space itself",
      [](std::mt19937_64&) {
        for (std::size_t n = 1; n <= 5; ++n) {
          const auto space = discrete_space(default_names(n, "x"));
          const auto w = wallman_space(space);
          if (!is_homeomorphic(w.space, space).homeomorphic) return false;
          // Closed embedding: f(D) = f(X) n mu(D).
          const auto& closed = space.closed_sets();
          for (std::size_t c = 0; c < closed.size(); ++c) {
            Bits fD(w.space.size()), fX(w.space.size()), muD(w.space.size());
            for_each_bit(closed[c], [&](std::size_t x) { fD.set(w.embedding[x]); });
            for (std::size_t x = 0; x < space.size(); ++x) fX.set(w.embedding[x]);
            for (std::size_t k = 0; k < w.mu_members.size(); ++k)
              if (w.mu_members[k].test(c)) muD.set(k);
            if (fD != (fX & muD) || !w.space.is_closed(fD)) return false;
          }
        }
        return true;
      });

  add("iterated de Groot duals: the double dual restores the topology",
      [](std::mt19937_64&) {
        for (std::size_t n = 1; n <= 3; ++n)
          for (const auto& rows : all_preorders(n)) {
            const auto space = space_from_preorder(default_names(n), rows);
            const auto g = degroot_dual(space);
            if (!degroot_dual(g).same_space(space)) return false;
            if (!degroot_dual(degroot_dual(g)).same_space(g)) return false;
          }
        return true;
      });

  add("at most four topologies arise from iterated duals", [](std::mt19937_64& rng) {
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& rows : all_preorders(n))
        if (dual_sequence(space_from_preorder(default_names(n), rows)).distinct_count > 4)
          return false;
    for (int t = 0; t < 20; ++t) {
      std::uniform_int_distribution<std::uint64_t> pick(0, 15);
      std::vector<Bits> subbase;
      for (int k = 0; k < 3; ++k) subbase.push_back(bits_from_mask(4, pick(rng)));
      const auto space = FiniteTopSpace::from_closed_subbase(default_names(4, "q"), subbase);
      if (dual_sequence(space).distinct_count > 4) return false;
    }
    return true;
  });

  return checks;
}

inline int run_paper_suite(std::uint64_t seed, std::ostream& out) {
  int failures = 0;
  const auto checks = paper_checks();
  for (const auto& check : checks) {
    std::mt19937_64 rng(seed);
    bool ok = false;
    std::string note;
    try {
      ok = check.run(rng);
    } catch (const std::exception& e) {
      note = std::string(" (") + e.what() + ")";
    }
    out << (ok ? "PASS  " : "FAIL  ") << check.name << note << "\n";
    if (!ok) ++failures;
  }
  out << "summary: " << (checks.size() - failures) << "/" << checks.size() << " checks passed\n";
  return failures;
}

}  // namespace causaltopo::suite
