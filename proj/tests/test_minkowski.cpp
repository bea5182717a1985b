#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "causaltopo/generators.hpp"
#include "causaltopo/minkowski.hpp"
#include "oracles.hpp"

using namespace causaltopo;

namespace {
EventSet four_events() { return EventSet::make(2, {{0, 0}, {1, 0}, {2, 0}, {1, 1}}); }
}  // namespace

TEST_CASE("causal_leq") {
  CHECK(causal_leq({0, 0}, {1, 1}));   // null separation counts
  CHECK_FALSE(causal_leq({0, 0}, {1, 2}));  // spacelike
  CHECK(causal_leq({3, -1}, {3, -1}));      // reflexive
  CHECK_FALSE(causal_leq({1, 0}, {0, 0}));  // no past-directed curves
  CHECK(causal_leq({0, 0, 0, 0}, {3, 1, 2, 2}));
  CHECK_FALSE(causal_leq({0, 0, 0, 0}, {3, 2, 2, 2}));
  CHECK_THROWS_AS(causal_leq({0, 0}, {0, 0, 0, 0}), DimensionMismatch);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const EventSet s = random_event_set(rng, trial % 2 ? 2 : 4, 7);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (s.leq(i, j) && s.leq(j, i)) CHECK(i == j);
        for (std::size_t k = 0; k < s.size(); ++k)
          if (s.leq(i, j) && s.leq(j, k)) CHECK(s.leq(i, k));
      }
  }
}

TEST_CASE("cones") {
  const EventSet s = four_events();
  CHECK(j_plus(s, {0, 0}).size() == 4);
  CHECK(j_minus(s, {0, 0}) == std::vector<Event>{{0, 0}});
  // A maximal event's future is itself.
  CHECK(j_plus(s, {2, 0}) == std::vector<Event>{{2, 0}});
  CHECK(j_minus(s, {2, 0}).size() == 4);
  CHECK_THROWS_AS(j_plus(s, {9, 9}), UnknownEvent);
}

TEST_CASE("multi_diamond") {
  const EventSet s = four_events();
  const Region all = multi_diamond(s, {{0, 0}}, {{2, 0}});
  CHECK(__builtin_popcountll(all.events) == 4);

  const Region point = multi_diamond(s, {{1, 1}}, {{1, 1}});
  CHECK(s.events_of(point.events) == std::vector<Event>{{1, 1}});

  const Region empty = multi_diamond(s, {{2, 0}}, {{1, 1}});
  CHECK(empty.events == 0);

  CHECK_THROWS_AS(multi_diamond(s, {}, {{0, 0}}), EmptyGenerator);
}

TEST_CASE("region_prec") {
  const EventSet s = four_events();
  const auto m = [&](std::initializer_list<Event> evs) {
    EventMask out = 0;
    for (const auto& e : evs) out |= EventMask{1} << s.index_of(e);
    return out;
  };
  CHECK(region_prec(s, m({{0, 0}}), m({{2, 0}})));
  CHECK_FALSE(region_prec(s, m({{1, 1}}), m({{1, 1}})));  // never reflexive off bottom
  CHECK(region_prec(s, 0, m({{1, 0}})));                  // empty region precedes everything
  CHECK(region_prec(s, 0, 0));
  CHECK_FALSE(region_prec(s, m({{1, 0}}), m({{1, 1}})));  // null-incomparable
}

TEST_CASE("build_region_family") {
  const EventSet s = four_events();
  const RegionFamily fam = build_region_family(s, 1, 1, 2);
  // Every singleton is a diamond.
  for (std::size_t p = 0; p < s.size(); ++p)
    CHECK(fam.diamond_index.count(EventMask{1} << p) == 1);
  CHECK(fam.contains(0));  // the empty region is admitted
  // Closed under pairwise intersection and union (verified at build time,
  // spot-checked here).
  for (EventMask a : fam.regions)
    for (EventMask b : fam.regions) {
      CHECK(fam.contains(a & b));
      CHECK(fam.contains(a | b));
    }
  CHECK_THROWS_AS(build_region_family(s, 0, 1, 1), ValidationError);
}

TEST_CASE("diamond intersections distribute over generators") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const EventSet s = random_event_set(rng, trial % 2 ? 2 : 4, 6);
    if (s.size() == 0) continue;
    const RegionFamily fam = build_region_family(s, s.size(), s.size(), s.size());
    for (std::size_t i = 0; i < fam.diamonds.size(); ++i)
      for (std::size_t j = 0; j < fam.diamonds.size(); ++j) {
        const auto [f1, g1] = fam.generators[i];
        const auto [f2, g2] = fam.generators[j];
        const EventMask meet = fam.diamonds[i] & fam.diamonds[j];
        CHECK(diamond_eval(s, f1 | f2, g1 | g2) == meet);
        if (meet != 0) CHECK(fam.diamond_index.count(meet) == 1);
      }
  }
}

TEST_CASE("union-closure failures are hard errors") {
  // Two spacelike-separated timelike pairs: with maxUnion=2 the union of the
  // two 2-component regions is not expressible.
  const EventSet s = EventSet::make(2, {{0, 0}, {1, 0}, {0, 100}, {1, 100}, {0, 200}, {1, 200},
                                        {0, 300}, {1, 300}});
  CHECK_THROWS_AS(build_region_family(s, 1, 1, 2), CapExceeded);
  // With enough unions the family closes.
  CHECK_NOTHROW(build_region_family(s, 1, 1, 8));
}

TEST_CASE("build_causal_site satisfies the axioms") {
  const auto ms = build_causal_site(four_events(), 1, 1, 2);
  CHECK(ms.site.size() == 16);
  const auto report = check_axioms(ms.site.inclusion(), [&] {
    std::vector<Bits> rows;
    for (std::size_t i = 0; i < ms.site.size(); ++i) rows.push_back(ms.site.prec_row(i));
    return rows;
  }());
  CHECK(report.passed);

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const EventSet s = random_event_set(rng, trial % 2 ? 2 : 4, 5);
    CHECK_NOTHROW(build_causal_site(s, s.size(), s.size(), s.size()));
  }
}

TEST_CASE("region cutting formula matches the generic cutting") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 12; ++trial) {
    const EventSet s = random_event_set(rng, trial % 2 ? 2 : 4, 5);
    const auto ms = build_causal_site(s, s.size(), s.size(), s.size());
    for (std::size_t b = 0; b < ms.site.size(); ++b)
      for (std::size_t a = 0; a < ms.site.size(); ++a) {
        const EventMask via_regions =
            section6_cutting(ms, ms.mask_of_carrier[b], ms.mask_of_carrier[a]);
        const std::string generic = cutting(ms.site, ms.site.name(b), ms.site.name(a));
        CHECK(ms.site.name(ms.carrier_index(via_regions)) == generic);
      }
  }
}

TEST_CASE("maximal past sets") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const EventSet s = random_event_set(rng, 2, 6);
    const auto fam = build_region_family(s, s.size(), s.size(), s.size());
    for (EventMask d : fam.diamonds) {
      const EventMask o = o_set(s, d), m = m_set(s, d);
      CHECK((m & ~o) == 0);
      // Every member of O_A sits below some maximal element.
      for (std::size_t x = 0; x < s.size(); ++x) {
        if (!(o >> x & 1u)) continue;
        bool below = false;
        for (std::size_t y = 0; y < s.size() && !below; ++y)
          if ((m >> y & 1u) && s.leq(x, y)) below = true;
        CHECK(below);
      }
    }
  }
}

TEST_CASE("point correspondence") {
  const auto ms = build_causal_site(four_events(), 1, 1, 2);
  const auto pc = point_correspondence(ms);
  CHECK(pc.event_to_family.size() == 4);
  for (std::size_t p = 0; p < 4; ++p) CHECK(pc.family_to_event[pc.event_to_family[p]] == p);
  CHECK(pc.weakly.size() == 4);
  CHECK(pc.discrete_homeo.homeomorphic);

  // A single event yields a single family containing every region around it.
  const auto solo = build_causal_site(EventSet::make(2, {{0, 0}}), 1, 1, 1);
  const auto spc = point_correspondence(solo);
  CHECK(spc.event_to_family == std::vector<std::size_t>{0});
  CHECK(spc.weakly.size() == 1);

  // f(p) agrees with the brute-force maximal centered families.
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const EventSet s = random_event_set(rng, 4, 4);
    const auto m = build_causal_site(s, s.size(), s.size(), s.size());
    std::vector<Bits> fast;
    for (const auto& f : maximal_centered(m.site)) fast.push_back(f.members);
    CHECK(fast == oracles::maximal_centered_bruteforce(m.site));
  }
}
