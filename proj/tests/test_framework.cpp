#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "causaltopo/framework.hpp"
#include "causaltopo/generators.hpp"
#include "oracles.hpp"

using namespace causaltopo;

namespace {

Framework fw(std::vector<std::string> places, std::vector<std::vector<std::string>> members) {
  return Framework::from_names(std::move(places), members);
}

}  // namespace

TEST_CASE("dual expansion") {
  const Framework single = fw({"a"}, {{"a"}});
  const Framework ds = dual(single);
  CHECK(ds.places() == std::vector<std::string>{"{a}"});
  CHECK(ds.framology().size() == 1);

  const Framework f = fw({"a", "b"}, {{"a"}, {"a", "b"}});
  const Framework d = dual(f);
  CHECK(d.places() == std::vector<std::string>{"{a,b}", "{a}"});
  // pi(a) = both members, pi(b) = {a,b} only.
  REQUIRE(d.framology().size() == 2);
  CHECK(d.names_of(d.framology()[0]) == std::vector<std::string>{"{a,b}"});
  CHECK(d.names_of(d.framology()[1]) == std::vector<std::string>{"{a,b}", "{a}"});
}

TEST_CASE("dual is T0 and idempotent after one application") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Framework f = random_framework(rng, 5);
    const Framework d = dual(f);
    CHECK(is_T0(d));
    const auto iso = are_isomorphic(d, dual(dual(d)));
    CHECK(iso.isomorphic);
  }
}

TEST_CASE("is_T0") {
  CHECK_FALSE(is_T0(fw({"a", "b"}, {{"a", "b"}})));
  CHECK(is_T0(fw({"a", "b"}, {{"a"}})));
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) CHECK(is_T0(dual(random_framework(rng, 4))));
}

TEST_CASE("t0_quotient") {
  const auto collapsed = t0_quotient(fw({"a", "b"}, {{"a", "b"}}));
  CHECK(collapsed.quotient.places_count() == 1);
  CHECK(collapsed.class_of == std::vector<std::string>{"{a,b}", "{a,b}"});

  const Framework t0 = fw({"a", "b"}, {{"a"}});
  const auto q = t0_quotient(t0);
  CHECK(q.quotient.places_count() == 2);  // bijective quotient map

  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const Framework f = random_framework(rng, 5);
    const auto qq = t0_quotient(f);
    const Framework dd = double_dual(f);
    CHECK(are_isomorphic(dd, qq.quotient).isomorphic);
    if (is_T0(f)) {
      CHECK(are_isomorphic(dd, f).isomorphic);
      CHECK(verify_isomorphism(f, dd, canonical_double_dual_map(f, dd)));
    }
  }
}

TEST_CASE("T0 frameworks arise as duals") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Framework f = random_framework(rng, 4);
    if (!is_T0(f)) continue;
    CHECK(are_isomorphic(dual(dual(f)), f).isomorphic);
  }
}

TEST_CASE("are_isomorphic") {
  const Framework f = fw({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  const auto self = are_isomorphic(f, f);
  CHECK(self.isomorphic);
  CHECK(verify_isomorphism(f, f, self.witness));

  const Framework relabeled = fw({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
  const auto iso = are_isomorphic(f, relabeled);
  CHECK(iso.isomorphic);
  CHECK(verify_isomorphism(f, relabeled, iso.witness));

  CHECK_FALSE(are_isomorphic(f, fw({"x", "y", "z"}, {{"x", "y"}})).isomorphic);
  CHECK_FALSE(are_isomorphic(f, fw({"x", "y", "z"}, {{"x"}, {"y", "z"}})).isomorphic);

  const auto big = default_names(9, "p");
  CHECK_THROWS_AS(are_isomorphic(Framework::make(big, {}), Framework::make(big, {})),
                  SizeCapExceeded);
}

TEST_CASE("framework maps compose") {
  const Framework a = fw({"x", "y"}, {{"x"}});
  const Framework b = fw({"u", "v"}, {{"u"}, {"u", "v"}});
  const Framework c = fw({"s"}, {{"s"}});
  const auto f = FrameworkMap::make(a, b, {b.index_of("u"), b.index_of("v")});
  const auto g = FrameworkMap::make(b, c, {0, 0});
  const auto gf = FrameworkMap::compose(g, f);
  CHECK(gf.assignment() == std::vector<std::size_t>{0, 0});

  // x |-> v sends {x} to {v}, which is not in b's framology.
  CHECK_THROWS_AS(FrameworkMap::make(a, b, {b.index_of("v"), b.index_of("u")}), ValidationError);
}

TEST_CASE("topological models: overlapping-interval chain framework") {
  const Framework chain =
      fw({"p1", "p2", "p3", "p4"}, {{"p1", "p2"}, {"p2", "p3"}, {"p3", "p4"}});

  // Digital-line segment on {1..7}: odd singletons open, the open base is
  // {1},{1,2,3},{3},{3,4,5},{5},{5,6,7},{7}. Closed subbase = complements.
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
  const FiniteTopSpace khalimsky = space_from_names(pts, closed_subbase);
  CHECK(is_T0(khalimsky));
  CHECK_FALSE(is_T1(khalimsky));
  CHECK(is_topological_model(chain, khalimsky, ModelMode::open));

  // Closed intervals on a discrete nine-point line, overlapping in single
  // points, model the same framework in closed mode.
  const FiniteTopSpace line9 =
      discrete_space({"1", "2", "3", "4", "5", "6", "7", "8", "9"});
  CHECK(is_topological_model(chain, line9, ModelMode::closed));

  CHECK_FALSE(is_topological_model(chain, discrete_space({"a", "b"}), ModelMode::open));
  CHECK(is_topological_model(Framework::make({}, {}), discrete_space({"a", "b"}),
                             ModelMode::open));

  CHECK_THROWS_AS(
      is_topological_model(Framework::make(default_names(9, "p"), {}), line9, ModelMode::open),
      SizeCapExceeded);
}

TEST_CASE("topological-model search agrees with the literal definition") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<std::uint64_t> member(0, 7);
  std::uniform_int_distribution<std::size_t> member_count(0, 3);
  std::uniform_int_distribution<std::uint64_t> subbase_pick(0, 15);
  int model_count = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Bits> framology;
    const std::size_t mc = member_count(rng);
    for (std::size_t k = 0; k < mc; ++k) framology.push_back(bits_from_mask(3, member(rng)));
    const Framework f = Framework::make(default_names(3, "q"), std::move(framology));
    std::vector<Bits> subbase;
    for (int k = 0; k < 2; ++k) subbase.push_back(bits_from_mask(4, subbase_pick(rng)));
    const auto space = FiniteTopSpace::from_closed_subbase(default_names(4, "t"), subbase);
    for (const auto mode : {ModelMode::open, ModelMode::closed}) {
      const bool fast = is_topological_model(f, space, mode);
      CHECK(fast == oracles::topological_model_literal(f, space, mode));
      model_count += fast;
    }
  }
  CHECK(model_count > 0);  // the sample must exercise both verdicts
}
