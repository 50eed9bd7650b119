#include <catch_amalgamated.hpp>

#include <set>

#include "neretin/burger_mozes.hpp"
#include "neretin/dsl.hpp"
#include "oracles.hpp"

using namespace neretin;

namespace {

PermGroup c3_times_s3() {
  return PermGroup::parse("(1 4 7)(2 5 8)(3 6 9),(1 2)(4 5)(7 8),(1 2 3)(4 5 6)(7 8 9)", 9);
}

}  // namespace

TEST_CASE("permutation group basics") {
  auto s3 = PermGroup::parse("(1 2),(1 2 3)", 3);
  CHECK(s3.order() == 6u);
  auto st = s3.point_stabilizer(0);
  CHECK(st.order() == 2u);
  CHECK(st.contains(Perm::from_cycles("(2 3)", 3, 1)));
  auto v = PermGroup::parse("(1 2)(3 4)", 4);
  CHECK(v.orbits() == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
  auto f = c3_times_s3();
  CHECK(f.order() == 18u);
  CHECK(f.is_transitive());
  CHECK_THROWS_MATCHES(PermGroup::parse("(1 2", 3), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::parse;
                       }));
  CHECK_THROWS_MATCHES(PermGroup(8, {Perm::from_cycles("(0 1 2 3 4 5 6 7)", 8), Perm::transposition(8, 0, 1)}, 1000), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::resource_limit; }));
}

TEST_CASE("finite group tables") {
  for (auto G : {FiniteGroup::symmetric(4), FiniteGroup::cyclic(6), FiniteGroup::klein()}) {
    const int n = static_cast<int>(G.size());
    for (int a = 0; a < n; ++a) {
      REQUIRE(G.mul(a, G.inv(a)) == 0);
      for (int b = 0; b < n; ++b) REQUIRE(G.perm(G.mul(a, b)) == G.perm(a) * G.perm(b));
    }
    auto k = G.generate({n - 1});
    REQUIRE(G.is_subgroup(k));
    auto t = G.left_transversal(k);
    REQUIRE(t.size() * k.size() == G.size());
    for (int g = 0; g < n; ++g) {
      auto [r, kk] = G.split_left(g, k);
      REQUIRE(G.mul(r, kk) == g);
      REQUIRE(FiniteGroup::member(k, kk));
      REQUIRE(std::binary_search(t.begin(), t.end(), r));
    }
  }
}

TEST_CASE("Burger-Mozes report for C3 x S3") {
  auto r = bm_check(c3_times_s3());
  CHECK(r.transitive);
  CHECK(r.stabilizer_order == 2u);
  CHECK(r.fixed_points == std::vector<int>{0, 3, 6});
  CHECK(r.fp_at_least_3);
  CHECK_FALSE(r.discrete);
  CHECK(r.normalizer_quotient_order == 3u);
  CHECK(r.hypothesis_met);
  CHECK(r.normalizer_quotient_order >= r.fixed_points.size());
}

TEST_CASE("Burger-Mozes report for symmetric and trivial groups") {
  for (int d = 3; d <= 6; ++d) {
    std::vector<std::uint8_t> img(d);
    for (int i = 0; i < d; ++i) img[i] = static_cast<std::uint8_t>((i + 1) % d);
    auto r = bm_check(PermGroup(d, {Perm::transposition(d, 0, 1), Perm(img)}));
    CHECK(r.fixed_points == std::vector<int>{0});
    CHECK_FALSE(r.hypothesis_met);
  }
  auto t = bm_check(PermGroup(4, {}));
  CHECK_FALSE(t.transitive);
  CHECK_FALSE(t.hypothesis_met);
  // regular C2: trivial point stabilizer, free action
  auto c2 = bm_check(PermGroup::parse("(1 2)", 2));
  CHECK(c2.discrete);
  CHECK(c2.stabilizer_order == 1u);
}

TEST_CASE("subgroups of S4 against a naive recomputation") {
  auto subs = oracle::subgroups_of_s4();
  CHECK(subs.size() == 30u);
  for (const auto& F : subs) {
    auto r = bm_check(F);
    auto n = oracle::naive_bm_report(F);
    REQUIRE(r.transitive == n.transitive);
    REQUIRE(r.stabilizer_order == n.stabilizer_order);
    REQUIRE(r.fixed_points == n.fixed_points);
    REQUIRE(r.fp_at_least_3 == n.fp_at_least_3);
    REQUIRE(r.discrete == n.discrete);
    REQUIRE(r.normalizer_quotient_order == n.normalizer_quotient_order);
    REQUIRE(r.hypothesis_met == n.hypothesis_met);
    if (r.hypothesis_met) REQUIRE(r.normalizer_quotient_order >= 3u);
    // orbits against reachability
    for (const auto& orb : F.orbits()) {
      std::set<int> reach;
      for (const auto& g : F.elements()) reach.insert(g(orb.front()));
      REQUIRE(std::vector<int>(reach.begin(), reach.end()) == orb);
    }
  }
}

TEST_CASE("local actions and the cocycle identity") {
  auto e = BmPortrait::identity(3);
  for (const auto& v : bm_vertices(3, 2)) CHECK(e.local_action(v).is_identity());
  BmPortrait g(3, 1);
  BmVertex v0{0, {}};
  g.set(v0, Perm::from_cycles("(1 2 3)", 3, 1));
  CHECK(g.local_action(v0) == Perm::from_cycles("(1 2 3)", 3, 1));

  std::vector<PermGroup> groups = {PermGroup::parse("(1 2),(1 2 3)", 3), PermGroup::parse("(1 2 3 4),(1 3)", 4),
                                   PermGroup::parse("(1 2 3 4 5),(2 5)(3 4)", 5), PermGroup::parse("(1 2)(3 4),(1 3)(2 4)", 4)};
  Rng rng(314);
  for (int i = 0; i < 200; ++i) {
    const auto& F = groups[i % groups.size()];
    const int d = static_cast<int>(F.degree());
    auto a = bm_random(F, rng.below(4), rng);
    auto b = bm_random(F, rng.below(4), rng);
    REQUIRE(a.in_U(F));
    REQUIRE(b.in_U(F));
    auto ab = bm_compose(a, b);
    REQUIRE(ab.in_U(F));
    for (const auto& v : bm_vertices(d, std::max(a.depth(), b.depth()) + 1)) {
      REQUIRE(ab.apply(v) == a.apply(b.apply(v)));
      REQUIRE(bm_local_action_from_action(ab, v) == bm_local_action_from_action(a, b.apply(v)) * bm_local_action_from_action(b, v));
      REQUIRE(bm_local_action_from_action(a, v) == a.local_action(v));
    }
  }
}
