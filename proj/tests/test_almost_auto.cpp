#include <catch_amalgamated.hpp>

#include "neretin/dsl.hpp"
#include "neretin/random_element.hpp"

using namespace neretin;

namespace {

const TreeShape T22(2, 2);

Address A(const char* s, TreeShape sh = T22) { return Address::parse(s, sh); }

// Compares two elements through their action on every vertex of height h.
bool same_action(const Element& g, const Element& h, std::size_t height) {
  for (const auto& v : level_vertices(g.shape(), height)) {
    if (g.apply(v) != h.apply(v)) return false;
  }
  return true;
}

Address apply2(const Element& g, const Element& h, const Address& v) { return g.apply(h.apply(v)); }

}  // namespace

TEST_CASE("shift element basics") {
  auto s = shift_element();
  CHECK(s.to_string() == "{0->00, 10->01, 11->1}");
  CHECK(s.pieces().size() == 3u);
  CHECK((s * s.inverse()).is_identity());
  CHECK((s.inverse() * s).is_identity());
  CHECK(s.evaluate_ball(A("10")) == std::pair{A("01"), 0L});
  CHECK(s.evaluate_ball(A("0")) == std::pair{A("00"), 1L});
  CHECK_THROWS_MATCHES(s.evaluate_ball(A("1")), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::ball_not_rigid;
                       }));
  CHECK_FALSE(s.in_O());
  CHECK_FALSE(s.in_K());
  CHECK_FALSE(s.in_O_level(1));
  auto ss = s * s;
  // s contracts B^11 onto B^1, then contracts B^11 (inside B^1) again
  CHECK(ss.evaluate_ball(A("111")) == std::pair{A("1"), -2L});
  CHECK(ss.evaluate_ball(A("110")) == std::pair{A("01"), -1L});
  CHECK(ss.evaluate_ball(A("10")) == std::pair{A("001"), 1L});
  CHECK(ss.evaluate_ball(A("0")) == std::pair{A("000"), 2L});
  CHECK(ss.min_exponent() == -2);
  CHECK(ss.max_exponent() == 2);
}

TEST_CASE("identity on a refined antichain canonicalizes") {
  auto g = Element::from_pieces(T22, {{A("00"), A("00"), {}}, {A("01"), A("01"), {}}, {A("1"), A("1"), {}}});
  CHECK(g.is_identity());
  CHECK(g == Element::identity(T22));
  CHECK(g.to_string() == "{0->0, 1->1}");
  for (auto cls : {ElementClass::N, ElementClass::O, ElementClass::K}) CHECK(is_member(g, cls));
  for (std::size_t n = 0; n < 5; ++n) {
    CHECK(g.in_K_level(n));
    CHECK(g.in_O_level(n));
  }
  CHECK(g.evaluate_ball(A("0110")) == std::pair{A("0110"), 0L});
}

TEST_CASE("portrait swap membership") {
  // swap the two children of vertex 10
  auto g = Element::from_portrait(T22, Portrait::single(A("10"), Perm::transposition(2, 0, 1)));
  CHECK(g.in_O());
  CHECK(g.in_K());
  CHECK(g.in_K_level(1));
  CHECK(g.in_K_level(2));
  CHECK_FALSE(g.in_K_level(3));
  CHECK(g.apply(A("100")) == A("101"));
  CHECK(g.in_O_level(3));
  CHECK(g.in_O_level(2));
  // swap at root child 0: displaces 00
  auto h = Element::from_portrait(T22, Portrait::single(A("0"), Perm::transposition(2, 0, 1)));
  CHECK(h.evaluate_ball(A("00")).first == A("01"));
  CHECK(h.to_string() == "{0->0, 1->1 | tails: 0:( : (0 1))}");
}

TEST_CASE("dsl round trip and errors") {
  auto g = parse_element("{0->00, 10->01, 11->1 | tails: 10:( : (0 1), 0 : (0 1))}", T22);
  CHECK(parse_element(g.to_string(), T22) == g);
  CHECK(g.apply(A("100")) == A("011"));
  CHECK(g.apply(A("1000")) == A("0111"));
  CHECK(g.apply(A("1010")) == A("0100"));
  auto root_piece = parse_element("{->  | tails: :( : (0 1))}", T22);
  CHECK(root_piece.to_string() == "{0->1, 1->0}");
  CHECK_THROWS_AS(parse_element("{0->00, 10->01", T22), Error);
  CHECK_THROWS_AS(parse_element("{0->00, 10->01, 11->0}", T22), Error);
  CHECK_THROWS_AS(parse_element("{0->00, 10->01, 12->1}", T22), Error);
  try {
    parse_element("{0->00 10->01, 11->1}", T22);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
  for (std::uint64_t seed = 1; seed < 100; ++seed) {
    auto r = random_element(TreeShape(3, 2), ElementClass::N, 3, seed);
    CHECK(parse_element(r.to_string(), TreeShape(3, 2)) == r);
  }
}

TEST_CASE("group laws against the vertex action") {
  for (auto sh : {TreeShape(2, 2), TreeShape(3, 2), TreeShape(2, 3)}) {
    Rng rng(sh.d * 100 + sh.k);
    for (int i = 0; i < 150; ++i) {
      auto f = random_element(sh, ElementClass::N, 3, rng);
      auto g = random_element(sh, ElementClass::N, 3, rng);
      auto h = random_element(sh, ElementClass::N, 3, rng);
      REQUIRE((f * g) * h == f * (g * h));
      REQUIRE((f * f.inverse()).is_identity());
      REQUIRE((f * Element::identity(sh)) == f);
      auto fg = f * g;
      for (const auto& v : level_vertices(sh, 7)) {
        REQUIRE(fg.apply(v) == apply2(f, g, v));
      }
    }
  }
}

TEST_CASE("canonical form is invariant under refinement") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    auto g = random_element(T22, ElementClass::N, 3, rng);
    auto refined = g.pieces_refined_to(5);
    auto again = Element::from_pieces(T22, refined);
    REQUIRE(again == g);
    REQUIRE(same_action(again, g, 8));
    // merge order independence: shuffle the input piece order
    rng.shuffle(refined);
    REQUIRE(Element::from_pieces(T22, refined) == g);
  }
}

TEST_CASE("exponent cocycle and evaluate_ball refinement invariance") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    auto g = random_element(T22, ElementClass::N, 3, rng);
    auto h = random_element(T22, ElementClass::N, 3, rng);
    auto gh = g * h;
    for (const auto& a : level_vertices(T22, 6)) {
      auto [ha, eh] = h.evaluate_ball(a);
      auto [gha, eg] = g.evaluate_ball(ha);
      auto [img, e] = gh.evaluate_ball(a);
      REQUIRE(img == gha);
      REQUIRE(e == eh + eg);
    }
    for (const auto& p : g.pieces()) {
      REQUIRE(g.evaluate_ball(p.domain).second == p.exponent());
    }
  }
}

TEST_CASE("membership lattice") {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    auto cls = std::vector{ElementClass::N, ElementClass::O, ElementClass::K, ElementClass::K_level,
                           ElementClass::O_level}[i % 5];
    std::size_t n = 1 + i % 3;
    auto g = random_element(T22, cls, 3, rng, n);
    REQUIRE(is_member(g, cls, n));
    for (std::size_t m = 0; m < 5; ++m) {
      if (g.in_K_level(m)) {
        REQUIRE(g.in_O_level(m));
        REQUIRE(g.in_K());
        REQUIRE(g.in_O());
        for (std::size_t j = 0; j <= m; ++j) REQUIRE(g.in_K_level(j));
      }
      if (g.in_O_level(m)) REQUIRE(g.in_O());
    }
    // O^(n): every level-n ball goes isometrically onto a level-n ball
    for (std::size_t m = 1; m < 4; ++m) {
      bool brute = true;
      for (const auto& v : level_vertices(T22, m)) {
        try {
          auto [img, e] = g.evaluate_ball(v);
          if (e != 0) brute = false;
        } catch (const Error&) {
          brute = false;
        }
      }
      REQUIRE(g.in_O_level(m) == brute);
    }
  }
}

TEST_CASE("nontrivial elements displace some ball") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    auto g = random_element(T22, ElementClass::N, 3, rng);
    if (g.is_identity()) continue;
    bool found = false;
    for (const auto& v : level_vertices(T22, 8)) {
      if (!g.apply(v).comparable(v)) {
        found = true;
        break;
      }
    }
    REQUIRE(found);
  }
}

TEST_CASE("fixed seed regression vectors") {
  CHECK(random_element(T22, ElementClass::N, 3, std::uint64_t{1}).to_string() ==
        "{0->00, 10->01, 11->1 | tails: 10:(0 : (0 1)), 11:( : (0 1))}");
  CHECK(random_element(T22, ElementClass::O, 3, std::uint64_t{2}).to_string() ==
        "{00->01, 01->11, 10->00, 11->10}");
  CHECK(random_element(T22, ElementClass::K, 3, std::uint64_t{3}).to_string() ==
        "{0->0, 1->1 | tails: 0:(1 : (0 1))}");
}
