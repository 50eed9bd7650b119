#include <catch_amalgamated.hpp>

#include "neretin/dsl.hpp"
#include "neretin/orbit.hpp"
#include "neretin/random_element.hpp"
#include "oracles.hpp"

using namespace neretin;

namespace {

const TreeShape T22(2, 2);

}  // namespace

TEST_CASE("displaced balls") {
  auto s = shift_element();
  auto b = find_displaced_ball(s);
  CHECK(b.w.to_string() == "10");
  CHECK(b.image.to_string() == "01");
  CHECK(b.n0 == 2u);
  auto h = Element::from_portrait(T22, Portrait::single(Address::parse("0", T22), Perm::transposition(2, 0, 1)));
  auto bh = find_displaced_ball(h);
  CHECK(bh.w.to_string() == "00");
  CHECK(bh.n0 == 2u);
  CHECK_THROWS_MATCHES(find_displaced_ball(Element::identity(T22)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::identity_input;
                       }));
  Rng rng(41);
  for (auto sh : {TreeShape(2, 2), TreeShape(3, 2), TreeShape(2, 3)}) {
    for (int i = 0; i < 100; ++i) {
      auto g = random_element(sh, ElementClass::N, 3, rng);
      if (g.is_identity()) continue;
      auto d = find_displaced_ball(g);
      auto [img, e] = g.evaluate_ball(d.w);
      REQUIRE(img == d.image);
      REQUIRE_FALSE(img.comparable(d.w));
      REQUIRE(d.n0 == d.w.height());
    }
  }
}

TEST_CASE("witness bounds for the shift") {
  auto s = shift_element();
  CHECK(neretin_witness_bound(s, 2) == 1);
  CHECK(neretin_witness_bound(s, 3) == 1);
  CHECK(neretin_witness_bound(s, 4) == 3);
  CHECK(neretin_witness_bound(s, 5) == 315);
  for (std::size_t m = 1; m <= 5; ++m) {
    BigInt direct = exact_div(factorial(power_u64(2, m)), oracle::regular_ball_count(2, m));
    CHECK(neretin_witness_bound(s, 2 + m) == direct);
  }
}

TEST_CASE("consecutive witness bounds divide") {
  for (int d : {2, 3}) {
    for (std::size_t m = 0; m < 4; ++m) {
      BigInt a = witness_bound(d, 0, m), b = witness_bound(d, 0, m + 1);
      CHECK(mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0);
    }
  }
}

TEST_CASE("star table against a second formula") {
  auto s = shift_element();
  auto rows = star_table(s, 2, 8);
  REQUIRE(rows.size() == 7u);
  CHECK(rows.front().lower_bound == 1);
  CHECK(rows.front().product == measure_level(T22, 2) * measure_level(T22, 2));
  for (const auto& r : rows) {
    BigInt idx = oracle::index_by_vertices(2, 2, r.n);
    BigInt lb = r.n <= 2 ? BigInt(1) : exact_div(factorial(power_u64(2, r.n - 2)), oracle::regular_ball_count(2, r.n - 2));
    CHECK(r.lower_bound == lb);
    CHECK(r.product == Rational(lb) / Rational(idx * idx));
    CHECK(r.product == Rational(r.lower_bound) * r.mu_squared);
  }
  auto g = parse_element("{0->00, 10->01, 11->1 | tails: 11:( : (0 1))}", T22);
  for (const auto& r : star_table(g, 1, 6)) CHECK(r.product == Rational(r.lower_bound) * r.mu_squared);
}

TEST_CASE("growth certificate for the shift") {
  auto s = shift_element();
  auto cert = growth_certificate(s);
  CHECK(cert.n0 == 2u);
  CHECK(cert.exponent == 9u);
  CHECK(cert.n1 == 11u);
  CHECK(cert.n1 <= 32u);
  // exact ratios from n1 up to a few levels past the factor bound
  for (std::size_t n = cert.n1; n <= cert.tail_level + 2; ++n) CHECK(star_ratio(2, 2, 2, n) > 1);
  CHECK_FALSE(star_ratio(2, 2, 2, cert.n1 - 1) > 1);
  for (auto [n, up] : cert.exact) CHECK(up == (n >= cert.n1));
}

TEST_CASE("stirling bound at integer arguments") {
  CHECK(Rational(2721, 1001) < Rational(2718281829, 1000000000));
  CHECK(Rational(2721, 1001) > Rational(2718281, 1000000));
  for (std::uint64_t M : {1, 2, 3, 4, 8, 16, 64, 256, 1024, 4096}) CHECK(stirling_lower_bound_holds(M));
}

TEST_CASE("orbit certificates") {
  auto s = shift_element();
  auto e = Element::identity(T22);
  for (std::size_t n = 1; n <= 3; ++n) {
    auto c = orbit_lower_bound_bfs({e, n}, default_orbit_generators(T22, n), 100);
    CHECK(c.count == 1u);
    CHECK_FALSE(c.exhausted);
  }
  auto c3 = orbit_lower_bound_bfs({s, 3}, default_orbit_generators(T22, 3), 50);
  CHECK(c3.count >= 2u);
  CHECK(verify_certificate(c3));
  auto c1 = orbit_lower_bound_bfs({s, 1}, level_generators(T22, 2, 3), 50);
  CHECK(c1.count == 1u);
  CHECK(verify_certificate(c1));
  // at level 4 the witness bound LB(4) = 3 is met by the search
  auto c4 = orbit_lower_bound_bfs({s, 4}, default_orbit_generators(T22, 4), 20);
  CHECK(BigInt(static_cast<unsigned long>(c4.count)) >= neretin_witness_bound(s, 4));
  CHECK(verify_certificate(c4));
  // generators must normalize K^(n)
  auto cross = parse_element("{1000->1010, 1010->1000, 1001->1001, 1011->1011, 0->0, 11->11}", T22);
  CHECK_THROWS_MATCHES(orbit_lower_bound_bfs({s, 3}, {cross}, 10), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& x) {
                         return x.kind() == ErrorKind::validation;
                       }));
}

TEST_CASE("orbit count is monotone in budget and generators") {
  auto s = shift_element();
  auto gens = default_orbit_generators(T22, 2);
  std::size_t prev = 0;
  for (std::size_t budget : {1, 2, 5, 10, 40, 100}) {
    auto c = orbit_lower_bound_bfs({s, 2}, gens, budget);
    CHECK(c.count >= prev);
    CHECK(verify_certificate(c));
    prev = c.count;
  }
  std::vector<Element> fewer(gens.begin(), gens.begin() + 2);
  CHECK(orbit_lower_bound_bfs({s, 2}, fewer, 100).count <= orbit_lower_bound_bfs({s, 2}, gens, 100).count);
  // a forged certificate fails verification
  auto c = orbit_lower_bound_bfs({s, 2}, gens, 10);
  REQUIRE(c.count >= 2u);
  c.witnesses[1] = c.witnesses[0];
  CHECK_FALSE(verify_certificate(c));
}

TEST_CASE("random certificates re-verify") {
  Rng rng(77);
  for (int i = 0; i < 20; ++i) {
    auto g = random_element(T22, ElementClass::N, 2, rng);
    std::size_t n = 1 + rng.below(2);
    auto c = orbit_lower_bound_bfs({g, n}, default_orbit_generators(T22, n), 30);
    REQUIRE(verify_certificate(c));
  }
}
