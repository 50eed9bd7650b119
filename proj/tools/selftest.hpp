#pragma once

// Quick invariant suite behind `neretin selftest`. Every check is seeded, so
// the printed report is reproducible.

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "neretin/afp.hpp"
#include "neretin/bruhat.hpp"
#include "neretin/burger_mozes.hpp"
#include "neretin/hecke.hpp"
#include "neretin/hnn.hpp"
#include "neretin/orbit.hpp"
#include "neretin/random_element.hpp"

namespace cli {

using namespace neretin;

struct SelfCheck {
  std::string name;
  std::function<bool(Rng&)> run;
};

inline BruhatMeasure selftest_measure(const TreeShape& shape, std::size_t level, Rng& rng) {
  BruhatMeasure f(shape);
  auto coeff = [&] { return Rational(static_cast<long>(rng.below(7)) - 3, 1 + static_cast<long>(rng.below(2))); };
  std::size_t atoms = 1 + rng.below(2);
  for (std::size_t i = 0; i < atoms; ++i) {
    Rational c = coeff();
    c.canonicalize();
    f.add_atom(random_element(shape, ElementClass::N, 1, rng), c);
  }
  Rational c = coeff();
  c.canonicalize();
  f.add_density({random_element(shape, ElementClass::O_level, 1, rng, level), level}, c);
  return f;
}

inline std::vector<SelfCheck> selftest_checks() {
  const TreeShape T22(2, 2);
  std::vector<SelfCheck> checks;
  checks.push_back({"ball automorphism counts follow the level recursion", [](Rng&) {
                      for (auto [d, k] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
                        TreeShape sh(d, k);
                        for (std::uint64_t n = 1; n < 5; ++n) {
                          BigInt next = ball_automorphism_count(sh, n) *
                                      power(factorial(static_cast<std::uint64_t>(d)), level_count(sh, n).get_ui());
                          if (ball_automorphism_count(sh, n + 1) != next) return false;
                        }
                      }
                      return ball_automorphism_count(TreeShape(2, 2), 1) == 2;
                    }});
  checks.push_back({"witness bounds for the shift are 1, 3, 315", [](Rng&) {
                      auto s = shift_element();
                      return neretin_witness_bound(s, 3) == 1 && neretin_witness_bound(s, 4) == 3 &&
                             neretin_witness_bound(s, 5) == 315;
                    }});
  checks.push_back({"star products grow from a computable level", [](Rng&) {
                      auto cert = growth_certificate(shift_element());
                      auto rows = star_table(shift_element(), 2, 8);
                      for (const auto& r : rows) {
                        if (r.product != Rational(r.lower_bound) * r.mu_squared) return false;
                      }
                      return cert.n1 <= 32;
                    }});
  checks.push_back({"fourier coefficients split over finer cosets", [T22](Rng& rng) {
                      for (int i = 0; i < 10; ++i) {
                        auto f = selftest_measure(T22, 1 + rng.below(2), rng);
                        auto g = random_element(T22, ElementClass::N, 1, rng);
                        std::size_t n = rng.below(2);
                        Rational sum = 0;
                        for (const auto& p : partition_coset({g, n}, n + 1)) sum += fourier_coefficient(f, p);
                        if (sum != fourier_coefficient(f, {g, n})) return false;
                      }
                      return true;
                    }});
  checks.push_back({"atom minus averaged coset vanishes", [](Rng&) {
                      auto s = shift_element();
                      for (std::size_t n = 1; n <= 2; ++n) {
                        auto f = BruhatMeasure::atom(s) - BruhatMeasure::indicator({s, n}, 1 / measure_level(s.shape(), n));
                        if (!vanishing_check(f, n) || vanishing_check(BruhatMeasure::atom(s), n)) return false;
                      }
                      return true;
                    }});
  checks.push_back({"orbit certificate for the shift at level 3", [T22](Rng&) {
                      auto c = orbit_lower_bound_bfs({shift_element(), 3}, default_orbit_generators(T22, 3), 8);
                      auto c1 = orbit_lower_bound_bfs({shift_element(), 1}, level_generators(T22, 2, 3), 8);
                      return c.count >= 2 && verify_certificate(c) && c1.count == 1;
                    }});
  checks.push_back({"britton reduction survives relation rewrites", [](Rng& rng) {
                      BaumslagSolitarBase bs(2, 3);
                      for (int i = 0; i < 5; ++i) {
                        auto w = hnn_random_word(bs, 1 + rng.below(5), rng);
                        auto r = britton_reduce(bs, w);
                        auto cur = w;
                        for (int j = 0; j < 100; ++j) {
                          cur = hnn_random_rewrite(bs, cur, rng);
                          auto rc = britton_reduce(bs, cur);
                          if (rc.sigma() != r.sigma() || rc.tau() != r.tau()) return false;
                        }
                      }
                      auto wit = hnn_witness(bs, hnn_letter(bs, BigInt(6)), 2, BigInt(1), BigInt(1), 10);
                      for (std::size_t N = 1; N <= 10; ++N) {
                        if (wit.taus[N] != hnn_case1_tau(wit, N)) return false;
                      }
                      return true;
                    }});
  checks.push_back({"amalgam witnesses lengthen", [](Rng& rng) {
                      auto G = AfpInstance::s3_c2();
                      const auto& A = G.factor(0);
                      int a1 = A.index_of(Perm::from_cycles("(0 2)", 3)), a2 = A.index_of(Perm::from_cycles("(1 2)", 3));
                      for (int i = 0; i < 30; ++i) {
                        auto w = afp_random_word(G, 1 + rng.below(5), rng);
                        if (afp_normal_form(G, w).length() == 0) continue;
                        auto wit = afp_witness(G, w, a1, a2, a1, 6, false);
                        for (std::size_t N = 1; N < wit.lengths.size(); ++N) {
                          if (wit.lengths[N] <= wit.lengths[N - 1]) return false;
                        }
                      }
                      return true;
                    }});
  checks.push_back({"Burger-Mozes report for C3 x S3", [](Rng&) {
                      auto r = bm_check(PermGroup::parse("(1 4 7)(2 5 8)(3 6 9),(1 2)(4 5)(7 8),(1 2 3)(4 5 6)(7 8 9)", 9));
                      return r.hypothesis_met && r.fixed_points.size() == 3 && r.normalizer_quotient_order == 3 && !r.discrete;
                    }});
  checks.push_back({"cocycle identity for local actions", [](Rng& rng) {
                      auto F = PermGroup::parse("(1 2 3 4),(1 3)", 4);
                      for (int i = 0; i < 20; ++i) {
                        auto a = bm_random(F, rng.below(3), rng), b = bm_random(F, rng.below(3), rng);
                        auto ab = bm_compose(a, b);
                        for (const auto& v : bm_vertices(4, 3)) {
                          if (ab.local_action(v) != a.local_action(b.apply(v)) * b.local_action(v)) return false;
                        }
                      }
                      return true;
                    }});
  checks.push_back({"Hecke algebra of S3 modulo a transposition", [](Rng&) {
                      auto p = hecke_preset("s3");
                      HeckeAlgebra H(p.Q, p.k);
                      return H.dimension() == 2 && H.structure_constant(1, 1, 0) == 4 && H.structure_constant(1, 1, 1) == 2 &&
                             H.associative() && H.unital() && H.mass_identity() && corner_commutant_dimension(H, p.h) == 2;
                    }});
  return checks;
}

inline int run_selftest(std::uint64_t seed, std::ostream& out) {
  int failed = 0;
  auto checks = selftest_checks();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Rng rng(seed + i);
    bool ok = false;
    std::string why;
    try {
      ok = checks[i].run(rng);
    } catch (const Error& e) {
      why = std::string(" (") + to_string(e.kind()) + ": " + e.what() + ")";
    }
    out << (ok ? "ok   " : "FAIL ") << checks[i].name << why << "\n";
    failed += !ok;
  }
  out << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace cli
