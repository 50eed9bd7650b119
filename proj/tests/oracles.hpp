#pragma once

// Slow, independent reference computations used to check the library.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "neretin/arith.hpp"
#include "neretin/burger_mozes.hpp"
#include "neretin/perm_group.hpp"
#include "neretin/rng.hpp"
#include "neretin/tree.hpp"

namespace oracle {

// Counts automorphisms of the ball T^{<=n} by backtracking over bijections
// V -> V that preserve height and the parent relation. No closed formula.
inline std::uint64_t count_ball_automorphisms(const neretin::TreeShape& shape, std::size_t n) {
  using neretin::Address;
  std::vector<Address> verts;
  for (std::size_t h = 1; h <= n; ++h) {
    auto lv = neretin::level_vertices(shape, h);
    verts.insert(verts.end(), lv.begin(), lv.end());
  }
  std::map<Address, Address> image;
  std::map<Address, bool> used;
  image[Address()] = Address();
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == verts.size()) {
      ++count;
      return;
    }
    const Address& v = verts[i];
    for (const auto& w : verts) {
      if (w.height() != v.height() || used[w]) continue;
      if (w.parent() != image[v.parent()]) continue;
      used[w] = true;
      image[v] = w;
      self(self, i + 1);
      used[w] = false;
    }
  };
  rec(rec, 0);
  return count;
}

// (d!)^((d^m - 1)/(d - 1)) for the d-regular rooted tree, from the vertex count.
inline neretin::BigInt regular_ball_count(int d, std::size_t m) {
  using namespace neretin;
  BigInt internal = 0;
  for (std::size_t i = 0; i < m; ++i) internal += power(BigInt(d), i);
  return power(factorial(static_cast<std::uint64_t>(d)), internal.get_ui());
}

// [K : K^(n)] from k! and the d! choices at every vertex of height 1 .. n-1.
inline neretin::BigInt index_by_vertices(int d, int k, std::size_t n) {
  using namespace neretin;
  if (n == 0) return 1;
  BigInt r = factorial(static_cast<std::uint64_t>(k));
  BigInt verts = k;
  for (std::size_t i = 1; i < n; ++i) {
    r *= power(factorial(static_cast<std::uint64_t>(d)), verts.get_ui());
    verts *= d;
  }
  return r;
}

// Every subgroup of S4 is generated by at most two elements.
inline std::vector<neretin::PermGroup> subgroups_of_s4() {
  using namespace neretin;
  auto s4 = PermGroup::parse("(1 2),(1 2 3 4)", 4);
  std::set<std::vector<Perm>> seen;
  std::vector<PermGroup> out;
  for (const auto& a : s4.elements()) {
    for (const auto& b : s4.elements()) {
      PermGroup g(4, {a, b});
      if (seen.insert(g.elements()).second) out.push_back(g);
    }
  }
  return out;
}

// Burger-Mozes report straight from the element list.
inline neretin::BmReport naive_bm_report(const neretin::PermGroup& F) {
  using namespace neretin;
  const int d = static_cast<int>(F.degree());
  BmReport r;
  std::set<int> reach;
  for (const auto& g : F.elements()) reach.insert(g(0));
  r.transitive = static_cast<int>(reach.size()) == d;
  std::vector<Perm> f1;
  for (const auto& g : F.elements()) {
    if (g(0) == 0) f1.push_back(g);
  }
  r.stabilizer_order = f1.size();
  for (int x = 0; x < d; ++x) {
    bool fixed = true;
    for (const auto& g : f1) fixed = fixed && g(x) == x;
    if (fixed) r.fixed_points.push_back(x);
  }
  r.fp_at_least_3 = r.fixed_points.size() >= 3;
  r.discrete = true;
  for (const auto& g : F.elements()) {
    if (g.is_identity()) continue;
    for (int x = 0; x < d; ++x) r.discrete = r.discrete && g(x) != x;
  }
  std::size_t stab = 0;
  std::set<int> fp(r.fixed_points.begin(), r.fixed_points.end());
  for (const auto& g : F.elements()) {
    bool ok = true;
    for (int x : fp) ok = ok && fp.count(g(x)) > 0;
    if (ok) ++stab;
  }
  r.normalizer_quotient_order = stab / f1.size();
  r.hypothesis_met = r.transitive && r.fp_at_least_3;
  return r;
}

inline bool same_report(const neretin::BmReport& a, const neretin::BmReport& b) {
  return a.transitive == b.transitive && a.stabilizer_order == b.stabilizer_order && a.fixed_points == b.fixed_points &&
         a.fp_at_least_3 == b.fp_at_least_3 && a.discrete == b.discrete &&
         a.normalizer_quotient_order == b.normalizer_quotient_order && a.hypothesis_met == b.hypothesis_met;
}

// Full convolution of indicator functions on the group, by counting.
inline std::vector<std::int64_t> convolve_indicators(const neretin::FiniteGroup& Q, const std::vector<int>& A,
                                                     const std::vector<int>& B) {
  std::vector<std::int64_t> f(Q.size(), 0);
  for (int u : A) {
    for (int v : B) ++f[Q.mul(u, v)];
  }
  return f;
}

// Number of orbits of Q under x -> a x b (a, b in k) and conjugation by h:
// the dimension of the corner functions commuting with every h.
inline std::size_t commutant_by_orbits(const neretin::FiniteGroup& Q, const neretin::FiniteGroup::Subset& k,
                                       const neretin::FiniteGroup::Subset& h) {
  std::vector<int> seen(Q.size(), 0);
  std::size_t orbits = 0;
  for (int x = 0; x < static_cast<int>(Q.size()); ++x) {
    if (seen[x]) continue;
    ++orbits;
    std::vector<int> queue{x};
    seen[x] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int y = queue[i];
      std::vector<int> next;
      for (int a : k) {
        next.push_back(Q.mul(a, y));
        next.push_back(Q.mul(y, a));
      }
      for (int c : h) next.push_back(Q.conj(c, y));
      for (int z : next) {
        if (!seen[z]) {
          seen[z] = 1;
          queue.push_back(z);
        }
      }
    }
  }
  return orbits;
}

// Two random permutations of degree 3..7; the trivial group when the closure
// exceeds 5000 elements.
inline neretin::FiniteGroup random_group(neretin::Rng& rng) {
  using namespace neretin;
  int n = 3 + static_cast<int>(rng.below(5));
  std::vector<Perm> gens;
  for (int i = 0; i < 2; ++i) {
    std::vector<std::uint8_t> img(n);
    for (int j = 0; j < n; ++j) img[j] = static_cast<std::uint8_t>(j);
    rng.shuffle(img);
    gens.push_back(Perm(img));
  }
  PermGroup P(n, gens);
  if (P.order() > 5000) return FiniteGroup::cyclic(1);
  return FiniteGroup(P);
}

}  // namespace oracle
