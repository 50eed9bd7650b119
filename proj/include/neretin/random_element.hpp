#pragma once

// Seeded random elements of N_{d,k} and of its subgroups O, K, K^(n), O^(n).

#include <cstdint>
#include <string>
#include <vector>

#include "almost_auto.hpp"
#include "rng.hpp"

namespace neretin {

enum class ElementClass { N, O, K, K_level, O_level };

inline ElementClass parse_element_class(const std::string& s) {
  if (s == "N") return ElementClass::N;
  if (s == "O") return ElementClass::O;
  if (s == "K") return ElementClass::K;
  if (s == "K_n" || s == "Kn") return ElementClass::K_level;
  if (s == "O_n" || s == "On") return ElementClass::O_level;
  fail(ErrorKind::validation, "unknown element class '" + s + "'");
}

inline bool is_member(const AlmostAutomorphism& g, ElementClass cls, std::size_t n = 0) {
  switch (cls) {
    case ElementClass::N: return true;
    case ElementClass::O: return g.in_O();
    case ElementClass::K: return g.in_K();
    case ElementClass::K_level: return g.in_K_level(n);
    case ElementClass::O_level: return g.in_O_level(n);
  }
  return false;
}

namespace random_detail {

inline Address random_vertex(const TreeShape& shape, std::size_t height, Rng& rng) {
  Address a;
  for (std::size_t i = 0; i < height; ++i) {
    a = a.child(static_cast<int>(rng.below(static_cast<std::uint64_t>(arity_at(shape, a)))));
  }
  return a;
}

// A few random permutations at heights [lo, hi) of the tree below `base`.
inline Portrait random_portrait(const TreeShape& shape, const Address& base, std::size_t lo,
                                std::size_t hi, std::size_t count, Rng& rng) {
  Portrait p;
  if (hi <= lo) return p;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t h = lo + rng.below(hi - lo);
    Address rel;
    for (std::size_t j = 0; j < h; ++j) {
      rel = rel.child(static_cast<int>(rng.below(static_cast<std::uint64_t>(arity_at(shape, base.concat(rel))))));
    }
    p.set(rel, Perm::random(static_cast<std::size_t>(arity_at(shape, base.concat(rel))), rng));
  }
  return p;
}

}  // namespace random_detail

// Element of K^(n): portrait supported on heights n .. n+budget-1.
inline AlmostAutomorphism random_K_level(const TreeShape& shape, std::size_t n, std::size_t budget,
                                         Rng& rng) {
  auto p = random_detail::random_portrait(shape, Address(), n, n + budget, 1 + rng.below(budget + 1), rng);
  return AlmostAutomorphism::from_portrait(shape, p);
}

// Element of O^(n): rigid permutation of the level-n balls after a K^(n) element.
inline AlmostAutomorphism random_O_level(const TreeShape& shape, std::size_t n, std::size_t budget,
                                         Rng& rng) {
  if (n == 0) return random_K_level(shape, 0, budget, rng);
  auto verts = level_vertices(shape, n);
  rng.shuffle(verts);
  auto sigma = AlmostAutomorphism::level_permutation(shape, n, verts);
  return sigma * random_K_level(shape, n, budget, rng);
}

inline AlmostAutomorphism random_element(const TreeShape& shape, ElementClass cls, std::size_t budget,
                                         Rng& rng, std::size_t n = 0) {
  require(budget >= 1, ErrorKind::validation, "depth budget must be >= 1");
  switch (cls) {
    case ElementClass::K: return random_K_level(shape, 0, budget, rng);
    case ElementClass::K_level: return random_K_level(shape, n, budget, rng);
    case ElementClass::O_level: return random_O_level(shape, n, budget, rng);
    case ElementClass::O: return random_O_level(shape, 1 + rng.below(budget), budget, rng);
    case ElementClass::N: break;
  }
  // random tree pair with the same number of leaves
  std::size_t expansions = rng.below(budget + 1);
  auto grow = [&](std::size_t steps) {
    std::vector<Address> leaves;
    for (int c = 0; c < shape.k; ++c) leaves.push_back(Address().child(c));
    for (std::size_t s = 0; s < steps; ++s) {
      std::vector<std::size_t> open;
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (leaves[i].height() <= budget) open.push_back(i);
      }
      std::size_t i = open[rng.below(open.size())];
      Address a = leaves[i];
      leaves.erase(leaves.begin() + static_cast<long>(i));
      for (int c = 0; c < shape.d; ++c) leaves.push_back(a.child(c));
    }
    std::sort(leaves.begin(), leaves.end());
    return leaves;
  };
  auto dom = grow(expansions);
  auto rng_leaves = grow(expansions);
  rng.shuffle(rng_leaves);
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    Portrait tail;
    if (rng.chance(1, 3)) tail = random_detail::random_portrait(shape, dom[i], 0, 2, 1, rng);
    pieces.push_back({dom[i], rng_leaves[i], tail});
  }
  return AlmostAutomorphism::from_pieces(shape, std::move(pieces));
}

inline AlmostAutomorphism random_element(const TreeShape& shape, ElementClass cls, std::size_t budget,
                                         std::uint64_t seed, std::size_t n = 0) {
  Rng rng(seed);
  return random_element(shape, cls, budget, rng, n);
}

}  // namespace neretin
