#pragma once

// Seeded generators for measures and finite conjugator groups in N_{2,2}.

#include <algorithm>
#include <vector>

#include "neretin/bruhat.hpp"
#include "neretin/random_element.hpp"

namespace gen {

using namespace neretin;

inline Rational small_rational(Rng& rng) {
  long num = static_cast<long>(rng.below(9)) - 4;
  if (num == 0) num = 1;
  Rational q(num, static_cast<long>(1 + rng.below(3)));
  q.canonicalize();
  return q;
}

// Mixed atoms and density at `level`; representatives are shallow so that
// convolutions stay small.
inline BruhatMeasure random_measure(const TreeShape& shape, std::size_t level, Rng& rng,
                                    std::size_t max_atoms = 2, std::size_t max_density = 2) {
  BruhatMeasure f(shape);
  std::size_t na = rng.below(max_atoms + 1);
  std::size_t nd = rng.below(max_density + 1);
  if (na + nd == 0) nd = 1;
  for (std::size_t i = 0; i < na; ++i) {
    f.add_atom(random_element(shape, rng.chance(1, 2) ? ElementClass::N : ElementClass::O, 1, rng),
               small_rational(rng));
  }
  for (std::size_t i = 0; i < nd; ++i) {
    auto a = random_element(shape, rng.chance(1, 2) ? ElementClass::N : ElementClass::O_level, 1, rng, level);
    f.add_density({a, level}, small_rational(rng));
  }
  return f;
}

// The 24 rigid permutations of the level-2 balls of T_{2,2}.
inline std::vector<Element> level2_symmetric_group() {
  TreeShape sh(2, 2);
  auto verts = level_vertices(sh, 2);
  std::vector<Element> out;
  std::vector<std::size_t> idx{0, 1, 2, 3};
  do {
    std::vector<Address> imgs;
    for (auto i : idx) imgs.push_back(verts[i]);
    out.push_back(Element::level_permutation(sh, 2, imgs));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

// Aut(T^{<=2}) of T_{2,2} as rooted automorphisms (order 8).
inline std::vector<Element> ball2_automorphisms() {
  TreeShape sh(2, 2);
  std::vector<Element> out;
  Perm id = Perm::identity(2), sw = Perm::transposition(2, 0, 1);
  for (int mask = 0; mask < 8; ++mask) {
    Portrait p;
    if (mask & 1) p.set(Address(), sw);
    if (mask & 2) p.set(Address().child(0), sw);
    if (mask & 4) p.set(Address().child(1), sw);
    out.push_back(Element::from_portrait(sh, p));
  }
  return out;
}

inline BruhatMeasure conjugation_average(const BruhatMeasure& f, const std::vector<Element>& group) {
  BruhatMeasure sum(f.shape());
  for (const auto& h : group) {
    sum += convolve(convolve(BruhatMeasure::atom(h), f), BruhatMeasure::atom(h.inverse()));
  }
  return sum;
}

}  // namespace gen
