#pragma once

// Haar measure and coset calculus on N_{d,k}, normalized so that mu(K) = 1.
// A coset gK^(n) is stored with a representative; coset_key() gives a
// canonical representative, so keys can be compared and ordered.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "almost_auto.hpp"
#include "arith.hpp"

namespace neretin {

// Cap on enumerated pieces (partitions, transversals); overridable through
// the NERETIN_MAX_PIECES environment variable.
inline std::uint64_t max_pieces() {
  static const std::uint64_t cap = [] {
    if (const char* s = std::getenv("NERETIN_MAX_PIECES")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(s, &end, 10);
      if (end != s && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{1000000};
  }();
  return cap;
}

// mu(K^(n)) = 1 / [K : K^(n)].
inline Rational measure_level(const TreeShape& shape, std::size_t n) {
  return Rational(BigInt(1), ball_automorphism_count(shape, n));
}

struct Coset {
  Element rep;
  std::size_t level = 0;
};

inline Rational measure(const Coset& c) { return measure_level(c.rep.shape(), c.level); }

inline bool coset_member(const Element& gamma, const Coset& c) {
  return (c.rep.inverse() * gamma).in_K_level(c.level);
}

inline bool coset_equal(const Coset& a, const Coset& b) {
  require(a.level == b.level, ErrorKind::validation, "coset_equal needs equal levels");
  return coset_member(b.rep, a);
}

namespace haar_detail {

// Leaves of g below one level-n vertex v, keyed by address relative to v.
using LeafMap = std::map<Address, Address>;

// Merges sibling blocks whose images form a full sibling block; the order of
// the images does not matter since K^(n) acts on the right.
inline void merge_blocks(const TreeShape& shape, const Address& v, LeafMap& leaves) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t deepest = 0;
    for (const auto& [x, img] : leaves) deepest = std::max(deepest, x.height());
    for (std::size_t h = deepest; h >= 1 && !changed; --h) {
      for (auto it = leaves.begin(); it != leaves.end(); ++it) {
        if (it->first.height() != h) continue;
        Address x = it->first.parent();
        int arity = arity_at(shape, v.concat(x));
        bool ok = true;
        Address w;
        for (int c = 0; c < arity && ok; ++c) {
          auto jt = leaves.find(x.child(c));
          if (jt == leaves.end() || jt->second.is_root()) {
            ok = false;
            break;
          }
          if (c == 0) w = jt->second.parent();
          ok = jt->second.parent() == w;
        }
        if (!ok || arity_at(shape, w) != arity) continue;
        for (int c = 0; c < arity; ++c) leaves.erase(x.child(c));
        leaves[x] = w;
        changed = true;
        break;
      }
    }
  }
}

inline std::string subtree_key(const LeafMap& leaves, const Address& x) {
  auto it = leaves.find(x);
  if (it != leaves.end()) return "<" + it->second.labels() + ">";
  std::vector<std::string> kids;
  for (int c = 0;; ++c) {
    Address y = x.child(c);
    auto jt = leaves.lower_bound(y);
    if (jt == leaves.end() || !y.is_prefix_of(jt->first)) break;
    kids.push_back(subtree_key(leaves, y));
  }
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

inline void rebuild(const LeafMap& leaves, const Address& x, const Address& base,
                    std::vector<Piece>& out) {
  auto it = leaves.find(x);
  if (it != leaves.end()) {
    out.push_back({base, it->second, Portrait()});
    return;
  }
  std::vector<std::pair<std::string, Address>> kids;
  for (int c = 0;; ++c) {
    Address y = x.child(c);
    auto jt = leaves.lower_bound(y);
    if (jt == leaves.end() || !y.is_prefix_of(jt->first)) break;
    kids.emplace_back(subtree_key(leaves, y), y);
  }
  std::sort(kids.begin(), kids.end());
  for (std::size_t i = 0; i < kids.size(); ++i) {
    rebuild(leaves, kids[i].second, base.child(static_cast<int>(i)), out);
  }
}

inline std::map<Address, LeafMap> leaves_by_vertex(const Element& g, std::size_t n) {
  std::map<Address, LeafMap> by_vertex;
  for (const auto& p : g.pieces_refined_to(n)) {
    Address v = p.domain.prefix(n);
    by_vertex[v][p.domain.suffix(n)] = p.image;
  }
  return by_vertex;
}

}  // namespace haar_detail

// Canonical representative of gK^(n): equal for g and h iff gK^(n) = hK^(n).
inline Element coset_key(const Element& g, std::size_t n) {
  using namespace haar_detail;
  std::vector<Piece> pieces;
  for (auto& [v, leaves] : leaves_by_vertex(g, n)) {
    merge_blocks(g.shape(), v, leaves);
    rebuild(leaves, Address(), v, pieces);
  }
  return Element::from_pieces(g.shape(), std::move(pieces));
}

inline Coset canonical(const Coset& c) { return {coset_key(c.rep, c.level), c.level}; }

// For each level-n vertex, the image set g(B^v) written as its minimal ball
// decomposition. Right K^(n)-invariant; distinct cosets may collide.
inline std::string coset_fingerprint(const Coset& c) {
  using namespace haar_detail;
  std::string out;
  const auto& shape = c.rep.shape();
  for (auto& [v, leaves] : leaves_by_vertex(c.rep, c.level)) {
    std::set<Address> balls;
    for (const auto& [x, img] : leaves) balls.insert(img);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& b : balls) {
        if (b.is_root()) continue;
        Address w = b.parent();
        int arity = arity_at(shape, w);
        bool full = true;
        for (int i = 0; i < arity && full; ++i) full = balls.count(w.child(i)) > 0;
        if (!full) continue;
        for (int i = 0; i < arity; ++i) balls.erase(w.child(i));
        balls.insert(w);
        changed = true;
        break;
      }
    }
    out += v.labels() + ":";
    for (const auto& b : balls) out += b.labels() + ",";
    out += ";";
  }
  return out;
}

// Coset representatives of K^(n) / K^(m): portraits with arbitrary
// permutations at the vertices of heights n .. m-1, enumerated with the first
// vertex (planar order, top level first) most significant and permutations in
// lexicographic order.
inline void for_each_transversal(const TreeShape& shape, std::size_t n, std::size_t m,
                                 const std::function<void(const Portrait&)>& fn) {
  require(m >= n, ErrorKind::validation, "partition level below coset level");
  BigInt count = exact_div(ball_automorphism_count(shape, m), ball_automorphism_count(shape, n));
  require(count <= BigInt(static_cast<unsigned long>(max_pieces())), ErrorKind::resource_limit,
          "transversal of size " + count.get_str() + " exceeds the cap of " +
              std::to_string(max_pieces()));
  std::vector<Address> verts;
  for (std::size_t h = n; h < m; ++h) {
    auto lv = level_vertices(shape, h);
    verts.insert(verts.end(), lv.begin(), lv.end());
  }
  auto all_perms = [](int degree) {
    std::vector<Perm> ps;
    std::vector<std::uint8_t> img(degree);
    for (int i = 0; i < degree; ++i) img[i] = static_cast<std::uint8_t>(i);
    do {
      ps.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return ps;
  };
  const auto perms_d = all_perms(shape.d);
  const auto perms_k = all_perms(shape.k);
  std::vector<std::size_t> idx(verts.size(), 0);
  for (;;) {
    Portrait p;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      p.set(verts[i], (verts[i].is_root() ? perms_k : perms_d)[idx[i]]);
    }
    fn(p);
    std::size_t i = verts.size();
    while (i > 0) {
      --i;
      std::size_t size = verts[i].is_root() ? perms_k.size() : perms_d.size();
      if (++idx[i] < size) break;
      idx[i] = 0;
      if (i == 0) return;
    }
    if (verts.empty()) return;
  }
}

inline std::vector<Element> transversal(const TreeShape& shape, std::size_t n, std::size_t m) {
  std::vector<Element> out;
  for_each_transversal(shape, n, m, [&](const Portrait& p) { out.push_back(Element::from_portrait(shape, p)); });
  return out;
}

// gK^(n) as a disjoint union of level-m cosets g kappa_i K^(m).
inline std::vector<Coset> partition_coset(const Coset& c, std::size_t m) {
  std::vector<Coset> out;
  for_each_transversal(c.rep.shape(), c.level, m, [&](const Portrait& p) {
    out.push_back({c.rep * Element::from_portrait(c.rep.shape(), p), m});
  });
  return out;
}

}  // namespace neretin
