#pragma once

// Burger-Mozes groups U(F) for F <= S_d: the hypothesis check for the Hecke
// corner, and finite-depth elements of the edge fixator with their local
// actions.
//
// Coloring: the distinguished edge e has color 0 at both endpoints. A vertex is
// (side, c_1 ... c_r): start at endpoint `side` of e and follow edges of colors
// c_1, ..., c_r, with c_1 != 0 and c_{i+1} != c_i. An edge carries the same
// color seen from both of its ends, so this is a legal coloring.

#include <map>
#include <string>
#include <vector>

#include "perm_group.hpp"
#include "rng.hpp"

namespace neretin {

struct BmReport {
  bool transitive = false;
  std::vector<int> stabilizer;      // F_1 as element indices into F.elements()
  std::size_t stabilizer_order = 0;
  std::vector<int> fixed_points;    // fixed points of F_1, 0-based
  bool fp_at_least_3 = false;
  bool discrete = false;            // F acts freely
  std::size_t normalizer_quotient_order = 0;  // |Stab_F(fp)| / |F_1|
  bool hypothesis_met = false;
};

inline BmReport bm_check(const PermGroup& F) {
  BmReport r;
  r.transitive = F.is_transitive();
  auto f1 = F.point_stabilizer(0);
  r.stabilizer_order = f1.order();
  for (std::size_t i = 0; i < F.order(); ++i) {
    if (f1.contains(F.elements()[i])) r.stabilizer.push_back(static_cast<int>(i));
  }
  r.fixed_points = f1.fixed_points();
  r.fp_at_least_3 = r.fixed_points.size() >= 3;
  r.discrete = F.acts_freely();
  r.normalizer_quotient_order = F.setwise_stabilizer(r.fixed_points).order() / f1.order();
  r.hypothesis_met = r.transitive && r.fp_at_least_3;
  return r;
}

struct BmVertex {
  int side = 0;
  std::vector<int> colors;

  int parent_color() const { return colors.empty() ? 0 : colors.back(); }
  BmVertex parent() const {
    BmVertex p = *this;
    p.colors.pop_back();
    return p;
  }
  BmVertex child(int c) const {
    BmVertex v = *this;
    v.colors.push_back(c);
    return v;
  }
  std::size_t depth() const { return colors.size(); }
  auto operator<=>(const BmVertex&) const = default;
  bool operator==(const BmVertex&) const = default;

  std::string to_string() const {
    std::string s = std::to_string(side) + ":";
    for (int c : colors) s += std::to_string(c);
    return s;
  }
};

// Vertices within distance `depth` of the endpoints of e, sides 0 and 1.
inline std::vector<BmVertex> bm_vertices(int d, std::size_t depth) {
  std::vector<BmVertex> out;
  for (int side : {0, 1}) {
    std::vector<BmVertex> cur{BmVertex{side, {}}};
    for (std::size_t h = 0; h <= depth; ++h) {
      std::vector<BmVertex> next;
      for (const auto& v : cur) {
        out.push_back(v);
        for (int c = 0; c < d; ++c) {
          if (c != v.parent_color()) next.push_back(v.child(c));
        }
      }
      cur = std::move(next);
    }
  }
  return out;
}

// Element of the fixator of e in U(F) given by its local actions up to a
// depth; below that depth every vertex repeats its parent's local action.
class BmPortrait {
 public:
  BmPortrait(int d, std::size_t depth) : d_(d), depth_(depth) {}

  static BmPortrait identity(int d) { return BmPortrait(d, 0); }

  int degree() const { return d_; }
  std::size_t depth() const { return depth_; }

  void set(const BmVertex& v, const Perm& p) {
    require(v.depth() <= depth_, ErrorKind::validation, "vertex below the portrait depth");
    local_[v] = p;
  }

  Perm local_action(const BmVertex& v) const {
    BmVertex u = v;
    while (u.depth() > depth_) u = u.parent();
    for (;;) {
      auto it = local_.find(u);
      if (it != local_.end()) return it->second;
      if (u.colors.empty()) return Perm::identity(d_);
      u = u.parent();
    }
  }

  BmVertex apply(const BmVertex& v) const {
    BmVertex img{v.side, {}};
    BmVertex cur{v.side, {}};
    for (int c : v.colors) {
      img.colors.push_back(local_action(cur)(c));
      cur = cur.child(c);
    }
    return img;
  }

  // Checks the compatibility sigma(v)(c) = sigma(parent)(c) along the edge of
  // color c to the parent (color 0 toward e at the endpoints) and that every
  // local action lies in F.
  bool in_U(const PermGroup& F) const {
    for (const auto& v : bm_vertices(d_, depth_ + 1)) {
      Perm s = local_action(v);
      if (!F.contains(s)) return false;
      int c = v.parent_color();
      int up = v.colors.empty() ? 0 : local_action(v.parent())(c);
      if (s(c) != up) return false;
    }
    return true;
  }

  const std::map<BmVertex, Perm>& entries() const { return local_; }

 private:
  int d_;
  std::size_t depth_;
  std::map<BmVertex, Perm> local_;
};

// sigma(g, v) read off the action: color i at v goes to the color of the
// image edge at g(v).
inline Perm bm_local_action_from_action(const BmPortrait& g, const BmVertex& v) {
  const int d = g.degree();
  BmVertex gv = g.apply(v);
  std::vector<std::uint8_t> img(d);
  for (int i = 0; i < d; ++i) {
    if (i == v.parent_color()) {
      img[i] = static_cast<std::uint8_t>(gv.parent_color());
    } else {
      img[i] = static_cast<std::uint8_t>(g.apply(v.child(i)).colors.back());
    }
  }
  return Perm(std::move(img));
}

// (g h)(v) = g(h(v)); sigma(gh, v) = sigma(g, h v) sigma(h, v).
inline BmPortrait bm_compose(const BmPortrait& g, const BmPortrait& h) {
  require(g.degree() == h.degree(), ErrorKind::validation, "degree mismatch");
  BmPortrait r(g.degree(), std::max(g.depth(), h.depth()));
  for (const auto& v : bm_vertices(g.degree(), r.depth())) {
    Perm s = g.local_action(h.apply(v)) * h.local_action(v);
    if (s != r.local_action(v)) r.set(v, s);
  }
  return r;
}

// Random element of the fixator of e in U(F), local actions chosen level by
// level among the elements of F compatible with the parent.
inline BmPortrait bm_random(const PermGroup& F, std::size_t depth, Rng& rng) {
  const int d = static_cast<int>(F.degree());
  BmPortrait g(d, depth);
  for (const auto& v : bm_vertices(d, depth)) {
    int c = v.parent_color();
    int target = v.colors.empty() ? 0 : g.local_action(v.parent())(c);
    std::vector<Perm> ok;
    for (const auto& p : F.elements()) {
      if (p(c) == target) ok.push_back(p);
    }
    require(!ok.empty(), ErrorKind::internal, "no compatible local action");
    const Perm& p = ok[rng.below(ok.size())];
    if (p != g.local_action(v)) g.set(v, p);
  }
  return g;
}

}  // namespace neretin
