#pragma once

// Finitary almost automorphisms of T_{d,k}: a bijection between the leaves of
// two complete finite subtrees, with a finitely supported portrait describing
// the action below each domain leaf. Elements are kept in canonical form: the
// domain leaves are the maximal non-root vertices on whose ball the element is
// a single similarity. Two elements are equal iff their canonical forms agree.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "portrait.hpp"
#include "tree.hpp"

namespace neretin {

struct Piece {
  Address domain;
  Address image;
  Portrait tail;  // acts on the subtree below `domain`, landing below `image`

  long exponent() const {
    return static_cast<long>(image.height()) - static_cast<long>(domain.height());
  }

  bool operator==(const Piece&) const = default;
  auto operator<=>(const Piece&) const = default;
};

// Image of a ball on which an element acts as one similarity.
struct RigidImage {
  Address image;
  Portrait tail;
};

class AlmostAutomorphism {
 public:
  AlmostAutomorphism() = default;

  static AlmostAutomorphism identity(const TreeShape& shape) {
    AlmostAutomorphism g;
    g.shape_ = shape;
    for (int c = 0; c < shape.k; ++c) {
      g.pieces_.push_back({Address().child(c), Address().child(c), Portrait()});
    }
    return g;
  }

  // Validates and canonicalizes. A single root piece (root -> root) is allowed
  // and describes a rooted automorphism.
  static AlmostAutomorphism from_pieces(const TreeShape& shape, std::vector<Piece> pieces) {
    std::vector<Address> dom, rng;
    for (const auto& p : pieces) {
      dom.push_back(p.domain);
      rng.push_back(p.image);
      validate_tail(shape, p);
    }
    std::sort(dom.begin(), dom.end());
    std::sort(rng.begin(), rng.end());
    require(std::adjacent_find(dom.begin(), dom.end()) == dom.end(), ErrorKind::validation,
            "repeated domain leaf");
    require(std::adjacent_find(rng.begin(), rng.end()) == rng.end(), ErrorKind::validation,
            "repeated range leaf");
    require(CompleteAntichain::is_complete(shape, dom), ErrorKind::validation,
            "domain leaves do not form a complete antichain");
    require(CompleteAntichain::is_complete(shape, rng), ErrorKind::validation,
            "range leaves do not form a complete antichain");
    for (const auto& p : pieces) {
      require(p.domain.is_root() == p.image.is_root(), ErrorKind::validation,
              "the root can only map to the root");
    }
    AlmostAutomorphism g;
    g.shape_ = shape;
    g.pieces_ = std::move(pieces);
    g.canonicalize();
    return g;
  }

  // Rooted automorphism given by a global portrait (root perm of degree k).
  static AlmostAutomorphism from_portrait(const TreeShape& shape, const Portrait& p) {
    return from_pieces(shape, {{Address(), Address(), p}});
  }

  // Permutes the level-n balls rigidly (trivial tails); `images[i]` is the
  // image of the i-th level-n vertex in planar order.
  static AlmostAutomorphism level_permutation(const TreeShape& shape, std::size_t n,
                                              const std::vector<Address>& images) {
    require(n >= 1, ErrorKind::validation, "level permutation needs n >= 1");
    auto verts = level_vertices(shape, n);
    require(verts.size() == images.size(), ErrorKind::validation, "wrong number of images");
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < verts.size(); ++i) pieces.push_back({verts[i], images[i], Portrait()});
    return from_pieces(shape, std::move(pieces));
  }

  const TreeShape& shape() const { return shape_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  bool is_identity() const {
    if (static_cast<int>(pieces_.size()) != shape_.k) return false;
    for (const auto& p : pieces_) {
      if (p.domain != p.image || !p.tail.is_identity()) return false;
    }
    return true;
  }

  std::vector<Address> domain() const {
    std::vector<Address> v;
    for (const auto& p : pieces_) v.push_back(p.domain);
    return v;
  }

  std::vector<Address> range() const {
    std::vector<Address> v;
    for (const auto& p : pieces_) v.push_back(p.image);
    std::sort(v.begin(), v.end());
    return v;
  }

  std::size_t max_domain_height() const {
    std::size_t h = 0;
    for (const auto& p : pieces_) h = std::max(h, p.domain.height());
    return h;
  }

  std::size_t max_range_height() const {
    std::size_t h = 0;
    for (const auto& p : pieces_) h = std::max(h, p.image.height());
    return h;
  }

  long min_exponent() const {
    long e = 0;
    bool first = true;
    for (const auto& p : pieces_) {
      e = first ? p.exponent() : std::min(e, p.exponent());
      first = false;
    }
    return e;
  }

  long max_exponent() const {
    long e = 0;
    bool first = true;
    for (const auto& p : pieces_) {
      e = first ? p.exponent() : std::max(e, p.exponent());
      first = false;
    }
    return e;
  }

  // Longest address written in the canonical form, tails included.
  std::size_t depth() const {
    std::size_t h = 0;
    for (const auto& p : pieces_) {
      h = std::max({h, p.domain.height() + p.tail.depth(), p.image.height() + p.tail.depth()});
    }
    return h;
  }

  bool operator==(const AlmostAutomorphism& o) const {
    return shape_ == o.shape_ && pieces_ == o.pieces_;
  }
  bool operator<(const AlmostAutomorphism& o) const { return pieces_ < o.pieces_; }

  // g * h = g o h (h acts first).
  friend AlmostAutomorphism operator*(const AlmostAutomorphism& g, const AlmostAutomorphism& h) {
    require(g.shape_ == h.shape_, ErrorKind::validation, "shape mismatch in composition");
    // common refinement of h's range and g's domain: the finer of the two leaves
    std::vector<Address> all = h.range();
    for (const auto& p : g.pieces_) all.push_back(p.domain);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<Address> common;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (i + 1 < all.size() && all[i].is_prefix_of(all[i + 1])) continue;
      common.push_back(all[i]);
    }
    auto hs = h.split_until(h.pieces_, [&](const Piece& p) { return strictly_above(common, p.image); });
    auto gs = g.split_until(g.pieces_, [&](const Piece& p) { return strictly_above(common, p.domain); });
    std::map<Address, const Piece*> by_domain;
    for (const auto& p : gs) by_domain.emplace(p.domain, &p);
    std::vector<Piece> out;
    out.reserve(hs.size());
    for (const auto& p : hs) {
      auto it = by_domain.find(p.image);
      if (it == by_domain.end()) fail(ErrorKind::internal, "composition refinement mismatch");
      const Piece& q = *it->second;
      out.push_back(Piece{p.domain, q.image, q.tail * p.tail});
    }
    AlmostAutomorphism r;
    r.shape_ = g.shape_;
    r.pieces_ = std::move(out);
    r.canonicalize();
    return r;
  }

  AlmostAutomorphism inverse() const {
    AlmostAutomorphism r;
    r.shape_ = shape_;
    for (const auto& p : pieces_) r.pieces_.push_back({p.image, p.domain, p.tail.inverse()});
    r.canonicalize();
    return r;
  }

  // Action on the ball below v when it is a single similarity.
  std::optional<RigidImage> rigid_image(const Address& v) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), v,
                               [](const Address& a, const Piece& p) { return a < p.domain; });
    if (it != pieces_.begin()) {
      const Piece& p = *std::prev(it);
      if (p.domain.is_prefix_of(v)) {
        Address u = v.suffix(p.domain.height());
        return RigidImage{p.image.concat(p.tail.apply(u)), p.tail.below(u)};
      }
    }
    if (it == pieces_.end() || !v.is_prefix_of(it->domain)) return std::nullopt;
    const int arity = arity_at(shape_, v);
    Address w;
    Portrait tail;
    std::vector<int> labels(arity);
    for (int c = 0; c < arity; ++c) {
      auto r = rigid_image(v.child(c));
      if (!r || r->image.is_root()) return std::nullopt;
      Address parent = r->image.parent();
      if (c == 0) {
        w = parent;
      } else if (parent != w) {
        return std::nullopt;
      }
      labels[c] = r->image.last();
      tail.graft(Address().child(c), r->tail);
    }
    if (arity_at(shape_, w) != arity) return std::nullopt;
    std::vector<std::uint8_t> imgs(labels.begin(), labels.end());
    tail.set(Address(), Perm(std::move(imgs)));
    return RigidImage{w, std::move(tail)};
  }

  // (image, exponent) of the ball B^a; fails unless the element is rigid on it.
  std::pair<Address, long> evaluate_ball(const Address& a) const {
    auto r = rigid_image(a);
    if (!r) fail(ErrorKind::ball_not_rigid, "element is not a single similarity on the ball below '" +
                                                a.to_string() + "'");
    return {r->image, static_cast<long>(r->image.height()) - static_cast<long>(a.height())};
  }

  Address apply(const Address& v) const {
    for (const auto& p : pieces_) {
      if (p.domain.is_prefix_of(v)) return p.image.concat(p.tail.apply(v.suffix(p.domain.height())));
    }
    fail(ErrorKind::ball_not_rigid, "vertex '" + v.to_string() + "' lies above the domain leaves");
  }

  bool in_O() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.exponent() == 0; });
  }

  bool in_K() const { return rigid_image(Address()).has_value(); }

  // Rooted automorphism fixing every vertex of height n.
  bool in_K_level(std::size_t n) const {
    auto r = rigid_image(Address());
    if (!r) return false;
    std::size_t h = r->tail.min_support_height();
    return h == std::string::npos || h >= n;
  }

  // Maps every height-n ball isometrically onto a height-n ball.
  bool in_O_level(std::size_t n) const {
    if (n == 0) return in_K();
    std::set<Address> checked;
    for (const auto& p : pieces_) {
      if (p.domain.height() <= n) {
        if (p.exponent() != 0) return false;
        continue;
      }
      Address v = p.domain.prefix(n);
      if (!checked.insert(v).second) continue;
      auto r = rigid_image(v);
      if (!r || r->image.height() != n) return false;
    }
    return true;
  }

  // Global portrait of a rooted automorphism.
  std::optional<Portrait> as_portrait() const {
    auto r = rigid_image(Address());
    if (!r) return std::nullopt;
    return r->tail;
  }

  // Same element written on a refined domain: every domain leaf is split until
  // it reaches height >= n. Not canonical.
  std::vector<Piece> pieces_refined_to(std::size_t n) const {
    return split_until(pieces_, [&](const Piece& p) { return p.domain.height() < n; });
  }

  // Writes the element in the text form accepted by parse_element().
  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (i) s += ", ";
      s += pieces_[i].domain.to_string() + "->" + pieces_[i].image.to_string();
    }
    std::string tails;
    for (const auto& p : pieces_) {
      if (p.tail.is_identity()) continue;
      if (!tails.empty()) tails += ", ";
      tails += p.domain.to_string() + ":" + p.tail.to_string();
    }
    if (!tails.empty()) s += " | tails: " + tails;
    return s + "}";
  }

  static Piece split_child(const TreeShape& shape, const Piece& p, int c) {
    (void)shape;
    return {p.domain.child(c), p.image.child(p.tail.apply_label(Address(), c)),
            p.tail.below(Address().child(c))};
  }

  static std::vector<Piece> split(const TreeShape& shape, const Piece& p) {
    std::vector<Piece> out;
    for (int c = 0; c < arity_at(shape, p.domain); ++c) out.push_back(split_child(shape, p, c));
    return out;
  }

 private:
  static void validate_tail(const TreeShape& shape, const Piece& p) {
    for (const auto& [v, perm] : p.tail.entries()) {
      Address abs = p.domain.concat(v);
      std::size_t want = static_cast<std::size_t>(arity_at(shape, abs));
      require(perm.degree() == want, ErrorKind::validation,
              "tail permutation at '" + abs.to_string() + "' has degree " +
                  std::to_string(perm.degree()) + ", expected " + std::to_string(want));
      for (std::size_t i = 0; i < v.height(); ++i) {
        require(v[i] < arity_at(shape, p.domain.concat(v.prefix(i))), ErrorKind::validation,
                "tail vertex label out of range");
      }
    }
  }

  static bool strictly_above(const std::vector<Address>& sorted, const Address& x) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    if (it != sorted.end() && *it == x) ++it;
    return it != sorted.end() && x.is_prefix_of(*it);
  }

  template <class Pred>
  std::vector<Piece> split_until(const std::vector<Piece>& pieces, Pred need_split) const {
    std::vector<Piece> out;
    std::vector<Piece> stack(pieces.rbegin(), pieces.rend());
    while (!stack.empty()) {
      Piece p = std::move(stack.back());
      stack.pop_back();
      if (need_split(p)) {
        auto kids = split(shape_, p);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(std::move(*it));
      } else {
        out.push_back(std::move(p));
      }
    }
    require(out.size() <= 4000000, ErrorKind::resource_limit, "refinement too large");
    return out;
  }

  void canonicalize() {
    std::map<Address, Piece> leaves;
    for (auto& p : pieces_) {
      if (p.domain.is_root()) {
        for (auto& q : split(shape_, p)) leaves.emplace(q.domain, std::move(q));
      } else {
        leaves.emplace(p.domain, std::move(p));
      }
    }
    // candidates ordered deepest first so merged blocks can merge again
    auto cmp = [](const Address& a, const Address& b) {
      if (a.height() != b.height()) return a.height() > b.height();
      return a < b;
    };
    std::set<Address, decltype(cmp)> work(cmp);
    for (const auto& [a, p] : leaves) {
      if (a.height() >= 2) work.insert(a.parent());
    }
    while (!work.empty()) {
      Address v = *work.begin();
      work.erase(work.begin());
      if (try_merge(leaves, v) && v.height() >= 2) work.insert(v.parent());
    }
    pieces_.clear();
    for (auto& [a, p] : leaves) pieces_.push_back(std::move(p));
  }

  bool try_merge(std::map<Address, Piece>& leaves, const Address& v) const {
    const int d = shape_.d;
    std::vector<const Piece*> kids(d);
    for (int c = 0; c < d; ++c) {
      auto it = leaves.find(v.child(c));
      if (it == leaves.end()) return false;
      kids[c] = &it->second;
    }
    if (kids[0]->image.height() < 2) return false;
    Address w = kids[0]->image.parent();
    std::vector<std::uint8_t> labels(d);
    for (int c = 0; c < d; ++c) {
      if (kids[c]->image.height() < 2 || kids[c]->image.parent() != w) return false;
      labels[c] = static_cast<std::uint8_t>(kids[c]->image.last());
    }
    Portrait tail;
    tail.set(Address(), Perm(std::move(labels)));
    for (int c = 0; c < d; ++c) tail.graft(Address().child(c), kids[c]->tail);
    Piece merged{v, w, std::move(tail)};
    for (int c = 0; c < d; ++c) leaves.erase(v.child(c));
    leaves.emplace(v, std::move(merged));
    return true;
  }

  TreeShape shape_;
  std::vector<Piece> pieces_;
};

using Element = AlmostAutomorphism;

// The shift {0->00, 10->01, 11->1} in N_{2,2}.
inline AlmostAutomorphism shift_element() {
  TreeShape sh(2, 2);
  auto A = [&](const char* s) { return Address::parse(s, sh); };
  return AlmostAutomorphism::from_pieces(
      sh, {{A("0"), A("00"), {}}, {A("10"), A("01"), {}}, {A("11"), A("1"), {}}});
}

}  // namespace neretin
