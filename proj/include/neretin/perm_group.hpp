#pragma once

// Finite permutation groups by full enumeration, and indexed multiplication
// tables for the finite groups used as HNN bases, AFP factors and Hecke pairs.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "perm.hpp"

namespace neretin {

inline std::size_t default_group_cap() { return 1000000; }

class PermGroup {
 public:
  PermGroup() = default;

  PermGroup(std::size_t degree, std::vector<Perm> gens, std::size_t cap = default_group_cap())
      : degree_(degree), gens_(std::move(gens)) {
    require(degree >= 1 && degree <= 16, ErrorKind::validation, "permutation degree must be in 1..16");
    for (const auto& g : gens_) require(g.degree() == degree, ErrorKind::validation, "generator degree mismatch");
    std::set<Perm> seen{Perm::identity(degree)};
    std::vector<Perm> queue(seen.begin(), seen.end());
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const auto& g : gens_) {
        Perm p = g * queue[i];
        if (!seen.insert(p).second) continue;
        require(seen.size() <= cap, ErrorKind::resource_limit,
                "group closure exceeds the cap of " + std::to_string(cap));
        queue.push_back(std::move(p));
      }
    }
    elements_.assign(seen.begin(), seen.end());
  }

  // Group given by its full element list (must already be closed).
  static PermGroup from_elements(std::size_t degree, std::vector<Perm> elems) {
    PermGroup g;
    g.degree_ = degree;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    g.gens_ = elems;
    g.elements_ = std::move(elems);
    return g;
  }

  // Generators in cycle notation with 1-based points: "(1 2 3),(4 5)".
  static PermGroup parse(const std::string& text, std::size_t degree) {
    std::vector<Perm> gens;
    std::size_t depth = 0, start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      char c = i < text.size() ? text[i] : ',';
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) fail(ErrorKind::parse, "unbalanced ')' at position " + std::to_string(i));
        --depth;
      }
      if (c == ',' && depth == 0) {
        std::string part = text.substr(start, i - start);
        if (part.find_first_not_of(" \t") != std::string::npos) gens.push_back(Perm::from_cycles(part, degree, 1));
        start = i + 1;
      }
    }
    if (depth != 0) fail(ErrorKind::parse, "unbalanced '(' in '" + text + "'");
    return PermGroup(degree, std::move(gens));
  }

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Perm>& elements() const { return elements_; }
  const std::vector<Perm>& generators() const { return gens_; }

  bool contains(const Perm& p) const { return std::binary_search(elements_.begin(), elements_.end(), p); }

  std::vector<std::vector<int>> orbits() const {
    std::vector<int> comp(degree_, -1);
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < degree_; ++i) {
      if (comp[i] >= 0) continue;
      std::vector<int> orb{static_cast<int>(i)};
      comp[i] = static_cast<int>(out.size());
      for (std::size_t j = 0; j < orb.size(); ++j) {
        for (const auto& g : gens_) {
          int y = g(orb[j]);
          if (comp[y] < 0) {
            comp[y] = comp[i];
            orb.push_back(y);
          }
        }
      }
      std::sort(orb.begin(), orb.end());
      out.push_back(std::move(orb));
    }
    return out;
  }

  bool is_transitive() const { return orbits().size() == 1; }

  PermGroup point_stabilizer(int i) const {
    std::vector<Perm> s;
    for (const auto& g : elements_) {
      if (g(i) == i) s.push_back(g);
    }
    return from_elements(degree_, std::move(s));
  }

  // Points fixed by every element of this group.
  std::vector<int> fixed_points() const {
    std::vector<int> out;
    for (std::size_t x = 0; x < degree_; ++x) {
      bool fixed = std::all_of(elements_.begin(), elements_.end(), [&](const Perm& g) { return g(x) == static_cast<int>(x); });
      if (fixed) out.push_back(static_cast<int>(x));
    }
    return out;
  }

  PermGroup setwise_stabilizer(const std::vector<int>& points) const {
    std::set<int> pts(points.begin(), points.end());
    std::vector<Perm> s;
    for (const auto& g : elements_) {
      bool ok = std::all_of(pts.begin(), pts.end(), [&](int x) { return pts.count(g(x)) > 0; });
      if (ok) s.push_back(g);
    }
    return from_elements(degree_, std::move(s));
  }

  // Acts freely: every point stabilizer is trivial.
  bool acts_freely() const {
    for (std::size_t i = 0; i < degree_; ++i) {
      if (point_stabilizer(static_cast<int>(i)).order() != 1) return false;
    }
    return true;
  }

  bool operator==(const PermGroup& o) const { return degree_ == o.degree_ && elements_ == o.elements_; }

 private:
  std::size_t degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Perm> elements_;
};

// Finite group as an indexed multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  using Subset = std::vector<int>;  // sorted element indices

  FiniteGroup() = default;

  explicit FiniteGroup(const PermGroup& g, std::string name = "") : name_(std::move(name)) {
    elems_ = g.elements();
    // identity first, others in sorted order
    auto id = std::find(elems_.begin(), elems_.end(), Perm::identity(g.degree()));
    std::rotate(elems_.begin(), id, id + 1);
    build();
  }

  static FiniteGroup from_generators(std::size_t degree, const std::vector<Perm>& gens, std::string name = "") {
    return FiniteGroup(PermGroup(degree, gens), std::move(name));
  }

  static FiniteGroup cyclic(int n) {
    std::vector<std::uint8_t> img(n);
    for (int i = 0; i < n; ++i) img[i] = static_cast<std::uint8_t>((i + 1) % n);
    return from_generators(n, {Perm(img)}, "C" + std::to_string(n));
  }

  static FiniteGroup symmetric(int n) {
    std::vector<Perm> gens;
    for (int i = 0; i + 1 < n; ++i) gens.push_back(Perm::transposition(n, i, i + 1));
    return from_generators(n, gens, "S" + std::to_string(n));
  }

  // C2 x C2 acting on four points.
  static FiniteGroup klein() {
    return from_generators(4, {Perm::from_cycles("(0 1)(2 3)", 4), Perm::from_cycles("(0 2)(1 3)", 4)}, "C2xC2");
  }

  std::size_t size() const { return elems_.size(); }
  const std::string& name() const { return name_; }
  int identity() const { return 0; }
  int mul(int a, int b) const { return table_[a * size() + b]; }
  int inv(int a) const { return inv_[a]; }
  const Perm& perm(int a) const { return elems_[a]; }

  int index_of(const Perm& p) const {
    auto it = index_.find(p);
    require(it != index_.end(), ErrorKind::validation, "permutation " + p.to_cycles(1) + " is not in the group");
    return it->second;
  }

  std::string label(int a) const { return elems_[a].to_cycles(1); }

  Subset generate(const std::vector<int>& gens) const {
    std::set<int> seen{0};
    std::vector<int> queue{0};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (int g : gens) {
        int x = mul(g, queue[i]);
        if (seen.insert(x).second) queue.push_back(x);
      }
    }
    return Subset(seen.begin(), seen.end());
  }

  Subset all() const {
    Subset s(size());
    for (std::size_t i = 0; i < size(); ++i) s[i] = static_cast<int>(i);
    return s;
  }

  static bool member(const Subset& s, int x) { return std::binary_search(s.begin(), s.end(), x); }

  bool is_subgroup(const Subset& s) const {
    if (!member(s, 0)) return false;
    for (int a : s) {
      if (!member(s, inv(a))) return false;
      for (int b : s) {
        if (!member(s, mul(a, b))) return false;
      }
    }
    return true;
  }

  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }

  Subset normalizer(const Subset& k) const {
    Subset out;
    for (int g = 0; g < static_cast<int>(size()); ++g) {
      bool ok = std::all_of(k.begin(), k.end(), [&](int x) { return member(k, conj(g, x)); });
      if (ok) out.push_back(g);
    }
    return out;
  }

  bool centralizes(int g, const Subset& k) const {
    return std::all_of(k.begin(), k.end(), [&](int x) { return mul(g, x) == mul(x, g); });
  }

  // Left coset representatives of k: the least index in each coset gk.
  std::vector<int> left_transversal(const Subset& k) const {
    std::vector<int> rep(size(), -1);
    std::vector<int> out;
    for (int g = 0; g < static_cast<int>(size()); ++g) {
      if (rep[g] >= 0) continue;
      out.push_back(g);
      for (int x : k) rep[mul(g, x)] = g;
    }
    return out;
  }

  // Splits g as t * k with t the fixed representative of gk.
  std::pair<int, int> split_left(int g, const Subset& k) const {
    int best = g, kk = 0;
    for (int x : k) {
      int t = mul(g, inv(x));
      if (t < best) {
        best = t;
        kk = x;
      }
    }
    return {best, kk};
  }

 private:
  void build() {
    for (std::size_t i = 0; i < elems_.size(); ++i) index_[elems_[i]] = static_cast<int>(i);
    const std::size_t n = elems_.size();
    table_.resize(n * n);
    inv_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) table_[a * n + b] = index_.at(elems_[a] * elems_[b]);
      inv_[a] = index_.at(elems_[a].inverse());
    }
  }

  std::string name_;
  std::vector<Perm> elems_;
  std::map<Perm, int> index_;
  std::vector<int> table_;
  std::vector<int> inv_;
};

}  // namespace neretin
