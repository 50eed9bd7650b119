#pragma once

// Rooted trees T_{d,k}: the root has k children, every other vertex has d.
// Vertices are addressed by label strings; planar order is lexicographic.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "arith.hpp"
#include "error.hpp"

namespace neretin {

struct TreeShape {
  int d = 2;
  int k = 2;

  TreeShape() = default;
  TreeShape(int d_, int k_) : d(d_), k(k_) {
    require(d >= 2 && k >= 2, ErrorKind::validation, "tree shape requires d >= 2 and k >= 2");
    require(d <= 64 && k <= 64, ErrorKind::validation, "tree shape arity too large");
  }

  bool operator==(const TreeShape&) const = default;

  std::string to_string() const {
    return "T(" + std::to_string(d) + "," + std::to_string(k) + ")";
  }
};

class Address {
 public:
  Address() = default;

  // Raw labels, one byte per letter. No shape validation.
  static Address from_labels(std::string labels) {
    Address a;
    a.labels_ = std::move(labels);
    return a;
  }

  // Digit-string text form ("" is the root). Requires labels < 10.
  static Address parse(std::string_view text, const TreeShape& shape) {
    Address a;
    for (std::size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      require(c >= '0' && c <= '9', ErrorKind::parse,
              "bad address character '" + std::string(1, c) + "' in '" + std::string(text) + "'");
      int label = c - '0';
      int bound = i == 0 ? shape.k : shape.d;
      require(label < bound, ErrorKind::validation,
              "label " + std::to_string(label) + " out of range at depth " + std::to_string(i) +
                  " in '" + std::string(text) + "'");
      a.labels_.push_back(static_cast<char>(label));
    }
    return a;
  }

  // Relative address inside a copy of T_{d,d} (every letter < d).
  static Address parse_relative(std::string_view text, int d) {
    return parse(text, TreeShape(d, d));
  }

  std::size_t height() const { return labels_.size(); }
  bool is_root() const { return labels_.empty(); }
  int operator[](std::size_t i) const { return static_cast<unsigned char>(labels_[i]); }
  int last() const { return (*this)[height() - 1]; }
  const std::string& labels() const { return labels_; }

  Address child(int label) const {
    Address a = *this;
    a.labels_.push_back(static_cast<char>(label));
    return a;
  }

  Address parent() const {
    Address a = *this;
    a.labels_.pop_back();
    return a;
  }

  Address prefix(std::size_t n) const { return from_labels(labels_.substr(0, n)); }
  Address suffix(std::size_t n) const { return from_labels(labels_.substr(n)); }

  Address concat(const Address& rest) const { return from_labels(labels_ + rest.labels_); }

  // Ancestor-or-self test: B^other is contained in B^this.
  bool is_prefix_of(const Address& other) const {
    return labels_.size() <= other.labels_.size() &&
           other.labels_.compare(0, labels_.size(), labels_) == 0;
  }

  bool comparable(const Address& other) const {
    return is_prefix_of(other) || other.is_prefix_of(*this);
  }

  std::string to_string() const {
    std::string s;
    for (char c : labels_) {
      int v = static_cast<unsigned char>(c);
      if (v < 10) {
        s.push_back(static_cast<char>('0' + v));
      } else {
        s += "[" + std::to_string(v) + "]";
      }
    }
    return s;
  }

  auto operator<=>(const Address& o) const {
    // unsigned lexicographic order
    const int c = std::char_traits<char>::compare(
        labels_.data(), o.labels_.data(), std::min(labels_.size(), o.labels_.size()));
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return labels_.size() <=> o.labels_.size();
  }
  bool operator==(const Address&) const = default;

 private:
  std::string labels_;
};

inline int arity_at(const TreeShape& shape, const Address& a) {
  return a.is_root() ? shape.k : shape.d;
}

// |V^(n)|: k * d^(n-1) for n >= 1, 1 for n = 0.
inline BigInt level_count(const TreeShape& shape, std::uint64_t n) {
  if (n == 0) return 1;
  return BigInt(shape.k) * power(BigInt(shape.d), n - 1);
}

inline std::uint64_t level_count_u64(const TreeShape& shape, std::uint64_t n) {
  if (n == 0) return 1;
  return static_cast<std::uint64_t>(shape.k) * power_u64(static_cast<std::uint64_t>(shape.d), n - 1);
}

// |Aut(T^{<=n})| = k! * prod_{i=1}^{n-1} (d!)^{|V^(i)|}; equals the index
// [K : K^(n)]. Defined as 1 for n = 0.
inline BigInt ball_automorphism_count(const TreeShape& shape, std::uint64_t n) {
  if (n == 0) return 1;
  // sum_{i=1}^{n-1} k d^{i-1} = k (d^{n-1} - 1) / (d - 1)
  BigInt exponent = exact_div(BigInt(shape.k) * (power(BigInt(shape.d), n - 1) - 1), BigInt(shape.d - 1));
  require(exponent.fits_ulong_p(), ErrorKind::resource_limit, "automorphism count too large");
  return factorial(static_cast<std::uint64_t>(shape.k)) *
         power(factorial(static_cast<std::uint64_t>(shape.d)), exponent.get_ui());
}

// All vertices of height n in planar (lexicographic) order.
inline std::vector<Address> level_vertices(const TreeShape& shape, std::size_t n,
                                           std::uint64_t cap = 1u << 22) {
  require(n == 0 || level_count(shape, n) <= BigInt(static_cast<unsigned long>(cap)),
          ErrorKind::resource_limit, "too many vertices at level " + std::to_string(n));
  std::vector<Address> cur{Address()};
  for (std::size_t h = 0; h < n; ++h) {
    std::vector<Address> next;
    for (const auto& a : cur) {
      for (int i = 0; i < arity_at(shape, a); ++i) next.push_back(a.child(i));
    }
    cur = std::move(next);
  }
  return cur;
}

// Leaf set of a complete finite subtree.
class CompleteAntichain {
 public:
  CompleteAntichain() = default;

  CompleteAntichain(TreeShape shape, std::vector<Address> leaves)
      : shape_(shape), leaves_(std::move(leaves)) {
    std::sort(leaves_.begin(), leaves_.end());
    require(is_complete(shape_, leaves_), ErrorKind::validation,
            "address set is not a complete antichain");
  }

  static CompleteAntichain root(TreeShape shape) {
    CompleteAntichain c;
    c.shape_ = shape;
    c.leaves_ = {Address()};
    return c;
  }

  static CompleteAntichain level(TreeShape shape, std::size_t n) {
    CompleteAntichain c;
    c.shape_ = shape;
    c.leaves_ = level_vertices(shape, n);
    return c;
  }

  const TreeShape& shape() const { return shape_; }
  const std::vector<Address>& leaves() const { return leaves_; }
  std::size_t size() const { return leaves_.size(); }

  bool operator==(const CompleteAntichain&) const = default;

  // Sorted address list is complete iff a depth-first walk from the root
  // consumes the leaves exactly in planar order.
  static bool is_complete(const TreeShape& shape, const std::vector<Address>& sorted) {
    std::size_t pos = 0;
    bool ok = walk(shape, Address(), sorted, pos);
    return ok && pos == sorted.size();
  }

  // Leaf at or above `a`, if any.
  const Address* leaf_above(const Address& a) const {
    for (std::size_t h = 0; h <= a.height(); ++h) {
      Address p = a.prefix(h);
      auto it = std::lower_bound(leaves_.begin(), leaves_.end(), p);
      if (it != leaves_.end() && *it == p) return &*it;
    }
    return nullptr;
  }

  // Minimal refinement in which every target is a leaf. Targets strictly above
  // a leaf, or comparable to each other, are rejected.
  CompleteAntichain refine(const std::vector<Address>& targets) const {
    for (std::size_t i = 0; i < targets.size(); ++i) {
      for (std::size_t j = i + 1; j < targets.size(); ++j) {
        if (targets[i] != targets[j] && targets[i].comparable(targets[j])) {
          fail(ErrorKind::invalid_target, "targets " + targets[i].to_string() + " and " +
                                              targets[j].to_string() + " are nested");
        }
      }
    }
    std::set<Address> leaves(leaves_.begin(), leaves_.end());
    for (const auto& t : targets) {
      std::size_t h = 0;
      while (h <= t.height() && leaves.count(t.prefix(h)) == 0) ++h;
      if (h > t.height()) {
        fail(ErrorKind::invalid_target,
             "target " + t.to_string() + " lies strictly above the antichain");
      }
      Address cur = t.prefix(h);
      leaves.erase(cur);
      while (cur.height() < t.height()) {
        int next_label = t[cur.height()];
        for (int i = 0; i < arity_at(shape_, cur); ++i) {
          if (i != next_label) leaves.insert(cur.child(i));
        }
        cur = cur.child(next_label);
      }
      leaves.insert(t);
    }
    CompleteAntichain out;
    out.shape_ = shape_;
    out.leaves_.assign(leaves.begin(), leaves.end());
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < leaves_.size(); ++i) {
      if (i) s += ", ";
      s += leaves_[i].to_string();
    }
    return s + "}";
  }

 private:
  static bool walk(const TreeShape& shape, const Address& v, const std::vector<Address>& sorted,
                   std::size_t& pos) {
    if (pos >= sorted.size()) return false;
    if (sorted[pos] == v) {
      ++pos;
      return true;
    }
    if (!v.is_prefix_of(sorted[pos])) return false;
    for (int i = 0; i < arity_at(shape, v); ++i) {
      if (!walk(shape, v.child(i), sorted, pos)) return false;
    }
    return true;
  }

  TreeShape shape_;
  std::vector<Address> leaves_;
};

}  // namespace neretin
