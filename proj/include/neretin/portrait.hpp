#pragma once

// Finitely supported portraits: a permutation of the children at finitely many
// vertices of a rooted tree, identity elsewhere. The local root may have any
// arity; the permutation stored at a vertex carries its own degree.

#include <map>
#include <string>

#include "perm.hpp"
#include "tree.hpp"

namespace neretin {

class Portrait {
 public:
  Portrait() = default;

  static Portrait single(const Address& v, const Perm& p) {
    Portrait q;
    q.set(v, p);
    return q;
  }

  bool is_identity() const { return perms_.empty(); }
  const std::map<Address, Perm>& entries() const { return perms_; }

  const Perm* at(const Address& v) const {
    auto it = perms_.find(v);
    return it == perms_.end() ? nullptr : &it->second;
  }

  void set(const Address& v, const Perm& p) {
    if (p.is_identity()) {
      perms_.erase(v);
    } else {
      perms_[v] = p;
    }
  }

  int apply_label(const Address& prefix, int label) const {
    const Perm* p = at(prefix);
    return p ? (*p)(static_cast<std::size_t>(label)) : label;
  }

  // Image of a vertex: letter i is permuted by the perm at u[0..i).
  Address apply(const Address& u) const {
    if (perms_.empty()) return u;
    std::string out;
    out.reserve(u.height());
    for (std::size_t i = 0; i < u.height(); ++i) {
      out.push_back(static_cast<char>(apply_label(u.prefix(i), u[i])));
    }
    return Address::from_labels(std::move(out));
  }

  // Portrait of the restriction to the subtree below u, re-rooted at u.
  Portrait below(const Address& u) const {
    Portrait r;
    for (auto it = perms_.lower_bound(u); it != perms_.end() && u.is_prefix_of(it->first); ++it) {
      r.perms_.emplace(it->first.suffix(u.height()), it->second);
    }
    return r;
  }

  // Portrait acting as `child` below each prefix `u` (inverse of below()).
  void graft(const Address& u, const Portrait& child) {
    for (const auto& [v, p] : child.perms_) perms_[u.concat(v)] = p;
  }

  std::size_t depth() const {
    std::size_t h = 0;
    for (const auto& [v, p] : perms_) h = std::max(h, v.height() + 1);
    return h;
  }

  // Smallest height carrying a nontrivial permutation (npos if identity).
  std::size_t min_support_height() const {
    std::size_t h = std::string::npos;
    for (const auto& [v, p] : perms_) h = std::min(h, v.height());
    return h;
  }

  // (P * Q)(u) = P(Q(u)); the perm at u is P_{Q(u)} Q_u.
  friend Portrait operator*(const Portrait& p, const Portrait& q) {
    Portrait r;
    for (const auto& [u, qu] : q.perms_) {
      const Perm* pu = p.at(q.apply(u));
      r.set(u, pu ? *pu * qu : qu);
    }
    Portrait qinv = q.inverse();
    for (const auto& [v, pv] : p.perms_) {
      Address u = qinv.apply(v);
      if (q.at(u)) continue;  // handled above
      r.set(u, pv);
    }
    return r;
  }

  Portrait inverse() const {
    Portrait r;
    for (const auto& [u, p] : perms_) r.perms_.emplace(apply(u), p.inverse());
    return r;
  }

  bool operator==(const Portrait&) const = default;
  auto operator<=>(const Portrait&) const = default;

  // "(v : perm, ...)" with vertices in planar order; "()" for the identity.
  std::string to_string() const {
    std::string s = "(";
    bool first = true;
    for (const auto& [v, p] : perms_) {
      if (!first) s += ", ";
      first = false;
      s += v.to_string() + " : " + p.to_cycles();
    }
    return s + ")";
  }

 private:
  std::map<Address, Perm> perms_;
};

}  // namespace neretin
