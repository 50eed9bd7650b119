#pragma once

// Double-coset (Hecke) algebras of finite pairs (Q, k) with counting
// convolution, and the commutant of a normalizing subgroup inside the corner.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "arith.hpp"
#include "perm_group.hpp"

namespace neretin {

class HeckeAlgebra {
 public:
  HeckeAlgebra(const FiniteGroup& Q, FiniteGroup::Subset k) : Q_(&Q), k_(std::move(k)) {
    require(Q.is_subgroup(k_), ErrorKind::validation, "k is not a subgroup of Q");
    const int n = static_cast<int>(Q.size());
    which_.assign(n, -1);
    for (int g = 0; g < n; ++g) {
      if (which_[g] >= 0) continue;
      int id = static_cast<int>(cosets_.size());
      std::vector<int> dc;
      for (int a : k_) {
        for (int b : k_) {
          int x = Q.mul(Q.mul(a, g), b);
          if (which_[x] < 0) {
            which_[x] = id;
            dc.push_back(x);
          }
        }
      }
      std::sort(dc.begin(), dc.end());
      cosets_.push_back(std::move(dc));
    }
    // c[i][j][l] = #{(u, v) in D_i x D_j : u v = x_l}
    const std::size_t m = cosets_.size();
    c_.assign(m * m * m, 0);
    for (std::size_t l = 0; l < m; ++l) {
      int x = cosets_[l].front();
      for (int u = 0; u < n; ++u) {
        int v = Q.mul(Q.inv(u), x);
        ++c_[(which_[u] * m + which_[v]) * m + l];
      }
    }
  }

  const FiniteGroup& group() const { return *Q_; }
  const FiniteGroup::Subset& subgroup() const { return k_; }
  std::size_t dimension() const { return cosets_.size(); }
  const std::vector<int>& coset(std::size_t i) const { return cosets_[i]; }
  int coset_of(int g) const { return which_[g]; }
  int representative(std::size_t i) const { return cosets_[i].front(); }

  std::int64_t structure_constant(std::size_t i, std::size_t j, std::size_t l) const {
    const std::size_t m = dimension();
    return c_[(i * m + j) * m + l];
  }

  using Vec = std::vector<Rational>;

  Vec basis(std::size_t i) const {
    Vec v(dimension(), Rational(0));
    v[i] = 1;
    return v;
  }

  Vec multiply(const Vec& a, const Vec& b) const {
    const std::size_t m = dimension();
    Vec r(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (b[j] == 0) continue;
        Rational ab = a[i] * b[j];
        for (std::size_t l = 0; l < m; ++l) {
          auto c = structure_constant(i, j, l);
          if (c != 0) r[l] += ab * Rational(c);
        }
      }
    }
    return r;
  }

  // 1_k / |k| is the unit for counting convolution.
  Vec unit() const {
    Vec v(dimension(), Rational(0));
    v[coset_of(0)] = Rational(1, static_cast<long>(k_.size()));
    return v;
  }

  bool associative() const {
    const std::size_t m = dimension();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t q = 0; q < m; ++q) {
          for (std::size_t p = 0; p < m; ++p) {
            std::int64_t left = 0, right = 0;
            for (std::size_t l = 0; l < m; ++l) {
              left += structure_constant(i, j, l) * structure_constant(l, q, p);
              right += structure_constant(j, q, l) * structure_constant(i, l, p);
            }
            if (left != right) return false;
          }
        }
      }
    }
    return true;
  }

  bool unital() const {
    for (std::size_t i = 0; i < dimension(); ++i) {
      auto b = basis(i);
      if (multiply(unit(), b) != b || multiply(b, unit()) != b) return false;
    }
    return true;
  }

  // sum_l c_ij^l |D_l| = |D_i| |D_j|
  bool mass_identity() const {
    const std::size_t m = dimension();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        std::int64_t s = 0;
        for (std::size_t l = 0; l < m; ++l) s += structure_constant(i, j, l) * static_cast<std::int64_t>(cosets_[l].size());
        if (s != static_cast<std::int64_t>(cosets_[i].size() * cosets_[j].size())) return false;
      }
    }
    return true;
  }

  std::string label(std::size_t i) const { return "k" + Q_->label(representative(i)) + "k"; }

 private:
  const FiniteGroup* Q_;
  FiniteGroup::Subset k_;
  std::vector<int> which_;
  std::vector<std::vector<int>> cosets_;
  std::vector<std::int64_t> c_;
};

// Rank of a rational matrix by Gaussian elimination.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Dimension of the elements of the double-coset algebra of (Q, k) commuting
// with 1_{hk} for every h in `h`; h must normalize k.
inline std::size_t corner_commutant_dimension(const HeckeAlgebra& H, const FiniteGroup::Subset& h) {
  const auto& Q = H.group();
  const auto& k = H.subgroup();
  for (int x : h) {
    bool norm = std::all_of(k.begin(), k.end(), [&](int y) { return FiniteGroup::member(k, Q.conj(x, y)); });
    require(norm, ErrorKind::normalization, "element " + Q.label(x) + " does not normalize k");
  }
  const std::size_t m = H.dimension();
  std::vector<std::vector<Rational>> rows;
  std::set<int> images;
  for (int x : h) images.insert(H.coset_of(x));
  for (int c : images) {
    auto e = H.basis(c);
    // z -> z*e - e*z, one row per output coordinate
    std::vector<std::vector<Rational>> cols;
    for (std::size_t i = 0; i < m; ++i) {
      auto b = H.basis(i);
      auto l = H.multiply(b, e), r = H.multiply(e, b);
      for (std::size_t j = 0; j < m; ++j) l[j] -= r[j];
      cols.push_back(std::move(l));
    }
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Rational> row(m);
      for (std::size_t i = 0; i < m; ++i) row[i] = cols[i][j];
      rows.push_back(std::move(row));
    }
  }
  return m - rational_rank(std::move(rows));
}

// Named finite pairs for the CLI and examples.
struct HeckePreset {
  FiniteGroup Q;
  FiniteGroup::Subset k;
  FiniteGroup::Subset h;
};

// Aut of the rooted binary tree of height 2 on its leaves 00,01,10,11 (points
// 0..3), k the fixator of the subtree below 0, h its normalizer.
inline HeckePreset hecke_preset(const std::string& name) {
  if (name == "s3") {
    auto Q = FiniteGroup::symmetric(3);
    auto k = Q.generate({Q.index_of(Perm::from_cycles("(0 1)", 3))});
    return {Q, k, k};
  }
  if (name == "aut-tree-2") {
    auto Q = FiniteGroup::from_generators(
        4, {Perm::from_cycles("(0 1)", 4), Perm::from_cycles("(2 3)", 4), Perm::from_cycles("(0 2)(1 3)", 4)}, "Aut(T2)");
    auto k = Q.generate({Q.index_of(Perm::from_cycles("(2 3)", 4))});
    return {Q, k, Q.normalizer(k)};
  }
  if (name == "s4") {
    auto Q = FiniteGroup::symmetric(4);
    auto k = Q.generate({Q.index_of(Perm::from_cycles("(0 1)", 4)), Q.index_of(Perm::from_cycles("(2 3)", 4))});
    return {Q, k, Q.normalizer(k)};
  }
  fail(ErrorKind::validation, "unknown Hecke preset '" + name + "' (expected s3, aut-tree-2, s4)");
}

}  // namespace neretin
