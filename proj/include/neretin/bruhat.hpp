#pragma once

// Measures on N_{d,k} of the form  sum c_g delta_g + (sum c_j 1_{a_j K^(L)}) mu
// with rational coefficients, and their convolution. The density part is kept
// at a single level L with canonical coset keys, so equality is structural.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "haar.hpp"

namespace neretin {

class BruhatMeasure {
 public:
  BruhatMeasure() = default;
  explicit BruhatMeasure(TreeShape shape) : shape_(shape) {}

  static BruhatMeasure atom(const Element& g, const Rational& c = 1) {
    BruhatMeasure f(g.shape());
    f.add_atom(g, c);
    return f;
  }

  static BruhatMeasure indicator(const Coset& coset, const Rational& c = 1) {
    BruhatMeasure f(coset.rep.shape());
    f.level_ = coset.level;
    f.add_density(coset, c);
    return f;
  }

  // p_{K^(n)} = 1_{K^(n)} / mu(K^(n)).
  static BruhatMeasure averaging(const TreeShape& shape, std::size_t n) {
    return indicator({Element::identity(shape), n}, 1 / measure_level(shape, n));
  }

  const TreeShape& shape() const { return shape_; }
  const std::map<Element, Rational>& atoms() const { return atoms_; }
  const std::map<Element, Rational>& density() const { return density_; }
  std::size_t level() const { return level_; }

  bool is_zero() const { return atoms_.empty() && density_.empty(); }

  void add_atom(const Element& g, const Rational& c) {
    if (c == 0) return;
    Rational& v = atoms_[g];
    v += c;
    if (v == 0) atoms_.erase(g);
  }

  // Adds c * 1_{coset}; the density level becomes the larger of the two.
  void add_density(const Coset& coset, const Rational& c) {
    if (c == 0) return;
    if (density_.empty()) level_ = coset.level;
    if (coset.level > level_) refine_to(coset.level);
    if (coset.level < level_) {
      for (const auto& part : partition_coset(coset, level_)) add_key(coset_key(part.rep, level_), c);
    } else {
      add_key(coset_key(coset.rep, level_), c);
    }
  }

  // Rewrites the density at level n >= level().
  void refine_to(std::size_t n) {
    if (n <= level_) return;
    std::map<Element, Rational> old;
    old.swap(density_);
    std::size_t from = level_;
    level_ = n;
    for (const auto& [a, c] : old) {
      for (const auto& part : partition_coset({a, from}, n)) add_key(coset_key(part.rep, n), c);
    }
  }

  // Value of the density function at t.
  Rational density_at(const Element& t) const {
    if (density_.empty()) return 0;
    auto it = density_.find(coset_key(t, level_));
    return it == density_.end() ? Rational(0) : it->second;
  }

  BruhatMeasure& operator+=(const BruhatMeasure& o) {
    if (shape_.d == 0) shape_ = o.shape_;
    for (const auto& [g, c] : o.atoms_) add_atom(g, c);
    for (const auto& [a, c] : o.density_) add_density({a, o.level_}, c);
    return *this;
  }

  friend BruhatMeasure operator+(BruhatMeasure a, const BruhatMeasure& b) { return a += b; }
  friend BruhatMeasure operator*(const Rational& s, const BruhatMeasure& f) {
    BruhatMeasure r(f.shape_);
    r.level_ = f.level_;
    if (s == 0) return r;
    for (const auto& [g, c] : f.atoms_) r.atoms_[g] = s * c;
    for (const auto& [a, c] : f.density_) r.density_[a] = s * c;
    return r;
  }
  friend BruhatMeasure operator-(const BruhatMeasure& a, const BruhatMeasure& b) {
    return a + Rational(-1) * b;
  }

  bool operator==(const BruhatMeasure& o) const { return (*this - o).is_zero(); }

  // Total variation: sum |c_g| + sum |c_j| mu(K^(L)).
  Rational total_variation() const {
    Rational t = 0;
    for (const auto& [g, c] : atoms_) t += abs(c);
    for (const auto& [a, c] : density_) t += abs(c) * measure_level(shape_, level_);
    return t;
  }

 private:
  void add_key(const Element& key, const Rational& c) {
    Rational& v = density_[key];
    v += c;
    if (v == 0) density_.erase(key);
  }

  TreeShape shape_{};
  std::map<Element, Rational> atoms_;
  std::size_t level_ = 0;
  std::map<Element, Rational> density_;
};

// Levels controlling a right translation aK^(L) eta.
struct TranslationLevels {
  std::size_t result;      // aK^(L) eta is a union of level-`result` cosets
  std::size_t transversal; // enumerate K^(L) / K^(transversal)
};

// K^(r) lies in eta^-1 K^(L) eta once r >= depth of eta's domain and
// r + emin(eta) >= L; eta^-1 K^(m) eta lies in K^(r) once m >= depth of the
// range and m - emax(eta) >= r.
inline TranslationLevels translation_levels(const Element& eta, std::size_t L) {
  if (eta.in_O_level(L)) return {L, L};
  long r = std::max<long>({static_cast<long>(L), static_cast<long>(eta.max_domain_height()),
                           static_cast<long>(L) - eta.min_exponent()});
  long m = std::max<long>({static_cast<long>(L), static_cast<long>(eta.max_range_height()),
                           r + eta.max_exponent()});
  return {static_cast<std::size_t>(r), static_cast<std::size_t>(m)};
}

// Single-vertex adjacent transpositions at heights lo .. hi-1; together with
// K^(hi) they generate K^(lo).
inline std::vector<Element> level_generators(const TreeShape& shape, std::size_t lo, std::size_t hi) {
  std::vector<Element> out;
  for (std::size_t h = lo; h < hi; ++h) {
    for (const auto& v : level_vertices(shape, h)) {
      int arity = arity_at(shape, v);
      for (int i = 0; i + 1 < arity; ++i) {
        out.push_back(Element::from_portrait(shape, Portrait::single(v, Perm::transposition(arity, i, i + 1))));
      }
    }
  }
  return out;
}

// aK^(L) eta = a eta W with W = eta^-1 K^(L) eta, written as disjoint level-r
// cosets. W / K^(r) is the orbit of K^(r) under left multiplication by the
// conjugated generators eta^-1 t eta; the rest of W lies in K^(r) and is
// normal in W, so it contributes nothing new.
inline std::vector<Coset> right_translate(const Coset& c, const Element& eta) {
  const TreeShape& shape = c.rep.shape();
  auto lv = translation_levels(eta, c.level);
  if (lv.result == c.level && lv.transversal == c.level) return {{coset_key(c.rep * eta, c.level), c.level}};
  BigInt expected = exact_div(ball_automorphism_count(shape, lv.result), ball_automorphism_count(shape, c.level));
  require(expected <= BigInt(static_cast<unsigned long>(max_pieces())), ErrorKind::resource_limit,
          "translation splits into " + expected.get_str() + " cosets");
  Element inv = eta.inverse();
  std::vector<Element> gens;
  for (const auto& t : level_generators(shape, c.level, lv.transversal)) {
    Element g = inv * t * eta;
    if (!g.in_K_level(lv.result)) gens.push_back(std::move(g));
  }
  std::set<Element> seen{coset_key(Element::identity(shape), lv.result)};
  std::vector<Element> queue(seen.begin(), seen.end());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& g : gens) {
      Element k = coset_key(g * queue[i], lv.result);
      if (seen.insert(k).second) queue.push_back(std::move(k));
    }
  }
  if (BigInt(static_cast<unsigned long>(seen.size())) != expected) {
    fail(ErrorKind::internal, "right translation produced " + std::to_string(seen.size()) +
                                  " cosets, expected " + expected.get_str());
  }
  Element base = c.rep * eta;
  std::set<Element> keys;
  for (const auto& w : seen) keys.insert(coset_key(base * w, lv.result));
  std::vector<Coset> out;
  for (const auto& k : keys) out.push_back({k, lv.result});
  return out;
}

// K^(L) b K^(L) / K^(L) as canonical keys. K^(H) with H past the depth of b
// fixes every coset in the orbit, so the transpositions at heights L .. H-1
// suffice.
inline std::vector<Element> double_coset_orbit(const Element& b, std::size_t L) {
  const TreeShape& shape = b.shape();
  long H = std::max<long>({static_cast<long>(L), static_cast<long>(b.max_range_height()),
                           static_cast<long>(L) + b.max_exponent()});
  auto gens = level_generators(shape, L, static_cast<std::size_t>(H));
  std::set<Element> seen{coset_key(b, L)};
  std::vector<Element> queue(seen.begin(), seen.end());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& t : gens) {
      Element k = coset_key(t * queue[i], L);
      if (!seen.insert(k).second) continue;
      require(seen.size() <= max_pieces(), ErrorKind::resource_limit,
              "double coset exceeds the cap of " + std::to_string(max_pieces()) + " cosets");
      queue.push_back(std::move(k));
    }
  }
  return queue;
}

inline BruhatMeasure convolve(const BruhatMeasure& f, const BruhatMeasure& g) {
  require(f.shape() == g.shape(), ErrorKind::validation, "shape mismatch in convolution");
  const TreeShape& shape = f.shape();
  BruhatMeasure r(shape);
  for (const auto& [x, cx] : f.atoms()) {
    for (const auto& [y, cy] : g.atoms()) r.add_atom(x * y, cx * cy);
    for (const auto& [b, cb] : g.density()) r.add_density({x * b, g.level()}, cx * cb);
  }
  for (const auto& [a, ca] : f.density()) {
    for (const auto& [y, cy] : g.atoms()) {
      for (const auto& part : right_translate({a, f.level()}, y)) r.add_density(part, ca * cy);
    }
  }
  if (!f.density().empty() && !g.density().empty()) {
    // 1_{aK} * 1_{bK} = mu(K) / N  sum_i 1_{a c_i K}  over the N cosets c_i K
    // of K b K.
    std::size_t L = std::max(f.level(), g.level());
    BruhatMeasure ff = f, gg = g;
    ff.refine_to(L);
    gg.refine_to(L);
    for (const auto& [b, cb] : gg.density()) {
      auto orbit = double_coset_orbit(b, L);
      Rational w = measure_level(shape, L) / Rational(static_cast<unsigned long>(orbit.size()));
      for (const auto& [a, ca] : ff.density()) {
        for (const auto& c : orbit) r.add_density({a * c, L}, ca * cb * w);
      }
    }
  }
  return r;
}

// f*(t) = conj(f(t^-1)).
inline BruhatMeasure involution(const BruhatMeasure& f) {
  BruhatMeasure r(f.shape());
  for (const auto& [g, c] : f.atoms()) r.add_atom(g.inverse(), c);
  for (const auto& [a, c] : f.density()) {
    // (aK)^-1 = K a^-1
    for (const auto& part : right_translate({Element::identity(f.shape()), f.level()}, a.inverse())) {
      r.add_density(part, c);
    }
  }
  return r;
}

// phi^f(gK^(n)) = <f xi_K, xi_{gK}>, which equals the f-mass of gK^(n).
inline Rational fourier_coefficient(const BruhatMeasure& f, const Coset& c) {
  Rational phi = 0;
  for (const auto& [g, v] : f.atoms()) {
    if (coset_member(g, c)) phi += v;
  }
  if (f.density().empty()) return phi;
  const TreeShape& shape = f.shape();
  if (f.level() >= c.level) {
    Rational w = measure_level(shape, f.level());
    for (const auto& [a, v] : f.density()) {
      if (coset_member(a, c)) phi += v * w;
    }
  } else {
    Rational w = measure_level(shape, c.level);
    for (const auto& [a, v] : f.density()) {
      if (coset_member(c.rep, {a, f.level()})) phi += v * w;
    }
  }
  return phi;
}

// Level-n cosets on which phi^f can be nonzero.
inline std::vector<Coset> support_cosets(const BruhatMeasure& f, std::size_t n) {
  std::set<Element> keys;
  for (const auto& [g, v] : f.atoms()) keys.insert(coset_key(g, n));
  for (const auto& [a, v] : f.density()) {
    if (f.level() >= n) {
      keys.insert(coset_key(a, n));
    } else {
      for (const auto& part : partition_coset({a, f.level()}, n)) keys.insert(coset_key(part.rep, n));
    }
  }
  std::vector<Coset> out;
  for (const auto& k : keys) out.push_back({k, n});
  return out;
}

// phi^f vanishes on G/K^(n)  <=>  f * p_{K^(n)} = 0. Both sides are computed;
// a disagreement is an internal error.
inline bool vanishing_check(const BruhatMeasure& f, std::size_t n) {
  bool phi_zero = true;
  for (const auto& c : support_cosets(f, n)) {
    if (fourier_coefficient(f, c) != 0) {
      phi_zero = false;
      break;
    }
  }
  bool conv_zero = convolve(f, BruhatMeasure::averaging(f.shape(), n)).is_zero();
  if (phi_zero != conv_zero) fail(ErrorKind::internal, "vanishing criterion disagrees with convolution");
  return phi_zero;
}

// gamma^-1 K^(m) gamma inside K^(n), decided exactly: below height H every
// element of K^(H) is conjugated into K^(n) by the depth bound, and K^(m) is
// generated by K^(H) together with single-vertex transpositions at heights
// m .. H-1, which are checked one by one.
inline bool conjugation_contained(const Element& gamma, std::size_t m, std::size_t n) {
  const TreeShape& shape = gamma.shape();
  long H = std::max<long>({static_cast<long>(m), static_cast<long>(gamma.max_range_height()),
                           static_cast<long>(n) + gamma.max_exponent()});
  Element inv = gamma.inverse();
  for (const auto& t : level_generators(shape, m, static_cast<std::size_t>(H))) {
    if (!(inv * t * gamma).in_K_level(n)) return false;
  }
  return true;
}

struct AveragingReport {
  bool containment = false;  // gamma^-1 K^(m) gamma inside K^(n)
  bool identity = false;     // p_{K^(m)} * 1_{gamma K^(n)} == 1_{gamma K^(n)}
};

inline AveragingReport averaging_identity_check(const Element& gamma, std::size_t n, std::size_t m) {
  require(m >= n, ErrorKind::validation, "averaging check needs m >= n");
  AveragingReport rep;
  rep.containment = conjugation_contained(gamma, m, n);
  auto target = BruhatMeasure::indicator({gamma, n});
  rep.identity = convolve(BruhatMeasure::averaging(gamma.shape(), m), target) == target;
  return rep;
}

struct HilbertReport {
  std::size_t distinct = 0;  // N: distinct cosets h gK h^-1 (identity included)
  std::vector<Coset> orbit;
  Rational lhs;              // ||f * xi_K||^2
  Rational rhs;              // N |phi^f(gK)|^2
  Rational phi;
  bool holds = false;
};

inline HilbertReport hilbert_inequality_check(const BruhatMeasure& f, const std::vector<Element>& conjugators,
                                              const Coset& c) {
  const std::size_t n = c.level;
  for (const auto& h : conjugators) {
    require(h.in_O_level(n), ErrorKind::validation,
            "conjugator " + h.to_string() + " does not normalize K^(" + std::to_string(n) + ")");
    auto conj = convolve(convolve(BruhatMeasure::atom(h), f), BruhatMeasure::atom(h.inverse()));
    if (!(conj == f)) {
      fail(ErrorKind::invariance, "measure is not invariant under conjugation by " + h.to_string());
    }
  }
  HilbertReport rep;
  std::set<Element> keys{coset_key(c.rep, n)};
  rep.orbit.push_back({*keys.begin(), n});
  for (const auto& h : conjugators) {
    auto k = coset_key(h * c.rep * h.inverse(), n);
    if (keys.insert(k).second) rep.orbit.push_back({k, n});
  }
  rep.distinct = keys.size();
  // f * 1_K = sum phi(gK) 1_{gK}, so ||f * xi_K||^2 = sum of squared values times mu(piece) / mu(K)
  auto conv = convolve(f, BruhatMeasure::indicator({Element::identity(f.shape()), n}));
  require(conv.atoms().empty(), ErrorKind::internal, "atoms left after smoothing");
  Rational mu_piece = measure_level(f.shape(), conv.level());
  Rational norm = 0;
  for (const auto& [a, v] : conv.density()) norm += v * v * mu_piece;
  rep.lhs = norm / measure_level(f.shape(), n);
  rep.phi = fourier_coefficient(f, c);
  rep.rhs = Rational(static_cast<unsigned long>(rep.distinct)) * rep.phi * rep.phi;
  rep.holds = rep.lhs >= rep.rhs;
  return rep;
}

// A level-m coset inside c whose |phi| / mu is at least that of c.
inline Coset ratio_step(const BruhatMeasure& f, const Coset& c, std::size_t m) {
  require(m > c.level, ErrorKind::validation, "ratio_step needs m above the coset level");
  auto parts = partition_coset(c, m);
  std::size_t best = 0;
  Rational best_phi = -1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Rational v = abs(fourier_coefficient(f, parts[i]));
    if (v > best_phi) {
      best_phi = v;
      best = i;
    }
  }
  const TreeShape& shape = f.shape();
  Rational before = abs(fourier_coefficient(f, c)) / measure_level(shape, c.level);
  Rational after = best_phi / measure_level(shape, m);
  if (after < before) fail(ErrorKind::internal, "ratio step lost mass");
  return parts[best];
}

}  // namespace neretin
