#pragma once

// Lower bounds for conjugation orbits of cosets gK^(n) under O^(n), and the
// growth of c(gK^(n)) mu(K^(n))^2 along n.

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bruhat.hpp"

namespace neretin {

struct DisplacedBall {
  Address w;
  std::size_t n0 = 0;
  Address image;
};

// Breadth-first over heights: a w of least height on which g is rigid and
// g(B^w) is disjoint from B^w, preferring the smallest |exponent| and then
// planar order. Any moved boundary point has such a ball at bounded depth, so
// the loop ends for g != 1.
inline DisplacedBall find_displaced_ball(const Element& g) {
  require(!g.is_identity(), ErrorKind::identity_input, "identity moves no ball");
  const TreeShape& shape = g.shape();
  std::size_t limit = 2 * g.depth() + 2;
  for (std::size_t h = 1; h <= limit; ++h) {
    std::optional<DisplacedBall> best;
    long best_e = 0;
    for (const auto& v : level_vertices(shape, h)) {
      auto img = g.rigid_image(v);
      if (!img || img->image.comparable(v)) continue;
      long e = std::labs(static_cast<long>(img->image.height()) - static_cast<long>(h));
      if (!best || e < best_e) {
        best = DisplacedBall{v, h, img->image};
        best_e = e;
      }
    }
    if (best) return *best;
  }
  fail(ErrorKind::internal, "no displaced ball found for " + g.to_string());
}

// LB(n) = (d^m)! / |Aut(T_{d,d}^{<=m})| with m = n - n0, and 1 for n <= n0.
inline BigInt witness_bound(int d, std::size_t n0, std::size_t n) {
  if (n <= n0) return 1;
  std::size_t m = n - n0;
  BigInt leaves = power(BigInt(d), m);
  require(leaves <= BigInt(1UL << 20), ErrorKind::resource_limit,
          "witness bound needs (" + leaves.get_str() + ")!");
  return exact_div(factorial(leaves.get_ui()), ball_automorphism_count(TreeShape(d, d), m));
}

inline BigInt neretin_witness_bound(const Element& g, std::size_t n) {
  return witness_bound(g.shape().d, find_displaced_ball(g).n0, n);
}

struct StarRow {
  std::size_t n = 0;
  BigInt lower_bound;
  Rational mu_squared;
  Rational product;
};

inline std::vector<StarRow> star_table(const Element& g, std::size_t from, std::size_t to) {
  require(from <= to, ErrorKind::validation, "empty level range");
  std::size_t n0 = find_displaced_ball(g).n0;
  std::vector<StarRow> rows;
  for (std::size_t n = from; n <= to; ++n) {
    StarRow r;
    r.n = n;
    r.lower_bound = witness_bound(g.shape().d, n0, n);
    Rational mu = measure_level(g.shape(), n);
    r.mu_squared = mu * mu;
    r.product = Rational(r.lower_bound) * r.mu_squared;
    rows.push_back(std::move(r));
  }
  return rows;
}

// Eventual growth of P(n) = LB(n) mu(K^(n))^2. With M = d^(n-n0),
//   P(n+1)/P(n) = (dM)! / M! / (d!)^(c M),   c = 1 + 2 k d^(n0-1),
// and (dM)!/M! >= (M+1)^((d-1)M), so the ratio exceeds 1 as soon as
// (M+1)^(d-1) > (d!)^c, which persists for all larger M. Below that level
// the ratio is evaluated exactly.
struct GrowthCertificate {
  std::size_t n0 = 0;
  std::size_t n1 = 0;          // ratio > 1 for every n >= n1
  std::size_t tail_level = 0;  // from here on the factor bound applies
  unsigned long exponent = 0;  // c
  std::vector<std::pair<std::size_t, bool>> exact;  // (n, ratio > 1) for n0 <= n < tail_level
};

inline Rational star_ratio(int d, int k, std::size_t n0, std::size_t n) {
  TreeShape sh(d, k);
  Rational a = Rational(witness_bound(d, n0, n + 1)) * measure_level(sh, n + 1) * measure_level(sh, n + 1);
  Rational b = Rational(witness_bound(d, n0, n)) * measure_level(sh, n) * measure_level(sh, n);
  return a / b;
}

inline GrowthCertificate growth_certificate(const Element& g, std::size_t max_level = 32) {
  const int d = g.shape().d, k = g.shape().k;
  GrowthCertificate cert;
  cert.n0 = find_displaced_ball(g).n0;
  require(cert.n0 >= 1, ErrorKind::internal, "displaced ball at the root");
  BigInt c = 1 + 2 * BigInt(k) * power(BigInt(d), cert.n0 - 1);
  require(c.fits_ulong_p(), ErrorKind::resource_limit, "growth exponent too large");
  cert.exponent = c.get_ui();
  BigInt rhs = power(factorial(static_cast<std::uint64_t>(d)), cert.exponent);
  std::size_t m = 0;
  while (power(power(BigInt(d), m) + 1, static_cast<std::uint64_t>(d - 1)) <= rhs) ++m;
  cert.tail_level = cert.n0 + m;
  require(cert.tail_level <= max_level, ErrorKind::resource_limit,
          "factor bound only applies from level " + std::to_string(cert.tail_level));
  cert.n1 = cert.tail_level;
  for (std::size_t n = cert.n0; n < cert.tail_level; ++n) {
    cert.exact.emplace_back(n, star_ratio(d, k, cert.n0, n) > 1);
  }
  for (auto it = cert.exact.rbegin(); it != cert.exact.rend() && it->second; ++it) cert.n1 = it->first;
  // the first tail level is also checked exactly
  if (star_ratio(d, k, cert.n0, cert.tail_level) <= 1) fail(ErrorKind::internal, "factor bound contradicted");
  return cert;
}

// M! >= (M / e)^M checked as M! * 2721^M >= M^M * 1001^M, using 2721/1001 < e.
inline bool stirling_lower_bound_holds(std::uint64_t M) {
  return factorial(M) * power(BigInt(2721), M) >= power(BigInt(M), M) * power(BigInt(1001), M);
}

struct OrbitCertificate {
  Coset base;
  std::vector<Element> conjugators;  // conjugators[i] sends base to witnesses[i]
  std::vector<Coset> witnesses;
  std::size_t count = 0;
  bool exhausted = false;  // budget reached before the orbit closed
};

// Level-n rigid transpositions of planar-adjacent vertices, plus single-vertex
// adjacent transpositions at heights n and n+1.
inline std::vector<Element> default_orbit_generators(const TreeShape& shape, std::size_t n) {
  std::vector<Element> out;
  if (n >= 1) {
    auto verts = level_vertices(shape, n);
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
      auto imgs = verts;
      std::swap(imgs[i], imgs[i + 1]);
      out.push_back(Element::level_permutation(shape, n, imgs));
    }
  }
  for (auto& t : level_generators(shape, n, n + 2)) out.push_back(std::move(t));
  return out;
}

inline OrbitCertificate orbit_lower_bound_bfs(const Coset& c, const std::vector<Element>& generators,
                                              std::size_t budget) {
  const std::size_t n = c.level;
  for (const auto& h : generators) {
    require(h.in_O_level(n), ErrorKind::validation,
            "generator " + h.to_string() + " does not normalize K^(" + std::to_string(n) + ")");
  }
  require(budget >= 1, ErrorKind::validation, "budget must be positive");
  OrbitCertificate cert;
  cert.base = c;
  std::map<std::string, std::vector<std::size_t>> buckets;
  auto insert = [&](const Element& h) {
    Coset w{h * c.rep * h.inverse(), n};
    auto& bucket = buckets[coset_fingerprint(w)];
    for (auto i : bucket) {
      if (coset_equal(cert.witnesses[i], w)) return;
    }
    bucket.push_back(cert.witnesses.size());
    cert.witnesses.push_back(canonical(w));
    cert.conjugators.push_back(h);
  };
  insert(Element::identity(c.rep.shape()));
  for (std::size_t i = 0; i < cert.witnesses.size(); ++i) {
    for (const auto& t : generators) {
      if (cert.witnesses.size() >= budget) {
        cert.exhausted = true;
        break;
      }
      insert(t * cert.conjugators[i]);
    }
    if (cert.exhausted) break;
  }
  cert.count = cert.witnesses.size();
  return cert;
}

// Recomputes every h g h^-1 and checks the witnesses pairwise.
inline bool verify_certificate(const OrbitCertificate& cert) {
  const std::size_t n = cert.base.level;
  if (cert.witnesses.size() != cert.count || cert.conjugators.size() != cert.count) return false;
  for (std::size_t i = 0; i < cert.count; ++i) {
    const auto& h = cert.conjugators[i];
    if (!h.in_O_level(n)) return false;
    if (!coset_equal(cert.witnesses[i], {h * cert.base.rep * h.inverse(), n})) return false;
  }
  for (std::size_t i = 0; i < cert.count; ++i) {
    for (std::size_t j = i + 1; j < cert.count; ++j) {
      if (coset_equal(cert.witnesses[i], cert.witnesses[j])) return false;
    }
  }
  return true;
}

}  // namespace neretin
