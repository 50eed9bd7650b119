#pragma once

// HNN extensions <H, t | t k t^-1 = theta(k), k in K_1>, theta: K_1 -> K_-1,
// over a finite base or over Z (Baumslag-Solitar). Words are
// g_1 t^e_1 g_2 ... t^e_n g_{n+1}; a pinch is t k t^-1 with k in K_1 or
// t^-1 k t with k in K_-1.

#include <cctype>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "arith.hpp"
#include "perm_group.hpp"
#include "rng.hpp"

namespace neretin {

// Finite base H with a partial isomorphism theta: K_1 -> K_-1.
class FiniteHnnBase {
 public:
  using Elem = int;

  FiniteHnnBase(FiniteGroup h, FiniteGroup::Subset k1, FiniteGroup::Subset km1, std::vector<std::pair<int, int>> theta)
      : h_(std::move(h)), k1_(std::move(k1)), km1_(std::move(km1)) {
    require(h_.is_subgroup(k1_) && h_.is_subgroup(km1_), ErrorKind::validation, "associated subsets are not subgroups");
    fwd_.assign(h_.size(), -1);
    bwd_.assign(h_.size(), -1);
    for (auto [a, b] : theta) {
      require(FiniteGroup::member(k1_, a) && FiniteGroup::member(km1_, b), ErrorKind::validation,
              "theta maps outside the associated subgroups");
      require(fwd_[a] < 0 && bwd_[b] < 0, ErrorKind::validation, "theta is not injective");
      fwd_[a] = b;
      bwd_[b] = a;
    }
    for (int a : k1_) require(fwd_[a] >= 0, ErrorKind::validation, "theta is not defined on all of K_1");
    require(k1_.size() == km1_.size(), ErrorKind::validation, "theta is not onto K_-1");
    for (int a : k1_) {
      for (int b : k1_) {
        require(fwd_[h_.mul(a, b)] == h_.mul(fwd_[a], fwd_[b]), ErrorKind::validation, "theta is not a homomorphism");
      }
    }
  }

  // H = C4, K_1 = K_-1 = <a^2>, theta = id.
  static FiniteHnnBase cyclic4() {
    auto h = FiniteGroup::cyclic(4);
    int a = h.index_of(Perm::from_cycles("(0 1 2 3)", 4));
    auto k = h.generate({h.mul(a, a)});
    std::vector<std::pair<int, int>> th;
    for (int x : k) th.emplace_back(x, x);
    return FiniteHnnBase(h, k, k, th);
  }

  // H = C2 x C2 = {e, a, b, ab}, K_1 = <a>, K_-1 = <b>, theta(a) = b.
  static FiniteHnnBase klein() {
    auto h = FiniteGroup::klein();
    int a = h.index_of(Perm::from_cycles("(0 1)(2 3)", 4));
    int b = h.index_of(Perm::from_cycles("(0 2)(1 3)", 4));
    return FiniteHnnBase(h, h.generate({a}), h.generate({b}), {{0, 0}, {a, b}});
  }

  const FiniteGroup& group() const { return h_; }
  const FiniteGroup::Subset& associated(int side) const { return side > 0 ? k1_ : km1_; }

  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const { return h_.mul(a, b); }
  Elem inv(Elem a) const { return h_.inv(a); }
  bool in_K(int side, Elem a) const { return FiniteGroup::member(associated(side), a); }
  // side +1: t a t^-1 = theta(a); side -1: t^-1 a t = theta^-1(a)
  Elem pinch(int side, Elem a) const { return side > 0 ? fwd_[a] : bwd_[a]; }
  bool centralizes(Elem x, int side) const { return h_.centralizes(x, associated(side)); }
  std::string label(Elem a) const { return "g" + std::to_string(a); }
  std::optional<Elem> parse(const std::string& tok) const {
    if (tok.size() < 2 || tok[0] != 'g') return std::nullopt;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return std::nullopt;
    }
    int v = std::stoi(tok.substr(1));
    if (v < 0 || static_cast<std::size_t>(v) >= h_.size()) return std::nullopt;
    return v;
  }
  Elem random(Rng& rng) const { return static_cast<Elem>(rng.below(h_.size())); }
  Elem random_in_K(int side, Rng& rng) const {
    const auto& k = associated(side);
    return k[rng.below(k.size())];
  }

 private:
  FiniteGroup h_;
  FiniteGroup::Subset k1_, km1_;
  std::vector<int> fwd_, bwd_;
};

// BS(p, q) = <a, t | t a^p t^-1 = a^q>; base elements are exponents of a.
class BaumslagSolitarBase {
 public:
  using Elem = BigInt;

  BaumslagSolitarBase(long p, long q) : p_(p), q_(q) {
    require(p != 0 && q != 0, ErrorKind::validation, "Baumslag-Solitar exponents must be nonzero");
  }

  long p() const { return p_; }
  long q() const { return q_; }
  Elem identity() const { return 0; }
  Elem mul(const Elem& a, const Elem& b) const { return a + b; }
  Elem inv(const Elem& a) const { return -a; }
  bool in_K(int side, const Elem& a) const {
    return mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(std::labs(side > 0 ? p_ : q_))) != 0;
  }
  Elem pinch(int side, const Elem& a) const {
    return side > 0 ? BigInt(a / BigInt(p_) * BigInt(q_)) : BigInt(a / BigInt(q_) * BigInt(p_));
  }
  bool centralizes(const Elem&, int) const { return true; }
  std::string label(const Elem& a) const { return a == 0 ? std::string("e") : "a^" + a.get_str(); }
  std::optional<Elem> parse(const std::string& tok) const {
    if (tok == "e") return Elem(0);
    if (tok == "a") return Elem(1);
    if (tok.rfind("a^", 0) != 0 || tok.size() < 3) return std::nullopt;
    Elem v;
    if (v.set_str(tok.substr(2), 10) != 0) return std::nullopt;
    return v;
  }
  Elem random(Rng& rng) const { return BigInt(static_cast<long>(rng.below(25)) - 12); }
  Elem random_in_K(int side, Rng& rng) const {
    return BigInt(side > 0 ? p_ : q_) * BigInt(static_cast<long>(rng.below(7)) - 3);
  }

 private:
  long p_, q_;
};

template <class E>
struct HnnWord {
  std::vector<E> g;   // n + 1 base letters
  std::vector<int> eps;  // n stable letters, each +1 or -1

  long sigma() const {
    long s = 0;
    for (int e : eps) s += e;
    return s;
  }
  std::size_t tau() const { return eps.size(); }
  bool operator==(const HnnWord&) const = default;
};

template <class Base>
using WordOf = HnnWord<typename Base::Elem>;

template <class Base>
WordOf<Base> hnn_letter(const Base&, const typename Base::Elem& x) {
  return {{x}, {}};
}

template <class Base>
WordOf<Base> hnn_stable(const Base& b, int e) {
  return {{b.identity(), b.identity()}, {e}};
}

template <class Base>
WordOf<Base> hnn_concat(const Base& b, const WordOf<Base>& u, const WordOf<Base>& v) {
  WordOf<Base> w = u;
  w.g.back() = b.mul(w.g.back(), v.g.front());
  w.g.insert(w.g.end(), v.g.begin() + 1, v.g.end());
  w.eps.insert(w.eps.end(), v.eps.begin(), v.eps.end());
  return w;
}

template <class Base>
WordOf<Base> hnn_concat(const Base& b, std::initializer_list<WordOf<Base>> parts) {
  WordOf<Base> w{{b.identity()}, {}};
  for (const auto& p : parts) w = hnn_concat(b, w, p);
  return w;
}

template <class Base>
WordOf<Base> hnn_inverse(const Base& b, const WordOf<Base>& w) {
  WordOf<Base> r;
  for (auto it = w.g.rbegin(); it != w.g.rend(); ++it) r.g.push_back(b.inv(*it));
  for (auto it = w.eps.rbegin(); it != w.eps.rend(); ++it) r.eps.push_back(-*it);
  return r;
}

template <class Base>
WordOf<Base> hnn_power(const Base& b, const WordOf<Base>& w, std::size_t n) {
  WordOf<Base> r{{b.identity()}, {}};
  for (std::size_t i = 0; i < n; ++i) r = hnn_concat(b, r, w);
  return r;
}

template <class Base>
bool hnn_is_reduced(const Base& b, const WordOf<Base>& w) {
  for (std::size_t i = 1; i < w.eps.size(); ++i) {
    if (w.eps[i - 1] == -w.eps[i] && b.in_K(w.eps[i - 1], w.g[i])) return false;
  }
  return true;
}

// Stack reduction: each stable letter either cancels against the previous one
// through a pinch or is pushed. Terminates with a reduced word.
template <class Base>
WordOf<Base> britton_reduce(const Base& b, const WordOf<Base>& w) {
  require(w.g.size() == w.eps.size() + 1, ErrorKind::validation, "malformed HNN word");
  WordOf<Base> r{{w.g.front()}, {}};
  for (std::size_t i = 0; i < w.eps.size(); ++i) {
    int e = w.eps[i];
    if (!r.eps.empty() && r.eps.back() == -e && b.in_K(r.eps.back(), r.g.back())) {
      auto c = b.pinch(r.eps.back(), r.g.back());
      r.g.pop_back();
      r.eps.pop_back();
      r.g.back() = b.mul(r.g.back(), c);
    } else {
      r.eps.push_back(e);
      r.g.push_back(b.identity());
    }
    r.g.back() = b.mul(r.g.back(), w.g[i + 1]);
  }
  return r;
}

template <class Base>
std::string hnn_to_string(const Base& b, const WordOf<Base>& w) {
  std::string out = b.label(w.g[0]);
  for (std::size_t i = 0; i < w.eps.size(); ++i) {
    out += w.eps[i] > 0 ? " t " : " t^-1 ";
    out += b.label(w.g[i + 1]);
  }
  return out;
}

// Whitespace-separated tokens: base letters and t, t^1, t^-1.
template <class Base>
WordOf<Base> hnn_parse(const Base& b, const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  WordOf<Base> w{{b.identity()}, {}};
  std::size_t pos = 0;
  while (in >> tok) {
    pos = text.find(tok, pos);
    if (tok == "t" || tok == "t^1") {
      w = hnn_concat(b, w, hnn_stable(b, 1));
    } else if (tok == "t^-1") {
      w = hnn_concat(b, w, hnn_stable(b, -1));
    } else if (auto x = b.parse(tok)) {
      w.g.back() = b.mul(w.g.back(), *x);
    } else {
      fail(ErrorKind::parse, "unknown token '" + tok + "' at position " + std::to_string(pos));
    }
    pos += tok.size();
  }
  return w;
}

// x in K_m iff theta^j(x) is defined for j = 1..m and theta^-j(x) for j = 1..m.
template <class Base>
bool hnn_in_Km(const Base& b, const typename Base::Elem& x, std::size_t m) {
  for (int side : {1, -1}) {
    auto y = x;
    for (std::size_t j = 0; j < m; ++j) {
      if (!b.in_K(side, y)) return false;
      y = b.pinch(side, y);
    }
  }
  return true;
}

inline FiniteGroup::Subset hnn_km(const FiniteHnnBase& b, std::size_t m) {
  FiniteGroup::Subset out;
  for (int x = 0; x < static_cast<int>(b.group().size()); ++x) {
    if (hnn_in_Km(b, x, m)) out.push_back(x);
  }
  return out;
}

// Least |s| <= m (positive first) with t^s x t^-s outside H, for x in H \ K_m.
template <class Base>
long hnn_escape_level(const Base& b, const typename Base::Elem& x, std::size_t m) {
  for (long s = 1; s <= static_cast<long>(m); ++s) {
    for (int side : {1, -1}) {
      auto y = x;
      bool inside = true;
      for (long j = 0; j < s && inside; ++j) {
        if (!b.in_K(side, y)) inside = false;
        else y = b.pinch(side, y);
      }
      if (!inside) return side * s;
    }
  }
  return 0;
}

template <class E>
struct HnnWitness {
  int case_id = 0;       // 1: g in H, 2: eps_1 = -eps_n, 3: eps_1 = eps_n
  long s = 0;            // escape level in case 1
  HnnWord<E> x;
  std::vector<std::size_t> taus;  // tau(x^N g x^-N), N = 0 .. N_max
};

// Conjugator x with tau(x^N g x^-N) strictly increasing. Stable letters are
// oriented by t k t^-1 = theta(k), so x_1 (centralizing K_1) sits where t x t^-1
// must not pinch.
template <class Base>
HnnWitness<typename Base::Elem> hnn_witness(const Base& b, const WordOf<Base>& g_in, std::size_t m,
                                            const typename Base::Elem& x1, const typename Base::Elem& xm1,
                                            std::size_t n_max) {
  using W = WordOf<Base>;
  require(b.centralizes(x1, 1) && !b.in_K(1, x1), ErrorKind::hypothesis, "x_1 must centralize K_1 and lie outside it");
  require(b.centralizes(xm1, -1) && !b.in_K(-1, xm1), ErrorKind::hypothesis,
          "x_-1 must centralize K_-1 and lie outside it");
  W g = britton_reduce(b, g_in);
  auto X = [&](int side) { return hnn_letter(b, side > 0 ? x1 : xm1); };
  auto T = [&](int e) { return hnn_stable(b, e); };
  HnnWitness<typename Base::Elem> wit;
  if (g.eps.empty()) {
    require(!hnn_in_Km(b, g.g[0], m), ErrorKind::hypothesis, "g lies in K_m");
    wit.case_id = 1;
    wit.s = hnn_escape_level(b, g.g[0], m);
    long s = std::labs(wit.s);
    int e = wit.s > 0 ? 1 : -1;
    W ts = hnn_power(b, T(e), static_cast<std::size_t>(s));
    W tms = hnn_power(b, T(-e), static_cast<std::size_t>(s));
    wit.x = hnn_concat(b, {X(e), tms, X(-e), ts});
  } else {
    int e1 = g.eps.front(), en = g.eps.back();
    if (e1 == -en) {
      wit.case_id = 2;
      wit.x = hnn_concat(b, {X(e1), T(-e1), X(-e1), T(e1)});
    } else {
      wit.case_id = 3;
      if (b.in_K(-e1, g.g[0])) wit.x = hnn_concat(b, {T(e1), X(e1), T(-e1), X(-e1)});
      else wit.x = hnn_concat(b, {X(-e1), T(e1), X(e1), T(-e1)});
    }
  }
  W xn{{b.identity()}, {}};
  for (std::size_t N = 0; N <= n_max; ++N) {
    W conj = hnn_concat(b, {xn, g, hnn_inverse(b, xn)});
    wit.taus.push_back(britton_reduce(b, conj).tau());
    xn = hnn_concat(b, xn, wit.x);
  }
  for (std::size_t N = 1; N < wit.taus.size(); ++N) {
    if (wit.taus[N] <= wit.taus[N - 1]) fail(ErrorKind::internal, "witness tau is not increasing");
  }
  return wit;
}

// Closed form in case 1: tau = 2(|s|+1) + 2(N-1) tau(x) for N >= 1.
template <class E>
std::size_t hnn_case1_tau(const HnnWitness<E>& w, std::size_t N) {
  return 2 * (static_cast<std::size_t>(std::labs(w.s)) + 1) + 2 * (N - 1) * w.x.tau();
}

// One random rewrite that preserves the group element: insert a relator,
// insert a free pair t^e t^-e, split a base letter, or apply a pinch
// somewhere in the word.
template <class Base>
WordOf<Base> hnn_random_rewrite(const Base& b, const WordOf<Base>& w, Rng& rng) {
  using W = WordOf<Base>;
  std::size_t slot = rng.below(w.g.size());
  W left{std::vector<typename Base::Elem>(w.g.begin(), w.g.begin() + slot + 1),
         std::vector<int>(w.eps.begin(), w.eps.begin() + slot)};
  W right{std::vector<typename Base::Elem>(w.g.begin() + slot, w.g.end()),
          std::vector<int>(w.eps.begin() + slot, w.eps.end())};
  right.g.front() = b.identity();
  int op = static_cast<int>(rng.below(w.eps.size() > 12 ? 5 : 3));
  if (op == 0) {
    // t k t^-1 theta(k)^-1 = 1, or its inverse orientation
    int side = rng.chance(1, 2) ? 1 : -1;
    auto k = b.random_in_K(side, rng);
    W rel = hnn_concat(b, {hnn_stable(b, side), hnn_letter(b, k), hnn_stable(b, -side), hnn_letter(b, b.inv(b.pinch(side, k)))});
    return hnn_concat(b, {left, rel, right});
  }
  if (op == 1) {
    int e = rng.chance(1, 2) ? 1 : -1;
    auto y = b.random(rng);
    W pair = hnn_concat(b, {hnn_letter(b, y), hnn_stable(b, e), hnn_stable(b, -e), hnn_letter(b, b.inv(y))});
    return hnn_concat(b, {left, pair, right});
  }
  if (op == 2) {
    auto y = b.random(rng);
    left.g.back() = b.mul(left.g.back(), y);
    return hnn_concat(b, {left, hnn_letter(b, b.inv(y)), right});
  }
  // pinch at the first pinchable position at or after slot
  for (std::size_t i = 1; i < w.eps.size(); ++i) {
    std::size_t j = (slot + i) % w.eps.size();
    if (j == 0) continue;
    if (w.eps[j - 1] == -w.eps[j] && b.in_K(w.eps[j - 1], w.g[j])) {
      W r;
      r.g.assign(w.g.begin(), w.g.begin() + j);
      r.eps.assign(w.eps.begin(), w.eps.begin() + j - 1);
      r.g.back() = b.mul(b.mul(r.g.back(), b.pinch(w.eps[j - 1], w.g[j])), w.g[j + 1]);
      r.g.insert(r.g.end(), w.g.begin() + j + 2, w.g.end());
      r.eps.insert(r.eps.end(), w.eps.begin() + j + 1, w.eps.end());
      return r;
    }
  }
  return w;
}

template <class Base>
WordOf<Base> hnn_random_word(const Base& b, std::size_t len, Rng& rng) {
  WordOf<Base> w{{b.random(rng)}, {}};
  for (std::size_t i = 0; i < len; ++i) {
    w.eps.push_back(rng.chance(1, 2) ? 1 : -1);
    w.g.push_back(b.random(rng));
  }
  return w;
}

}  // namespace neretin
