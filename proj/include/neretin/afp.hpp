#pragma once

// Amalgamated free products A *_K B of finite groups. Normal form
// t_1 t_2 ... t_n k with t_i alternating between fixed left transversals of K
// in A and in B (minus the identity) and k in K.

#include <sstream>
#include <string>
#include <vector>

#include "perm_group.hpp"
#include "rng.hpp"

namespace neretin {

struct Syllable {
  int factor = 0;  // 0: A, 1: B
  int elem = 0;    // index in that factor
  bool operator==(const Syllable&) const = default;
};

struct AfpNormalForm {
  std::vector<Syllable> reps;
  int k = 0;  // element of K as an index in A
  std::size_t length() const { return reps.size(); }
  bool operator==(const AfpNormalForm&) const = default;
};

class AfpInstance {
 public:
  // iso lists pairs (index in A, index in B) identifying the copies of K.
  AfpInstance(FiniteGroup a, FiniteGroup b, std::vector<std::pair<int, int>> iso, std::string name = "")
      : name_(std::move(name)) {
    g_[0] = std::move(a);
    g_[1] = std::move(b);
    for (int f : {0, 1}) to_other_[f].assign(g_[f].size(), -1);
    for (auto [x, y] : iso) {
      k_[0].push_back(x);
      k_[1].push_back(y);
      to_other_[0][x] = y;
      to_other_[1][y] = x;
    }
    for (int f : {0, 1}) std::sort(k_[f].begin(), k_[f].end());
    for (int f : {0, 1}) {
      require(g_[f].is_subgroup(k_[f]), ErrorKind::validation, "amalgamated subgroup is not a subgroup");
      for (int x : k_[f]) require(to_other_[f][x] >= 0, ErrorKind::validation, "identification is not injective");
    }
    for (int x : k_[0]) {
      for (int y : k_[0]) {
        require(to_other_[0][g_[0].mul(x, y)] == g_[1].mul(to_other_[0][x], to_other_[0][y]), ErrorKind::validation,
                "identification of K is not a homomorphism");
      }
    }
  }

  // S3 *_{C2} S3 with K = <(1 2)> in both factors.
  static AfpInstance s3_c2() {
    auto s3 = FiniteGroup::symmetric(3);
    std::vector<std::pair<int, int>> iso;
    for (int x : s3.generate({s3.index_of(Perm::transposition(3, 0, 1))})) iso.emplace_back(x, x);
    return AfpInstance(s3, s3, iso, "S3*C2S3");
  }

  // C6 *_{C2} C4: abelian factors, so K is normal in both.
  static AfpInstance c6_c4() {
    auto a = FiniteGroup::cyclic(6);
    auto b = FiniteGroup::cyclic(4);
    int x = a.index_of(Perm::from_cycles("(0 3)(1 4)(2 5)", 6));
    int y = b.index_of(Perm::from_cycles("(0 2)(1 3)", 4));
    return AfpInstance(a, b, {{0, 0}, {x, y}}, "C6*C2C4");
  }

  const std::string& name() const { return name_; }
  const FiniteGroup& factor(int f) const { return g_[f]; }
  const FiniteGroup::Subset& K(int f) const { return k_[f]; }
  bool in_K(int f, int x) const { return FiniteGroup::member(k_[f], x); }
  // K element given as an A index, written in factor f
  int k_in(int f, int k) const { return f == 0 ? k : to_other_[0][k]; }
  int k_from(int f, int x) const { return f == 0 ? x : to_other_[1][x]; }

  // x = t * k with t the transversal representative; k returned as an A index.
  std::pair<int, int> split(int f, int x) const {
    auto [t, k] = g_[f].split_left(x, k_[f]);
    return {t, k_from(f, k)};
  }

  std::string label(const Syllable& s) const { return (s.factor == 0 ? "a" : "b") + std::to_string(s.elem); }

 private:
  std::string name_;
  FiniteGroup g_[2];
  FiniteGroup::Subset k_[2];
  std::vector<int> to_other_[2];
};

using AfpWord = std::vector<Syllable>;

namespace afp_detail {

// Rewrites k * reps[from..] * tail_k with k moved to the right end.
inline void push_k(const AfpInstance& G, int k, AfpNormalForm& nf, std::size_t from) {
  for (std::size_t j = from; j < nf.reps.size(); ++j) {
    int f = nf.reps[j].factor;
    auto [t, k2] = G.split(f, G.factor(f).mul(G.k_in(f, k), nf.reps[j].elem));
    nf.reps[j].elem = t;
    k = k2;
  }
  nf.k = G.factor(0).mul(k, nf.k);
}

inline void prepend(const AfpInstance& G, const Syllable& x, AfpNormalForm& nf) {
  const int f = x.factor;
  if (!nf.reps.empty() && nf.reps.front().factor == f) {
    auto [t, k] = G.split(f, G.factor(f).mul(x.elem, nf.reps.front().elem));
    if (t == 0) {
      nf.reps.erase(nf.reps.begin());
      push_k(G, k, nf, 0);
    } else {
      nf.reps.front().elem = t;
      push_k(G, k, nf, 1);
    }
    return;
  }
  auto [t, k] = G.split(f, x.elem);
  push_k(G, k, nf, 0);
  if (t != 0) nf.reps.insert(nf.reps.begin(), Syllable{f, t});
}

}  // namespace afp_detail

inline AfpNormalForm afp_normal_form(const AfpInstance& G, const AfpWord& w) {
  AfpNormalForm nf;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    require(it->factor == 0 || it->factor == 1, ErrorKind::validation, "syllable factor must be a or b");
    require(it->elem >= 0 && static_cast<std::size_t>(it->elem) < G.factor(it->factor).size(), ErrorKind::validation,
            "syllable index out of range");
    afp_detail::prepend(G, *it, nf);
  }
  return nf;
}

inline AfpWord afp_to_word(const AfpNormalForm& nf) {
  AfpWord w = nf.reps;
  if (nf.k != 0) w.push_back({0, nf.k});
  return w;
}

inline AfpWord afp_inverse(const AfpInstance& G, const AfpWord& w) {
  AfpWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->factor, G.factor(it->factor).inv(it->elem)});
  return r;
}

inline AfpWord afp_concat(std::initializer_list<AfpWord> parts) {
  AfpWord w;
  for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
  return w;
}

inline std::string afp_to_string(const AfpInstance& G, const AfpNormalForm& nf) {
  std::string out;
  for (const auto& s : nf.reps) out += G.label(s) + " ";
  return out + "k" + std::to_string(nf.k);
}

// Tokens a<i> and b<i>, separated by whitespace.
inline AfpWord afp_parse(const AfpInstance& G, const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  AfpWord w;
  std::size_t pos = 0;
  while (in >> tok) {
    pos = text.find(tok, pos);
    bool ok = tok.size() >= 2 && (tok[0] == 'a' || tok[0] == 'b') &&
              tok.find_first_not_of("0123456789", 1) == std::string::npos;
    if (!ok) fail(ErrorKind::parse, "unknown token '" + tok + "' at position " + std::to_string(pos));
    int f = tok[0] == 'a' ? 0 : 1;
    int e = std::stoi(tok.substr(1));
    if (e < 0 || static_cast<std::size_t>(e) >= G.factor(f).size()) {
      fail(ErrorKind::parse, "element index out of range at position " + std::to_string(pos));
    }
    w.push_back({f, e});
    pos += tok.size();
  }
  return w;
}

struct AfpWitness {
  std::string case_name;  // first and last syllable factors: AA, BB, AB, BA
  int choice = 1;         // which a_i was used
  AfpWord x;
  std::vector<std::size_t> lengths;  // of x^N g x^-N, N = 0 .. N_max
  bool normalizer_hypothesis = false;
};

// Conjugators by first/last syllable of g = g_1 ... g_n k:
//   AA: x = a_1 b;  BB: x = b a_1;
//   AB: x = b a_i with a_i g_1 outside K;
//   BA: x = b a_i with g_n k a_i^-1 outside K.
// With strict set, a_i and b must also normalize K.
inline AfpWitness afp_witness(const AfpInstance& G, const AfpWord& g_word, int a1, int a2, int b, std::size_t n_max,
                              bool strict = true) {
  const auto& A = G.factor(0);
  const auto& B = G.factor(1);
  require(!G.in_K(0, a1) && !G.in_K(0, a2), ErrorKind::hypothesis, "a_1 and a_2 must lie outside K");
  require(!G.in_K(0, A.mul(A.inv(a2), a1)), ErrorKind::hypothesis, "a_2^-1 a_1 must lie outside K");
  require(!G.in_K(1, b), ErrorKind::hypothesis, "b must lie outside K");
  auto nA = A.normalizer(G.K(0));
  auto nB = B.normalizer(G.K(1));
  AfpWitness wit;
  wit.normalizer_hypothesis =
      FiniteGroup::member(nA, a1) && FiniteGroup::member(nA, a2) && FiniteGroup::member(nB, b);
  require(!strict || wit.normalizer_hypothesis, ErrorKind::hypothesis, "a_1, a_2, b must normalize K");
  auto g = afp_normal_form(G, g_word);
  require(g.length() >= 1, ErrorKind::hypothesis, "g lies in K");
  const Syllable first = g.reps.front(), last = g.reps.back();
  const AfpWord bw{{1, b}};
  auto aw = [](int a) { return AfpWord{{0, a}}; };
  if (first.factor == 0 && last.factor == 0) {
    wit.case_name = "AA";
    wit.x = afp_concat({aw(a1), bw});
  } else if (first.factor == 1 && last.factor == 1) {
    wit.case_name = "BB";
    wit.x = afp_concat({bw, aw(a1)});
  } else if (first.factor == 0) {
    wit.case_name = "AB";
    wit.choice = !G.in_K(0, A.mul(a1, first.elem)) ? 1 : 2;
    int a = wit.choice == 1 ? a1 : a2;
    require(!G.in_K(0, A.mul(a, first.elem)), ErrorKind::hypothesis, "both a_i g_1 lie in K");
    wit.x = afp_concat({bw, aw(a)});
  } else {
    wit.case_name = "BA";
    int gnk = A.mul(last.elem, g.k);
    wit.choice = !G.in_K(0, A.mul(gnk, A.inv(a1))) ? 1 : 2;
    int a = wit.choice == 1 ? a1 : a2;
    require(!G.in_K(0, A.mul(gnk, A.inv(a))), ErrorKind::hypothesis, "both g_n k a_i^-1 lie in K");
    wit.x = afp_concat({bw, aw(a)});
  }
  AfpWord xn;
  for (std::size_t N = 0; N <= n_max; ++N) {
    wit.lengths.push_back(afp_normal_form(G, afp_concat({xn, g_word, afp_inverse(G, xn)})).length());
    xn = afp_concat({xn, wit.x});
  }
  return wit;
}

inline AfpWord afp_random_word(const AfpInstance& G, std::size_t len, Rng& rng) {
  AfpWord w;
  for (std::size_t i = 0; i < len; ++i) {
    int f = static_cast<int>(rng.below(2));
    w.push_back({f, static_cast<int>(rng.below(G.factor(f).size()))});
  }
  return w;
}

// A different word for the same element: split a syllable, insert y y^-1, or
// move a K element across to the other factor.
inline AfpWord afp_random_rewrite(const AfpInstance& G, const AfpWord& w, Rng& rng) {
  AfpWord r = w;
  std::size_t pos = rng.below(r.size() + 1);
  int f = static_cast<int>(rng.below(2));
  const auto& F = G.factor(f);
  int y = static_cast<int>(rng.below(F.size()));
  switch (rng.below(3)) {
    case 0:
      if (pos < r.size()) {
        const auto& H = G.factor(r[pos].factor);
        int z = static_cast<int>(rng.below(H.size()));
        Syllable s = r[pos];
        r[pos] = {s.factor, z};
        r.insert(r.begin() + pos + 1, Syllable{s.factor, H.mul(H.inv(z), s.elem)});
      }
      break;
    case 1:
      r.insert(r.begin() + pos, {Syllable{f, y}, Syllable{f, F.inv(y)}});
      break;
    default: {
      int k = G.K(0)[rng.below(G.K(0).size())];
      r.insert(r.begin() + pos, {Syllable{0, k}, Syllable{1, G.k_in(1, G.factor(0).inv(k))}});
      break;
    }
  }
  return r;
}

}  // namespace neretin
