#pragma once

// Permutations of {0, ..., n-1} and cycle notation.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace neretin {

class Perm {
 public:
  Perm() = default;

  explicit Perm(std::size_t degree) : images_(degree) {
    for (std::size_t i = 0; i < degree; ++i) images_[i] = static_cast<std::uint8_t>(i);
  }

  explicit Perm(std::vector<std::uint8_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto x : images_) {
      require(x < images_.size() && !seen[x], ErrorKind::validation,
              "not a permutation");
      seen[x] = true;
    }
  }

  static Perm identity(std::size_t degree) { return Perm(degree); }

  static Perm transposition(std::size_t degree, std::size_t a, std::size_t b) {
    Perm p(degree);
    std::swap(p.images_[a], p.images_[b]);
    return p;
  }

  static Perm random(std::size_t degree, Rng& rng) {
    std::vector<std::uint8_t> v(degree);
    for (std::size_t i = 0; i < degree; ++i) v[i] = static_cast<std::uint8_t>(i);
    rng.shuffle(v);
    return Perm(std::move(v));
  }

  std::size_t degree() const { return images_.size(); }
  int operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::uint8_t>& images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  // (a * b)(x) = a(b(x)): apply b first.
  friend Perm operator*(const Perm& a, const Perm& b) {
    require(a.degree() == b.degree(), ErrorKind::validation, "degree mismatch");
    Perm r;
    r.images_.resize(a.degree());
    for (std::size_t i = 0; i < a.degree(); ++i) r.images_[i] = a.images_[b.images_[i]];
    return r;
  }

  Perm inverse() const {
    Perm r;
    r.images_.resize(degree());
    for (std::size_t i = 0; i < degree(); ++i) r.images_[images_[i]] = static_cast<std::uint8_t>(i);
    return r;
  }

  auto operator<=>(const Perm&) const = default;
  bool operator==(const Perm&) const = default;

  // Cycle notation with labels shifted by `offset` ("(0 1)" for offset 0,
  // "(1 2)" for offset 1). Identity prints as "()".
  std::string to_cycles(int offset = 0) const {
    std::string out;
    std::vector<bool> seen(degree(), false);
    for (std::size_t i = 0; i < degree(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      out += '(';
      std::size_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = true;
        if (!first) out += ' ';
        out += std::to_string(static_cast<int>(j) + offset);
        first = false;
        j = images_[j];
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  // Parses a product of disjoint-or-not cycles, e.g. "(0 1)(2 3)"; cycles are
  // composed right to left. Labels are read with `offset` subtracted.
  static Perm from_cycles(std::string_view text, std::size_t degree, int offset = 0) {
    Perm result(degree);
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    std::vector<Perm> cycles;
    skip_ws();
    if (pos == text.size()) fail(ErrorKind::parse, "empty permutation");
    while (pos < text.size()) {
      skip_ws();
      if (pos == text.size()) break;
      if (text[pos] != '(') {
        fail(ErrorKind::parse, "expected '(' at position " + std::to_string(pos) +
                                   " in '" + std::string(text) + "'");
      }
      ++pos;
      std::vector<int> pts;
      for (;;) {
        skip_ws();
        if (pos < text.size() && text[pos] == ')') {
          ++pos;
          break;
        }
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (start == pos) {
          fail(ErrorKind::parse, "expected point label at position " + std::to_string(pos) +
                                     " in '" + std::string(text) + "'");
        }
        int v = std::stoi(std::string(text.substr(start, pos - start))) - offset;
        if (v < 0 || static_cast<std::size_t>(v) >= degree) {
          fail(ErrorKind::parse, "point " + std::to_string(v + offset) +
                                     " out of range for degree " + std::to_string(degree));
        }
        if (std::find(pts.begin(), pts.end(), v) != pts.end()) {
          fail(ErrorKind::parse, "repeated point in cycle");
        }
        pts.push_back(v);
      }
      Perm c(degree);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        c.images_[pts[i]] = static_cast<std::uint8_t>(pts[(i + 1) % pts.size()]);
      }
      cycles.push_back(c);
    }
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) result = *it * result;
    return result;
  }

 private:
  std::vector<std::uint8_t> images_;
};

}  // namespace neretin
