#pragma once

// Text form of elements:
//   {0->00, 10->01, 11->1 | tails: 10:( : (0 1), 0 : (0 1))}
// Leaf map entries are "domain->image"; each tail lists "vertex : permutation"
// pairs with vertices relative to the domain leaf and permutations in 0-based
// cycle notation. Addresses are digit strings, so d and k must be at most 10.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "almost_auto.hpp"

namespace neretin {

namespace dsl_detail {

class Parser {
 public:
  Parser(std::string_view text, const TreeShape& shape) : text_(text), shape_(shape) {}

  AlmostAutomorphism parse() {
    require(shape_.d <= 10 && shape_.k <= 10, ErrorKind::validation,
            "text form needs d, k <= 10");
    std::vector<Piece> pieces;
    expect('{');
    skip();
    if (peek() != '|' && peek() != '}') {
      for (;;) {
        Address a = address(false);
        expect_str("->");
        Address b = address(false);
        pieces.push_back({a, b, Portrait()});
        skip();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    skip();
    if (peek() == '|') {
      ++pos_;
      expect_str("tails");
      expect(':');
      skip();
      if (peek() != '}') {
        for (;;) {
          Address leaf = address(false);
          expect(':');
          Piece* target = nullptr;
          for (auto& p : pieces) {
            if (p.domain == leaf) target = &p;
          }
          if (!target) error("tail given for unknown domain leaf '" + leaf.to_string() + "'");
          if (!target->tail.is_identity()) error("repeated tail for leaf '" + leaf.to_string() + "'");
          target->tail = portrait(leaf);
          skip();
          if (peek() == ',') {
            ++pos_;
            continue;
          }
          break;
        }
      }
    }
    expect('}');
    skip();
    if (pos_ != text_.size()) error("trailing characters");
    if (pieces.empty()) error("empty leaf map");
    return AlmostAutomorphism::from_pieces(shape_, std::move(pieces));
  }

 private:
  Portrait portrait(const Address& leaf) {
    Portrait p;
    expect('(');
    skip();
    if (peek() == ')') {
      ++pos_;
      return p;
    }
    for (;;) {
      Address v = address(true);
      expect(':');
      Address abs = leaf.concat(v);
      std::size_t at = pos_;
      std::string cycles = cycle_text();
      Perm perm;
      try {
        perm = Perm::from_cycles(cycles, static_cast<std::size_t>(arity_at(shape_, abs)));
      } catch (const Error& e) {
        pos_ = at;
        error(e.what());
      }
      if (p.at(v)) error("repeated tail vertex '" + v.to_string() + "'");
      p.set(v, perm);
      skip();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    expect(')');
    return p;
  }

  // One or more adjacent "( ... )" groups.
  std::string cycle_text() {
    skip();
    std::size_t start = pos_;
    if (peek() != '(') error("expected permutation");
    while (peek() == '(') {
      while (pos_ < text_.size() && text_[pos_] != ')') ++pos_;
      if (pos_ == text_.size()) error("unterminated cycle");
      ++pos_;
      std::size_t save = pos_;
      skip();
      if (peek() != '(') {
        pos_ = save;
        break;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  // Digit string; `relative` addresses live below a non-root leaf.
  Address address(bool relative) {
    skip();
    std::string labels;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      int label = text_[pos_] - '0';
      int bound = (!relative && labels.empty()) ? shape_.k : shape_.d;
      if (label >= bound) error("label " + std::to_string(label) + " out of range");
      labels.push_back(static_cast<char>(label));
      ++pos_;
    }
    return Address::from_labels(std::move(labels));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip();
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  void expect_str(std::string_view s) {
    skip();
    if (text_.substr(pos_, s.size()) != s) error("expected '" + std::string(s) + "'");
    pos_ += s.size();
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::parse, "at position " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view text_;
  TreeShape shape_;
  std::size_t pos_ = 0;
};

}  // namespace dsl_detail

inline AlmostAutomorphism parse_element(std::string_view text, const TreeShape& shape) {
  return dsl_detail::Parser(text, shape).parse();
}

}  // namespace neretin
