#pragma once

// Exact integer and rational arithmetic on top of GMP.

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "error.hpp"

namespace neretin {

using BigInt = mpz_class;
using Rational = mpq_class;

// Results beyond this many bits are refused instead of exhausting memory.
inline constexpr std::uint64_t max_result_bits = 1ULL << 28;

inline BigInt factorial(std::uint64_t n) {
  require(n <= (1ULL << 22), ErrorKind::resource_limit, "factorial of " + std::to_string(n) + " is too large");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

inline BigInt power(const BigInt& base, std::uint64_t exp) {
  std::uint64_t bits = mpz_sizeinbase(base.get_mpz_t(), 2);
  require(abs(base) <= 1 || exp <= max_result_bits / bits, ErrorKind::resource_limit,
          "power with " + std::to_string(exp) + " factors is too large");
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
  return r;
}

inline std::uint64_t power_u64(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) {
      fail(ErrorKind::resource_limit, "integer overflow in power");
    }
    r *= base;
  }
  return r;
}

inline BigInt exact_div(const BigInt& a, const BigInt& b) {
  if (b == 0) fail(ErrorKind::internal, "division by zero");
  BigInt q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) fail(ErrorKind::internal, "non-exact integer division");
  return q;
}

inline std::size_t bit_length(const BigInt& a) {
  if (a == 0) return 0;
  return mpz_sizeinbase(a.get_mpz_t(), 2);
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const BigInt& a) { return a.get_str(); }

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) {
    fail(ErrorKind::parse, "not a rational number: '" + s + "'");
  }
  if (q.get_den() == 0) fail(ErrorKind::parse, "zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Decimal rendering with `digits` significant digits (display only).
inline std::string to_decimal(const Rational& q, int digits = 6) {
  mpf_class f(q, 256);
  mp_exp_t exp = 0;
  std::string mant = f.get_str(exp, 10, static_cast<std::size_t>(digits));
  if (mant.empty()) return "0";
  bool neg = mant[0] == '-';
  if (neg) mant.erase(0, 1);
  std::string out = neg ? "-" : "";
  out += mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp) - 1);
  return out;
}

}  // namespace neretin
