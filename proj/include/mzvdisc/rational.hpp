#ifndef MZVDISC_RATIONAL_HPP
#define MZVDISC_RATIONAL_HPP

// Exact rationals (GMP mpq_class, always kept canonical) and their renderings.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace mzvdisc {

using Rational = mpq_class;
using BigInt = mpz_class;

/// "num/den", always with a denominator; zero is "0/1".
inline std::string to_fraction_string(Rational q) {
  q.canonicalize();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Inverse of to_fraction_string; also accepts a bare integer.
inline Rational parse_fraction(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: '" + s + "'");
  q.canonicalize();
  return q;
}

/// Quotient num/den rounded to the nearest integer, ties to even.
inline BigInt round_half_even(const BigInt& num, const BigInt& den) {
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  // den > 0, so 0 <= r < den.
  int c = cmp(BigInt(r * 2), den);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  return q;
}

/// Fixed-point decimal with `digits` places, round-half-even. Presentation only.
inline std::string to_decimal_string(const Rational& q, unsigned digits = 30) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  BigInt scaled = round_half_even(q.get_num() * scale, q.get_den());
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.get_str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, 1, '.');
  }
  return (negative ? "-" : "") + s;
}

/// Scientific rendering "d.ddde-X" for small magnitudes in reports.
inline std::string to_scientific_string(const Rational& q, unsigned significant = 6) {
  if (q == 0) return "0";
  Rational a = abs(q);
  long exp10 = 0;
  // Normalize a into [1, 10).
  while (a >= 10) {
    a /= 10;
    ++exp10;
  }
  while (a < 1) {
    a *= 10;
    --exp10;
  }
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, significant - 1);
  BigInt mant = round_half_even(a.get_num() * scale, a.get_den());
  if (mant >= scale * 10) {  // rounding carried into a new digit
    mant /= 10;
    ++exp10;
  }
  std::string m = mant.get_str();
  std::string out = (q < 0 ? "-" : "") + m.substr(0, 1);
  if (m.size() > 1) out += "." + m.substr(1);
  return out + "e" + std::to_string(exp10);
}

}  // namespace mzvdisc

#endif  // MZVDISC_RATIONAL_HPP
