#ifndef MZVDISC_RESIDUE_HPP
#define MZVDISC_RESIDUE_HPP

// Integers modulo a prime power p^n, and deterministic primality below 2^31.

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzvdisc/rational.hpp"

namespace mzvdisc {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace detail

/// Miller-Rabin with bases {2, 7, 61}: deterministic for n < 4,759,123,141.
inline bool is_prime(std::uint64_t n) {
  if (n >= (std::uint64_t{1} << 31)) throw std::out_of_range("is_prime: argument must be below 2^31");
  if (n < 2) return false;
  for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n == small) return true;
    if (n % small == 0) return false;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 7u, 61u}) {
    if (a % n == 0) continue;
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::vector<unsigned> primes_in(unsigned lo, unsigned hi) {
  std::vector<unsigned> out;
  for (unsigned p = lo; p <= hi; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

/// The modulus p^n of a residue ring; p must be prime.
class PrimePower {
 public:
  PrimePower(std::uint64_t p, unsigned n) : p_(p), n_(n) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (n == 0) throw std::invalid_argument("exponent of a prime power must be >= 1");
    value_ = 1;
    for (unsigned i = 0; i < n; ++i) {
      if (value_ > (std::uint64_t{1} << 62) / p) throw std::out_of_range("prime power too large");
      value_ *= p;
    }
  }

  std::uint64_t prime() const noexcept { return p_; }
  unsigned exponent() const noexcept { return n_; }
  std::uint64_t value() const noexcept { return value_; }
  std::string to_string() const { return std::to_string(p_) + "^" + std::to_string(n_); }

  friend bool operator==(const PrimePower&, const PrimePower&) = default;

 private:
  std::uint64_t p_;
  unsigned n_;
  std::uint64_t value_;
};

class NonUnitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An element of Z/p^nZ, stored as its representative in [0, p^n).
class Residue {
 public:
  Residue(std::int64_t v, const PrimePower& mod) : mod_(mod) {
    auto m = static_cast<std::int64_t>(mod.value());
    v %= m;
    if (v < 0) v += m;
    value_ = static_cast<std::uint64_t>(v);
  }
  static Residue zero(const PrimePower& mod) { return Residue(0, mod); }
  static Residue one(const PrimePower& mod) { return Residue(1, mod); }

  /// Reduction of a rational with p-integral denominator.
  static Residue from_rational(const Rational& q, const PrimePower& mod) {
    BigInt m(static_cast<unsigned long>(mod.value()));
    BigInt num, den;
    mpz_mod(num.get_mpz_t(), q.get_num_mpz_t(), m.get_mpz_t());
    mpz_mod(den.get_mpz_t(), q.get_den_mpz_t(), m.get_mpz_t());
    Residue n(static_cast<std::int64_t>(num.get_ui()), mod);
    Residue d(static_cast<std::int64_t>(den.get_ui()), mod);
    return n * d.inverse();
  }

  std::uint64_t value() const noexcept { return value_; }
  const PrimePower& modulus() const noexcept { return mod_; }
  bool is_unit() const noexcept { return value_ % mod_.prime() != 0; }

  Residue inverse() const {
    if (!is_unit())
      throw NonUnitError(std::to_string(value_) + " is not invertible modulo " + mod_.to_string());
    // Euler: x^{phi(p^n) - 1}
    std::uint64_t phi = mod_.value() / mod_.prime() * (mod_.prime() - 1);
    return with(detail::powmod(value_, phi - 1, mod_.value()));
  }
  Residue pow(std::uint64_t e) const { return with(detail::powmod(value_, e, mod_.value())); }

  Residue& operator+=(const Residue& o) {
    check(o);
    value_ += o.value_;
    if (value_ >= mod_.value()) value_ -= mod_.value();
    return *this;
  }
  Residue& operator-=(const Residue& o) {
    check(o);
    value_ = value_ >= o.value_ ? value_ - o.value_ : value_ + mod_.value() - o.value_;
    return *this;
  }
  Residue& operator*=(const Residue& o) {
    check(o);
    value_ = detail::mulmod(value_, o.value_, mod_.value());
    return *this;
  }
  Residue operator-() const { return with(value_ == 0 ? 0 : mod_.value() - value_); }

  friend Residue operator+(Residue a, const Residue& b) { return a += b; }
  friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
  friend Residue operator*(Residue a, const Residue& b) { return a *= b; }
  friend bool operator==(const Residue& a, const Residue& b) {
    return a.mod_ == b.mod_ && a.value_ == b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Residue& r) {
    return os << r.value_ << " mod " << r.mod_.to_string();
  }

 private:
  Residue with(std::uint64_t v) const {
    Residue r = *this;
    r.value_ = v;
    return r;
  }
  void check(const Residue& o) const {
    if (!(mod_ == o.mod_)) throw std::invalid_argument("residues with different moduli");
  }

  PrimePower mod_;
  std::uint64_t value_ = 0;
};

}  // namespace mzvdisc

#endif  // MZVDISC_RESIDUE_HPP
