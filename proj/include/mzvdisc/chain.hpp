#ifndef MZVDISC_CHAIN_HPP
#define MZVDISC_CHAIN_HPP

/**
 * @file mzvdisc/chain.hpp
 * @brief Nested sums over integer chains 0 = n_0 (<) n_1 (<) ... (<) n_k (<) n_{k+1} = N.
 *
 * Each position carries a weight 1/((N - n)^a n^e) and a relation (strict or
 * weak) to the previous variable; a terminal relation ties n_k to N. Every
 * truncated sum in the library (multiple harmonic sums, their star and flat
 * variants, Riemann sums, decay sums, the halves of a connected sum) is
 * compiled to a ChainSpec and evaluated here.
 *
 * Two rational evaluators are provided. eval_enum walks every admissible
 * tuple and is the reference; eval_dp is the prefix-sum dynamic program
 *
 *     F_1(m) = w_1(m),   F_i(m) = w_i(m) * sum_{j <= m - [gap i strict]} F_{i-1}(j),
 *
 * which costs O(k N) ring operations. Both keep every partial value as an
 * integer numerator over a power of L = lcm(1..N) and reduce once at the end.
 * eval_dp_mod runs the same recurrence in Z/p^nZ.
 */

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzvdisc/rational.hpp"
#include "mzvdisc/residue.hpp"

namespace mzvdisc {

enum class Relation { Strict, Weak };

/// Factor 1/((N - n)^reflected * n^harmonic).
struct Weight {
  unsigned reflected = 0;
  unsigned harmonic = 0;

  static constexpr Weight harmonic_w() { return {0, 1}; }
  static constexpr Weight reflected_w() { return {1, 0}; }
  static constexpr Weight harmonic_power(unsigned e) { return {0, e}; }
  static constexpr Weight reflected_power(unsigned a) { return {a, 0}; }
  static constexpr Weight mixed(unsigned a, unsigned e) { return {a, e}; }

  unsigned total() const noexcept { return reflected + harmonic; }
  Weight operator+(const Weight& o) const { return {reflected + o.reflected, harmonic + o.harmonic}; }
  /// n -> N - n swaps the two exponents.
  Weight reflect() const { return {harmonic, reflected}; }

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;
};

struct ChainPosition {
  Weight weight;
  Relation before = Relation::Strict;  // relation to the previous variable (n_0 = 0 for the first)

  friend bool operator==(const ChainPosition&, const ChainPosition&) = default;
  friend auto operator<=>(const ChainPosition&, const ChainPosition&) = default;
};

class ChainSpec {
 public:
  ChainSpec(std::vector<ChainPosition> positions, Relation terminal)
      : positions_(std::move(positions)), terminal_(terminal) {
    validate();
  }

  const std::vector<ChainPosition>& positions() const noexcept { return positions_; }
  Relation terminal() const noexcept { return terminal_; }
  std::size_t length() const noexcept { return positions_.size(); }
  unsigned total_exponent() const noexcept {
    unsigned e = 0;
    for (const auto& p : positions_) e += p.weight.total();
    return e;
  }

  /// Largest value position i can take for upper bound N.
  std::vector<std::uint64_t> upper_limits(std::uint64_t N) const {
    std::vector<std::uint64_t> lim(positions_.size());
    std::int64_t cur = static_cast<std::int64_t>(N) - (terminal_ == Relation::Strict ? 1 : 0);
    for (std::size_t i = positions_.size(); i-- > 0;) {
      lim[i] = cur < 0 ? 0 : static_cast<std::uint64_t>(cur);
      if (positions_[i].before == Relation::Strict) --cur;
    }
    return lim;
  }

  /// Smallest value position i can take (every strict gap from n_0 = 0 adds one).
  std::vector<std::uint64_t> lower_limits() const {
    std::vector<std::uint64_t> low(positions_.size());
    std::uint64_t cur = 0;
    for (std::size_t i = 0; i < positions_.size(); ++i) {
      if (positions_[i].before == Relation::Strict) ++cur;
      low[i] = cur;
    }
    return low;
  }

  /// Compact text form, e.g. "<R <=H <H <N" (R^a H^e for powers).
  std::string describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < positions_.size(); ++i) {
      if (i) os << ' ';
      os << (positions_[i].before == Relation::Strict ? "<" : "<=");
      const Weight& w = positions_[i].weight;
      if (w.reflected) os << 'R' << (w.reflected > 1 ? "^" + std::to_string(w.reflected) : "");
      if (w.harmonic) os << 'H' << (w.harmonic > 1 ? "^" + std::to_string(w.harmonic) : "");
    }
    os << (terminal_ == Relation::Strict ? " <N" : " <=N");
    return os.str();
  }

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
  friend auto operator<=>(const ChainSpec&, const ChainSpec&) = default;

 private:
  void validate() const {
    if (positions_.empty()) throw std::invalid_argument("chain spec must have at least one position");
    if (positions_.front().before != Relation::Strict)
      throw std::invalid_argument("first chain variable must be strictly positive");
    for (const auto& p : positions_)
      if (p.weight.total() == 0) throw std::invalid_argument("chain position with no weight");
    // A position that can reach N (all later relations weak) cannot carry 1/(N - n).
    if (terminal_ == Relation::Weak) {
      for (std::size_t i = positions_.size(); i-- > 0;) {
        if (positions_[i].weight.reflected > 0)
          throw std::invalid_argument("reflected weight on a position that can equal N");
        if (positions_[i].before == Relation::Strict) break;
      }
    }
  }

  std::vector<ChainPosition> positions_;
  Relation terminal_;
};

/// Chain with one relation for every gap, all positions sharing `weights`.
inline ChainSpec make_chain(const std::vector<Weight>& weights, Relation inner, Relation terminal) {
  std::vector<ChainPosition> pos;
  for (std::size_t i = 0; i < weights.size(); ++i)
    pos.push_back({weights[i], i == 0 ? Relation::Strict : inner});
  return ChainSpec(std::move(pos), terminal);
}

namespace detail {

inline BigInt lcm_up_to(std::uint64_t n) {
  BigInt l = 1;
  for (std::uint64_t i = 2; i <= n; ++i) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), i);
  return l;
}

/// Numerators (L/x)^e for x in [1, N], with L = lcm(1..N), so that 1/x^e = (L/x)^e / L^e.
class ScaledReciprocals {
 public:
  explicit ScaledReciprocals(std::uint64_t N) : N_(N), L_(lcm_up_to(N)), base_(N + 1) {
    for (std::uint64_t x = 1; x <= N; ++x) mpz_divexact_ui(base_[x].get_mpz_t(), L_.get_mpz_t(), x);
  }
  const BigInt& lcm() const noexcept { return L_; }

  /// Numerator of the weight at variable value m (over L^{w.total()}).
  BigInt factor(const Weight& w, std::uint64_t m) const {
    BigInt f = 1;
    for (unsigned i = 0; i < w.harmonic; ++i) f *= base_[m];
    for (unsigned i = 0; i < w.reflected; ++i) f *= base_[N_ - m];
    return f;
  }

  Rational finish(const BigInt& numerator, unsigned total_exponent) const {
    BigInt den;
    mpz_pow_ui(den.get_mpz_t(), L_.get_mpz_t(), total_exponent);
    Rational q(numerator, den);
    q.canonicalize();
    return q;
  }

 private:
  std::uint64_t N_;
  BigInt L_;
  std::vector<BigInt> base_;
};

}  // namespace detail

/**
 * Reference evaluator: sums the weight product over every tuple satisfying
 * the chain relations. Exponential in the chain length; meant for small N.
 */
inline Rational eval_enum(const ChainSpec& spec, std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("upper bound N must be positive");
  const auto& pos = spec.positions();
  const auto lim = spec.upper_limits(N);
  detail::ScaledReciprocals recip(N);

  // factors[i][m]: numerator of position i's weight at value m
  std::vector<std::vector<BigInt>> factors(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    factors[i].resize(lim[i] + 1);
    for (std::uint64_t m = 1; m <= lim[i]; ++m) factors[i][m] = recip.factor(pos[i].weight, m);
  }

  BigInt total = 0;
  std::vector<BigInt> prefix(pos.size() + 1);
  prefix[0] = 1;
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t prev) -> void {
    std::uint64_t lo = pos[i].before == Relation::Strict ? prev + 1 : prev;
    if (lo == 0) lo = 1;
    if (i + 1 == pos.size()) {
      for (std::uint64_t m = lo; m <= lim[i]; ++m)
        mpz_addmul(total.get_mpz_t(), prefix[i].get_mpz_t(), factors[i][m].get_mpz_t());
      return;
    }
    for (std::uint64_t m = lo; m <= lim[i]; ++m) {
      mpz_mul(prefix[i + 1].get_mpz_t(), prefix[i].get_mpz_t(), factors[i][m].get_mpz_t());
      self(self, i + 1, m);
    }
  };
  rec(rec, 0, 0);
  return recip.finish(total, spec.total_exponent());
}

namespace detail {

/**
 * Runs the prefix-sum recurrence and returns F_k(m) for m in [0, N]
 * (entries past the last position's limit are zero). `factor(i, m)` yields
 * position i's weight at m in the ring.
 */
template <class T, class FactorFn>
std::vector<T> dp_last_table(const ChainSpec& spec, std::uint64_t N, const T& zero, FactorFn&& factor) {
  const auto& pos = spec.positions();
  const auto lim = spec.upper_limits(N);
  const auto low = spec.lower_limits();
  std::vector<T> cur(N + 1, zero), next(N + 1, zero);
  for (std::uint64_t m = low[0]; m <= lim[0]; ++m) cur[m] = factor(0, m);
  for (std::size_t i = 1; i < pos.size(); ++i) {
    const bool strict = pos[i].before == Relation::Strict;
    T running = zero;  // sum_{j <= m - strict} cur[j]
    for (std::uint64_t m = 0; m <= N; ++m) {
      if (!strict) running += cur[m];
      next[m] = zero;
      if (m >= low[i] && m <= lim[i]) next[m] = factor(i, m) * running;
      if (strict) running += cur[m];
    }
    std::swap(cur, next);
  }
  return cur;
}

}  // namespace detail

/// F_k(m): the chain sum restricted to n_k = m, for m in [0, N]; zero where the terminal relation excludes m.
inline std::vector<Rational> chain_table(const ChainSpec& spec, std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("upper bound N must be positive");
  detail::ScaledReciprocals recip(N);
  const auto& pos = spec.positions();
  auto table = detail::dp_last_table<BigInt>(spec, N, BigInt(0), [&](std::size_t i, std::uint64_t m) {
    return recip.factor(pos[i].weight, m);
  });
  std::vector<Rational> out(N + 1);
  const unsigned e = spec.total_exponent();
  for (std::uint64_t m = 0; m <= N; ++m) out[m] = recip.finish(table[m], e);
  return out;
}

/// Prefix-sum dynamic program; same value as eval_enum.
inline Rational eval_dp(const ChainSpec& spec, std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("upper bound N must be positive");
  detail::ScaledReciprocals recip(N);
  const auto& pos = spec.positions();
  auto table = detail::dp_last_table<BigInt>(spec, N, BigInt(0), [&](std::size_t i, std::uint64_t m) {
    return recip.factor(pos[i].weight, m);
  });
  BigInt total = 0;
  for (const auto& v : table) total += v;
  return recip.finish(total, spec.total_exponent());
}

namespace detail {

inline std::vector<Residue> modular_table(const ChainSpec& spec, std::uint64_t N, const PrimePower& mod) {
  const auto& pos = spec.positions();
  // Reciprocals are inverted on demand so that only values actually reached must be units.
  std::vector<std::uint64_t> inv(N + 1, 0);  // 0 = not yet computed (never a valid inverse)
  auto reciprocal = [&](std::size_t i, std::uint64_t x) {
    if (inv[x] == 0) {
      Residue r(static_cast<std::int64_t>(x), mod);
      if (!r.is_unit())
        throw NonUnitError("chain position " + std::to_string(i + 1) + ": value " + std::to_string(x) +
                           " is not invertible modulo " + mod.to_string());
      inv[x] = r.inverse().value();
    }
    return Residue(static_cast<std::int64_t>(inv[x]), mod);
  };
  return dp_last_table<Residue>(spec, N, Residue::zero(mod), [&](std::size_t i, std::uint64_t m) {
    const Weight& w = pos[i].weight;
    Residue f = Residue::one(mod);
    if (w.harmonic) f *= reciprocal(i, m).pow(w.harmonic);
    if (w.reflected) f *= reciprocal(i, N - m).pow(w.reflected);
    return f;
  });
}

}  // namespace detail

/// The chain sum in Z/p^nZ. Throws NonUnitError naming the position and value on a non-invertible denominator.
inline Residue eval_dp_mod(const ChainSpec& spec, std::uint64_t N, const PrimePower& mod) {
  if (N == 0) throw std::invalid_argument("upper bound N must be positive");
  Residue total = Residue::zero(mod);
  for (const auto& v : detail::modular_table(spec, N, mod)) total += v;
  return total;
}

}  // namespace mzvdisc

#endif  // MZVDISC_CHAIN_HPP
