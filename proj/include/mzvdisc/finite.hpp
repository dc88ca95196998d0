#ifndef MZVDISC_FINITE_HPP
#define MZVDISC_FINITE_HPP

/**
 * @file mzvdisc/finite.hpp
 * @brief Finite and p-adic multiple zeta values, checked one prime at a time.
 *
 * An element of A (or of its p-adic lift) is a family indexed by primes,
 * modulo finitely supported families. Nothing here builds that quotient:
 * every statement is verified coordinate-wise, i.e. for a given p and
 * lifting exponent n, on zeta_<p(k) mod p^n. "For all but finitely many p"
 * statements are handled with pinned thresholds (see fixtures below).
 */

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzvdisc/harmonic.hpp"
#include "mzvdisc/index.hpp"
#include "mzvdisc/report.hpp"
#include "mzvdisc/residue.hpp"

namespace mzvdisc {

struct PrimeLocalValue {
  std::uint64_t p;
  unsigned n;
  Residue residue;
};

/// zeta_<p(k) mod p^n.
inline PrimeLocalValue zeta_mod(const Index& k, std::uint64_t p, unsigned n = 1) {
  PrimePower mod(p, n);
  return {p, n, eval_dp_mod(zeta_spec(k), p, mod)};
}

/// Sum of zeta_mod over the coarsenings of k.
inline PrimeLocalValue zeta_star_mod(const Index& k, std::uint64_t p, unsigned n = 1) {
  PrimePower mod(p, n);
  Residue total = Residue::zero(mod);
  for (const auto& l : coarsenings(k)) total += eval_dp_mod(zeta_spec(l), p, mod);
  return {p, n, total};
}

/// Weak-chain form of zeta_star_mod (0 < n_1 <= ... <= n_r < p).
inline PrimeLocalValue zeta_star_weak_mod(const Index& k, std::uint64_t p, unsigned n = 1) {
  PrimePower mod(p, n);
  return {p, n, eval_dp_mod(star_spec(k), p, mod)};
}

inline std::string prime_inputs(const Index& k, std::uint64_t p, unsigned n = 1) {
  return "k=" + k.to_string() + " p=" + std::to_string(p) + (n > 1 ? " n=" + std::to_string(n) : "");
}

/// zeta*_A(k) = -zeta*_A(k-vee), at the prime p.
inline VerificationReport hoffman_duality_check(const Index& k, std::uint64_t p) {
  ReportBuilder rb("duality-a", prime_inputs(k, p));
  auto lhs = zeta_star_mod(k, p).residue;
  auto rhs = -zeta_star_mod(hoffman_dual(k), p).residue;
  return rb.finish(lhs, rhs);
}

/// zeta_A(k) = (-1)^dep(k) sum_{k <= l} zeta_A(l), at the prime p.
inline VerificationReport antipode_duality_check(const Index& k, std::uint64_t p) {
  ReportBuilder rb("antipode", prime_inputs(k, p));
  PrimePower mod(p, 1);
  Residue lhs = eval_dp_mod(zeta_spec(k), p, mod);
  Residue sum = Residue::zero(mod);
  for (const auto& l : refinements(k)) sum += eval_dp_mod(zeta_spec(l), p, mod);
  return rb.finish(lhs, k.depth() % 2 ? -sum : sum);
}

/// S_p(k) with every weight 1/n (the flat chain after 1/(p-n) = -1/n).
inline ChainSpec flat_harmonic_spec(const Index& k) {
  auto spec = flat_spec(k);
  std::vector<ChainPosition> pos = spec.positions();
  for (auto& q : pos) q.weight = Weight::harmonic_w();
  return ChainSpec(std::move(pos), spec.terminal());
}

/// zeta_flat_<p(k) = (-1)^dep(k) sum_{S_p(k)} 1/(m_1 ... m_wt)  (mod p).
inline VerificationReport flat_mod_identity_check(const Index& k, std::uint64_t p) {
  ReportBuilder rb("flat-mod", prime_inputs(k, p));
  PrimePower mod(p, 1);
  Residue lhs = Residue::from_rational(zeta_flat(k, p), mod);
  Residue rhs = eval_dp_mod(flat_harmonic_spec(k), p, mod);
  return rb.finish(lhs, k.depth() % 2 ? -rhs : rhs);
}

/**
 * sum_{1<=n_1<=...<=n_r<=N} prod n_i^{-k_i}
 *   = sum_{1<=m_1<=...<=m_s<=N} (-1)^{m_s-1} binom(N, m_s) prod m_j^{-l_j},   l = k-vee.
 */
inline VerificationReport hoffman_identity_check(const Index& k, std::uint64_t N) {
  require_upper(N);
  ReportBuilder rb("hoffman-identity", "k=" + k.to_string() + " N=" + std::to_string(N));
  Rational lhs = eval_dp(star_spec(k, Relation::Weak), N);
  auto table = chain_table(star_spec(hoffman_dual(k), Relation::Weak), N);
  Rational rhs = 0;
  BigInt binom = 1;  // binom(N, m), updated incrementally
  for (std::uint64_t m = 1; m <= N; ++m) {
    binom = binom * static_cast<unsigned long>(N - m + 1) / static_cast<unsigned long>(m);
    Rational term = table[m] * Rational(binom);
    if (m % 2 == 1)
      rhs += term;
    else
      rhs -= term;
  }
  return rb.finish(lhs, rhs);
}

/// The m with l(+)k <= m <= l(/)k: refinements of l(+)k that are also coarsenings of l(/)k.
inline std::vector<Index> padic_interval(const Shift& l, const Index& k) {
  const Index low = oplus(l, k), high = oslash(l, k);
  std::vector<Index> out;
  for (auto& m : refinements(low))
    if (precedes(m, high)) out.push_back(std::move(m));
  return out;
}

/**
 * zeta_<p(k) = (-1)^dep(k) sum_{i<n} p^i sum_{wt(l)=i} sum_{l(+)k <= m <= l(/)k} zeta_<p(m)  (mod p^n).
 * Terms with i >= n vanish modulo p^n.
 */
inline VerificationReport padic_duality_check(const Index& k, std::uint64_t p, unsigned n) {
  ReportBuilder rb("padic", prime_inputs(k, p, n) + (n == 1 ? " n=1" : ""));
  PrimePower mod(p, n);
  Residue lhs = eval_dp_mod(zeta_spec(k), p, mod);
  Residue rhs = Residue::zero(mod);
  Residue p_power = Residue::one(mod);
  const Residue p_res(static_cast<std::int64_t>(p), mod);
  for (unsigned i = 0; i < n; ++i) {
    Residue level = Residue::zero(mod);
    for (const auto& l : shifts_of_weight(k.depth(), i))
      for (const auto& m : padic_interval(l, k)) level += eval_dp_mod(zeta_spec(m), p, mod);
    rhs += p_power * level;
    p_power *= p_res;
  }
  return rb.finish(lhs, k.depth() % 2 ? -rhs : rhs);
}

/// sum_{i<n} zeta*_<p(k, {1}^i) p^i = -sum_{i<n} zeta*_<p(k-vee, {1}^i) p^i  (mod p^n).
inline VerificationReport seki_lifting_check(const Index& k, std::uint64_t p, unsigned n) {
  ReportBuilder rb("seki", prime_inputs(k, p, n) + (n == 1 ? " n=1" : ""));
  PrimePower mod(p, n);
  const Index kv = hoffman_dual(k);
  const Residue p_res(static_cast<std::int64_t>(p), mod);
  Residue lhs = Residue::zero(mod), rhs = Residue::zero(mod), p_power = Residue::one(mod);
  for (unsigned i = 0; i < n; ++i) {
    lhs += p_power * zeta_star_mod(k.concat(ones(i)), p, n).residue;
    rhs += p_power * zeta_star_mod(kv.concat(ones(i)), p, n).residue;
    p_power *= p_res;
  }
  return rb.finish(lhs, -rhs);
}

// ---------------------------------------------------------------------------
// Pinned thresholds ("index;n;P0" per line, '#' comments)
// ---------------------------------------------------------------------------

struct ThresholdKey {
  Index k;
  unsigned n;
  friend auto operator<=>(const ThresholdKey&, const ThresholdKey&) = default;
  friend bool operator==(const ThresholdKey&, const ThresholdKey&) = default;
};

using ThresholdTable = std::map<ThresholdKey, std::uint64_t>;

inline ThresholdTable parse_thresholds(std::istream& in) {
  ThresholdTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string idx, n, p0;
    if (!std::getline(ss, idx, ';') || !std::getline(ss, n, ';') || !std::getline(ss, p0))
      throw std::runtime_error("threshold file line " + std::to_string(lineno) + ": expected index;n;P0");
    try {
      t[{parse_index(idx), static_cast<unsigned>(std::stoul(n))}] = std::stoull(p0);
    } catch (const std::exception& e) {
      throw std::runtime_error("threshold file line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return t;
}

inline ThresholdTable load_thresholds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open threshold file " + path);
  return parse_thresholds(in);
}

inline void write_thresholds(std::ostream& out, const ThresholdTable& t, const std::string& header = "") {
  if (!header.empty()) out << "# " << header << "\n";
  out << "# index;n;P0\n";
  for (const auto& [key, p0] : t) out << key.k.to_string() << ';' << key.n << ';' << p0 << '\n';
}

using PrimeCheck = std::function<VerificationReport(const Index&, std::uint64_t, unsigned)>;

/// Smallest prime q in `primes` such that the check passes at every prime >= q; nullopt if the largest fails.
inline std::optional<std::uint64_t> minimal_passing_prime(const PrimeCheck& check, const Index& k, unsigned n,
                                                          const std::vector<unsigned>& primes) {
  std::optional<std::uint64_t> p0;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    if (!check(k, *it, n).pass) break;
    p0 = *it;
  }
  return p0;
}

}  // namespace mzvdisc

#endif  // MZVDISC_FINITE_HPP
