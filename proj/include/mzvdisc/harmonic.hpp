#ifndef MZVDISC_HARMONIC_HPP
#define MZVDISC_HARMONIC_HPP

/**
 * @file mzvdisc/harmonic.hpp
 * @brief Rational truncated sums: multiple harmonic sums and their flat form.
 *
 *   zeta_trunc(k, N)       = sum_{0<n_1<...<n_r<N} 1/(n_1^{k_1} ... n_r^{k_r})
 *   zeta_star_trunc(k, N)  = same over 0<n_1<=...<=n_r<N
 *   zeta_flat(k, N)        = sum over S_N(k) of prod_i 1/((N-n_{i,1}) n_{i,2} ... n_{i,k_i})
 *
 * S_N(k) is a chain of wt(k) variables, strict before each block start and
 * weak inside a block. zeta_trunc and zeta_flat agree for every k and N;
 * that identity is what the verification suites certify.
 *
 * Also here: the plain Riemann sum (same weights, all gaps strict), the
 * decay sums that bound the duality discrepancy, the explicit breakdown of
 * zeta_trunc(k) - zeta_trunc(k-dagger) into such sums, and the log 2 instance.
 */

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzvdisc/chain.hpp"
#include "mzvdisc/index.hpp"
#include "mzvdisc/report.hpp"

namespace mzvdisc {

enum class Backend { Enum, Dp };

inline Rational evaluate(const ChainSpec& spec, std::uint64_t N, Backend backend) {
  return backend == Backend::Enum ? eval_enum(spec, N) : eval_dp(spec, N);
}

// ---------------------------------------------------------------------------
// Compilation of indices to chains
// ---------------------------------------------------------------------------

inline void require_nonempty(const Index& k, const char* what) {
  if (k.empty()) throw std::invalid_argument(std::string(what) + " requires a nonempty index");
}

/// 0 < n_1 < ... < n_r < N, weights n_i^{-k_i}.
inline ChainSpec zeta_spec(const Index& k) {
  require_nonempty(k, "zeta_spec");
  std::vector<Weight> w;
  for (auto p : k) w.push_back(Weight::harmonic_power(p));
  return make_chain(w, Relation::Strict, Relation::Strict);
}

/// 0 < n_1 <= ... <= n_r < N (or <= N with terminal = Weak).
inline ChainSpec star_spec(const Index& k, Relation terminal = Relation::Strict) {
  require_nonempty(k, "star_spec");
  std::vector<Weight> w;
  for (auto p : k) w.push_back(Weight::harmonic_power(p));
  return make_chain(w, Relation::Weak, terminal);
}

/// Per-variable weights of the flat sum: 1/(N-n) at each block start, 1/n elsewhere.
inline std::vector<Weight> flat_weights(const Index& k) {
  std::vector<Weight> w;
  for (auto p : k) {
    w.push_back(Weight::reflected_w());
    w.insert(w.end(), p - 1, Weight::harmonic_w());
  }
  return w;
}

/// S_N(k): strict at positions in J(k), weak elsewhere.
inline ChainSpec flat_spec(const Index& k) {
  require_nonempty(k, "flat_spec");
  const auto J = boundary_set(k);
  const auto w = flat_weights(k);
  std::vector<ChainPosition> pos;
  for (unsigned i = 1; i <= w.size(); ++i)
    pos.push_back({w[i - 1], J.count(i) ? Relation::Strict : Relation::Weak});
  return ChainSpec(std::move(pos), Relation::Strict);
}

/// Same weights as the flat sum over 0 < n_1 < ... < n_wt < N.
inline ChainSpec riemann_spec(const Index& k) {
  if (!k.admissible())
    throw std::invalid_argument("riemann_sum requires an admissible index, got (" + k.to_string() + ")");
  return make_chain(flat_weights(k), Relation::Strict, Relation::Strict);
}

/// Image of a chain under n_i -> N - n_{len+1-i}: positions reversed, weights reflected,
/// and each gap's relation carried to the mirrored gap.
inline ChainSpec reflect(const ChainSpec& spec) {
  const auto& p = spec.positions();
  const std::size_t len = p.size();
  std::vector<ChainPosition> out(len);
  for (std::size_t j = 0; j < len; ++j) {
    out[j].weight = p[len - 1 - j].weight.reflect();
    out[j].before = j == 0 ? spec.terminal() : p[len - j].before;
  }
  return ChainSpec(std::move(out), p.front().before);
}

// ---------------------------------------------------------------------------
// Truncated sums
// ---------------------------------------------------------------------------

inline void require_upper(std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("upper bound N must be positive");
}

inline Rational zeta_trunc(const Index& k, std::uint64_t N, Backend backend = Backend::Dp) {
  require_upper(N);
  return evaluate(zeta_spec(k), N, backend);
}

/// Sum of zeta_trunc over all coarsenings l <= k.
inline Rational zeta_star_trunc(const Index& k, std::uint64_t N, Backend backend = Backend::Dp) {
  require_nonempty(k, "zeta_star_trunc");
  require_upper(N);
  Rational total = 0;
  for (const auto& l : coarsenings(k)) total += zeta_trunc(l, N, backend);
  return total;
}

/// The weak-chain form of the star sum (cross-check for zeta_star_trunc).
inline Rational zeta_star_weak_chain(const Index& k, std::uint64_t N, Backend backend = Backend::Dp) {
  require_upper(N);
  return evaluate(star_spec(k), N, backend);
}

inline Rational zeta_flat(const Index& k, std::uint64_t N, Backend backend = Backend::Dp) {
  require_upper(N);
  return evaluate(flat_spec(k), N, backend);
}

inline Rational riemann_sum(const Index& k, std::uint64_t N, Backend backend = Backend::Dp) {
  require_upper(N);
  return evaluate(riemann_spec(k), N, backend);
}

/// Strict chain with weights 1/((N-n_i)^{a_i} n_i^{b_i}).
inline ChainSpec decay_spec(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  if (a.empty() || a.size() != b.size()) throw std::invalid_argument("decay_sum: exponent vectors must be nonempty and of equal length");
  if (a.front() < 1) throw std::invalid_argument("decay_sum: a_1 must be >= 1");
  if (b.back() < 1) throw std::invalid_argument("decay_sum: b_k must be >= 1");
  bool some_two = false;
  std::vector<Weight> w;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] + b[i] < 1) throw std::invalid_argument("decay_sum: a_i + b_i must be >= 1");
    some_two = some_two || a[i] + b[i] >= 2;
    w.push_back(Weight::mixed(a[i], b[i]));
  }
  if (!some_two) throw std::invalid_argument("decay_sum: some a_i + b_i must be >= 2");
  return make_chain(w, Relation::Strict, Relation::Strict);
}

/// Whether a strict chain has the shape of a decay sum (see decay_spec).
inline bool is_decay_shaped(const ChainSpec& spec) {
  const auto& p = spec.positions();
  if (spec.terminal() != Relation::Strict) return false;
  bool some_two = false;
  for (const auto& pos : p) {
    if (pos.before != Relation::Strict) return false;
    some_two = some_two || pos.weight.total() >= 2;
  }
  return some_two && p.front().weight.reflected >= 1 && p.back().weight.harmonic >= 1;
}

inline Rational decay_sum(const std::vector<unsigned>& a, const std::vector<unsigned>& b, std::uint64_t N,
                          Backend backend = Backend::Dp) {
  require_upper(N);
  return evaluate(decay_spec(a, b), N, backend);
}

// ---------------------------------------------------------------------------
// Discrepancy between k and its dual
// ---------------------------------------------------------------------------

/**
 * Expands a chain with weak gaps into strict chains: every weak gap is either
 * strict or an equality, and equal variables are merged with their exponents
 * added. Returns one strict chain per nonempty set of equalities (the empty
 * set, i.e. the all-strict chain, is excluded).
 */
inline std::vector<ChainSpec> weak_gap_expansion(const ChainSpec& spec) {
  const auto& p = spec.positions();
  std::vector<std::size_t> weak;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i].before == Relation::Weak) weak.push_back(i);
  if (spec.terminal() != Relation::Strict || p.front().before != Relation::Strict)
    throw std::invalid_argument("weak_gap_expansion: boundary relations must be strict");

  std::vector<ChainSpec> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << weak.size()); ++mask) {
    std::vector<bool> merge(p.size(), false);
    for (std::size_t j = 0; j < weak.size(); ++j)
      if (mask >> j & 1u) merge[weak[j]] = true;
    std::vector<Weight> w;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (merge[i])
        w.back() = w.back() + p[i].weight;
      else
        w.push_back(p[i].weight);
    }
    out.push_back(make_chain(w, Relation::Strict, Relation::Strict));
  }
  return out;
}

/// The all-strict chain with the same weights (the set T_N restricted to this weight pattern).
inline ChainSpec strict_core(const ChainSpec& spec) {
  std::vector<Weight> w;
  for (const auto& pos : spec.positions()) w.push_back(pos.weight);
  return make_chain(w, Relation::Strict, Relation::Strict);
}

struct BoundaryTerm {
  int sign;
  ChainSpec spec;
  Rational value;
};

struct DiscrepancyBreakdown {
  Index k;
  std::uint64_t N;
  Rational lhs;  // zeta_trunc(k, N) - zeta_trunc(dual(k), N)
  std::vector<BoundaryTerm> boundary_terms;

  Rational signed_sum() const {
    Rational s = 0;
    for (const auto& t : boundary_terms) s += t.sign * t.value;
    return s;
  }
  bool balanced() const { return lhs == signed_sum(); }
};

/// S_N(k) for k, and S'_N(k) = reflect(S_N(dual(k))); both share the strict core T_N.
struct DiscrepancySets {
  ChainSpec primal;
  ChainSpec mirrored;
};

inline DiscrepancySets discrepancy_sets(const Index& k) {
  return {flat_spec(k), reflect(flat_spec(dual(k)))};
}

/**
 * Writes zeta_trunc(k,N) - zeta_trunc(k-dagger,N) as a signed sum of decay
 * sums: the terms of S_N(k) \ T_N minus those of S'_N(k) \ T_N. Terms whose
 * chains coincide across the two sides are cancelled pairwise.
 */
inline DiscrepancyBreakdown discrepancy(const Index& k, std::uint64_t N, Backend backend = Backend::Dp) {
  if (!k.admissible())
    throw std::invalid_argument("discrepancy requires an admissible index, got (" + k.to_string() + ")");
  require_upper(N);
  auto sets = discrepancy_sets(k);
  if (!(strict_core(sets.primal) == strict_core(sets.mirrored)))
    throw std::logic_error("mirrored chain does not share the strict core");

  // Net multiplicity of each chain: +1 per occurrence in S \ T, -1 per occurrence in S' \ T.
  std::map<ChainSpec, int> net;
  for (auto& s : weak_gap_expansion(sets.primal)) ++net[s];
  for (auto& s : weak_gap_expansion(sets.mirrored)) --net[s];

  DiscrepancyBreakdown out{k, N, zeta_trunc(k, N, backend) - zeta_trunc(dual(k), N, backend), {}};
  for (const auto& [spec, mult] : net) {
    if (mult == 0) continue;
    Rational v = evaluate(spec, N, backend);
    for (int i = 0; i < std::abs(mult); ++i) out.boundary_terms.push_back({mult > 0 ? 1 : -1, spec, v});
  }
  return out;
}

inline VerificationReport discrepancy_check(const Index& k, std::uint64_t N, Backend backend = Backend::Dp) {
  ReportBuilder rb("discrepancy", "k=" + k.to_string() + " N=" + std::to_string(N));
  auto d = discrepancy(k, N, backend);
  return rb.finish(d.lhs, d.signed_sum());
}

/// zeta_<N(3) - zeta_<N(1,2) against sum_{0<n_1<=n_2<N} 1/((N-n_1) n_2^2).
inline ChainSpec three_minus_one_two_spec() {
  return ChainSpec({{Weight::reflected_w(), Relation::Strict}, {Weight::harmonic_power(2), Relation::Weak}},
                   Relation::Strict);
}

inline VerificationReport three_minus_one_two_check(std::uint64_t N, Backend backend = Backend::Dp) {
  ReportBuilder rb("zeta3-minus-zeta12", "N=" + std::to_string(N));
  Rational lhs = zeta_trunc(Index{3}, N, backend) - zeta_trunc(Index{1, 2}, N, backend);
  return rb.finish(lhs, evaluate(three_minus_one_two_spec(), N, backend));
}

// ---------------------------------------------------------------------------
// Convergence and the log 2 instance
// ---------------------------------------------------------------------------

struct ConvergenceRow {
  std::uint64_t N;
  Rational abs_difference;
  std::string decimal;
};

inline std::vector<ConvergenceRow> duality_convergence(const Index& k, const std::vector<std::uint64_t>& uppers,
                                                       unsigned digits = 30) {
  const Index kd = dual(k);
  std::vector<ConvergenceRow> rows;
  for (auto N : uppers) {
    Rational d = abs(Rational(zeta_trunc(k, N) - zeta_trunc(kd, N)));
    rows.push_back({N, d, to_decimal_string(d, digits)});
  }
  return rows;
}

inline std::vector<std::uint64_t> powers_of_two(unsigned from, unsigned to) {
  std::vector<std::uint64_t> out;
  for (unsigned j = from; j <= to; ++j) out.push_back(std::uint64_t{1} << j);
  return out;
}

/// sum_{n=1}^{2N-1} (-1)^{n-1}/n  against  sum_{n=0}^{N-1} 1/(N+n).
inline VerificationReport log2_discretization_check(std::uint64_t N) {
  require_upper(N);
  ReportBuilder rb("log2", "N=" + std::to_string(N));
  Rational alternating = 0, shifted = 0;
  for (std::uint64_t n = 1; n <= 2 * N - 1; ++n) {
    Rational t(1, static_cast<unsigned long>(n));
    if (n % 2 == 1)
      alternating += t;
    else
      alternating -= t;
  }
  for (std::uint64_t n = 0; n < N; ++n) shifted += Rational(1, static_cast<unsigned long>(N + n));
  return rb.finish(alternating, shifted);
}

inline VerificationReport main_theorem_check(const Index& k, std::uint64_t N, Backend backend = Backend::Dp) {
  ReportBuilder rb("main", "k=" + k.to_string() + " N=" + std::to_string(N) +
                               (backend == Backend::Enum ? " backend=enum" : " backend=dp"));
  return rb.finish(zeta_trunc(k, N, backend), zeta_flat(k, N, backend));
}

}  // namespace mzvdisc

#endif  // MZVDISC_HARMONIC_HPP
