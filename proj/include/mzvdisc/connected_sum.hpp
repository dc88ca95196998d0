#ifndef MZVDISC_CONNECTED_SUM_HPP
#define MZVDISC_CONNECTED_SUM_HPP

/**
 * @file mzvdisc/connected_sum.hpp
 * @brief The binomial connector and the connected sums Z_N(k | l).
 *
 * C_N(n, m) = binom(m, n) / binom(N, n) couples a multiple harmonic sum in
 * the variables 0 < n_1 < ... < n_r (weights n_i^{-k_i}) to a flat-style sum
 * in m_1 <= ... <= N (weights P_{l_j}):
 *
 *   Z_N(k | l) = sum Q_k(n) C_N(n_r, m_1) prod_j P_{l_j}(m_j)
 *
 * over 0 < n_1 < ... < n_r <= m_1, with m_j < m_{j+1} right after each block
 * start of l and m_j <= m_{j+1} otherwise, m_{wt(l)+1} = N. By convention
 * Z_N(k |) = zeta_<N+1(k) and Z_N(| l) = zeta_flat_<N+1(l).
 *
 * Moving the last part of k across the bar leaves Z unchanged; doing this
 * dep(k) times carries zeta_<N+1(k) to zeta_flat_<N+1(k). telescope() records
 * every stage of that chain.
 */

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mzvdisc/harmonic.hpp"

namespace mzvdisc {

/// Pascal triangle up to row N, with the connector built on top.
class ConnectorTable {
 public:
  explicit ConnectorTable(std::uint64_t N) : N_(N), rows_(N + 1) {
    for (std::uint64_t m = 0; m <= N; ++m) {
      rows_[m].resize(m + 1);
      rows_[m][0] = rows_[m][m] = 1;
      for (std::uint64_t n = 1; n < m; ++n) rows_[m][n] = rows_[m - 1][n - 1] + rows_[m - 1][n];
    }
  }

  std::uint64_t N() const noexcept { return N_; }
  const BigInt& binomial(std::uint64_t m, std::uint64_t n) const { return rows_.at(m).at(n); }

  /// C_N(n, m); requires 0 <= n <= m <= N.
  Rational operator()(std::uint64_t n, std::uint64_t m) const {
    if (n > m || m > N_)
      throw std::invalid_argument("connector requires 0 <= n <= m <= N (got n=" + std::to_string(n) +
                                  ", m=" + std::to_string(m) + ", N=" + std::to_string(N_) + ")");
    Rational q(rows_[m][n], rows_[N_][n]);
    q.canonicalize();
    return q;
  }

 private:
  std::uint64_t N_;
  std::vector<std::vector<BigInt>> rows_;
};

inline Rational connector(std::uint64_t N, std::uint64_t n, std::uint64_t m) { return ConnectorTable(N)(n, m); }

/// (1/n) C_N(n,m) = sum_{n<=b<=m} C_N(n,b) / b,  for 0 < n <= m <= N.
inline VerificationReport transport1_check(const ConnectorTable& C, std::uint64_t n, std::uint64_t m) {
  ReportBuilder rb("transport1", "N=" + std::to_string(C.N()) + " n=" + std::to_string(n) + " m=" + std::to_string(m));
  if (n == 0 || n > m || m > C.N()) throw std::invalid_argument("transport1 requires 0 < n <= m <= N");
  Rational lhs = C(n, m) / Rational(static_cast<unsigned long>(n));
  Rational rhs = 0;
  for (std::uint64_t b = n; b <= m; ++b) rhs += C(n, b) / Rational(static_cast<unsigned long>(b));
  return rb.finish(lhs, rhs);
}

/// sum_{n<a<=m} C_N(a,m) / a = sum_{n<=b<m} C_N(n,b) / (N-b),  for 0 <= n < m <= N.
inline VerificationReport transport2_check(const ConnectorTable& C, std::uint64_t n, std::uint64_t m) {
  ReportBuilder rb("transport2", "N=" + std::to_string(C.N()) + " n=" + std::to_string(n) + " m=" + std::to_string(m));
  if (n >= m || m > C.N()) throw std::invalid_argument("transport2 requires 0 <= n < m <= N");
  Rational lhs = 0, rhs = 0;
  for (std::uint64_t a = n + 1; a <= m; ++a) lhs += C(a, m) / Rational(static_cast<unsigned long>(a));
  for (std::uint64_t b = n; b < m; ++b) rhs += C(n, b) / Rational(static_cast<unsigned long>(C.N() - b));
  return rb.finish(lhs, rhs);
}

inline VerificationReport transport1_check(std::uint64_t N, std::uint64_t n, std::uint64_t m) {
  return transport1_check(ConnectorTable(N), n, m);
}
inline VerificationReport transport2_check(std::uint64_t N, std::uint64_t n, std::uint64_t m) {
  return transport2_check(ConnectorTable(N), n, m);
}

/**
 * The two one-step differences the transport identities telescope from:
 *   (1/n)(C(n,b) - C(n,b-1)) = C(n,b)/b                  for 0 < n < b <= N
 *   (1/a)(C(a,b+1) - C(a,b)) = (C(a-1,b) - C(a,b))/(N-b)   for 0 < a <= b < N
 */
inline bool connector_differences_hold(const ConnectorTable& C) {
  const std::uint64_t N = C.N();
  for (std::uint64_t n = 1; n <= N; ++n)
    for (std::uint64_t b = n + 1; b <= N; ++b)
      if ((C(n, b) - C(n, b - 1)) / Rational(static_cast<unsigned long>(n)) !=
          C(n, b) / Rational(static_cast<unsigned long>(b)))
        return false;
  for (std::uint64_t a = 1; a <= N; ++a)
    for (std::uint64_t b = a; b < N; ++b)
      if ((C(a, b + 1) - C(a, b)) / Rational(static_cast<unsigned long>(a)) !=
          (C(a - 1, b) - C(a, b)) / Rational(static_cast<unsigned long>(N - b)))
        return false;
  return true;
}

namespace detail {

/// right[m] = sum over the m-chain of l with m_1 = m, of prod_j P_{l_j}(m_j); m in [0, N].
inline std::vector<Rational> connected_right_table(std::uint64_t N, const Index& l) {
  const auto Jt = boundary_set_tilde(l);
  const auto w = flat_weights(l);
  const std::size_t len = w.size();
  auto weight_at = [&](std::size_t j, std::uint64_t m) {
    Rational f = 1;
    if (w[j].reflected) f /= Rational(static_cast<unsigned long>(N - m));
    if (w[j].harmonic) f /= Rational(static_cast<unsigned long>(m));
    return f;
  };
  auto strict_after = [&](std::size_t j) { return Jt.count(static_cast<unsigned>(j + 1)) > 0; };

  // G_j(m) for j = len-1 down to 0; positions are 1-based in Jt.
  std::vector<Rational> cur(N + 1, Rational(0)), next(N + 1, Rational(0));
  for (std::uint64_t m = 1; m <= N; ++m)
    if (!(strict_after(len - 1) && m == N)) cur[m] = weight_at(len - 1, m);
  for (std::size_t j = len - 1; j-- > 0;) {
    const bool strict = strict_after(j);
    Rational running = 0;  // sum_{m' >= m + strict} cur[m']
    for (std::uint64_t m = N + 1; m-- > 1;) {
      if (!strict) running += cur[m];
      next[m] = 0;
      if (!(strict && m == N) && running != 0) next[m] = weight_at(j, m) * running;
      if (strict) running += cur[m];
    }
    next[0] = 0;
    std::swap(cur, next);
  }
  cur[0] = 0;
  return cur;
}

}  // namespace detail

/// Z_N(k | l). Either side may be empty, not both.
inline Rational connected_sum_Z(std::uint64_t N, const Index& k, const Index& l) {
  require_upper(N);
  if (k.empty() && l.empty()) throw std::invalid_argument("Z_N( | ) with both sides empty is undefined");
  if (l.empty()) return zeta_trunc(k, N + 1);
  if (k.empty()) return zeta_flat(l, N + 1);

  std::vector<Weight> kw;
  for (auto p : k) kw.push_back(Weight::harmonic_power(p));
  // left[n] = sum_{0<n_1<...<n_r = n} Q_k(n), n <= N
  auto left = chain_table(make_chain(kw, Relation::Strict, Relation::Weak), N);
  auto right = detail::connected_right_table(N, l);
  ConnectorTable C(N);
  Rational total = 0;
  for (std::uint64_t m = 1; m <= N; ++m) {
    if (right[m] == 0) continue;
    Rational inner = 0;
    for (std::uint64_t n = 1; n <= m; ++n)
      if (left[n] != 0) inner += left[n] * C(n, m);
    total += inner * right[m];
  }
  return total;
}

inline std::string render_Z(std::uint64_t N, const Index& k, const Index& l) {
  return "Z_" + std::to_string(N) + "(" + k.to_string() + " | " + l.to_string() + ")";
}

/**
 * Z_N(k, tail | l) = Z_N(k | tail, l). With l empty this is Z_N(k, tail |) = Z_N(k | tail);
 * with k empty it is Z_N(tail | l) = Z_N(| tail, l).
 */
inline VerificationReport transport_step_check(std::uint64_t N, const Index& k, unsigned tail, const Index& l) {
  if (tail == 0) throw std::invalid_argument("transported part must be positive");
  const Index moved{tail};
  const Index before_left = k.concat(moved), after_right = moved.concat(l);
  const char* id = k.empty() ? "transport-to-flat" : (l.empty() ? "transport-from-zeta" : "transport-inner");
  ReportBuilder rb(id, render_Z(N, before_left, l) + " = " + render_Z(N, k, after_right));
  return rb.finish(connected_sum_Z(N, before_left, l), connected_sum_Z(N, k, after_right));
}

struct TelescopeStage {
  Index left;
  Index right;
  Rational value;
};

struct TelescopeTrace {
  std::uint64_t N;
  Index k;
  std::vector<TelescopeStage> stages;

  bool all_equal() const {
    for (const auto& s : stages)
      if (s.value != stages.front().value) return false;
    return true;
  }

  /// One line per stage: "Z_N(left | right) = value".
  std::string transcript() const {
    std::string out;
    for (const auto& s : stages) out += render_Z(N, s.left, s.right) + " = " + to_fraction_string(s.value) + "\n";
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json st = nlohmann::json::array();
    for (const auto& s : stages)
      st.push_back({{"left", s.left.to_string()}, {"right", s.right.to_string()}, {"value", to_fraction_string(s.value)}});
    return {{"N", N}, {"index", k.to_string()}, {"stages", st}, {"all_equal", all_equal()}};
  }
};

/// Z_N(k_1..k_r |) = Z_N(k_1..k_{r-1} | k_r) = ... = Z_N(| k_1..k_r).
inline TelescopeTrace telescope(const Index& k, std::uint64_t N) {
  require_nonempty(k, "telescope");
  TelescopeTrace t{N, k, {}};
  for (std::size_t moved = 0; moved <= k.depth(); ++moved) {
    Index left = k.head(k.depth() - moved), right = k.tail_from(k.depth() - moved);
    Rational v = connected_sum_Z(N, left, right);
    t.stages.push_back({std::move(left), std::move(right), std::move(v)});
  }
  return t;
}

}  // namespace mzvdisc

#endif  // MZVDISC_CONNECTED_SUM_HPP
