#ifndef MZVDISC_INDEX_HPP
#define MZVDISC_INDEX_HPP

/**
 * @file mzvdisc/index.hpp
 * @brief Indices (finite sequences of positive integers) and their combinatorics.
 *
 * An index k = (k_1, ..., k_r) has weight k_1 + ... + k_r and depth r.
 * Provided here:
 *   - the block decompositions behind the two dualities (dual, hoffman_dual),
 *   - the refinement order l <= k ("replace some commas by plus signs"),
 *     enumerated from either side (coarsenings / refinements),
 *   - the block-boundary sets J(k) and J~(l) used to compile nested sums,
 *   - the shift operations oplus / oslash used by the p-adic lifting.
 */

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mzvdisc {

class Index {
 public:
  using part_type = unsigned;

  Index() = default;
  Index(std::initializer_list<part_type> parts) : parts_(parts) { validate(); }
  explicit Index(std::vector<part_type> parts) : parts_(std::move(parts)) { validate(); }

  const std::vector<part_type>& parts() const noexcept { return parts_; }
  std::size_t depth() const noexcept { return parts_.size(); }
  unsigned weight() const noexcept {
    return std::accumulate(parts_.begin(), parts_.end(), 0u);
  }
  bool empty() const noexcept { return parts_.empty(); }
  bool admissible() const noexcept { return !parts_.empty() && parts_.back() >= 2; }

  part_type operator[](std::size_t i) const { return parts_.at(i); }
  part_type back() const { return parts_.at(parts_.size() - 1); }
  auto begin() const noexcept { return parts_.begin(); }
  auto end() const noexcept { return parts_.end(); }

  /// Concatenation (k, l).
  Index concat(const Index& other) const {
    std::vector<part_type> out = parts_;
    out.insert(out.end(), other.parts_.begin(), other.parts_.end());
    return Index(std::move(out));
  }
  Index head(std::size_t n) const {
    return Index(std::vector<part_type>(parts_.begin(), parts_.begin() + std::min(n, depth())));
  }
  Index tail_from(std::size_t n) const {
    return Index(std::vector<part_type>(parts_.begin() + std::min(n, depth()), parts_.end()));
  }

  /// "2,3,1"; the empty index renders as "".
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s;
  }

  friend bool operator==(const Index&, const Index&) = default;
  friend auto operator<=>(const Index& a, const Index& b) { return a.parts_ <=> b.parts_; }
  friend std::ostream& operator<<(std::ostream& os, const Index& k) {
    return os << '(' << k.to_string() << ')';
  }

 private:
  void validate() const {
    for (auto p : parts_)
      if (p == 0) throw std::invalid_argument("index parts must be positive");
  }

  std::vector<part_type> parts_;
};

/// {1}^n
inline Index ones(std::size_t n) { return Index(std::vector<Index::part_type>(n, 1u)); }

/**
 * Parses "2,3,1". A part may carry a repetition suffix: "1^4" is 1,1,1,1.
 * Whitespace around parts is ignored; the empty string is the empty index.
 */
inline Index parse_index(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  auto parse_uint = [](std::string_view s) -> unsigned long {
    if (s.empty()) throw std::invalid_argument("empty index part");
    unsigned long v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad index part '" + std::string(s) + "'");
      v = v * 10 + static_cast<unsigned long>(c - '0');
      if (v > 1'000'000) throw std::invalid_argument("index part too large");
    }
    return v;
  };

  text = trim(text);
  std::vector<Index::part_type> parts;
  if (text.empty()) return Index{};
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view tok = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    std::size_t caret = tok.find('^');
    unsigned long value = parse_uint(trim(tok.substr(0, caret)));
    unsigned long reps = caret == std::string_view::npos ? 1 : parse_uint(trim(tok.substr(caret + 1)));
    if (value == 0) throw std::invalid_argument("index parts must be positive");
    if (reps > 10'000) throw std::invalid_argument("repetition count too large");
    parts.insert(parts.end(), reps, static_cast<Index::part_type>(value));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Index(std::move(parts));
}

// ---------------------------------------------------------------------------
// Block decompositions
// ---------------------------------------------------------------------------

enum class DecompositionFlavor { Admissible, Hoffman };

struct ABPair {
  unsigned a;
  unsigned b;
  friend bool operator==(const ABPair&, const ABPair&) = default;
};

/**
 * Admissible flavor:  k = ({1}^{a_1-1}, b_1+1, ..., {1}^{a_s-1}, b_s+1).
 * Hoffman flavor:     k = ({1}^{a_1-1}, b_1+1, ..., {1}^{a_s-1}, b_s),
 *                     i.e. the last part is b_s itself (and may be 1).
 */
struct ABDecomposition {
  std::vector<ABPair> pairs;
  DecompositionFlavor flavor;

  Index reconstruct() const {
    std::vector<Index::part_type> out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      out.insert(out.end(), pairs[i].a - 1, 1u);
      bool last_hoffman = flavor == DecompositionFlavor::Hoffman && i + 1 == pairs.size();
      out.push_back(last_hoffman ? pairs[i].b : pairs[i].b + 1);
    }
    return Index(std::move(out));
  }
};

// Greedy left to right: leading 1s give a_i - 1, the next part gives b_i.
inline ABDecomposition decompose(const Index& k, DecompositionFlavor flavor) {
  const auto& p = k.parts();
  if (p.empty()) throw std::invalid_argument("cannot decompose the empty index");
  if (flavor == DecompositionFlavor::Admissible && !k.admissible())
    throw std::invalid_argument("index " + k.to_string() + " is not admissible");

  ABDecomposition d{{}, flavor};
  std::size_t i = 0;
  const std::size_t r = p.size();
  while (i < r) {
    unsigned leading = 0;
    while (i + 1 < r && p[i] == 1) {
      ++leading;
      ++i;
    }
    bool last = i + 1 == r;
    if (last && flavor == DecompositionFlavor::Hoffman) {
      d.pairs.push_back({leading + 1, p[i]});
    } else {
      // p[i] >= 2 here: either it stopped the run of ones, or it is the
      // (admissible) last part.
      d.pairs.push_back({leading + 1, p[i] - 1});
    }
    ++i;
  }
  return d;
}

/// k-dagger. Rejects non-admissible input, including the empty index.
inline Index dual(const Index& k) {
  if (!k.admissible())
    throw std::invalid_argument("dual requires an admissible index, got (" + k.to_string() + ")");
  auto d = decompose(k, DecompositionFlavor::Admissible);
  std::vector<Index::part_type> out;
  for (auto it = d.pairs.rbegin(); it != d.pairs.rend(); ++it) {
    out.insert(out.end(), it->b - 1, 1u);
    out.push_back(it->a + 1);
  }
  return Index(std::move(out));
}

/// k-vee (Hoffman dual). Rejects the empty index.
inline Index hoffman_dual(const Index& k) {
  if (k.empty()) throw std::invalid_argument("hoffman_dual of the empty index is undefined");
  auto d = decompose(k, DecompositionFlavor::Hoffman);
  std::vector<Index::part_type> out;
  for (std::size_t i = 0; i < d.pairs.size(); ++i) {
    out.push_back(i == 0 ? d.pairs[i].a : d.pairs[i].a + 1);
    out.insert(out.end(), d.pairs[i].b - 1, 1u);
  }
  return Index(std::move(out));
}

// ---------------------------------------------------------------------------
// Refinement order
// ---------------------------------------------------------------------------

/// All compositions of n, lexicographically ordered.
inline std::vector<std::vector<Index::part_type>> compositions(unsigned n) {
  std::vector<std::vector<Index::part_type>> out;
  if (n == 0) return std::vector<std::vector<Index::part_type>>(1);
  std::vector<Index::part_type> cur;
  auto rec = [&](auto&& self, unsigned rest) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (unsigned first = 1; first <= rest; ++first) {
      cur.push_back(first);
      self(self, rest - first);
      cur.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

/// {l : l <= k}: every way of replacing commas of k by plus signs.
inline std::vector<Index> coarsenings(const Index& k) {
  if (k.empty()) throw std::invalid_argument("coarsenings of the empty index");
  const auto& p = k.parts();
  const std::size_t gaps = p.size() - 1;
  std::vector<Index> out;
  out.reserve(std::size_t{1} << gaps);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << gaps); ++mask) {
    std::vector<Index::part_type> parts{p[0]};
    for (std::size_t g = 0; g < gaps; ++g) {
      if (mask >> g & 1u)
        parts.back() += p[g + 1];
      else
        parts.push_back(p[g + 1]);
    }
    out.emplace_back(std::move(parts));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// {l : k <= l}: each part of k replaced by one of its compositions.
inline std::vector<Index> refinements(const Index& k) {
  if (k.empty()) throw std::invalid_argument("refinements of the empty index");
  std::vector<std::vector<Index::part_type>> acc{{}};
  for (auto part : k) {
    auto comps = compositions(part);
    std::vector<std::vector<Index::part_type>> next;
    next.reserve(acc.size() * comps.size());
    for (const auto& prefix : acc)
      for (const auto& c : comps) {
        auto v = prefix;
        v.insert(v.end(), c.begin(), c.end());
        next.push_back(std::move(v));
      }
    acc = std::move(next);
  }
  std::vector<Index> out;
  out.reserve(acc.size());
  for (auto& v : acc) out.emplace_back(std::move(v));
  std::sort(out.begin(), out.end());
  return out;
}

/// Partial sums k_1, k_1+k_2, ..., wt(k).
inline std::vector<unsigned> partial_sums(const Index& k) {
  std::vector<unsigned> s;
  unsigned acc = 0;
  for (auto p : k) s.push_back(acc += p);
  return s;
}

/// l <= k  (l is obtained from k by merging adjacent parts).
inline bool precedes(const Index& l, const Index& k) {
  if (l.weight() != k.weight() || l.empty() != k.empty()) return false;
  auto ls = partial_sums(l);
  auto ks = partial_sums(k);
  return std::includes(ks.begin(), ks.end(), ls.begin(), ls.end());
}

// ---------------------------------------------------------------------------
// Boundary sets and shifts
// ---------------------------------------------------------------------------

/// J(k) = {1, k_1+1, ..., k_1+...+k_{r-1}+1, wt(k)+1}, 1-based positions.
inline std::set<unsigned> boundary_set(const Index& k) {
  if (k.empty()) throw std::invalid_argument("boundary_set of the empty index");
  std::set<unsigned> j{1};
  for (auto s : partial_sums(k)) j.insert(s + 1);
  return j;
}

/// J~(l): J(l) without the terminal element wt(l)+1.
inline std::set<unsigned> boundary_set_tilde(const Index& l) {
  auto j = boundary_set(l);
  j.erase(l.weight() + 1);
  return j;
}

using Shift = std::vector<unsigned>;

/// l (+) k = (l_1+k_1, ..., l_r+k_r)
inline Index oplus(const Shift& l, const Index& k) {
  if (l.size() != k.depth()) throw std::invalid_argument("oplus: shift length differs from depth");
  std::vector<Index::part_type> out;
  for (std::size_t i = 0; i < l.size(); ++i) out.push_back(l[i] + k[i]);
  return Index(std::move(out));
}

/// l (/) k = (l_1+1, {1}^{k_1-1}, ..., l_r+1, {1}^{k_r-1})
inline Index oslash(const Shift& l, const Index& k) {
  if (l.size() != k.depth()) throw std::invalid_argument("oslash: shift length differs from depth");
  std::vector<Index::part_type> out;
  for (std::size_t i = 0; i < l.size(); ++i) {
    out.push_back(l[i] + 1);
    out.insert(out.end(), k[i] - 1, 1u);
  }
  return Index(std::move(out));
}

/// All shifts of the given length with entries summing to `total`, lexicographic.
inline std::vector<Shift> shifts_of_weight(std::size_t length, unsigned total) {
  std::vector<Shift> out;
  if (length == 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  Shift cur(length, 0);
  auto rec = [&](auto&& self, std::size_t pos, unsigned rest) -> void {
    if (pos + 1 == length) {
      cur[pos] = rest;
      out.push_back(cur);
      return;
    }
    for (unsigned v = 0; v <= rest; ++v) {
      cur[pos] = v;
      self(self, pos + 1, rest - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

/// Every nonempty index of weight w, lexicographic.
inline std::vector<Index> indices_of_weight(unsigned w) {
  std::vector<Index> out;
  for (auto& c : compositions(w)) out.emplace_back(std::move(c));
  return out;
}

/// Every nonempty index with weight in [1, max_weight], ordered by weight then lexicographically.
inline std::vector<Index> indices_up_to_weight(unsigned max_weight) {
  std::vector<Index> out;
  for (unsigned w = 1; w <= max_weight; ++w) {
    auto ws = indices_of_weight(w);
    out.insert(out.end(), ws.begin(), ws.end());
  }
  return out;
}

}  // namespace mzvdisc

#endif  // MZVDISC_INDEX_HPP
