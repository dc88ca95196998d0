#include <gtest/gtest.h>

#include <random>

#include "mzvdisc/harmonic.hpp"
#include "oracles.hpp"

using namespace mzvdisc;

namespace {

// Random valid chain: mixed weights with exponents <= 3, random gap relations.
ChainSpec random_spec(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len_d(1, 4), exp_d(0, 3), coin(0, 1);
  const int len = len_d(rng);
  const Relation terminal = coin(rng) ? Relation::Strict : Relation::Weak;
  std::vector<ChainPosition> pos(len);
  for (int i = 0; i < len; ++i) {
    pos[i].before = i == 0 || coin(rng) ? Relation::Strict : Relation::Weak;
    pos[i].weight = Weight::mixed(exp_d(rng), exp_d(rng));
    if (pos[i].weight.total() == 0) pos[i].weight.harmonic = 1;
  }
  if (terminal == Relation::Weak)
    for (int i = len; i-- > 0;) {
      pos[i].weight.reflected = 0;
      if (pos[i].weight.harmonic == 0) pos[i].weight.harmonic = 1;
      if (pos[i].before == Relation::Strict) break;
    }
  return ChainSpec(pos, terminal);
}

}  // namespace

TEST(Chain, Validation) {
  EXPECT_THROW(ChainSpec({}, Relation::Strict), std::invalid_argument);
  EXPECT_THROW(ChainSpec({{Weight::harmonic_w(), Relation::Weak}}, Relation::Strict), std::invalid_argument);
  EXPECT_THROW(ChainSpec({{Weight{}, Relation::Strict}}, Relation::Strict), std::invalid_argument);
  EXPECT_THROW(ChainSpec({{Weight::reflected_w(), Relation::Strict}}, Relation::Weak), std::invalid_argument);
  EXPECT_NO_THROW(ChainSpec({{Weight::reflected_w(), Relation::Strict}, {Weight::harmonic_w(), Relation::Strict}},
                            Relation::Weak));
  EXPECT_EQ(flat_spec(Index{2}).describe(), "<R <=H <N");
}

TEST(Chain, Examples) {
  EXPECT_EQ(eval_enum(flat_spec(Index{2}), 3), Rational(5, 4));
  EXPECT_EQ(eval_enum(zeta_spec(Index{2}), 4), Rational(49, 36));
  EXPECT_EQ(eval_dp(zeta_spec(Index{2}), 4), Rational(49, 36));
  EXPECT_EQ(eval_dp(flat_spec(Index{2, 3}), 10), eval_enum(flat_spec(Index{2, 3}), 10));
  EXPECT_EQ(eval_dp(zeta_spec(Index{3}), 100), eval_enum(zeta_spec(Index{3}), 100));
  for (auto& k : indices_up_to_weight(4)) {
    EXPECT_EQ(eval_enum(zeta_spec(k), 1), 0);
    EXPECT_EQ(eval_dp(flat_spec(k), 1), 0);
  }
  PrimePower p5(5, 1), p25(5, 2);
  EXPECT_EQ(eval_dp_mod(zeta_spec(Index{1}), 5, p5).value(), 0u);
  EXPECT_EQ(eval_dp_mod(zeta_spec(Index{1}), 5, p25).value(), 0u);
  EXPECT_EQ(eval_dp_mod(zeta_spec(Index{2}), 1, p25).value(), 0u);
}

TEST(Chain, EnumeratorMatchesTupleOracle) {
  for (auto& k : indices_up_to_weight(5))
    for (std::uint64_t N = 1; N <= 9; ++N) {
      EXPECT_EQ(eval_enum(zeta_spec(k), N), oracle::zeta(k, N)) << k << " N=" << N;
      EXPECT_EQ(eval_enum(flat_spec(k), N), oracle::zeta_flat(k, N)) << k << " N=" << N;
      EXPECT_EQ(eval_enum(star_spec(k), N), oracle::zeta_star(k, N)) << k << " N=" << N;
      EXPECT_EQ(eval_enum(star_spec(k, Relation::Weak), N), oracle::zeta_star(k, N, true)) << k << " N=" << N;
    }
}

TEST(Chain, DpMatchesEnumOnSmallGrid) {
  for (auto& k : indices_up_to_weight(6))
    for (std::uint64_t N = 1; N <= 30; N += (N < 12 ? 1 : 6)) {
      EXPECT_EQ(eval_dp(zeta_spec(k), N), eval_enum(zeta_spec(k), N)) << k << " N=" << N;
      EXPECT_EQ(eval_dp(flat_spec(k), N), eval_enum(flat_spec(k), N)) << k << " N=" << N;
      EXPECT_EQ(eval_dp(star_spec(k), N), eval_enum(star_spec(k), N)) << k << " N=" << N;
    }
}

TEST(Chain, DpMatchesEnumOnRandomMixedSpecs) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::uint64_t> N_d(1, 25);
  for (int t = 0; t < 200; ++t) {
    auto spec = random_spec(rng);
    auto N = N_d(rng);
    EXPECT_EQ(eval_dp(spec, N), eval_enum(spec, N)) << spec.describe() << " N=" << N;
  }
}

TEST(Chain, ChainTableSumsToValue) {
  for (auto& k : indices_up_to_weight(4)) {
    auto spec = flat_spec(k);
    auto t = chain_table(spec, 12);
    Rational s = 0;
    for (auto& v : t) s += v;
    EXPECT_EQ(s, eval_dp(spec, 12));
    EXPECT_EQ(t[12], 0);  // strict terminal excludes N
  }
}

// Reduction mod p^n is a ring homomorphism from p-integral rationals, so the modular DP
// must agree with reducing the rational DP.
TEST(Chain, ModularDpIsReductionOfRationalDp) {
  for (std::uint64_t p : {5, 7, 11, 13})
    for (unsigned n = 1; n <= 3; ++n) {
      PrimePower mod(p, n);
      for (auto& k : indices_up_to_weight(4)) {
        for (const auto& spec : {zeta_spec(k), star_spec(k), flat_spec(k)}) {
          EXPECT_EQ(eval_dp_mod(spec, p, mod).value(), oracle::reduce(eval_dp(spec, p), p, n))
              << spec.describe() << " p=" << p << " n=" << n;
        }
      }
    }
}

// 1/((N-n) n) = (1/N)(1/n + 1/(N-n)): a chain with a Mixed(1,1) position equals the split sum / N.
TEST(Chain, PartialFractionIdentity) {
  for (std::uint64_t N = 2; N <= 100; N += 7) {
    auto mixed = make_chain({Weight::mixed(1, 1), Weight::harmonic_power(2)}, Relation::Strict, Relation::Strict);
    auto a = make_chain({Weight::harmonic_w(), Weight::harmonic_power(2)}, Relation::Strict, Relation::Strict);
    auto b = make_chain({Weight::reflected_w(), Weight::harmonic_power(2)}, Relation::Strict, Relation::Strict);
    EXPECT_EQ(eval_dp(mixed, N), (eval_dp(a, N) + eval_dp(b, N)) / Rational(static_cast<unsigned long>(N)));
  }
}

TEST(Chain, NonUnitNamesPositionAndValue) {
  PrimePower mod(3, 1);
  try {
    eval_dp_mod(zeta_spec(Index{2}), 5, mod);
    FAIL() << "expected NonUnitError";
  } catch (const NonUnitError& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("position 1"), std::string::npos) << what;
    EXPECT_NE(what.find("value 3"), std::string::npos) << what;
  }
}

TEST(Chain, ReflectionPreservesValue) {
  for (auto& k : indices_up_to_weight(5))
    for (std::uint64_t N = 1; N <= 14; ++N) {
      auto s = flat_spec(k);
      EXPECT_EQ(eval_dp(reflect(s), N), eval_dp(s, N)) << k << " N=" << N;
      EXPECT_EQ(reflect(reflect(s)), s);
    }
}

TEST(Residue, Arithmetic) {
  PrimePower m(7, 2);
  Residue a(10, m), b(-3, m);
  EXPECT_EQ(b.value(), 46u);
  EXPECT_EQ((a * a.inverse()).value(), 1u);
  EXPECT_EQ((a + b).value(), 7u);
  EXPECT_THROW(Residue(14, m).inverse(), NonUnitError);
  EXPECT_EQ(Residue::from_rational(Rational(25, 12), PrimePower(5, 2)).value(), 0u);
  EXPECT_THROW(PrimePower(9, 1), std::invalid_argument);
  EXPECT_THROW(PrimePower(7, 0), std::invalid_argument);
}

TEST(Residue, Primality) {
  std::vector<unsigned> sieve_primes;
  for (unsigned n = 2; n < 2000; ++n) {
    bool prime = true;
    for (unsigned d = 2; d * d <= n; ++d)
      if (n % d == 0) prime = false;
    if (prime) sieve_primes.push_back(n);
  }
  EXPECT_EQ(primes_in(0, 1999), sieve_primes);
  EXPECT_TRUE(is_prime(2147483647ull));
  EXPECT_FALSE(is_prime(25326001ull));  // strong pseudoprime to bases 2, 3, 5
  EXPECT_THROW(is_prime(1ull << 31), std::out_of_range);
}

TEST(Rational, Rendering) {
  EXPECT_EQ(to_fraction_string(Rational(0)), "0/1");
  EXPECT_EQ(to_fraction_string(Rational(-6, 4)), "-3/2");
  EXPECT_EQ(parse_fraction("49/36"), Rational(49, 36));
  EXPECT_EQ(to_decimal_string(Rational(1, 3), 5), "0.33333");
  EXPECT_EQ(to_decimal_string(Rational(1, 8), 2), "0.12");  // half to even
  EXPECT_EQ(to_decimal_string(Rational(3, 8), 2), "0.38");
}
