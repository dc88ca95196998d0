#include <gtest/gtest.h>

#include "mzvdisc/connected_sum.hpp"
#include "oracles.hpp"

using namespace mzvdisc;

TEST(Connector, Examples) {
  for (std::uint64_t N = 1; N <= 10; ++N) {
    ConnectorTable C(N);
    for (std::uint64_t m = 0; m <= N; ++m) EXPECT_EQ(C(0, m), 1);
    for (std::uint64_t n = 0; n <= N; ++n) EXPECT_EQ(C(n, N), 1);
  }
  EXPECT_EQ(connector(5, 2, 3), Rational(3, 10));
  EXPECT_THROW(connector(5, 3, 2), std::invalid_argument);
  EXPECT_THROW(connector(5, 2, 6), std::invalid_argument);
}

TEST(Connector, MatchesBinomialOracle) {
  for (std::uint64_t N = 1; N <= 20; ++N) {
    ConnectorTable C(N);
    for (std::uint64_t m = 0; m <= N; ++m)
      for (std::uint64_t n = 0; n <= m; ++n) EXPECT_EQ(C(n, m), oracle::connector(N, n, m));
  }
}

TEST(Connector, DifferencesHold) {
  for (std::uint64_t N = 1; N <= 20; ++N) EXPECT_TRUE(connector_differences_hold(ConnectorTable(N))) << N;
}

TEST(Transport, Examples) {
  auto t1 = transport1_check(3, 1, 2);
  EXPECT_TRUE(t1.pass);
  EXPECT_EQ(t1.lhs, "2/3");
  auto a = transport2_check(2, 0, 1);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.lhs, "1/2");
  auto b = transport2_check(3, 1, 2);
  EXPECT_TRUE(b.pass);
  EXPECT_EQ(b.lhs, "1/6");
  EXPECT_THROW(transport1_check(3, 0, 2), std::invalid_argument);
  EXPECT_THROW(transport2_check(3, 2, 2), std::invalid_argument);
}

TEST(Transport, ExhaustiveUpTo20) {
  for (std::uint64_t N = 1; N <= 20; ++N) {
    ConnectorTable C(N);
    for (std::uint64_t n = 0; n <= N; ++n)
      for (std::uint64_t m = n; m <= N; ++m) {
        if (n > 0) EXPECT_TRUE(transport1_check(C, n, m).pass);
        if (n < m) EXPECT_TRUE(transport2_check(C, n, m).pass);
      }
  }
}

TEST(ConnectedSum, Conventions) {
  EXPECT_EQ(connected_sum_Z(2, Index{2}, Index{}), Rational(5, 4));
  EXPECT_EQ(connected_sum_Z(2, Index{}, Index{2}), Rational(5, 4));
  EXPECT_THROW(connected_sum_Z(2, Index{}, Index{}), std::invalid_argument);
  for (unsigned k = 1; k <= 4; ++k)
    for (std::uint64_t N = 1; N <= 15; ++N)
      EXPECT_EQ(connected_sum_Z(N, Index{k}, Index{}), connected_sum_Z(N, Index{}, Index{k}));
}

TEST(ConnectedSum, MatchesDefinitionOracle) {
  for (auto& k : indices_up_to_weight(3))
    for (auto& l : indices_up_to_weight(3))
      for (std::uint64_t N = 1; N <= 7; ++N)
        EXPECT_EQ(connected_sum_Z(N, k, l), oracle::connected(N, k, l)) << k << " | " << l << " N=" << N;
}

TEST(ConnectedSum, TransportSteps) {
  EXPECT_TRUE(transport_step_check(5, Index{}, 2, Index{}).pass);
  EXPECT_TRUE(transport_step_check(5, Index{1}, 2, Index{}).pass);
  EXPECT_TRUE(transport_step_check(5, Index{}, 1, Index{2}).pass);
  for (auto& k : indices_up_to_weight(3))
    for (auto& l : indices_up_to_weight(3))
      for (unsigned tail = 1; tail <= 2; ++tail)
        EXPECT_TRUE(transport_step_check(6, k, tail, l).pass) << k << " " << tail << " " << l;
}

TEST(Telescope, Examples) {
  auto t = telescope(Index{2}, 2);
  ASSERT_EQ(t.stages.size(), 2u);
  EXPECT_EQ(t.stages[0].value, Rational(5, 4));
  EXPECT_EQ(t.stages[1].value, Rational(5, 4));
  EXPECT_EQ(t.transcript(), "Z_2(2 | ) = 5/4\nZ_2( | 2) = 5/4\n");
  auto u = telescope(Index{1, 1}, 3);
  EXPECT_EQ(u.stages.size(), 3u);
  EXPECT_TRUE(u.all_equal());
  auto v = telescope(Index{2, 3}, 8);
  EXPECT_EQ(v.stages.size(), 3u);
  EXPECT_TRUE(v.all_equal());
  EXPECT_EQ(v.stages.front().value, zeta_trunc(Index{2, 3}, 9));
  EXPECT_EQ(v.stages.back().value, zeta_flat(Index{2, 3}, 9));
  EXPECT_EQ(telescope(Index{1}, 1).stages.front().value, 1);
  EXPECT_EQ(v.to_json()["stages"].size(), 3u);
  EXPECT_THROW(telescope(Index{}, 3), std::invalid_argument);
}

TEST(Telescope, AllStagesEqual) {
  for (auto& k : indices_up_to_weight(5))
    for (std::uint64_t N = 1; N <= 10; ++N) EXPECT_TRUE(telescope(k, N).all_equal()) << k << " N=" << N;
}
