#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "entropic/entropy.hpp"
#include "entropic/error.hpp"
#include "entropic/groups.hpp"
#include "entropic/observables.hpp"
#include "test_support.hpp"

namespace entropic {
namespace {

// Frozen from an independent double-precision script.
constexpr double kLog2EightFifths = 0.6780719051126377;
constexpr double kUniformGradAlpha2 = -2.8853900817779268;
constexpr double kBinaryEntropyPiOver8 = 0.6008760366928562;

const double kInf = std::numeric_limits<double>::infinity();

ProbDist dist(std::vector<double> p) { return ProbDist(std::move(p)); }

TEST(Renyi, Examples) {
  EXPECT_DOUBLE_EQ(renyi(dist({0.5, 0.5}), RenyiOrder(1.0)), 1.0);
  for (double a : {0.5, 0.7, 1.0, 2.0, 5.0})
    EXPECT_EQ(renyi(dist({1.0, 0.0, 0.0}), RenyiOrder(a)), 0.0);
  EXPECT_EQ(renyi(dist({1.0, 0.0, 0.0}), RenyiOrder::infinity()), 0.0);
  EXPECT_NEAR(renyi(dist({0.75, 0.25}), RenyiOrder(2.0)), kLog2EightFifths, 1e-12);
  EXPECT_NEAR(renyi(dist({0.75, 0.25}), RenyiOrder::infinity()), -std::log2(0.75), 1e-15);
}

TEST(RenyiOrder, Validation) {
  EXPECT_THROW(RenyiOrder(0.4), Error);
  EXPECT_THROW(RenyiOrder(std::nan("")), Error);
  EXPECT_TRUE(RenyiOrder(1.0 + 5e-7).is_shannon());
  EXPECT_FALSE(RenyiOrder(1.0 + 5e-6).is_shannon());
  EXPECT_TRUE(RenyiOrder(kInf).is_infinite());
}

TEST(ProbDist, Validation) {
  EXPECT_THROW(dist({0.5, 0.6}), Error);
  EXPECT_THROW(dist({1.1, -0.1}), Error);
  EXPECT_EQ(dist({1.0 + 1e-15, -1e-15})[1], 0.0);
}

TEST(DualOrder, Values) {
  EXPECT_EQ(dual_order(RenyiOrder(1.0)).value(), 1.0);
  EXPECT_TRUE(dual_order(RenyiOrder(0.5)).is_infinite());
  EXPECT_EQ(dual_order(RenyiOrder::infinity()).value(), 0.5);
  EXPECT_NEAR(dual_order(RenyiOrder(2.0)).value(), 2.0 / 3.0, 1e-15);
  EXPECT_TRUE(is_dual_pair(RenyiOrder(0.6), RenyiOrder(3.0)));
  EXPECT_TRUE(is_dual_pair(RenyiOrder(0.75), RenyiOrder(1.5)));
  EXPECT_FALSE(is_dual_pair(RenyiOrder(1.0), RenyiOrder(2.0)));
}

TEST(DiscreteVariance, Examples) {
  EXPECT_DOUBLE_EQ(discrete_variance(dist({0.5, 0.3, 0.2})), 0.5);
  EXPECT_EQ(discrete_variance(dist({1.0, 0.0})), 0.0);
  EXPECT_DOUBLE_EQ(discrete_variance(dist({0.25, 0.25, 0.25, 0.25})), 0.75);
}

TEST(RenyiGradient, Examples) {
  const auto g1 = renyi_gradient(dist({0.25, 0.25, 0.25, 0.25}), RenyiOrder(1.0));
  for (double x : g1) EXPECT_DOUBLE_EQ(x, g1[0]);
  const auto g2 = renyi_gradient(dist({0.5, 0.5}), RenyiOrder(2.0));
  EXPECT_NEAR(g2[0], kUniformGradAlpha2, 1e-12);
  EXPECT_NEAR(g2[1], kUniformGradAlpha2, 1e-12);
}

TEST(RenyiGradient, Errors) {
  try {
    renyi_gradient(dist({0.5, 0.5}), RenyiOrder::infinity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedOrder);
  }
  try {
    renyi_gradient(dist({1.0, 0.0}), RenyiOrder(2.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundaryDistribution);
  }
}

// Central differences along e_j (the entropy formula extends off the simplex).
TEST(RenyiGradient, MatchesFiniteDifferences) {
  SeededRng rng(77);
  const double orders[] = {0.6, 1.0, 2.0};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = testing::random_dim(rng, 2, 8);
    const auto p = testing::random_distribution(d, rng);
    const double a = orders[trial % 3];
    const auto g = renyi_gradient(ProbDist(p), RenyiOrder(a));
    for (std::size_t j = 0; j < d; ++j) {
      const double h = 1e-6;
      auto up = p, dn = p;
      up[j] += h;
      dn[j] -= h;
      const double fd = (renyi_bits(up, a) - renyi_bits(dn, a)) / (2 * h);
      EXPECT_NEAR(g[j], fd, 1e-6 * std::max(1.0, std::abs(fd))) << "alpha=" << a << " j=" << j;
    }
  }
}

TEST(RenyiProperties, MonotoneInOrderAndBounded) {
  SeededRng rng(5);
  const double orders[] = {0.5, 0.6, 0.75, 1.0, 1.5, 2.0, 3.0, 10.0, kInf};
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = testing::random_dim(rng, 2, 16);
    const ProbDist p(testing::random_distribution(d, rng));
    double prev = std::numeric_limits<double>::infinity();
    for (double a : orders) {
      const double h = renyi(p, RenyiOrder(a));
      EXPECT_LE(h, prev + 1e-10);
      EXPECT_GE(h, 0.0);
      EXPECT_LE(h, std::log2(static_cast<double>(d)) + 1e-10);
      prev = h;
    }
    EXPECT_NEAR(discrete_variance(p), 1.0 - std::exp2(-renyi(p, RenyiOrder::infinity())), 1e-12);
  }
}

TEST(RenyiProperties, Additive) {
  SeededRng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = testing::random_distribution(testing::random_dim(rng, 2, 6), rng);
    const auto q = testing::random_distribution(testing::random_dim(rng, 2, 6), rng);
    std::vector<double> pq;
    for (double x : p)
      for (double y : q) pq.push_back(x * y);
    for (double a : {0.5, 0.8, 1.0, 2.0, kInf}) {
      EXPECT_NEAR(renyi_bits(pq, a), renyi_bits(p, a) + renyi_bits(q, a), 1e-9);
    }
  }
}

TEST(BornDistributions, Examples) {
  const auto f2 = fourier_cyclic(2);
  const CVector e0{1.0, 0.0};
  auto b = born_distributions(f2, e0);
  EXPECT_EQ(b.px[0], 1.0);
  EXPECT_NEAR(b.py[0], 0.5, 1e-15);
  const double s = 1.0 / std::numbers::sqrt2;
  b = born_distributions(f2, CVector{s, s});
  EXPECT_NEAR(b.py[0], 1.0, 1e-15);
  EXPECT_NEAR(b.py[1], 0.0, 1e-15);
  EXPECT_THROW(born_distributions(f2, CVector{1.0, 0.0, 0.0}), Error);
}

TEST(EntropyPair, Examples) {
  const auto f2 = fourier_cyclic(2);
  const RenyiOrder one(1.0);
  auto pt = entropy_pair(f2, CVector{1.0, 0.0}, one, one);
  EXPECT_EQ(pt.hx, 0.0);
  EXPECT_NEAR(pt.hy, 1.0, 1e-14);
  const double t = std::numbers::pi / 8;
  pt = entropy_pair(f2, CVector{std::cos(t), std::sin(t)}, one, one);
  EXPECT_NEAR(pt.hx, kBinaryEntropyPiOver8, 1e-12);
  EXPECT_NEAR(pt.hy, kBinaryEntropyPiOver8, 1e-12);
  const AbelianGroup z4 = AbelianGroup::cyclic(4);
  pt = entropy_pair(fourier_cyclic(4), indicator_state(z4, Subgroup{{0, 2}}), one, one);
  EXPECT_NEAR(pt.hx, 1.0, 1e-14);
  EXPECT_NEAR(pt.hy, 1.0, 1e-14);
}

TEST(EntropyEvaluator, AgreesWithEntropyPair) {
  SeededRng rng(31);
  const auto w = random_unitary(7, rng);
  EntropyEvaluator eval(w.matrix(), RenyiOrder(0.75), RenyiOrder(1.5));
  for (int i = 0; i < 100; ++i) {
    const CVector psi = sample_state(7, SamplingStrategy::haar(), rng);
    const auto a = eval(psi);
    const auto b = entropy_pair(w, psi, RenyiOrder(0.75), RenyiOrder(1.5));
    EXPECT_NEAR(a.hx, b.hx, 1e-13);
    EXPECT_NEAR(a.hy, b.hy, 1e-13);
  }
}

TEST(VonNeumann, Examples) {
  EXPECT_NEAR(von_neumann(MixedEnsemble::pure(CVector{0.6, 0.8}), 2), 0.0, 1e-12);
  std::vector<MixedEnsemble::Component> basis;
  for (std::size_t k = 0; k < 5; ++k) {
    CVector e(5);
    e[k] = 1.0;
    basis.push_back({0.2, e});
  }
  EXPECT_NEAR(von_neumann(MixedEnsemble(basis), 5), std::log2(5.0), 1e-12);
  const double s = 1.0 / std::numbers::sqrt2;
  const MixedEnsemble rho({{0.5, CVector{1.0, 0.0}}, {0.5, CVector{s, s}}});
  EXPECT_NEAR(von_neumann(rho, 2), kBinaryEntropyPiOver8, 1e-10);
}

}  // namespace
}  // namespace entropic
