#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numeric>

#include "entropic/equality.hpp"
#include "entropic/error.hpp"
#include "entropic/frontier.hpp"
#include "entropic/observables.hpp"
#include "test_support.hpp"

namespace entropic {
namespace {

const RenyiOrder kOne(1.0);
constexpr double kH8 = 0.6008760366928562;  // binary entropy of cos^2(pi/8)

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::ParseError;
}

bool dominated(EntropyPoint a, EntropyPoint b, double tol) { return a.hx <= b.hx + tol && a.hy <= b.hy + tol; }

TEST(ConstrainedMin, Examples) {
  const auto f2 = fourier_cyclic(2);
  auto r = min_halpha_given_hbeta(f2, kOne, kOne, 0.0);
  EXPECT_NEAR(r.value, 1.0, 1e-4);
  EXPECT_LE(std::abs(r.point.hy), 1e-6);

  r = min_halpha_given_hbeta(f2, kOne, kOne, kH8);
  EXPECT_NEAR(r.value, kH8, 1e-3);
  EXPECT_LE(std::abs(r.point.hy - kH8), 1e-6);
  EXPECT_TRUE(r.cross_check_ok);

  r = min_halpha_given_hbeta(fourier_cyclic(4), kOne, kOne, 1.0);
  EXPECT_NEAR(r.value, 1.0, 1e-3);
}

TEST(ConstrainedMin, WitnessIsConsistent) {
  const auto w = builtin("example3");
  for (double delta : {0.2, 0.8, 1.3}) {
    const auto r = min_halpha_given_hbeta(w, RenyiOrder(2.0), RenyiOrder(2.0 / 3), delta);
    const auto p = entropy_pair(w, r.witness, RenyiOrder(2.0), RenyiOrder(2.0 / 3));
    EXPECT_NEAR(p.hx, r.value, 1e-12);
    EXPECT_LE(std::abs(p.hy - delta), 1e-6);
    EXPECT_GE(p.hx + p.hy, overlap_data(w.matrix()).mu_bound_bits - 1e-9);
  }
}

TEST(ConstrainedMin, DominatedLevelSetFailsCrossCheck) {
  // Points of lower hy reach hx ~ 0.04, while the level set hy = 1.3 bottoms
  // out near hx = 0.127.
  const auto w = builtin("example3");
  const RenyiOrder a(2.0), b(2.0 / 3);
  const auto r = min_halpha_given_hbeta(w, a, b, 1.3);
  EXPECT_GT(r.value, 0.1);
  EXPECT_FALSE(r.cross_check_ok);
  EXPECT_LT(r.sampled_bound, r.value - 0.05);
  // Sampled states near the level set are no better than the optimum.
  const auto s = sample_diagram(w, a, b, 200000, SamplingStrategy::haar(), SeededRng(4));
  for (const auto& p : s.points)
    if (std::abs(p.hy - 1.3) <= 1e-4) EXPECT_GE(p.hx, r.value - 1e-3);
}

TEST(ConstrainedMin, QubitMatchesExactCurveAtOtherOrders) {
  SeededRng rng(3);
  const auto w = random_unitary(2, rng);
  for (auto [a, b] : {std::pair{0.6, 3.0}, {2.0, 2.0 / 3}}) {
    const RenyiOrder al(a), be(b);
    // Invert the exact curve: pick an hx on it, then minimize hx at its hy.
    const auto c = d2_exact_curve(w, al, be, 9);
    for (std::size_t i = 1; i + 1 < c.points.size(); ++i) {
      const auto r = min_halpha_given_hbeta(w, al, be, c.points[i].hy);
      EXPECT_NEAR(r.value, c.points[i].hx, 1e-5) << a << " " << i;
    }
  }
}

TEST(ConstrainedMin, Errors) {
  const auto f2 = fourier_cyclic(2);
  EXPECT_EQ(code_of([&] { min_halpha_given_hbeta(f2, kOne, RenyiOrder(2.0), 0.5); }), ErrorCode::NotDualPair);
  EXPECT_EQ(code_of([&] { min_halpha_given_hbeta(f2, RenyiOrder(0.5), RenyiOrder::infinity(), 0.5); }),
            ErrorCode::UnsupportedOrder);
  EXPECT_EQ(code_of([&] { min_halpha_given_hbeta(f2, kOne, kOne, 1.5); }), ErrorCode::Infeasible);
  EXPECT_EQ(code_of([&] { min_halpha_given_hbeta(f2, kOne, kOne, -0.1); }), ErrorCode::Infeasible);
}

TEST(OptimizedFrontier, QubitAgreesWithExactCurve) {
  const auto f2 = fourier_cyclic(2);
  const RenyiOrder a(2.0), b(2.0 / 3);
  const auto c = optimized_frontier(f2, a, b, 16);
  for (const auto& p : c.points) EXPECT_NEAR(p.hy, d2_exact_value(f2, a, b, p.hx), 1e-6);
}

TEST(OptimizedFrontier, WitnessesAreExtremal) {
  // Optimal states are phase-stationary on both sides: in psi for H_beta of
  // W psi, and in W psi for H_alpha of psi.
  for (std::size_t d : {3u, 5u}) {
    const auto f = fourier_cyclic(d);
    const auto c = optimized_frontier(f, kOne, kOne, 8);
    ASSERT_EQ(c.witnesses.size(), c.points.size());
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const double top = std::log2(static_cast<double>(d));
      if (c.points[i].hx < 1e-3 || c.points[i].hy < 1e-3 || c.points[i].hx > top - 1e-3 || c.points[i].hy > top - 1e-3)
        continue;
      const CVector& psi = c.witnesses[i];
      EXPECT_LE(extremality_residual(psi, kOne).max_abs, 1e-5);
      CVector hat = matvec(f.matrix(), psi);
      for (auto& z : hat) z = std::conj(z);
      EXPECT_LE(extremality_residual(hat, kOne).max_abs, 1e-5);
    }
  }
}

TEST(OptimizedFrontier, MuBoundAndShape) {
  for (const auto& w : {fourier_cyclic(4), builtin("c6")}) {
    const auto c = optimized_frontier(w, RenyiOrder(0.75), RenyiOrder(1.5), 12);
    const double bound = overlap_data(w.matrix()).mu_bound_bits;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      EXPECT_GE(c.points[i].hx + c.points[i].hy, bound - 1e-9);
      if (i > 0) EXPECT_LT(c.points[i - 1].hx, c.points[i].hx);
    }
  }
}

TEST(OptimizedFrontier, DeterministicAcrossThreads) {
  const auto w = fourier_cyclic(4);
  OptimizeOptions o;
  o.seed = 17;
  o.threads = 1;
  const auto a = optimized_frontier(w, kOne, kOne, 6, o);
  o.threads = 3;
  const auto b = optimized_frontier(w, kOne, kOne, 6, o);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.witnesses, b.witnesses);
}

TEST(OptimizedFrontier, RestrictedFamiliesStayInFamily) {
  OptimizeOptions o;
  o.family = StateFamily::RealSymmetric;
  const auto c = optimized_frontier(fourier_cyclic(5), kOne, kOne, 6, o);
  for (const auto& psi : c.witnesses) {
    for (std::size_t j = 0; j < psi.size(); ++j) {
      EXPECT_EQ(psi[j].imag(), 0.0);
      if (j > 0) EXPECT_NEAR(psi[j].real(), psi[psi.size() - j].real(), 1e-12);
    }
  }
}

TEST(DominatingPure, PureInputQualifies) {
  SeededRng rng(5);
  const auto w = fourier_cyclic(3);
  const auto psi = sample_state(3, SamplingStrategy::haar(), rng);
  const auto rho = MixedEnsemble::pure(psi);
  const auto sigma = dominating_pure(w, kOne, kOne, rho);
  EXPECT_TRUE(dominated(entropy_pair(w, sigma, kOne, kOne), entropy_pair(w, rho, kOne, kOne), 1e-6));
}

TEST(DominatingPure, MaximallyMixedQubit) {
  const MixedEnsemble rho({{0.5, {1.0, 0.0}}, {0.5, {0.0, 1.0}}});
  EXPECT_NEAR(von_neumann(rho, 2), 1.0, 1e-12);
  const auto w = fourier_cyclic(2);
  const auto sigma = dominating_pure(w, kOne, kOne, rho);
  const auto p = entropy_pair(w, sigma, kOne, kOne);
  EXPECT_LE(p.hx, 1 + 1e-6);
  EXPECT_LE(p.hy, 1 + 1e-6);
  // The xi = pi/8 state is one admissible answer.
  const CVector pi8 = {std::cos(std::acos(-1.0) / 8), std::sin(std::acos(-1.0) / 8)};
  const auto q = entropy_pair(w, pi8, kOne, kOne);
  EXPECT_NEAR(q.hx, kH8, 1e-12);
  EXPECT_NEAR(q.hy, kH8, 1e-12);
}

TEST(DominatingPure, RandomEnsembles) {
  SeededRng rng(77);
  const std::vector<std::pair<double, double>> orders = {{1, 1}, {0.6, 1.5}, {2, 2.0 / 3}};
  for (int i = 0; i < 40; ++i) {
    const std::size_t d = testing::random_dim(rng, 2, 6);
    const auto w = random_unitary(d, rng);
    const auto rho = random_ensemble(d, 4, rng);
    const RenyiOrder a(orders[i % 3].first), b(orders[i % 3].second);
    OptimizeOptions o;
    o.seed = static_cast<std::uint64_t>(i);
    const auto sigma = dominating_pure(w, a, b, rho, o);
    EXPECT_NEAR(std::sqrt(std::inner_product(sigma.begin(), sigma.end(), sigma.begin(), 0.0,
                                             std::plus<>(), [](Complex x, Complex) { return std::norm(x); })),
                1.0, 1e-12);
    EXPECT_TRUE(dominated(entropy_pair(w, sigma, a, b), entropy_pair(w, rho, a, b), 1e-6)) << i;
  }
}

}  // namespace
}  // namespace entropic
