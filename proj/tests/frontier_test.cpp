#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include <json.hpp>

#include "entropic/equality.hpp"
#include "entropic/error.hpp"
#include "entropic/frontier.hpp"
#include "entropic/groups.hpp"
#include "entropic/io.hpp"
#include "entropic/observables.hpp"
#include "test_support.hpp"

namespace entropic {
namespace {

const RenyiOrder kOne(1.0);
constexpr double kH8 = 0.6008760366928562;  // binary entropy of cos^2(pi/8)

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::ParseError;
}

ObservablePair rotation(double phi) { return real_rotation(phi); }

FrontierCurve curve_of(std::vector<EntropyPoint> pts) { return pareto_lower(pts); }

TEST(Pareto, Examples) {
  auto c = curve_of({{1, 0}, {0, 1}, {0.5, 0.5}, {0.7, 0.7}});
  ASSERT_EQ(c.points.size(), 3u);
  EXPECT_EQ(c.points[0], (EntropyPoint{0, 1}));
  EXPECT_EQ(c.points[1], (EntropyPoint{0.5, 0.5}));
  EXPECT_EQ(c.points[2], (EntropyPoint{1, 0}));

  c = curve_of({{0.3, 0.4}});
  ASSERT_EQ(c.points.size(), 1u);

  std::vector<EntropyPoint> line;
  for (int i = 0; i <= 10; ++i) line.push_back({i / 10.0, 1 - i / 10.0});
  EXPECT_EQ(curve_of(line).points.size(), 11u);

  c = curve_of({{0.5, 0.9}, {0.5, 0.2}, {0.5, 0.4}});
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_EQ(c.points[0].hy, 0.2);

  EXPECT_EQ(code_of([] { curve_of({}); }), ErrorCode::EmptyInput);
}

TEST(Pareto, PropertyOrderIndependentAndNonDominated) {
  SeededRng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<EntropyPoint> pts(1 + rng.below(60));
    for (auto& p : pts) p = {std::round(rng.uniform() * 20) / 20, std::round(rng.uniform() * 20) / 20};
    const auto c = pareto_lower(pts);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
      EXPECT_LT(c.points[i - 1].hx, c.points[i].hx);
      EXPECT_GT(c.points[i - 1].hy, c.points[i].hy);
    }
    // Every input point is weakly dominated by a curve point.
    for (const auto& p : pts) {
      bool covered = false;
      for (const auto& q : c.points) covered = covered || (q.hx <= p.hx && q.hy <= p.hy);
      EXPECT_TRUE(covered);
    }
    std::vector<EntropyPoint> rev(pts.rbegin(), pts.rend());
    EXPECT_EQ(pareto_lower(rev).points, c.points);
  }
}

TEST(Deviation, Examples) {
  const auto a = curve_of({{0, 1}, {0.5, 0.5}, {1, 0}});
  auto dev = frontier_deviation(a, a);
  EXPECT_EQ(dev.max_abs, 0.0);
  EXPECT_EQ(dev.signed_max, 0.0);

  const auto up = curve_of({{0, 1.1}, {0.5, 0.6}, {1, 0.1}});
  dev = frontier_deviation(up, a);
  EXPECT_NEAR(dev.max_abs, 0.1, 1e-12);
  EXPECT_NEAR(dev.signed_max, 0.1, 1e-12);
  dev = frontier_deviation(a, up);
  EXPECT_NEAR(dev.signed_max, -0.1, 1e-12);

  EXPECT_EQ(code_of([&] { frontier_deviation(a, curve_of({{2, 0}, {3, -1}})); }), ErrorCode::NoOverlap);
  EXPECT_EQ(code_of([&] { frontier_deviation(a, FrontierCurve{}); }), ErrorCode::EmptyInput);
  EXPECT_TRUE(std::isinf(staircase_value(a, -0.1)));
  EXPECT_EQ(staircase_value(a, 0.75), 0.5);
}

TEST(Diagram, QubitBoxAndMuBound) {
  const auto s = sample_diagram(fourier_cyclic(2), kOne, kOne, 10000, SamplingStrategy::haar(), SeededRng(1));
  ASSERT_EQ(s.points.size(), 10000u);
  for (const auto& p : s.points) {
    EXPECT_GE(p.hx, -1e-12);
    EXPECT_LE(p.hx, 1 + 1e-12);
    EXPECT_LE(p.hy, 1 + 1e-12);
    EXPECT_GE(p.hx + p.hy, 1 - 1e-9);
  }
}

TEST(Diagram, MuInvariantAcrossPairs) {
  SeededRng pick(8);
  const std::vector<std::pair<double, double>> orders = {{1, 1}, {0.6, 1.5}, {2, 2.0 / 3}, {0.75, 1.5}};
  for (const auto& name : {"fourier:3", "fourier:4", "example3", "c6", "random:3:5"}) {
    const auto pair = resolve_unitary(name);
    const double bound = overlap_data(pair.matrix()).mu_bound_bits;
    for (auto [a, b] : orders) {
      const auto s = sample_diagram(pair, RenyiOrder(a), RenyiOrder(b), 3000, SamplingStrategy::basis_mix(0.5),
                                    SeededRng(pick.next_u64()));
      for (const auto& p : s.points) ASSERT_GE(p.hx + p.hy - bound, -1e-9) << name << " " << a;
    }
  }
}

TEST(Diagram, InjectsFourierEqualityPoints) {
  const auto s = sample_diagram(fourier_cyclic(6), kOne, kOne, 100000, SamplingStrategy::haar(), SeededRng(3));
  EXPECT_GT(s.meta.injected, 0u);
  bool found = false;
  for (const auto& p : s.points)
    found = found || (std::abs(p.hx - 1) <= 1e-3 && std::abs(p.hy - std::log2(3.0)) <= 1e-3);
  EXPECT_TRUE(found);
}

TEST(Diagram, DeterministicAcrossThreads) {
  const auto pair = fourier_cyclic(5);
  const auto a = sample_diagram(pair, kOne, kOne, 20000, SamplingStrategy::haar(), SeededRng(11), {1, true, true});
  const auto b = sample_diagram(pair, kOne, kOne, 20000, SamplingStrategy::haar(), SeededRng(11), {3, true, true});
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.states, b.states);
  EXPECT_EQ(diagram_csv(a.points), diagram_csv(b.points));
  const auto c = sample_diagram(pair, kOne, kOne, 20000, SamplingStrategy::haar(), SeededRng(12));
  EXPECT_NE(a.points, c.points);
}

TEST(Diagram, RealStrategyWarning) {
  auto s = sample_diagram(fourier_cyclic(3), kOne, kOne, 10, SamplingStrategy::real(), SeededRng(0));
  EXPECT_TRUE(s.meta.real_strategy_warning);
  s = sample_diagram(rotation(0.3), kOne, kOne, 10, SamplingStrategy::real(), SeededRng(0));
  EXPECT_FALSE(s.meta.real_strategy_warning);
}

TEST(Diagram, CsvFormat) {
  const std::vector<EntropyPoint> pts = {{0.5, 1.0 / 3}, {0.0, 1.0}};
  EXPECT_EQ(diagram_csv(pts), "h_x,h_y\n0.5,0.333333333333\n0,1\n");
}

TEST(FrontierJson, Fields) {
  FrontierCurve c = pareto_lower(std::vector<EntropyPoint>{{0, 1}, {1, 0}},
                                 std::vector<CVector>{{1.0, 0.0}, {Complex(0, 1), 0.0}});
  const auto j = nlohmann::json::parse(frontier_json(c, "fourier:2", kOne, RenyiOrder::infinity()));
  EXPECT_EQ(j["alpha"], 1.0);
  EXPECT_EQ(j["beta"], "inf");
  EXPECT_EQ(j["unitary"], "fourier:2");
  ASSERT_EQ(j["points"].size(), 2u);
  EXPECT_EQ(j["points"][1]["hx"], 1.0);
  EXPECT_EQ(j["points"][1]["state"][0][1], 1.0);
}

TEST(Qubit, RotationAngle) {
  EXPECT_EQ(reduce_2x2_to_rotation(CMatrix::identity(2)), 0.0);
  EXPECT_NEAR(reduce_2x2_to_rotation(fourier_cyclic(2).matrix()), std::numbers::pi / 4, 1e-12);
  SeededRng rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto w = random_unitary(2, rng);
    EXPECT_NEAR(reduce_2x2_to_rotation(random_rephase(w, rng).matrix()), reduce_2x2_to_rotation(w.matrix()), 1e-12);
  }
  EXPECT_EQ(code_of([] { reduce_2x2_to_rotation(CMatrix::identity(3)); }), ErrorCode::BadDimension);
}

TEST(Qubit, ExactCurveExamples) {
  const auto f2 = fourier_cyclic(2);
  const auto c3 = d2_exact_curve(f2, kOne, kOne, 3);  // xi = 0, pi/8, pi/4
  ASSERT_EQ(c3.points.size(), 3u);
  EXPECT_NEAR(c3.points[0].hx, 0.0, 1e-12);
  EXPECT_NEAR(c3.points[0].hy, 1.0, 1e-12);
  EXPECT_NEAR(c3.points[1].hx, kH8, 1e-12);
  EXPECT_NEAR(c3.points[1].hy, kH8, 1e-12);
  EXPECT_NEAR(c3.points[2].hx, 1.0, 1e-12);
  EXPECT_NEAR(c3.points[2].hy, 0.0, 1e-12);

  const auto c = d2_exact_curve(f2, kOne, kOne);
  EXPECT_EQ(c.points.size(), 512u);
  for (std::size_t i = 1; i < c.points.size(); ++i) EXPECT_GT(c.points[i - 1].hy, c.points[i].hy);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    EXPECT_EQ(entropy_pair(f2, c.witnesses[i], kOne, kOne).hx, c.points[i].hx);
  }

  const auto id = d2_exact_curve(ObservablePair(CMatrix::identity(2), "id"), kOne, kOne);
  ASSERT_EQ(id.points.size(), 1u);
  EXPECT_EQ(id.points[0], (EntropyPoint{0, 0}));

  EXPECT_EQ(code_of([] { d2_exact_curve(fourier_cyclic(3), RenyiOrder(1.0), RenyiOrder(1.0)); }),
            ErrorCode::BadDimension);
}

TEST(Qubit, WitnessesWorkForComplexW) {
  SeededRng rng(9);
  for (int i = 0; i < 10; ++i) {
    const auto w = random_unitary(2, rng);
    const auto c = d2_exact_curve(w, kOne, kOne, 64);
    const auto r = d2_exact_curve(rotation(reduce_2x2_to_rotation(w.matrix())), kOne, kOne, 64);
    ASSERT_EQ(c.points.size(), r.points.size());
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      const auto p = entropy_pair(w, c.witnesses[k], kOne, kOne);
      EXPECT_NEAR(p.hx, r.points[k].hx, 1e-12);
      EXPECT_NEAR(p.hy, r.points[k].hy, 1e-12);
    }
  }
}

TEST(Qubit, ContinuousValueMatchesOracle) {
  const auto f2 = fourier_cyclic(2);
  EXPECT_NEAR(d2_exact_value(f2, kOne, kOne, kH8), kH8, 1e-12);
  EXPECT_NEAR(d2_exact_value(f2, kOne, kOne, 0.0), 1.0, 1e-12);
  EXPECT_EQ(d2_exact_value(f2, kOne, kOne, 1.5), 0.0);
  // Rotation by 3pi/8 uses the upper arc.
  const auto r = rotation(3 * std::numbers::pi / 8);
  const double hx = binary_entropy(std::pow(std::cos(std::numbers::pi / 2 - 0.1), 2));
  EXPECT_NEAR(d2_exact_value(r, kOne, kOne, hx),
              binary_entropy(std::pow(std::cos(std::numbers::pi / 2 - 0.1 - 3 * std::numbers::pi / 8), 2)), 1e-9);
}

TEST(Qubit, NoSampleBelowAnalyticCurve) {
  SeededRng rng(21);
  std::vector<ObservablePair> ws = {fourier_cyclic(2)};
  for (int i = 0; i < 3; ++i) ws.push_back(random_unitary(2, rng));
  for (const auto& w : ws) {
    for (auto [a, b] : {std::pair{1.0, 1.0}, {0.6, 3.0}, {2.0, 2.0 / 3}}) {
      const RenyiOrder al(a), be(b);
      const auto s = sample_diagram(w, al, be, 20000, SamplingStrategy::haar(), SeededRng(rng.next_u64()));
      for (const auto& p : s.points) ASSERT_GE(p.hy - d2_exact_value(w, al, be, p.hx), -1e-9);
    }
  }
}

// A 512-point staircase overestimates the curve by one xi-step (about 3e-3
// for F2), so comparisons use a dense curve.
TEST(Qubit, SampledFrontierConverges) {
  SeededRng rng(5);
  std::vector<ObservablePair> ws = {fourier_cyclic(2), random_unitary(2, rng)};
  for (const auto& w : ws) {
    const auto r = rotation(reduce_2x2_to_rotation(w.matrix()));
    const auto s = sample_diagram(r, kOne, kOne, 100000, SamplingStrategy::real(), SeededRng(rng.next_u64()));
    const auto dev = frontier_deviation(d2_exact_curve(w, kOne, kOne, 8192), pareto_lower(s.points));
    EXPECT_LE(dev.max_abs, 2e-3);
  }
}

FrontierCurve family_frontier(const ObservablePair& w, const SamplingStrategy& strategy, StateFamily family,
                              std::uint64_t seed) {
  const auto s = sample_diagram(w, kOne, kOne, 100000, strategy, SeededRng(seed));
  OptimizeOptions o;
  o.family = family;
  o.seed = seed;
  return merge(pareto_lower(s.points), optimized_frontier(w, kOne, kOne, 1024, o));
}

TEST(Qubit, RealFrontierMatchesHaar) {
  const auto w = rotation(0.3);
  const auto real = family_frontier(w, SamplingStrategy::real(), StateFamily::Real, 6);
  const auto haar = family_frontier(w, SamplingStrategy::haar(), StateFamily::Complex, 7);
  const auto dev = frontier_deviation(real, haar);
  EXPECT_LE(dev.max_abs, 2e-3);
  // Complex states never beat real ones.
  EXPECT_LE(dev.signed_max, 2e-3);
  EXPECT_GE(frontier_deviation(haar, real).signed_max, -1e-9);
}

// hx on the F2 arc is increasing in xi on [0, pi/4]; invert it by bisection.
double f2_curve_hy(double hx) {
  double lo = 0.0, hi = std::numbers::pi / 4;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (binary_entropy(std::pow(std::cos(mid), 2)) < hx ? lo : hi) = mid;
  }
  return binary_entropy(std::pow(std::cos(lo - std::numbers::pi / 4), 2));
}

TEST(Englert, QubitCoincidesWithExactCurve) {
  const auto e = englert_curve(2, kOne, kOne);
  for (const auto& p : e.curve.points) EXPECT_NEAR(p.hy, f2_curve_hy(p.hx), 1e-6) << p.hx;
}

TEST(Englert, FourFalsification) {
  const auto e = englert_curve(4, kOne, kOne);
  EXPECT_EQ(e.mu_equality_count, 2u);
  std::vector<EntropyPoint> fourier;
  for (const auto& cls : fourier_equality_states(AbelianGroup::cyclic(4))) fourier.push_back(cls.point);
  EXPECT_EQ(distinct_points(fourier).size(), 3u);
  bool corner_a = false, corner_b = false;
  for (const auto& p : e.equality_points) {
    corner_a = corner_a || (std::abs(p.hx) < 1e-6 && std::abs(p.hy - 2) < 1e-6);
    corner_b = corner_b || (std::abs(p.hx - 2) < 1e-6 && std::abs(p.hy) < 1e-6);
  }
  EXPECT_TRUE(corner_a && corner_b);
}

TEST(Englert, Endpoints) {
  for (std::size_t d : {3u, 5u}) {
    const auto e = englert_curve(d, kOne, kOne, 101);
    EXPECT_EQ(e.p1.back(), 1.0);
    EXPECT_NEAR(e.sweep.back().hx, 0.0, 1e-12);
    EXPECT_NEAR(e.sweep.back().hy, std::log2(static_cast<double>(d)), 1e-12);
  }
  EXPECT_EQ(code_of([] { englert_curve(4, RenyiOrder(1.0), RenyiOrder(1.0), 99); }), ErrorCode::BadDimension);
}

TEST(Extremality, UniformAndRrsStates) {
  for (std::size_t d = 2; d <= 8; ++d) {
    const CVector u(d, 1.0 / std::sqrt(static_cast<double>(d)));
    EXPECT_LE(extremality_residual(u, kOne).max_abs, 1e-9);
  }
  SeededRng rng(31);
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = testing::random_dim(rng, 3, 8);
    const RenyiOrder a(std::vector<double>{0.6, 1.0, 2.0}[i % 3]);
    const auto psi = sample_state(d, SamplingStrategy::rrs(), rng);
    EXPECT_LE(extremality_residual(psi, a).max_abs, 1e-8);
  }
}

TEST(Extremality, MatchesPhaseFiniteDifferences) {
  SeededRng rng(32);
  int large = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = testing::random_dim(rng, 2, 8);
    const RenyiOrder a(std::vector<double>{0.6, 1.0, 2.0, 3.5}[i % 4]);
    const auto psi = sample_state(d, SamplingStrategy::haar(), rng);
    const auto r = extremality_residual(psi, a);
    double scale = 0.0;
    for (double g : r.phase_gradient) scale = std::max(scale, std::abs(g) * std::sqrt(static_cast<double>(d)) / 2);
    EXPECT_LE(r.fd_mismatch, 1e-5 * std::max(scale, 1e-3));
    large += r.max_abs > 1e-3;
  }
  EXPECT_GE(large, 95);
}

TEST(Extremality, EmptyTransformEntries) {
  CVector e0(4, 0.0);
  e0[0] = 1.0;
  const CVector hat_basis = matvec_adjoint(fourier_cyclic(4).matrix(), e0);
  EXPECT_LE(extremality_residual(hat_basis, RenyiOrder(0.6)).max_abs, 1e-9);
  EXPECT_EQ(code_of([&] { extremality_residual(hat_basis, RenyiOrder(0.5)); }), ErrorCode::BoundaryDistribution);
  EXPECT_EQ(code_of([&] { extremality_residual(e0, RenyiOrder::infinity()); }), ErrorCode::UnsupportedOrder);
}

}  // namespace
}  // namespace entropic
