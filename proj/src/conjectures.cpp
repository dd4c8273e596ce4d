#include "entropic/conjectures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "entropic/equality.hpp"
#include "entropic/error.hpp"
#include "entropic/io.hpp"
#include "entropic/observables.hpp"

namespace entropic {

namespace {

void require_size(std::size_t d, const char* what) {
  if (d > 16) fail(ErrorCode::TooLarge, std::string(what) + " is limited to d <= 16");
}

ProbeReport make_report(int id, std::string unitary, RenyiOrder alpha, RenyiOrder beta, const ProbeOptions& o,
                        Deviation dev) {
  ProbeReport r;
  r.conjecture = id;
  r.unitary = std::move(unitary);
  r.alpha = alpha.value();
  r.beta = beta.value();
  r.n = o.n;
  r.seed = o.seed;
  r.max_abs = dev.max_abs;
  r.signed_max = dev.signed_max;
  r.threshold = o.threshold;
  r.verdict = dev.max_abs <= o.threshold ? "consistent" : "tension";
  return r;
}

OptimizeOptions optimizer_options(const ProbeOptions& o, StateFamily family = StateFamily::Complex) {
  OptimizeOptions opt;
  opt.seed = o.seed;
  opt.threads = o.threads;
  opt.family = family;
  return opt;
}

/// Sampled frontier, refined by an optimized sweep when requested.
FrontierCurve estimated_frontier(const ObservablePair& pair, RenyiOrder alpha, RenyiOrder beta,
                                 const SamplingStrategy& strategy, std::uint64_t stream, const ProbeOptions& o,
                                 StateFamily family = StateFamily::Complex) {
  SampleOptions so;
  so.threads = o.threads;
  so.keep_states = true;
  so.inject_equality_states = family == StateFamily::Complex;
  const DiagramSample s = sample_diagram(pair, alpha, beta, o.n, strategy, SeededRng(o.seed, stream), so);
  FrontierCurve curve = pareto_lower(s.points, s.states);
  if (o.refine_deltas > 0) {
    if (pair.dimension() == 2 && family == StateFamily::Complex) {
      curve = merge(curve, d2_exact_curve(pair, alpha, beta));
    } else {
      curve = merge(curve, optimized_frontier(pair, alpha, beta, o.refine_deltas, optimizer_options(o, family)));
    }
  }
  return curve;
}

/// Pareto front of {a + b}: the lower boundary of sums of two diagrams.
FrontierCurve minkowski_sum(const FrontierCurve& a, const FrontierCurve& b) {
  std::vector<EntropyPoint> pts;
  std::vector<CVector> states;
  const bool keep = a.witnesses.size() == a.points.size() && b.witnesses.size() == b.points.size();
  pts.reserve(a.points.size() * b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    for (std::size_t j = 0; j < b.points.size(); ++j) {
      pts.push_back({a.points[i].hx + b.points[j].hx, a.points[i].hy + b.points[j].hy});
      if (keep) states.push_back(tensor_product(a.witnesses[i], b.witnesses[j]));
    }
  }
  return pareto_lower(pts, states);
}

}  // namespace

ProbeReport probe_product_states(const ObservablePair& w1, const ObservablePair& w2, RenyiOrder alpha,
                                 RenyiOrder beta, const ProbeOptions& options) {
  const std::size_t d1 = w1.dimension(), d2 = w2.dimension();
  require_size(d1 * d2, "product probe");
  if (options.n == 0) fail(ErrorCode::EmptyInput, "sample size must be positive");
  const ObservablePair w = tensor_product(w1, w2);

  // Product side: entropies add, so sums of factor points are the product points.
  SampleOptions so;
  so.threads = options.threads;
  so.keep_states = true;
  const auto s1 = sample_diagram(w1, alpha, beta, options.n, SamplingStrategy::haar(), SeededRng(options.seed, 11), so);
  const auto s2 = sample_diagram(w2, alpha, beta, options.n, SamplingStrategy::haar(), SeededRng(options.seed, 12), so);
  std::vector<EntropyPoint> pts(options.n);
  for (std::size_t i = 0; i < options.n; ++i) {
    pts[i] = {s1.points[i].hx + s2.points[i].hx, s1.points[i].hy + s2.points[i].hy};
  }
  FrontierCurve product = pareto_lower(pts);
  if (options.refine_deltas > 0) {
    ProbeOptions fo = options;
    const auto f1 = estimated_frontier(w1, alpha, beta, SamplingStrategy::haar(), 11, fo);
    const auto f2 = estimated_frontier(w2, alpha, beta, SamplingStrategy::haar(), 12, fo);
    FrontierCurve sum = minkowski_sum(f1, f2);
    sum.witnesses.clear();
    product = merge(product, sum);
  }

  FrontierCurve general = estimated_frontier(w, alpha, beta, SamplingStrategy::haar(), 13, options);
  general.witnesses.clear();
  general = merge(general, product);
  return make_report(1, w.label(), alpha, beta, options, frontier_deviation(product, general));
}

ProbeReport probe_fourier_decomposition(std::size_t d1, std::size_t d2, RenyiOrder alpha, RenyiOrder beta,
                                        const ProbeOptions& options) {
  require_size(d1 * d2, "Fourier decomposition probe");
  const ObservablePair whole = fourier_cyclic(d1 * d2);
  const ObservablePair split = tensor_product(fourier_cyclic(d1), fourier_cyclic(d2));
  const auto a = estimated_frontier(whole, alpha, beta, SamplingStrategy::haar(), 21, options);
  const auto b = estimated_frontier(split, alpha, beta, SamplingStrategy::haar(), 21, options);
  return make_report(2, whole.label() + " vs " + split.label(), alpha, beta, options, frontier_deviation(a, b));
}

ProbeReport probe_alpha_independence(const ObservablePair& w, OrderPair base, const std::vector<OrderPair>& others,
                                     const ProbeOptions& options) {
  auto check = [](OrderPair p) {
    if (!is_dual_pair(p.first, p.second)) fail(ErrorCode::NotDualPair, "orders are not a dual pair");
    if (p.first.is_infinite() || p.second.is_infinite() || p.first.value() == 0.5 || p.second.value() == 0.5) {
      fail(ErrorCode::BoundaryOrder, "probe needs 1/2 < alpha, beta < inf");
    }
  };
  check(base);
  for (const auto& p : others) check(p);
  if (others.empty()) fail(ErrorCode::EmptyInput, "no comparison pairs");

  const bool qubit = w.dimension() == 2;
  FrontierCurve witnesses;
  if (qubit) {
    witnesses = d2_exact_curve(w, base.first, base.second);
  } else {
    witnesses = optimized_frontier(w, base.first, base.second, std::max<std::size_t>(options.refine_deltas, 16),
                                   optimizer_options(options));
  }

  double above = 0.0;
  double raw = -std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : others) {
    const FrontierCurve ref = qubit ? d2_exact_curve(w, a, b)
                                    : estimated_frontier(w, a, b, SamplingStrategy::haar(), 31, options);
    EntropyEvaluator eval(w.matrix(), a, b);
    for (const auto& psi : witnesses.witnesses) {
      const EntropyPoint p = eval(psi);
      const double g = staircase_value(ref, p.hx);
      if (!std::isfinite(g)) continue;  // left of every reference point: not dominated
      raw = std::max(raw, p.hy - g);
      above = std::max(above, p.hy - g);
    }
  }
  if (!std::isfinite(raw)) raw = 0.0;
  return make_report(3, w.label(), base.first, base.second, options, Deviation{above, raw});
}

ProbeReport probe_rrs_sufficiency(std::size_t d, RenyiOrder alpha, RenyiOrder beta, const ProbeOptions& options) {
  require_size(d, "rrs probe");
  const ObservablePair f = fourier_cyclic(d);
  FrontierCurve rrs = estimated_frontier(f, alpha, beta, SamplingStrategy::rrs(), 41, options,
                                         StateFamily::RealSymmetric);
  FrontierCurve general = estimated_frontier(f, alpha, beta, SamplingStrategy::haar(), 42, options);
  general = merge(general, rrs);
  return make_report(4, f.label(), alpha, beta, options, frontier_deviation(rrs, general));
}

std::string to_json(const ProbeReport& r) {
  nlohmann::ordered_json j;
  j["conjecture"] = r.conjecture;
  j["unitary"] = r.unitary;
  j["alpha"] = round12(r.alpha);
  j["beta"] = round12(r.beta);
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["max_abs"] = round12(r.max_abs);
  j["signed_max"] = round12(r.signed_max);
  j["threshold"] = round12(r.threshold);
  j["verdict"] = r.verdict;
  return j.dump();
}

}  // namespace entropic
