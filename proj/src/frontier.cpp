#include "entropic/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "entropic/equality.hpp"
#include "entropic/error.hpp"
#include "entropic/io.hpp"
#include "entropic/observables.hpp"
#include "parallel.hpp"

namespace entropic {

namespace {

constexpr std::size_t kChunk = 4096;

nlohmann::ordered_json order_json(RenyiOrder a) {
  if (a.is_infinite()) return "inf";
  return round12(a.value());
}

}  // namespace

DiagramSample sample_diagram(const ObservablePair& pair, RenyiOrder alpha, RenyiOrder beta, std::size_t n,
                             const SamplingStrategy& strategy, const SeededRng& rng,
                             const SampleOptions& options) {
  if (n == 0) fail(ErrorCode::EmptyInput, "sample size must be positive");
  const std::size_t d = pair.dimension();
  DiagramSample out;
  out.meta = {pair.label(), alpha.value(), beta.value(), strategy.name(), n, rng.seed(), 0, false};
  if (strategy.kind == SamplingStrategy::Kind::Real) {
    for (const auto& z : pair.matrix().data())
      if (std::abs(z.imag()) > 1e-12) out.meta.real_strategy_warning = true;
  }
  out.points.resize(n);
  if (options.keep_states) out.states.resize(n);

  std::size_t injected = 0;
  if (options.inject_equality_states) {
    EntropyEvaluator eval(pair.matrix(), alpha, beta);
    for (auto& psi : known_equality_states(pair)) {
      if (injected == n) break;
      out.points[injected] = eval(psi);
      if (options.keep_states) out.states[injected] = std::move(psi);
      ++injected;
    }
  }
  out.meta.injected = injected;

  const std::size_t random_n = n - injected;
  const std::size_t chunks = (random_n + kChunk - 1) / kChunk;
  detail::parallel_for(chunks, options.threads, [&](std::size_t c) {
    SeededRng local = rng.substream(c);
    EntropyEvaluator eval(pair.matrix(), alpha, beta);
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(random_n, begin + kChunk);
    for (std::size_t i = begin; i < end; ++i) {
      CVector psi = sample_state(d, strategy, local);
      out.points[injected + i] = eval(psi);
      if (options.keep_states) out.states[injected + i] = std::move(psi);
    }
  });
  return out;
}

std::string diagram_csv(std::span<const EntropyPoint> points) {
  std::string s = "h_x,h_y\n";
  s.reserve(points.size() * 32);
  for (const auto& p : points) {
    s += format_number(p.hx);
    s += ',';
    s += format_number(p.hy);
    s += '\n';
  }
  return s;
}

FrontierCurve pareto_lower(std::span<const EntropyPoint> points, std::span<const CVector> states) {
  if (points.empty()) fail(ErrorCode::EmptyInput, "no points");
  if (!states.empty() && states.size() != points.size()) {
    fail(ErrorCode::DimensionMismatch, "states must parallel points");
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].hx != points[b].hx) return points[a].hx < points[b].hx;
    if (points[a].hy != points[b].hy) return points[a].hy < points[b].hy;
    return a < b;
  });
  FrontierCurve curve;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i : order) {
    if (points[i].hy < best) {
      best = points[i].hy;
      curve.points.push_back(points[i]);
      if (!states.empty()) curve.witnesses.push_back(states[i]);
    }
  }
  return curve;
}

FrontierCurve merge(const FrontierCurve& a, const FrontierCurve& b) {
  std::vector<EntropyPoint> pts(a.points);
  pts.insert(pts.end(), b.points.begin(), b.points.end());
  const bool keep = a.witnesses.size() == a.points.size() && b.witnesses.size() == b.points.size();
  std::vector<CVector> states;
  if (keep) {
    states = a.witnesses;
    states.insert(states.end(), b.witnesses.begin(), b.witnesses.end());
  }
  return pareto_lower(pts, states);
}

double staircase_value(const FrontierCurve& curve, double x) {
  const auto it = std::upper_bound(curve.points.begin(), curve.points.end(), x,
                                   [](double v, const EntropyPoint& p) { return v < p.hx; });
  if (it == curve.points.begin()) return std::numeric_limits<double>::infinity();
  return std::prev(it)->hy;
}

Deviation frontier_deviation(const FrontierCurve& a, const FrontierCurve& b, std::size_t grid_n) {
  if (a.points.empty() || b.points.empty()) fail(ErrorCode::EmptyInput, "empty frontier");
  if (grid_n == 0) fail(ErrorCode::EmptyInput, "grid must have points");
  const double lo = std::max(a.points.front().hx, b.points.front().hx);
  const double hi = std::min(a.points.back().hx, b.points.back().hx);
  if (lo > hi) fail(ErrorCode::NoOverlap, "frontiers have disjoint hx ranges");
  Deviation dev{0.0, -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < grid_n; ++i) {
    double x = lo;
    if (grid_n > 1) x = i + 1 == grid_n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_n - 1);
    const double diff = staircase_value(a, x) - staircase_value(b, x);
    dev.max_abs = std::max(dev.max_abs, std::abs(diff));
    dev.signed_max = std::max(dev.signed_max, diff);
  }
  return dev;
}

std::string frontier_json(const FrontierCurve& curve, const std::string& unitary, RenyiOrder alpha,
                          RenyiOrder beta) {
  nlohmann::ordered_json j;
  j["alpha"] = order_json(alpha);
  j["beta"] = order_json(beta);
  j["unitary"] = unitary;
  auto& pts = j["points"] = nlohmann::ordered_json::array();
  const bool states = curve.witnesses.size() == curve.points.size();
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    nlohmann::ordered_json p;
    p["hx"] = round12(curve.points[i].hx);
    p["hy"] = round12(curve.points[i].hy);
    if (states) {
      auto& s = p["state"] = nlohmann::ordered_json::array();
      for (const auto& z : curve.witnesses[i]) s.push_back({round12(z.real()), round12(z.imag())});
    }
    pts.push_back(std::move(p));
  }
  return j.dump();
}

double reduce_2x2_to_rotation(const CMatrix& w) {
  if (w.rows() != 2 || w.cols() != 2) fail(ErrorCode::BadDimension, "rotation reduction needs a 2x2 matrix");
  return std::acos(std::min(1.0, std::abs(w(0, 0))));
}

FrontierCurve d2_exact_curve(const ObservablePair& pair, RenyiOrder alpha, RenyiOrder beta, std::size_t m) {
  const CMatrix& w = pair.matrix();
  const double phi = reduce_2x2_to_rotation(w);
  if (m < 2) fail(ErrorCode::BadDimension, "need at least 2 curve points");
  const double lo = phi <= std::numbers::pi / 4 ? 0.0 : phi;
  const double hi = phi <= std::numbers::pi / 4 ? phi : std::numbers::pi / 2;
  const Complex ph0 = std::polar(1.0, -std::arg(w(0, 0)));
  const Complex ph1 = std::polar(1.0, -std::arg(w(0, 1)));
  EntropyEvaluator eval(w, alpha, beta);
  std::vector<EntropyPoint> pts(m);
  std::vector<CVector> states(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double xi = i + 1 == m ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1);
    states[i] = {std::cos(xi) * ph0, std::sin(xi) * ph1};
    pts[i] = eval(states[i]);
  }
  return pareto_lower(pts, states);
}

double d2_exact_value(const ObservablePair& pair, RenyiOrder alpha, RenyiOrder beta, double x) {
  const double phi = reduce_2x2_to_rotation(pair.matrix());
  auto point = [&](double xi) {
    const double cx = std::cos(xi), sx = std::sin(xi);
    const double cy = std::cos(xi - phi), sy = std::sin(xi - phi);
    const double px[2] = {cx * cx, sx * sx};
    const double py[2] = {cy * cy, sy * sy};
    return EntropyPoint{renyi_bits(px, alpha.value()), renyi_bits(py, beta.value())};
  };
  // Parametrize the arc by t in [0, 1] from the hx = 0 end to the hy = 0 end.
  const bool lower = phi <= std::numbers::pi / 4;
  auto xi_of = [&](double t) { return lower ? t * phi : std::numbers::pi / 2 - t * (std::numbers::pi / 2 - phi); };
  if (point(xi_of(1.0)).hx <= x) return point(xi_of(1.0)).hy;
  if (x < 0.0) return std::numeric_limits<double>::infinity();
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
    const double mid = 0.5 * (lo + hi);
    (point(xi_of(mid)).hx <= x ? lo : hi) = mid;
  }
  return point(xi_of(lo)).hy;
}

EnglertResult englert_curve(std::size_t d, RenyiOrder alpha, RenyiOrder beta, std::size_t m) {
  if (m < 100) fail(ErrorCode::BadDimension, "Englert sweep needs m >= 100");
  const ObservablePair f = fourier_cyclic(d);
  const double bound = overlap_data(f.matrix()).mu_bound_bits;
  EnglertResult r;
  for (std::size_t i = 0; i < m; ++i) r.p1.push_back(static_cast<double>(i) / static_cast<double>(m - 1));
  r.p1.push_back(1.0 / static_cast<double>(d));
  std::sort(r.p1.begin(), r.p1.end());
  r.p1.erase(std::unique(r.p1.begin(), r.p1.end()), r.p1.end());

  EntropyEvaluator eval(f.matrix(), alpha, beta);
  std::vector<CVector> states;
  for (double p1 : r.p1) {
    const double p2 = std::max(0.0, (1.0 - p1) / static_cast<double>(d - 1));
    CVector psi(d, std::sqrt(p2));
    psi[d - 1] = std::sqrt(p1);
    const EntropyPoint pt = eval(psi);
    r.sweep.push_back(pt);
    states.push_back(std::move(psi));
    if (pt.hx + pt.hy - bound <= 1e-6) {
      const bool seen = std::any_of(r.equality_points.begin(), r.equality_points.end(), [&](const EntropyPoint& q) {
        return std::abs(q.hx - pt.hx) < 1e-4 && std::abs(q.hy - pt.hy) < 1e-4;
      });
      if (!seen) r.equality_points.push_back(pt);
    }
  }
  r.mu_equality_count = r.equality_points.size();
  r.curve = pareto_lower(r.sweep, states);
  return r;
}

ExtremalityResult extremality_residual(std::span<const Complex> psi, RenyiOrder alpha) {
  const std::size_t d = psi.size();
  const CMatrix f = fourier_cyclic(d).matrix();
  const CVector hat = matvec(f, psi);
  if (alpha.is_infinite()) fail(ErrorCode::UnsupportedOrder, "no extremality residual for alpha = inf");
  // g_j conj(hat_j) ~ |hat_j|^(2 alpha - 1) vanishes at empty entries for alpha > 1/2.
  std::vector<double> p(d);
  bool empty = false;
  for (std::size_t j = 0; j < d; ++j) {
    p[j] = std::norm(hat[j]);
    if (p[j] <= 1e-24) {
      p[j] = 0.0;
      empty = true;
    }
  }
  if (empty && alpha.value() == 0.5) fail(ErrorCode::BoundaryDistribution, "transformed distribution has zeros");
  std::vector<double> g(d);
  renyi_gradient_into(p, alpha.value(), g);

  ExtremalityResult r;
  r.residual.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    Complex s(0.0, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      s += g[j] * std::conj(hat[j]) * turn_phase(static_cast<double>((j * k) % d) / static_cast<double>(d));
    }
    r.residual[k] = (psi[k] * s).imag();
    r.max_abs = std::max(r.max_abs, std::abs(r.residual[k]));
  }

  const double h = 1e-5;
  const double scale = -std::sqrt(static_cast<double>(d)) / 2.0;
  CVector shifted(psi.begin(), psi.end());
  auto entropy_at = [&](std::size_t k, double theta) {
    shifted[k] = psi[k] * std::polar(1.0, theta);
    const CVector y = matvec(f, shifted);
    shifted[k] = psi[k];
    std::vector<double> q(d);
    for (std::size_t j = 0; j < d; ++j) q[j] = std::norm(y[j]);
    return renyi_bits(q, alpha.value());
  };
  r.phase_gradient.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    r.phase_gradient[k] = (entropy_at(k, h) - entropy_at(k, -h)) / (2 * h);
    r.fd_mismatch = std::max(r.fd_mismatch, std::abs(r.residual[k] - scale * r.phase_gradient[k]));
  }
  return r;
}

}  // namespace entropic
