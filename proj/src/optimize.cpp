#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "entropic/equality.hpp"
#include "entropic/error.hpp"
#include "entropic/frontier.hpp"
#include "parallel.hpp"

namespace entropic {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Limited-memory BFGS with Armijo backtracking. fg(x, grad) returns f(x).
template <class F>
double lbfgs(std::vector<double>& x, F&& fg, std::size_t max_iter, double grad_tol) {
  constexpr std::size_t kMemory = 8;
  const std::size_t n = x.size();
  std::vector<double> g(n), gn(n), xn(n), dir(n), alpha_hist(kMemory);
  std::deque<std::vector<double>> ss, ys;
  std::deque<double> rhos;
  double f = fg(x, g);
  std::size_t stall = 0;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    if (std::sqrt(dot(g, g)) <= grad_tol) break;
    dir = g;
    for (std::size_t k = ss.size(); k-- > 0;) {
      alpha_hist[k] = rhos[k] * dot(ss[k], dir);
      for (std::size_t i = 0; i < n; ++i) dir[i] -= alpha_hist[k] * ys[k][i];
    }
    if (!ss.empty()) {
      const double gamma = dot(ss.back(), ys.back()) / dot(ys.back(), ys.back());
      for (auto& v : dir) v *= gamma;
    }
    for (std::size_t k = 0; k < ss.size(); ++k) {
      const double beta = rhos[k] * dot(ys[k], dir);
      for (std::size_t i = 0; i < n; ++i) dir[i] += ss[k][i] * (alpha_hist[k] - beta);
    }
    for (auto& v : dir) v = -v;
    double dg = dot(dir, g);
    if (!(dg < 0.0)) {
      ss.clear();
      ys.clear();
      rhos.clear();
      for (std::size_t i = 0; i < n; ++i) dir[i] = -g[i];
      dg = -dot(g, g);
    }
    double step = ss.empty() ? std::min(1.0, 0.1 / std::sqrt(dot(g, g))) : 1.0;
    double fn = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < n; ++i) xn[i] = x[i] + step * dir[i];
      fn = fg(xn, gn);
      if (std::isfinite(fn) && fn <= f + 1e-4 * step * dg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = gn[i] - g[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-300 && sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
      if (ss.size() == kMemory) {
        ss.pop_front();
        ys.pop_front();
        rhos.pop_front();
      }
      ss.push_back(std::move(s));
      ys.push_back(std::move(y));
      rhos.push_back(1.0 / sy);
    }
    stall = f - fn <= 1e-15 * (1.0 + std::abs(f)) ? stall + 1 : 0;
    x.swap(xn);
    g.swap(gn);
    f = fn;
    if (stall >= 5) break;
  }
  return f;
}

/// Real coordinates for a family of states; psi = z(x)/|z(x)|.
class Parameterization {
 public:
  Parameterization(StateFamily family, std::size_t d) : family_(family), d_(d) {}

  std::size_t size() const {
    switch (family_) {
      case StateFamily::Complex: return 2 * d_;
      case StateFamily::Real: return d_;
      case StateFamily::RealSymmetric: return d_ / 2 + 1;
    }
    return 0;
  }

  void to_vector(const std::vector<double>& x, CVector& z) const {
    z.assign(d_, Complex(0.0, 0.0));
    switch (family_) {
      case StateFamily::Complex:
        for (std::size_t k = 0; k < d_; ++k) z[k] = Complex(x[2 * k], x[2 * k + 1]);
        break;
      case StateFamily::Real:
        for (std::size_t k = 0; k < d_; ++k) z[k] = x[k];
        break;
      case StateFamily::RealSymmetric:
        z[0] = x[0];
        for (std::size_t j = 1; j <= d_ / 2; ++j) z[j] = z[d_ - j] = x[j];
        break;
    }
  }

  /// Nearest family member (projection), or empty if it vanishes.
  std::vector<double> from_state(std::span<const Complex> psi) const {
    std::vector<double> x(size());
    switch (family_) {
      case StateFamily::Complex:
        for (std::size_t k = 0; k < d_; ++k) {
          x[2 * k] = psi[k].real();
          x[2 * k + 1] = psi[k].imag();
        }
        break;
      case StateFamily::Real:
        for (std::size_t k = 0; k < d_; ++k) x[k] = psi[k].real();
        break;
      case StateFamily::RealSymmetric:
        x[0] = psi[0].real();
        for (std::size_t j = 1; j <= d_ / 2; ++j) x[j] = 0.5 * (psi[j].real() + psi[d_ - j].real());
        break;
    }
    if (dot(x, x) < 1e-20) return {};
    normalize_params(x);
    return x;
  }

  void normalize_params(std::vector<double>& x) const {
    CVector z;
    to_vector(x, z);
    const double n = norm(z);
    for (auto& v : x) v /= n;
  }

  /// Pulls a gradient w.r.t. z (as complex: d/dRe + i d/dIm) back to x.
  void pullback(const CVector& gz, std::vector<double>& gx) const {
    gx.assign(size(), 0.0);
    switch (family_) {
      case StateFamily::Complex:
        for (std::size_t k = 0; k < d_; ++k) {
          gx[2 * k] = gz[k].real();
          gx[2 * k + 1] = gz[k].imag();
        }
        break;
      case StateFamily::Real:
        for (std::size_t k = 0; k < d_; ++k) gx[k] = gz[k].real();
        break;
      case StateFamily::RealSymmetric:
        gx[0] = gz[0].real();
        for (std::size_t j = 1; j <= d_ / 2; ++j) {
          gx[j] = gz[j].real();
          if (d_ - j != j) gx[j] += gz[d_ - j].real();
        }
        break;
    }
  }

  bool contains(std::span<const Complex> psi) const {
    for (std::size_t k = 0; k < d_; ++k) {
      if (family_ != StateFamily::Complex && std::abs(psi[k].imag()) > 1e-12) return false;
      if (family_ == StateFamily::RealSymmetric && k > 0 && std::abs(psi[k] - psi[d_ - k]) > 1e-12) return false;
    }
    return true;
  }

 private:
  StateFamily family_;
  std::size_t d_;
};

/// Entropies of psi = z/|z| and their gradients with respect to z.
class EntropyGradients {
 public:
  EntropyGradients(const CMatrix& w, RenyiOrder alpha, RenyiOrder beta)
      : w_(w), a_(alpha.value()), b_(beta.value()), d_(w.rows()) {
    y_.resize(d_);
    px_.resize(d_);
    py_.resize(d_);
    ga_.resize(d_);
    gb_.resize(d_);
    gx_.resize(d_);
    gy_.resize(d_);
  }

  void evaluate(const CVector& z) {
    r_ = norm(z);
    psi_ = z;
    for (auto& v : psi_) v /= r_;
    matvec_into(w_, psi_, y_);
    for (std::size_t i = 0; i < d_; ++i) {
      px_[i] = std::norm(psi_[i]);
      py_[i] = std::norm(y_[i]);
    }
    hx = renyi_bits(px_, a_);
    hy = renyi_bits(py_, b_);
    renyi_gradient_into(px_, a_, ga_);
    renyi_gradient_into(py_, b_, gb_);
    for (std::size_t i = 0; i < d_; ++i) {
      gx_[i] = 2.0 * ga_[i] * psi_[i];
      y_[i] *= 2.0 * gb_[i];
    }
    gy_ = matvec_adjoint(w_, y_);
  }

  /// Gradient w.r.t. z of cx * hx + cy * hy.
  void combine(double cx, double cy, CVector& gz) const {
    gz.resize(d_);
    Complex proj(0.0, 0.0);
    for (std::size_t i = 0; i < d_; ++i) {
      gz[i] = cx * gx_[i] + cy * gy_[i];
      proj += std::conj(psi_[i]) * gz[i];
    }
    const double p = proj.real();
    for (std::size_t i = 0; i < d_; ++i) gz[i] = (gz[i] - p * psi_[i]) / r_;
  }

  const CVector& state() const { return psi_; }

  double hx = 0.0;
  double hy = 0.0;

 private:
  const CMatrix& w_;
  double a_, b_;
  std::size_t d_;
  double r_ = 1.0;
  CVector psi_, y_, gx_, gy_;
  std::vector<double> px_, py_, ga_, gb_;
};

void require_finite_dual(RenyiOrder alpha, RenyiOrder beta) {
  if (!is_dual_pair(alpha, beta)) fail(ErrorCode::NotDualPair, "orders are not a dual pair");
  if (alpha.is_infinite() || beta.is_infinite()) {
    fail(ErrorCode::UnsupportedOrder, "optimization needs finite orders");
  }
}

CVector basis_vector(std::size_t d, std::size_t k) {
  CVector e(d);
  e[k] = 1.0;
  return e;
}

const SamplingStrategy kRestartStrategies[] = {SamplingStrategy::haar(), SamplingStrategy::real(),
                                               SamplingStrategy::rrs(), SamplingStrategy::basis_mix(0.5)};

std::vector<CVector> structured_seeds(const ObservablePair& pair) {
  const std::size_t d = pair.dimension();
  std::vector<CVector> seeds;
  for (std::size_t k = 0; k < d; ++k) seeds.push_back(basis_vector(d, k));
  for (std::size_t k = 0; k < d; ++k) seeds.push_back(matvec_adjoint(pair.matrix(), basis_vector(d, k)));
  seeds.emplace_back(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
  return seeds;
}

struct RestartResult {
  bool valid = false;
  double hx = std::numeric_limits<double>::infinity();
  double hy = 0.0;
  CVector psi;
};

RestartResult constrained_restart(const ObservablePair& pair, RenyiOrder alpha, RenyiOrder beta, double delta,
                                  const Parameterization& param, std::vector<double> x, const OptimizeOptions& opt) {
  EntropyGradients eg(pair.matrix(), alpha, beta);
  CVector z, gz;
  double lambda = 0.0, kappa = 0.0;
  auto fg = [&](const std::vector<double>& xv, std::vector<double>& grad) {
    param.to_vector(xv, z);
    const double nz = norm(z);
    if (!(nz > 1e-150)) return std::numeric_limits<double>::infinity();
    eg.evaluate(z);
    const double c = eg.hy - delta;
    eg.combine(1.0, lambda + 2.0 * kappa * c, gz);
    param.pullback(gz, grad);
    return eg.hx + lambda * c + kappa * c * c;
  };
  RestartResult best;
  auto record = [&] {
    param.to_vector(x, z);
    eg.evaluate(z);
    if (std::abs(eg.hy - delta) <= opt.ctol && eg.hx < best.hx) {
      best = {true, eg.hx, eg.hy, eg.state()};
    }
    return eg.hy - delta;
  };
  record();
  for (double k : {10.0, 100.0, 1e3, 1e4}) {
    kappa = k;
    param.normalize_params(x);
    lbfgs(x, fg, opt.max_iter, opt.grad_tol);
    record();
  }
  for (int round = 0; round < 12; ++round) {
    const double c = record();
    if (std::abs(c) <= 1e-3 * opt.ctol) break;
    lambda += 2.0 * kappa * c;
    param.normalize_params(x);
    lbfgs(x, fg, opt.max_iter, opt.grad_tol);
  }
  record();
  return best;
}

}  // namespace

ConstrainedMin min_halpha_given_hbeta(const ObservablePair& pair, RenyiOrder alpha, RenyiOrder beta, double delta,
                                      const OptimizeOptions& options) {
  require_finite_dual(alpha, beta);
  const std::size_t d = pair.dimension();
  const double top = std::log2(static_cast<double>(d));
  if (!(delta >= -1e-12 && delta <= top + 1e-12)) fail(ErrorCode::Infeasible, "delta outside [0, log2 d]");
  const Parameterization param(options.family, d);
  const SeededRng root(options.seed, 0x0f7);

  // Cross-check sample; its best point with hy <= delta also seeds a restart.
  EntropyEvaluator eval(pair.matrix(), alpha, beta);
  SeededRng sampler = root.substream(1u << 20);
  double sampled_bound = std::numeric_limits<double>::infinity();
  CVector sampled_best;
  for (std::size_t i = 0; i < options.cross_check_samples; ++i) {
    CVector psi;
    switch (options.family) {
      case StateFamily::Complex:
        psi = sample_state(d, i % 2 ? SamplingStrategy::basis_mix(0.5) : SamplingStrategy::haar(), sampler);
        break;
      case StateFamily::Real: psi = sample_state(d, SamplingStrategy::real(), sampler); break;
      case StateFamily::RealSymmetric: psi = sample_state(d, SamplingStrategy::rrs(), sampler); break;
    }
    const EntropyPoint pt = eval(psi);
    if (pt.hy <= delta && pt.hx < sampled_bound) {
      sampled_bound = pt.hx;
      sampled_best = std::move(psi);
    }
  }

  std::vector<std::vector<double>> starts;
  auto add_start = [&](std::span<const Complex> psi) {
    auto x = param.from_state(psi);
    if (!x.empty()) starts.push_back(std::move(x));
  };
  for (const auto& s : structured_seeds(pair)) add_start(s);
  for (const auto& s : options.extra_seeds) add_start(s);
  if (!sampled_best.empty()) add_start(sampled_best);
  for (std::size_t r = 0; r < options.restarts; ++r) {
    SeededRng rng = root.substream(r);
    add_start(sample_state(d, kRestartStrategies[r % 4], rng));
  }

  std::vector<RestartResult> results(starts.size());
  detail::parallel_for(starts.size(), options.threads, [&](std::size_t i) {
    results[i] = constrained_restart(pair, alpha, beta, delta, param, starts[i], options);
  });

  ConstrainedMin out;
  std::size_t best = results.size();
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].valid) continue;
    ++out.feasible_restarts;
    if (best == results.size() || results[i].hx < results[best].hx) best = i;
  }
  if (best == results.size()) fail(ErrorCode::Infeasible, "no restart met the constraint");
  out.value = results[best].hx;
  out.witness = results[best].psi;
  out.point = {results[best].hx, results[best].hy};
  out.sampled_bound = sampled_bound;
  out.cross_check_ok = out.value <= sampled_bound + options.ctol;
  return out;
}

FrontierCurve optimized_frontier(const ObservablePair& pair, RenyiOrder alpha, RenyiOrder beta, std::size_t n_delta,
                                 const OptimizeOptions& options) {
  require_finite_dual(alpha, beta);
  const std::size_t d = pair.dimension();
  const Parameterization param(options.family, d);
  const double top = std::log2(static_cast<double>(d));
  EntropyEvaluator eval(pair.matrix(), alpha, beta);

  std::vector<EntropyPoint> pts;
  std::vector<CVector> states;
  auto add = [&](CVector psi) {
    if (!param.contains(psi)) return;
    pts.push_back(eval(psi));
    states.push_back(std::move(psi));
  };
  for (auto& s : structured_seeds(pair)) add(std::move(s));
  for (auto& s : known_equality_states(pair)) add(std::move(s));

  OptimizeOptions opt = options;
  CVector previous;
  for (std::size_t i = 1; i <= n_delta; ++i) {
    const double delta = top * static_cast<double>(i) / static_cast<double>(n_delta + 1);
    opt.extra_seeds = options.extra_seeds;
    if (!previous.empty()) opt.extra_seeds.push_back(previous);
    try {
      ConstrainedMin m = min_halpha_given_hbeta(pair, alpha, beta, delta, opt);
      previous = m.witness;
      add(std::move(m.witness));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Infeasible) throw;
    }
  }
  return pareto_lower(pts, states);
}

CVector dominating_pure(const ObservablePair& pair, RenyiOrder alpha, RenyiOrder beta, const MixedEnsemble& rho,
                        const OptimizeOptions& options) {
  if (alpha.is_infinite() || beta.is_infinite()) fail(ErrorCode::UnsupportedOrder, "needs finite orders");
  const std::size_t d = pair.dimension();
  if (rho.dimension() != d) fail(ErrorCode::DimensionMismatch, "ensemble dimension differs from W");
  const EntropyPoint target = entropy_pair(pair, rho, alpha, beta);
  EntropyEvaluator eval(pair.matrix(), alpha, beta);
  auto excess = [&](std::span<const Complex> psi) {
    const EntropyPoint p = eval(psi);
    return std::max(p.hx - target.hx, p.hy - target.hy);
  };

  std::vector<CVector> seeds;
  for (const auto& c : rho.components()) seeds.push_back(c.state);
  const SeededRng root(options.seed, 0xd0e);
  for (std::size_t r = 0; r < options.restarts; ++r) {
    SeededRng rng = root.substream(r);
    seeds.push_back(sample_state(d, kRestartStrategies[r % 4], rng));
  }

  const Parameterization param(StateFamily::Complex, d);
  EntropyGradients eg(pair.matrix(), alpha, beta);
  CVector z, gz;
  CVector best;
  double best_excess = std::numeric_limits<double>::infinity();
  for (const auto& seed : seeds) {
    double e = excess(seed);
    if (e < best_excess) {
      best_excess = e;
      best = seed;
    }
    if (e <= 0.0) return seed;
    std::vector<double> x = param.from_state(seed);
    for (double tau : {10.0, 100.0, 1e3, 1e4, 1e5}) {
      auto fg = [&](const std::vector<double>& xv, std::vector<double>& grad) {
        param.to_vector(xv, z);
        if (!(norm(z) > 1e-150)) return std::numeric_limits<double>::infinity();
        eg.evaluate(z);
        const double u1 = eg.hx - target.hx, u2 = eg.hy - target.hy;
        const double m = std::max(u1, u2);
        const double e1 = std::exp(tau * (u1 - m)), e2 = std::exp(tau * (u2 - m));
        eg.combine(e1 / (e1 + e2), e2 / (e1 + e2), gz);
        param.pullback(gz, grad);
        return m + std::log(e1 + e2) / tau;
      };
      param.normalize_params(x);
      lbfgs(x, fg, std::min<std::size_t>(options.max_iter, 2000), options.grad_tol);
      param.to_vector(x, z);
      CVector psi = z;
      normalize(psi);
      e = excess(psi);
      if (e < best_excess) {
        best_excess = e;
        best = psi;
      }
      if (e <= 0.0) return psi;
    }
  }
  if (best_excess <= 1e-6) return best;
  fail(ErrorCode::SearchFailed, "no dominating pure state found within the restart budget");
}

}  // namespace entropic
