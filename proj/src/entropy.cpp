#include "entropic/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "entropic/error.hpp"

namespace entropic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

}  // namespace

RenyiOrder::RenyiOrder(double alpha) : alpha_(alpha) {
  if (std::isnan(alpha) || alpha < 0.5) {
    fail(ErrorCode::BadOrder, "Renyi order must be >= 1/2, got " + std::to_string(alpha));
  }
  if (std::abs(alpha - 1.0) < 1e-6) alpha_ = 1.0;
}

RenyiOrder RenyiOrder::infinity() { return RenyiOrder(kInf); }

bool RenyiOrder::is_infinite() const noexcept { return std::isinf(alpha_); }

ProbDist::ProbDist(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) fail(ErrorCode::InvalidDistribution, "empty distribution");
  double total = 0.0;
  for (auto& x : p_) {
    if (!std::isfinite(x) || x < -1e-14) {
      fail(ErrorCode::InvalidDistribution, "probability entry out of range");
    }
    if (x < 0.0) x = 0.0;
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-10) fail(ErrorCode::InvalidDistribution, "probabilities do not sum to 1");
}

double renyi_bits(std::span<const double> p, double alpha) {
  if (alpha == 1.0) {
    double h = 0.0;
    for (double x : p)
      if (x > 0.0) h -= x * std::log2(x);
    return std::max(h, 0.0);
  }
  if (std::isinf(alpha)) {
    double m = 0.0;
    for (double x : p) m = std::max(m, x);
    return std::max(-std::log2(m), 0.0);
  }
  double s = 0.0;
  if (alpha == 0.5) {
    for (double x : p)
      if (x > 0.0) s += std::sqrt(x);
  } else if (alpha == 2.0) {
    for (double x : p) s += x * x;
  } else {
    for (double x : p)
      if (x > 0.0) s += std::pow(x, alpha);
  }
  return std::max(std::log2(s) / (1.0 - alpha), 0.0);
}

double renyi(const ProbDist& p, RenyiOrder alpha) { return renyi_bits(p.values(), alpha.value()); }

RenyiOrder dual_order(RenyiOrder alpha) {
  const double a = alpha.value();
  if (alpha.is_infinite()) return RenyiOrder(0.5);
  if (a == 0.5) return RenyiOrder::infinity();
  if (a == 1.0) return RenyiOrder(1.0);
  return RenyiOrder(a / (2.0 * a - 1.0));
}

bool is_dual_pair(RenyiOrder alpha, RenyiOrder beta, double tol) {
  const double ia = alpha.is_infinite() ? 0.0 : 1.0 / alpha.value();
  const double ib = beta.is_infinite() ? 0.0 : 1.0 / beta.value();
  return std::abs(ia + ib - 2.0) <= tol;
}

double discrete_variance(const ProbDist& p) {
  const auto v = p.values();
  return 1.0 - *std::max_element(v.begin(), v.end());
}

void renyi_gradient_into(std::span<const double> p, double alpha, std::span<double> grad) {
  if (alpha == 1.0) {
    for (std::size_t j = 0; j < p.size(); ++j)
      grad[j] = p[j] > 0.0 ? -(std::log2(p[j]) + kInvLn2) : 0.0;
    return;
  }
  double s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] > 0.0) {
      grad[j] = std::pow(p[j], alpha - 1.0);
      s += grad[j] * p[j];
    } else {
      grad[j] = 0.0;
    }
  }
  const double scale = alpha / (1.0 - alpha) / s * kInvLn2;
  for (auto& g : grad) g *= scale;
}

std::vector<double> renyi_gradient(const ProbDist& p, RenyiOrder alpha) {
  if (alpha.is_infinite()) fail(ErrorCode::UnsupportedOrder, "no gradient for alpha = inf");
  for (double x : p.values())
    if (x <= 1e-12) fail(ErrorCode::BoundaryDistribution, "gradient undefined on the simplex boundary");
  std::vector<double> g(p.size());
  renyi_gradient_into(p.values(), alpha.value(), g);
  return g;
}

namespace {

std::vector<double> squared_moduli(std::span<const Complex> v) {
  std::vector<double> p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) p[i] = std::norm(v[i]);
  return p;
}

}  // namespace

BornDistributions born_distributions(const CMatrix& w, std::span<const Complex> psi) {
  if (!w.square() || w.cols() != psi.size()) {
    fail(ErrorCode::DimensionMismatch, "state and analysis matrix dimensions differ");
  }
  return {ProbDist(squared_moduli(psi)), ProbDist(squared_moduli(matvec(w, psi)))};
}

BornDistributions born_distributions(const ObservablePair& pair, std::span<const Complex> psi) {
  return born_distributions(pair.matrix(), psi);
}

BornDistributions born_distributions(const ObservablePair& pair, const MixedEnsemble& rho) {
  const std::size_t d = pair.dimension();
  if (rho.dimension() != d) fail(ErrorCode::DimensionMismatch, "ensemble dimension");
  std::vector<double> px(d, 0.0), py(d, 0.0);
  for (const auto& c : rho.components()) {
    const CVector y = matvec(pair.matrix(), c.state);
    for (std::size_t i = 0; i < d; ++i) {
      px[i] += c.weight * std::norm(c.state[i]);
      py[i] += c.weight * std::norm(y[i]);
    }
  }
  return {ProbDist(std::move(px)), ProbDist(std::move(py))};
}

EntropyPoint entropy_pair(const ObservablePair& pair, std::span<const Complex> psi, RenyiOrder alpha,
                          RenyiOrder beta) {
  const auto dists = born_distributions(pair, psi);
  return {renyi(dists.px, alpha), renyi(dists.py, beta)};
}

EntropyPoint entropy_pair(const ObservablePair& pair, const MixedEnsemble& rho, RenyiOrder alpha,
                          RenyiOrder beta) {
  const auto dists = born_distributions(pair, rho);
  return {renyi(dists.px, alpha), renyi(dists.py, beta)};
}

double von_neumann(const MixedEnsemble& rho, std::size_t d) {
  if (rho.dimension() != d) fail(ErrorCode::DimensionMismatch, "ensemble dimension");
  if (rho.is_pure()) return 0.0;
  const auto eig = hermitian_eigen(rho.density());
  std::vector<double> spectrum(eig.values);
  double total = 0.0;
  for (auto& x : spectrum) {
    x = std::max(x, 0.0);
    total += x;
  }
  for (auto& x : spectrum) x /= total;
  return renyi_bits(spectrum, 1.0);
}

EntropyEvaluator::EntropyEvaluator(const CMatrix& w, RenyiOrder alpha, RenyiOrder beta)
    : w_(w),
      alpha_(alpha.value()),
      beta_(beta.value()),
      y_(w.rows()),
      px_(w.rows()),
      py_(w.rows()) {}

EntropyPoint EntropyEvaluator::operator()(std::span<const Complex> psi) {
  matvec_into(w_, psi, y_);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    px_[i] = std::norm(psi[i]);
    py_[i] = std::norm(y_[i]);
  }
  return {renyi_bits(px_, alpha_), renyi_bits(py_, beta_)};
}

}  // namespace entropic
