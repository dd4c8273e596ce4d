#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "entropic/numerics.hpp"
#include "entropic/observable_pair.hpp"
#include "entropic/sampling.hpp"

namespace entropic {

/// Renyi order alpha in [1/2, inf]. Orders within 1e-6 of 1 snap to exactly 1.
class RenyiOrder {
 public:
  /// Throws BadOrder for alpha < 1/2 or NaN.
  explicit RenyiOrder(double alpha);
  static RenyiOrder infinity();
  static RenyiOrder shannon() { return RenyiOrder(1.0); }

  double value() const noexcept { return alpha_; }
  bool is_infinite() const noexcept;
  bool is_shannon() const noexcept { return alpha_ == 1.0; }

  friend bool operator==(RenyiOrder, RenyiOrder) = default;

 private:
  double alpha_;
};

/// Normalized probability vector (sum 1 within 1e-10; entries >= -1e-14, clamped to 0).
class ProbDist {
 public:
  explicit ProbDist(std::vector<double> p);

  std::span<const double> values() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }

 private:
  std::vector<double> p_;
};

struct EntropyPoint {
  double hx = 0.0;  // H_alpha of pX, bits
  double hy = 0.0;  // H_beta of pY, bits

  friend bool operator==(const EntropyPoint&, const EntropyPoint&) = default;
};

/// Renyi entropy in bits. Zero entries are skipped (0 log 0 = 0).
double renyi(const ProbDist& p, RenyiOrder alpha);
/// Unchecked kernel over a raw probability vector.
double renyi_bits(std::span<const double> p, double alpha);

/// beta with 1/alpha + 1/beta = 2.
RenyiOrder dual_order(RenyiOrder alpha);
bool is_dual_pair(RenyiOrder alpha, RenyiOrder beta, double tol = 1e-9);

/// 1 - max_j p_j.
double discrete_variance(const ProbDist& p);

/// dH_alpha/dp_j in bits. Throws UnsupportedOrder for alpha = inf and
/// BoundaryDistribution if some p_j <= 1e-12.
std::vector<double> renyi_gradient(const ProbDist& p, RenyiOrder alpha);

/// Gradient kernel that extends by zero where p_j == 0 (used with the
/// amplitude chain rule, where g_j * psi_j -> 0 for alpha > 1/2).
void renyi_gradient_into(std::span<const double> p, double alpha, std::span<double> grad);

struct BornDistributions {
  ProbDist px;
  ProbDist py;
};

/// pX(i) = |psi_i|^2, pY(j) = |(W psi)_j|^2.
BornDistributions born_distributions(const CMatrix& w, std::span<const Complex> psi);
BornDistributions born_distributions(const ObservablePair& pair, std::span<const Complex> psi);
/// Mixture distributions sum_i lambda_i p^{psi_i}.
BornDistributions born_distributions(const ObservablePair& pair, const MixedEnsemble& rho);

EntropyPoint entropy_pair(const ObservablePair& pair, std::span<const Complex> psi, RenyiOrder alpha,
                          RenyiOrder beta);
EntropyPoint entropy_pair(const ObservablePair& pair, const MixedEnsemble& rho, RenyiOrder alpha,
                          RenyiOrder beta);

/// Shannon entropy of the spectrum of sum_i lambda_i |psi_i><psi_i|.
double von_neumann(const MixedEnsemble& rho, std::size_t d);

/// Fast evaluator for hot loops: fixed W and orders, reusable scratch.
class EntropyEvaluator {
 public:
  EntropyEvaluator(const CMatrix& w, RenyiOrder alpha, RenyiOrder beta);

  EntropyPoint operator()(std::span<const Complex> psi);

  std::size_t dimension() const noexcept { return w_.rows(); }

 private:
  CMatrix w_;
  double alpha_;
  double beta_;
  CVector y_;
  std::vector<double> px_;
  std::vector<double> py_;
};

}  // namespace entropic
