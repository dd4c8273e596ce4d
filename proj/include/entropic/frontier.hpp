#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entropic/entropy.hpp"
#include "entropic/observable_pair.hpp"
#include "entropic/rng.hpp"
#include "entropic/sampling.hpp"

namespace entropic {

struct DiagramMeta {
  std::string unitary;
  double alpha = 1.0;
  double beta = 1.0;
  std::string strategy;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t injected = 0;          // leading points that are known equality states
  bool real_strategy_warning = false;  // real strategy on a W with complex entries
};

struct DiagramSample {
  std::vector<EntropyPoint> points;
  std::vector<CVector> states;  // filled only with SampleOptions::keep_states
  DiagramMeta meta;
};

struct SampleOptions {
  std::size_t threads = 1;
  bool inject_equality_states = true;
  bool keep_states = false;
};

/// n entropy points of pure states. Work is split into fixed chunks, chunk c
/// drawing from rng.substream(c), so the output does not depend on `threads`.
/// Known equality states (d <= 12) occupy the first slots.
DiagramSample sample_diagram(const ObservablePair& pair, RenyiOrder alpha, RenyiOrder beta, std::size_t n,
                             const SamplingStrategy& strategy, const SeededRng& rng,
                             const SampleOptions& options = {});

/// "h_x,h_y" header, one point per line, 12 significant digits.
std::string diagram_csv(std::span<const EntropyPoint> points);

/// Pareto-minimal staircase: hx strictly increasing, hy strictly decreasing.
struct FrontierCurve {
  std::vector<EntropyPoint> points;
  std::vector<CVector> witnesses;  // empty, or one state per point
};

/// Non-dominated points of `points` (EmptyInput if none). `states`, when
/// given, must be parallel to `points` and become the witnesses.
FrontierCurve pareto_lower(std::span<const EntropyPoint> points, std::span<const CVector> states = {});
/// Pareto front of the union; witnesses are kept only if both carry them.
FrontierCurve merge(const FrontierCurve& a, const FrontierCurve& b);

/// gamma(x) = min{hy : hx <= x}; +inf when no point has hx <= x.
double staircase_value(const FrontierCurve& curve, double x);

struct Deviation {
  double max_abs = 0.0;
  double signed_max = 0.0;  // max of gamma_A - gamma_B
};

/// Staircases compared on grid_n evenly spaced points of the overlap of the
/// hx ranges. Throws EmptyInput or NoOverlap.
Deviation frontier_deviation(const FrontierCurve& a, const FrontierCurve& b, std::size_t grid_n = 200);

/// {"alpha", "beta", "unitary", "points": [{"hx", "hy", "state"?}]}; orders
/// at infinity are written as the string "inf".
std::string frontier_json(const FrontierCurve& curve, const std::string& unitary, RenyiOrder alpha,
                          RenyiOrder beta);

/// phi = arccos |W_00| in [0, pi/2].
double reduce_2x2_to_rotation(const CMatrix& w);

/// Minimal curve of a qubit pair. With phi from reduce_2x2_to_rotation,
/// psi(xi) = (cos xi, sin xi) has pX = (cos^2 xi, sin^2 xi) and
/// pY = (cos^2 (xi - phi), sin^2 (xi - phi)); xi sweeps the shorter of
/// [0, phi] and [phi, pi/2] (m points, endpoints included). Witnesses are
/// expressed in the frame of W.
FrontierCurve d2_exact_curve(const ObservablePair& pair, RenyiOrder alpha, RenyiOrder beta, std::size_t m = 512);

/// Continuous version of the same curve: min{hy : hx <= x} along the arc,
/// located by bisection in xi. 0 beyond the hy = 0 endpoint.
double d2_exact_value(const ObservablePair& pair, RenyiOrder alpha, RenyiOrder beta, double x);

struct EnglertResult {
  FrontierCurve curve;
  std::vector<double> p1;             // sweep values
  std::vector<EntropyPoint> sweep;    // entropy pair per sweep value
  std::vector<EntropyPoint> equality_points;  // merged MU-equality points
  std::size_t mu_equality_count = 0;
};

/// States (sqrt p2, ..., sqrt p2, sqrt p1) under fourier_cyclic(d); p1 runs
/// over m evenly spaced values of [0, 1] plus 1/d. m >= 100.
EnglertResult englert_curve(std::size_t d, RenyiOrder alpha, RenyiOrder beta, std::size_t m = 512);

struct ExtremalityResult {
  std::vector<double> residual;        // r_k
  double max_abs = 0.0;
  std::vector<double> phase_gradient;  // central differences of H_alpha in theta_k (radians)
  double fd_mismatch = 0.0;            // max_k |r_k + (sqrt d / 2) dH/dtheta_k|
};

/// r_k = Im(psi_k sum_j g_j conj(hat psi_j) omega^{jk}), hat psi = F psi with
/// F = fourier_cyclic(d), g = gradient of H_alpha at |hat psi|^2. Under
/// psi_k -> psi_k e^{i theta_k}, dH_alpha/dtheta_k = -(2/sqrt d) r_k.
/// Entries with |hat psi_j| <= 1e-12 contribute zero (the limit for alpha >
/// 1/2); at alpha = 1/2 they throw BoundaryDistribution. UnsupportedOrder at inf.
ExtremalityResult extremality_residual(std::span<const Complex> psi, RenyiOrder alpha);

enum class StateFamily { Complex, Real, RealSymmetric };

struct OptimizeOptions {
  double tol = 1e-6;
  double ctol = 1e-6;          // allowed |H_beta - delta|
  std::size_t restarts = 32;   // random restarts, on top of structured seeds
  std::size_t max_iter = 10000;
  double grad_tol = 1e-9;
  std::size_t threads = 1;
  std::uint64_t seed = 0;
  std::size_t cross_check_samples = 4096;
  StateFamily family = StateFamily::Complex;
  std::vector<CVector> extra_seeds;
};

struct ConstrainedMin {
  double value = 0.0;  // H_alpha of the witness
  CVector witness;
  EntropyPoint point;
  double sampled_bound = 0.0;  // min{hx : hy <= delta} over the cross-check sample
  /// value <= sampled_bound + ctol. Also false where the level-set minimum
  /// is dominated by a point of lower hy, i.e. (value, delta) is off the frontier.
  bool cross_check_ok = true;
  std::size_t feasible_restarts = 0;
};

/// min H_alpha(pX) subject to H_beta(pY) = delta over pure states of the
/// family: penalty continuation (kappa = 10 ... 1e4) followed by multiplier
/// updates, L-BFGS with backtracking on psi = z/|z|, multi-start. Finite
/// orders only (UnsupportedOrder otherwise). Throws Infeasible, NotDualPair.
ConstrainedMin min_halpha_given_hbeta(const ObservablePair& pair, RenyiOrder alpha, RenyiOrder beta, double delta,
                                      const OptimizeOptions& options = {});

/// Pareto curve of min_halpha_given_hbeta at n_delta values evenly spaced in
/// (0, log2 d), plus the known equality states of the pair.
FrontierCurve optimized_frontier(const ObservablePair& pair, RenyiOrder alpha, RenyiOrder beta,
                                 std::size_t n_delta = 64, const OptimizeOptions& options = {});

/// A pure state sigma with entropy_pair(sigma) <= entropy_pair(rho) + 1e-6
/// in both coordinates, found by minimizing a smoothed max_i(f_i(sigma) -
/// f_i(rho)). Throws SearchFailed when the restart budget runs out.
CVector dominating_pure(const ObservablePair& pair, RenyiOrder alpha, RenyiOrder beta, const MixedEnsemble& rho,
                        const OptimizeOptions& options = {});

}  // namespace entropic
