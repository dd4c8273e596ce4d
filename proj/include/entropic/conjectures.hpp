#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "entropic/entropy.hpp"
#include "entropic/frontier.hpp"
#include "entropic/observable_pair.hpp"

namespace entropic {

/// Outcome of a numerical probe. Verdicts are "consistent" (max_abs <=
/// threshold) or "tension"; a probe never proves or refutes anything.
struct ProbeReport {
  int conjecture = 0;
  std::string unitary;
  double alpha = 1.0;
  double beta = 1.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double max_abs = 0.0;
  double signed_max = 0.0;
  double threshold = 0.05;
  std::string verdict;
};

struct ProbeOptions {
  std::size_t n = 100000;
  std::uint64_t seed = 0;
  double threshold = 0.05;
  std::size_t threads = 1;
  /// Optimized-sweep points added to every frontier (0 disables), with the
  /// same setting on both sides of a comparison.
  std::size_t refine_deltas = 64;
};

/// Product states sigma1 (x) sigma2 versus general states of W1 (x) W2.
/// The general side includes the product points, so signed_max >= 0.
/// d1 d2 <= 16 (TooLarge otherwise).
ProbeReport probe_product_states(const ObservablePair& w1, const ObservablePair& w2, RenyiOrder alpha,
                                 RenyiOrder beta, const ProbeOptions& options = {});

/// fourier_cyclic(d1 d2) against fourier_cyclic(d1) (x) fourier_cyclic(d2), same budget and seed.
ProbeReport probe_fourier_decomposition(std::size_t d1, std::size_t d2, RenyiOrder alpha, RenyiOrder beta,
                                        const ProbeOptions& options = {});

using OrderPair = std::pair<RenyiOrder, RenyiOrder>;

/// Frontier witnesses of the base pair evaluated at each other pair; the
/// deviation is their height above that pair's own frontier (exact curves
/// for d = 2). max_abs clamps at 0, signed_max is the raw maximum.
ProbeReport probe_alpha_independence(const ObservablePair& w, OrderPair base, const std::vector<OrderPair>& others,
                                     const ProbeOptions& options = {});

/// Real-real symmetric states versus general states for fourier_cyclic(d).
/// The general side includes the restricted points, so signed_max >= 0. d <= 16.
ProbeReport probe_rrs_sufficiency(std::size_t d, RenyiOrder alpha, RenyiOrder beta, const ProbeOptions& options = {});

/// {"conjecture", "unitary", "alpha", "beta", "n", "seed", "max_abs", "signed_max", "threshold", "verdict"}
std::string to_json(const ProbeReport& report);

}  // namespace entropic
