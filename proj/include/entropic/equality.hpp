#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entropic/entropy.hpp"
#include "entropic/groups.hpp"
#include "entropic/observable_pair.hpp"
#include "entropic/sampling.hpp"

namespace entropic {

struct OverlapData {
  double c = 1.0;              // max_jk |W_jk|
  double mu_bound_bits = 0.0;  // -log2 c^2
  double inv_c2 = 1.0;
  bool inv_c2_is_integer = true;  // within 1e-6 relative
};

OverlapData overlap_data(const CMatrix& w);

/// H_alpha(pX) + H_beta(pY) - mu_bound. Throws NotDualPair.
double mu_deficit(const ObservablePair& pair, std::span<const Complex> psi, RenyiOrder alpha,
                  RenyiOrder beta);

struct SupportPair {
  std::vector<std::size_t> sx;
  std::vector<std::size_t> sy;

  friend auto operator<=>(const SupportPair&, const SupportPair&) = default;
};

struct EqualityReport {
  bool is_equality = false;
  double entropy_sum_bits = 0.0;
  double deficit = 0.0;
  SupportPair supports;
  bool structural_ok = false;
  EntropyPoint point;
  double alpha = 1.0;
  double beta = 1.0;
};

/// Maassen-Uffink equality verdict with structural evidence: flat
/// distributions on their supports, block W[sY, sX] of constant modulus c,
/// phase-equalizable, and |sX| |sY| c^2 = 1. Requires a dual pair with
/// 1/2 < alpha, beta < inf (BoundaryOrder otherwise).
EqualityReport check_equality_state(const ObservablePair& pair, std::span<const Complex> psi,
                                    RenyiOrder alpha, RenyiOrder beta, double tol = 1e-9);

/// True iff all moduli agree within tol and every 2x2 minor has trivial phase,
/// i.e. rows and columns can be rephased to make all entries equal.
bool phase_equalizable(const CMatrix& block, double tol = 1e-8);

struct SupportHit {
  SupportPair supports;
  CVector witness;
  EqualityReport report;  // witness checked at alpha = beta = 1
};

struct ShapeScan {
  std::size_t size_x = 0;
  std::size_t size_y = 0;
  std::size_t candidates = 0;
  std::size_t hits = 0;
};

struct SupportScan {
  std::vector<SupportHit> hits;  // sorted by (sx, sy)
  std::vector<ShapeScan> shapes;
  std::size_t candidates = 0;
  bool inv_c2_is_integer = false;
};

/// Enumerates all support pairs (sX, sY) with |sX| |sY| = 1/c^2 whose block
/// has modulus c within tol and is phase-equalizable. Empty when 1/c^2 is
/// not an integer. `shape` restricts the scan to one (|sX|, |sY|). d <= 12;
/// throws TooLarge above that or past 1e7 candidates.
SupportScan find_equality_supports(const ObservablePair& pair, double tol = 1e-8,
                                   std::optional<std::pair<std::size_t, std::size_t>> shape = {});

struct FourierEqualityClass {
  Subgroup subgroup;
  Subgroup annihilator;
  EntropyPoint point;           // (log2 |L|, log2 (d/|L|))
  std::vector<CVector> states;  // translates/modulations, an orthonormal basis
  bool all_verified = false;    // every state passes check_equality_state at (1,1)
};

std::vector<FourierEqualityClass> fourier_equality_states(const AbelianGroup& g);

/// Distinct points (merged within `merge_tol` in both coordinates), sorted by hx.
std::vector<EntropyPoint> distinct_points(std::vector<EntropyPoint> points, double merge_tol = 1e-9);

/// Report for psi1 (x) psi2 under W1 (x) W2.
EqualityReport tensor_equality(const ObservablePair& w1, std::span<const Complex> psi1,
                               const ObservablePair& w2, std::span<const Complex> psi2, RenyiOrder alpha,
                               RenyiOrder beta);

/// H_{1/2}(pX) + H_inf(pY) - mu_bound.
double boundary_half_inf_deficit(const ObservablePair& pair, std::span<const Complex> psi);

/// H(pX) + H(pY) - mu_bound - S(rho), Shannon entropies.
double berta_slack(const ObservablePair& pair, const MixedEnsemble& rho);

/// Equality witnesses usable to seed diagrams: the support-scan witnesses
/// when d <= 12 and 1/c^2 is an integer, empty otherwise.
std::vector<CVector> known_equality_states(const ObservablePair& pair);

/// {"verdict", "deficit", "sX", "sY", "entropy_point", "alpha", "beta"};
/// verdict is "equality" or "not_equality", indices 0-based.
std::string to_json(const EqualityReport& report);

}  // namespace entropic
