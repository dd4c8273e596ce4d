#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entropic/numerics.hpp"
#include "entropic/rng.hpp"

namespace entropic {

/// How pure states are drawn.
///  - Haar: normalized i.i.d. complex Gaussian vector.
///  - Real: uniform on the real unit sphere.
///  - RealSymmetric: real with psi_j = psi_{d-j} (j = 1..d-1); its DFT is real too.
///  - BasisMix: normalized (1-t) psi_haar + t e_k for a random basis index k.
struct SamplingStrategy {
  enum class Kind { Haar, Real, RealSymmetric, BasisMix };

  Kind kind = Kind::Haar;
  double mix = 0.0;  // t, only for BasisMix

  static SamplingStrategy haar() { return {Kind::Haar, 0.0}; }
  static SamplingStrategy real() { return {Kind::Real, 0.0}; }
  static SamplingStrategy rrs() { return {Kind::RealSymmetric, 0.0}; }
  static SamplingStrategy basis_mix(double t);

  /// "haar", "real", "rrs", "basis-mix" or "basis-mix:<t>".
  static SamplingStrategy parse(std::string_view text);
  std::string name() const;
};

CVector sample_state(std::size_t d, const SamplingStrategy& strategy, SeededRng& rng);

/// Convex combination of pure states.
class MixedEnsemble {
 public:
  struct Component {
    double weight;
    CVector state;
  };

  /// Validates weights (>= 0, sum 1 within 1e-12) and unit norms (1e-12).
  explicit MixedEnsemble(std::vector<Component> components);

  static MixedEnsemble pure(CVector state);

  const std::vector<Component>& components() const noexcept { return components_; }
  std::size_t dimension() const noexcept { return components_.front().state.size(); }
  bool is_pure() const noexcept { return components_.size() == 1; }

  CMatrix density() const;

 private:
  std::vector<Component> components_;
};

/// k Haar components with Dirichlet(1,...,1) weights; k drawn from [2, max_components].
MixedEnsemble random_ensemble(std::size_t d, std::size_t max_components, SeededRng& rng);

}  // namespace entropic
