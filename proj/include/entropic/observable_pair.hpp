#pragma once

#include <string>

#include "entropic/numerics.hpp"

namespace entropic {

/// A pair of measurement bases described by the analysis matrix W.
///
/// Convention: the second distribution is pY = |W psi|^2, the first is
/// pX = |psi|^2. For an overlap matrix U_ij = <x_i|y_j> this means W = U^dagger.
/// Max-modulus and the Hadamard property are invariant under that adjoint,
/// and Fourier matrices are symmetric, so results stated for U carry over.
class ObservablePair {
 public:
  /// Throws NotUnitary if the unitarity defect exceeds `tolerance`.
  ObservablePair(CMatrix w, std::string label, double tolerance = 1e-10);

  const CMatrix& matrix() const noexcept { return w_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t dimension() const noexcept { return w_.rows(); }

 private:
  CMatrix w_;
  std::string label_;
};

}  // namespace entropic
