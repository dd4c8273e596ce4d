#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "entropic/groups.hpp"
#include "entropic/observable_pair.hpp"
#include "entropic/rng.hpp"

namespace entropic {

/// W_jk = exp(2 pi i jk/d) / sqrt(d), 2 <= d <= 64.
ObservablePair fourier_cyclic(std::size_t d);

/// W_jk = bic(j, k) / sqrt(d) over mixed-radix element codes.
ObservablePair fourier_group(const AbelianGroup& g);

/// max_jk | |W_jk| - 1/sqrt(d) | <= tol
bool is_hadamard(const CMatrix& w, double tol = 1e-9);

/// D1 W D2 with diagonal unitaries such that the first row and column are
/// real and nonnegative. Throws ZeroEntry if any of them has modulus < 1e-12.
ObservablePair dephase(const ObservablePair& pair);

/// Matrices from the literature, stored as analysis matrices (adjoint of the
/// printed overlap matrix):
///  - "example3": [[a,a,0],[b,-b,a],[-b,b,a]], a = 1/sqrt2, b = 1/2; 1/c^2 = 2 < d = 3.
///  - "c6": the 6x6 complex Hadamard matrix built from
///    eta = (1 - sqrt3)/2 + i sqrt(sqrt3/2).
/// Throws UnknownName.
ObservablePair builtin(std::string_view name);
/// The printed (overlap) form U of a builtin; builtin(name).matrix() == U^dagger.
CMatrix builtin_overlap(std::string_view name);

/// [[cos phi, -sin phi], [sin phi, cos phi]], labelled "rotation:<phi>".
ObservablePair real_rotation(double phi);

/// Gaussian matrix, modified Gram-Schmidt (R with positive diagonal).
ObservablePair random_unitary(std::size_t d, SeededRng& rng);

/// Entropy-diagram-preserving random equivalent D1 W D2 with random diagonal phases.
ObservablePair random_rephase(const ObservablePair& pair, SeededRng& rng);

ObservablePair tensor_product(const ObservablePair& a, const ObservablePair& b);

}  // namespace entropic
