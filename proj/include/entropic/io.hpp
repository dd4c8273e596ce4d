#pragma once

#include <string>
#include <string_view>

#include "entropic/observable_pair.hpp"

namespace entropic {

/// Unitary file format:
///   {"d": 3, "matrix": [[[re, im], ... d entries], ... d rows]}
/// The matrix is the analysis matrix W (pY = |W psi|^2). Inputs with a
/// unitarity defect above 1e-8 are rejected (NotUnitary) unless `force`.
ObservablePair parse_unitary_json(std::string_view text, bool force = false,
                                  std::string label = "file");
ObservablePair load_unitary_file(const std::string& path, bool force = false);
std::string unitary_to_json(const ObservablePair& pair);

/// Resolves a unitary spec: fourier:<d>, group:<n1>x<n2>[x...], c6, example3,
/// random:<seed>:<d>, file:<path>.
ObservablePair resolve_unitary(std::string_view spec, bool force = false);

/// 12 significant digits, the number format of every CSV/JSON output.
std::string format_number(double x);
/// x rounded to 12 significant digits (for JSON writers that print shortest round-trip).
double round12(double x);

}  // namespace entropic
