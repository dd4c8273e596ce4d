#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "entropic/numerics.hpp"

namespace entropic {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // a criterion over budget fails
  std::string detail;           // measured quantities, or the first failed check
  std::vector<std::string> reports;  // probe report JSON (criterion 10)
};

struct AcceptanceOptions {
  bool quick = false;  // reduced sample sizes, same tolerances
  std::size_t threads = 1;
  std::uint64_t seed = 0;
  std::vector<int> only;  // criterion ids to run; empty means all
  /// Replaces the built-in C6 overlap matrix (used to check that a corrupted
  /// constant is caught by the Hadamard-modulus gate).
  std::optional<CMatrix> c6_override;
  std::function<void(const CriterionResult&)> on_result;
};

/// Runs the ten acceptance criteria in order. Exceptions inside a criterion
/// are caught and reported as failures.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "[PASS]  3  Abelian Fourier enumeration  0.4s/30s  <detail>"
std::string format_result_line(const CriterionResult& result);

}  // namespace entropic
