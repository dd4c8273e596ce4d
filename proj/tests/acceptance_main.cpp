// Runs every acceptance criterion at full budget; one line per criterion.
#include <cstdio>
#include <cstring>
#include <fstream>

#include "entropic/acceptance.hpp"

int main(int argc, char** argv) {
  entropic::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) options.quick = true;
  options.on_result = [](const entropic::CriterionResult& r) {
    std::printf("%s\n", entropic::format_result_line(r).c_str());
    std::fflush(stdout);
  };
  const auto results = entropic::run_acceptance(options);

  std::ofstream archive("probe_reports.json");
  archive << "[\n";
  bool first = true;
  int failed = 0;
  for (const auto& r : results) {
    failed += !r.passed;
    for (const auto& j : r.reports) {
      archive << (first ? "  " : ",\n  ") << j;
      first = false;
    }
  }
  archive << "\n]\n";
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
