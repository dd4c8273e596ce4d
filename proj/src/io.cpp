#include "entropic/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "entropic/error.hpp"
#include "entropic/groups.hpp"
#include "entropic/observables.hpp"
#include "entropic/rng.hpp"

namespace entropic {

namespace {

std::size_t parse_size(std::string_view text, const char* what) {
  if (text.empty()) fail(ErrorCode::ParseError, std::string("missing ") + what);
  std::size_t value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') fail(ErrorCode::ParseError, std::string("bad ") + what + ": " + std::string(text));
    value = value * 10 + static_cast<std::size_t>(c - '0');
    if (value > std::numeric_limits<std::uint32_t>::max()) {
      fail(ErrorCode::ParseError, std::string(what) + " too large");
    }
  }
  return value;
}

std::uint64_t parse_u64(std::string_view text) {
  if (text.empty()) fail(ErrorCode::ParseError, "missing seed");
  std::uint64_t value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') fail(ErrorCode::ParseError, "bad seed: " + std::string(text));
    const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
      fail(ErrorCode::ParseError, "seed overflows 64 bits");
    }
    value = value * 10 + digit;
  }
  return value;
}

}  // namespace

ObservablePair parse_unitary_json(std::string_view text, bool force, std::string label) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("unitary JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("d") || !doc.contains("matrix")) {
    fail(ErrorCode::ParseError, "unitary JSON needs keys \"d\" and \"matrix\"");
  }
  if (!doc["d"].is_number_integer() || doc["d"].get<long long>() < 1 ||
      doc["d"].get<long long>() > static_cast<long long>(kMaxDimension)) {
    fail(ErrorCode::ParseError, "\"d\" must be an integer in 1..64");
  }
  const auto d = static_cast<std::size_t>(doc["d"].get<long long>());
  const auto& rows = doc["matrix"];
  if (!rows.is_array() || rows.size() != d) fail(ErrorCode::ParseError, "\"matrix\" must have d rows");
  std::vector<Complex> entries;
  entries.reserve(d * d);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != d) fail(ErrorCode::ParseError, "each row must have d entries");
    for (const auto& z : row) {
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        fail(ErrorCode::ParseError, "entries must be [re, im] number pairs");
      }
      entries.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
  }
  CMatrix w(d, d, std::move(entries));
  const double tol = force ? std::numeric_limits<double>::infinity() : 1e-8;
  return ObservablePair(std::move(w), std::move(label), tol);
}

ObservablePair load_unitary_file(const std::string& path, bool force) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open unitary file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_unitary_json(buf.str(), force, "file:" + path);
}

std::string unitary_to_json(const ObservablePair& pair) {
  const CMatrix& w = pair.matrix();
  std::ostringstream out;
  out << "{\"d\": " << w.rows() << ", \"matrix\": [";
  for (std::size_t i = 0; i < w.rows(); ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < w.cols(); ++j) {
      out << (j ? ", " : "") << "[" << format_number(w(i, j).real()) << ", "
          << format_number(w(i, j).imag()) << "]";
    }
    out << "]";
  }
  out << "]}";
  return out.str();
}

ObservablePair resolve_unitary(std::string_view spec, bool force) {
  if (spec == "c6" || spec == "example3") return builtin(spec);
  if (spec.starts_with("fourier:")) return fourier_cyclic(parse_size(spec.substr(8), "dimension"));
  if (spec.starts_with("group:")) {
    std::vector<std::size_t> orders;
    std::string_view rest = spec.substr(6);
    while (true) {
      const auto x = rest.find('x');
      orders.push_back(parse_size(rest.substr(0, x), "group order"));
      if (x == std::string_view::npos) break;
      rest = rest.substr(x + 1);
    }
    return fourier_group(AbelianGroup(std::move(orders)));
  }
  if (spec.starts_with("random:")) {
    const std::string_view rest = spec.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) fail(ErrorCode::ParseError, "random spec is random:<seed>:<d>");
    SeededRng rng(parse_u64(rest.substr(0, colon)));
    return random_unitary(parse_size(rest.substr(colon + 1), "dimension"), rng);
  }
  if (spec.starts_with("file:")) return load_unitary_file(std::string(spec.substr(5)), force);
  fail(ErrorCode::ParseError, "unrecognized unitary spec '" + std::string(spec) + "'");
}

std::string format_number(double x) {
  if (x == 0.0) return "0";  // also folds -0
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

}  // namespace entropic
