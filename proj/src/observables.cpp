#include "entropic/observables.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "entropic/error.hpp"
#include "entropic/sampling.hpp"

namespace entropic {

ObservablePair::ObservablePair(CMatrix w, std::string label, double tolerance)
    : w_(std::move(w)), label_(std::move(label)) {
  if (!w_.square() || w_.rows() < 1 || w_.rows() > kMaxDimension) {
    fail(ErrorCode::BadDimension, "analysis matrix must be square with 1 <= d <= 64");
  }
  if (!w_.all_finite()) fail(ErrorCode::NotUnitary, "analysis matrix has non-finite entries");
  const double defect = unitarity_defect(w_);
  if (defect > tolerance) {
    std::ostringstream msg;
    msg << "unitarity defect " << defect << " exceeds " << tolerance;
    fail(ErrorCode::NotUnitary, msg.str());
  }
}

ObservablePair fourier_cyclic(std::size_t d) {
  if (d < 2 || d > kMaxDimension) fail(ErrorCode::BadDimension, "fourier_cyclic needs 2 <= d <= 64");
  CMatrix w(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      w(j, k) = scale * turn_phase(static_cast<double>((j * k) % d) / static_cast<double>(d));
  return ObservablePair(std::move(w), "fourier:" + std::to_string(d));
}

ObservablePair fourier_group(const AbelianGroup& g) {
  const std::size_t d = g.order();
  if (d < 2) fail(ErrorCode::BadDimension, "fourier_group needs d >= 2");
  CMatrix w(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) w(j, k) = scale * turn_phase(g.pairing_turns(j, k));
  std::string label = "group:";
  for (std::size_t r = 0; r < g.orders().size(); ++r) {
    if (r) label += "x";
    label += std::to_string(g.orders()[r]);
  }
  return ObservablePair(std::move(w), std::move(label));
}

bool is_hadamard(const CMatrix& w, double tol) {
  if (!w.square() || w.rows() == 0) return false;
  const double target = 1.0 / std::sqrt(static_cast<double>(w.rows()));
  for (const auto& z : w.data())
    if (std::abs(std::abs(z) - target) > tol) return false;
  return true;
}

ObservablePair dephase(const ObservablePair& pair) {
  CMatrix w = pair.matrix();
  const std::size_t d = w.rows();
  for (std::size_t k = 0; k < d; ++k) {
    if (std::abs(w(0, k)) < 1e-12 || std::abs(w(k, 0)) < 1e-12) {
      fail(ErrorCode::ZeroEntry, "first row/column entry vanishes");
    }
  }
  // Columns first (makes row 0 real), then rows (row 0 is left unchanged since W_00 > 0).
  for (std::size_t k = 0; k < d; ++k) {
    const Complex phase = std::conj(w(0, k)) / std::abs(w(0, k));
    for (std::size_t j = 0; j < d; ++j) w(j, k) *= phase;
    w(0, k) = std::abs(w(0, k));
  }
  for (std::size_t j = 1; j < d; ++j) {
    const Complex phase = std::conj(w(j, 0)) / std::abs(w(j, 0));
    for (std::size_t k = 0; k < d; ++k) w(j, k) *= phase;
    w(j, 0) = std::abs(w(j, 0));
  }
  return ObservablePair(std::move(w), pair.label() + "|dephased", 1e-8);
}

CMatrix builtin_overlap(std::string_view name) {
  if (name == "example3") {
    const double a = 1.0 / std::numbers::sqrt2;
    const double b = 0.5;
    return CMatrix(3, 3, {a, a, 0.0,   //
                          b, -b, a,    //
                          -b, b, a});
  }
  if (name == "c6") {
    const double s3 = std::sqrt(3.0);
    const Complex eta((1.0 - s3) / 2.0, std::sqrt(s3 / 2.0));
    auto e = [&](int k) { return std::pow(eta, k); };
    const Complex one(1.0, 0.0);
    CMatrix u(6, 6, {one, one,     one,     one,     one,     one,  //
                     one, -one,    -e(1),   -e(2),   e(2),    e(1),  //
                     one, -e(-1),  one,     e(2),    -e(3),   e(2),  //
                     one, -e(-2),  e(-2),   -one,    e(2),    -e(2),  //
                     one, e(-2),   -e(-3),  e(-2),   one,     -e(1),  //
                     one, e(-1),   e(-2),   -e(-2),  -e(-1),  -one});
    const double scale = 1.0 / std::sqrt(6.0);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) u(i, j) *= scale;
    return u;
  }
  fail(ErrorCode::UnknownName, "unknown builtin matrix '" + std::string(name) + "'");
}

ObservablePair builtin(std::string_view name) {
  return ObservablePair(builtin_overlap(name).adjoint(), std::string(name));
}

ObservablePair real_rotation(double phi) {
  CMatrix w(2, 2);
  w(0, 0) = std::cos(phi);
  w(0, 1) = -std::sin(phi);
  w(1, 0) = std::sin(phi);
  w(1, 1) = std::cos(phi);
  std::ostringstream label;
  label << "rotation:" << phi;
  return ObservablePair(std::move(w), label.str());
}

ObservablePair random_unitary(std::size_t d, SeededRng& rng) {
  if (d < 2 || d > kMaxDimension) fail(ErrorCode::BadDimension, "random_unitary needs 2 <= d <= 64");
  CMatrix a(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double re = rng.normal();
      a(i, j) = Complex(re, rng.normal());
    }
  }
  // Modified Gram-Schmidt on columns; R_kk = |q_k| > 0 fixes the phase convention.
  for (std::size_t k = 0; k < d; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        Complex r(0.0, 0.0);
        for (std::size_t i = 0; i < d; ++i) r += std::conj(a(i, j)) * a(i, k);
        for (std::size_t i = 0; i < d; ++i) a(i, k) -= r * a(i, j);
      }
    }
    double n = 0.0;
    for (std::size_t i = 0; i < d; ++i) n += std::norm(a(i, k));
    n = std::sqrt(n);
    for (std::size_t i = 0; i < d; ++i) a(i, k) /= n;
  }
  std::ostringstream label;
  label << "random:" << rng.seed() << ":" << d;
  return ObservablePair(std::move(a), label.str());
}

ObservablePair random_rephase(const ObservablePair& pair, SeededRng& rng) {
  CMatrix w = pair.matrix();
  const std::size_t d = w.rows();
  CVector left(d), right(d);
  for (auto& z : left) z = turn_phase(rng.uniform());
  for (auto& z : right) z = turn_phase(rng.uniform());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) w(i, j) *= left[i] * right[j];
  return ObservablePair(std::move(w), pair.label() + "|rephased", 1e-8);
}

ObservablePair tensor_product(const ObservablePair& a, const ObservablePair& b) {
  return ObservablePair(tensor_product(a.matrix(), b.matrix()), a.label() + "(x)" + b.label(), 1e-9);
}

}  // namespace entropic
