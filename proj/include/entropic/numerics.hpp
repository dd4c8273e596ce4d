#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace entropic {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr std::size_t kMaxDimension = 64;

/// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const Complex> data() const noexcept { return data_; }

  CMatrix adjoint() const;
  CMatrix conjugate() const;
  CMatrix transpose() const;

  /// Max entrywise modulus.
  double max_abs() const;
  bool all_finite() const;

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);

/// y = M x
CVector matvec(const CMatrix& m, std::span<const Complex> x);
/// y = M x without allocating; y must have m.rows() entries.
void matvec_into(const CMatrix& m, std::span<const Complex> x, std::span<Complex> y);
/// y = M^dagger x
CVector matvec_adjoint(const CMatrix& m, std::span<const Complex> x);

/// max_ij |(M^dagger M - I)_ij|
double unitarity_defect(const CMatrix& m);
/// max_ij |A_ij - B_ij|; dimensions must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Kronecker product; row index (i1, i2) maps to i1 * b.rows() + i2.
CMatrix tensor_product(const CMatrix& a, const CMatrix& b);
CVector tensor_product(std::span<const Complex> a, std::span<const Complex> b);

/// exp(2 pi i turns); exact for multiples of a quarter turn.
Complex turn_phase(double turns);

double norm(std::span<const Complex> v);
/// Scales v to unit norm. Throws BadDimension for the zero vector.
void normalize(std::span<Complex> v);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column k is the eigenvector for values[k]
};

/// Cyclic Jacobi eigensolver for Hermitian matrices (dim <= 64).
/// Throws NotHermitian if |H - H^dagger| exceeds 1e-10, NoConvergence after 100 sweeps.
EigenDecomposition hermitian_eigen(const CMatrix& h);

}  // namespace entropic
