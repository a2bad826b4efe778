#pragma once

// Small dense complex linear algebra.  Everything in this project lives in
// dimension 2 or 4 (single qubits and qubit pairs), so matrices and vectors
// use fixed-capacity storage and the eigensolver is a plain cyclic Jacobi
// iteration -- no external linear algebra dependency is needed.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "mdbench/errors.hpp"

namespace mdbench {

using cdouble = std::complex<double>;

// Dense row-major complex matrix with dimensions up to 4x4.
class CMat {
 public:
  static constexpr int kMaxDim = 4;

  CMat() : rows_(0), cols_(0), a_{} {}
  CMat(int rows, int cols);

  // Builds a matrix from a row-major list of entries; the list length must
  // equal rows*cols.
  static CMat of(int rows, int cols, std::initializer_list<cdouble> entries);
  static CMat identity(int n);
  static CMat zero(int n) { return CMat(n, n); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cdouble& at(int r, int c);
  const cdouble& at(int r, int c) const;
  cdouble operator()(int r, int c) const { return at(r, c); }

  CMat operator+(const CMat& other) const;
  CMat operator-(const CMat& other) const;
  CMat operator*(const CMat& other) const;  // matmul
  CMat operator*(cdouble scalar) const;

  cdouble trace() const;

 private:
  int rows_;
  int cols_;
  cdouble a_[kMaxDim * kMaxDim];
};

// Dense complex column vector with dimension up to 4.
class CVec {
 public:
  CVec() : n_(0), a_{} {}
  explicit CVec(int n);
  static CVec of(std::initializer_list<cdouble> entries);

  int size() const { return n_; }
  cdouble& at(int i);
  const cdouble& at(int i) const;
  cdouble operator()(int i) const { return at(i); }

  double norm() const;

 private:
  int n_;
  cdouble a_[CMat::kMaxDim];
};

// Eigendecomposition of a Hermitian matrix.  `values` are sorted ascending
// and column k of `vectors` is the (unit-norm) eigenvector for values[k].
struct HermEig {
  std::vector<double> values;
  CMat vectors;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Matrix product; throws ValidationError on incompatible shapes.
CMat matmul(const CMat& a, const CMat& b);

// Matrix-vector product.
CVec matvec(const CMat& a, const CVec& x);

// Kronecker (tensor) product.  kron(a, b) has block structure a(i,j)*b and
// the result dimension must stay within the 4x4 capacity.
CMat kron(const CMat& a, const CMat& b);

// Conjugate transpose.
CMat dagger(const CMat& a);

// Hermitian inner product <a|b> = sum_i conj(a_i) * b_i.
cdouble inner(const CVec& a, const CVec& b);

// True when a is square and a * dagger(a) == I within `tol` (max-abs).
bool is_unitary(const CMat& a, double tol = 1e-10);

// Eigendecomposition of a Hermitian matrix via cyclic Jacobi rotations.
//
// Guarantees, beyond the usual A v_k = values[k] v_k:
//  * eigenvalues are sorted ascending;
//  * the eigenvector columns are orthonormal, including inside clusters of
//    (nearly) equal eigenvalues, where an explicit re-orthonormalization
//    pass runs;
//  * each eigenvector's phase is fixed so that its first component of
//    largest modulus is real and non-negative, making results reproducible.
//
// Throws ValidationError when the input is not Hermitian within 1e-10.
HermEig hermitian_eig(const CMat& a);

// Largest entry-wise |a - b|; shapes must match.
double max_abs_diff(const CMat& a, const CMat& b);

// True when max_abs_diff(a, b) <= tol and the shapes agree.
bool approx_equal(const CMat& a, const CMat& b, double tol);

}  // namespace mdbench
