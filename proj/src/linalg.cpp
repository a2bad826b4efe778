#include "mdbench/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mdbench {

namespace {

void check_dim(int n) {
  if (n < 1 || n > CMat::kMaxDim) {
    throw ValidationError("matrix dimension out of range [1, 4]: " + std::to_string(n));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// CMat / CVec basics
// ---------------------------------------------------------------------------

CMat::CMat(int rows, int cols) : rows_(rows), cols_(cols), a_{} {
  check_dim(rows);
  check_dim(cols);
}

CMat CMat::of(int rows, int cols, std::initializer_list<cdouble> entries) {
  CMat m(rows, cols);
  if (static_cast<int>(entries.size()) != rows * cols) {
    throw ValidationError("entry list length does not match matrix shape");
  }
  int k = 0;
  for (const cdouble& v : entries) {
    m.a_[k++] = v;
  }
  return m;
}

CMat CMat::identity(int n) {
  CMat m(n, n);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = 1.0;
  }
  return m;
}

cdouble& CMat::at(int r, int c) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
    throw ValidationError("matrix index out of range");
  }
  return a_[r * cols_ + c];
}

const cdouble& CMat::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
    throw ValidationError("matrix index out of range");
  }
  return a_[r * cols_ + c];
}

CMat CMat::operator+(const CMat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw ValidationError("matrix shapes do not match for addition");
  }
  CMat r(rows_, cols_);
  for (int k = 0; k < rows_ * cols_; ++k) {
    r.a_[k] = a_[k] + other.a_[k];
  }
  return r;
}

CMat CMat::operator-(const CMat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw ValidationError("matrix shapes do not match for subtraction");
  }
  CMat r(rows_, cols_);
  for (int k = 0; k < rows_ * cols_; ++k) {
    r.a_[k] = a_[k] - other.a_[k];
  }
  return r;
}

CMat CMat::operator*(const CMat& other) const { return matmul(*this, other); }

CMat CMat::operator*(cdouble scalar) const {
  CMat r(rows_, cols_);
  for (int k = 0; k < rows_ * cols_; ++k) {
    r.a_[k] = a_[k] * scalar;
  }
  return r;
}

cdouble CMat::trace() const {
  if (rows_ != cols_) {
    throw ValidationError("trace requires a square matrix");
  }
  cdouble t = 0.0;
  for (int i = 0; i < rows_; ++i) {
    t += at(i, i);
  }
  return t;
}

CVec::CVec(int n) : n_(n), a_{} { check_dim(n); }

CVec CVec::of(std::initializer_list<cdouble> entries) {
  CVec v(static_cast<int>(entries.size()));
  int k = 0;
  for (const cdouble& e : entries) {
    v.a_[k++] = e;
  }
  return v;
}

cdouble& CVec::at(int i) {
  if (i < 0 || i >= n_) {
    throw ValidationError("vector index out of range");
  }
  return a_[i];
}

const cdouble& CVec::at(int i) const {
  if (i < 0 || i >= n_) {
    throw ValidationError("vector index out of range");
  }
  return a_[i];
}

double CVec::norm() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) {
    s += std::norm(a_[i]);
  }
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Free operations
// ---------------------------------------------------------------------------

CMat matmul(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows()) {
    throw ValidationError("matmul shape mismatch: " + std::to_string(a.cols()) +
                          " vs " + std::to_string(b.rows()));
  }
  CMat r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      cdouble s = 0.0;
      for (int k = 0; k < a.cols(); ++k) {
        s += a(i, k) * b(k, j);
      }
      r.at(i, j) = s;
    }
  }
  return r;
}

CVec matvec(const CMat& a, const CVec& x) {
  if (a.cols() != x.size()) {
    throw ValidationError("matvec shape mismatch");
  }
  CVec r(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    cdouble s = 0.0;
    for (int k = 0; k < a.cols(); ++k) {
      s += a(i, k) * x(k);
    }
    r.at(i) = s;
  }
  return r;
}

CMat kron(const CMat& a, const CMat& b) {
  const int rows = a.rows() * b.rows();
  const int cols = a.cols() * b.cols();
  if (rows > CMat::kMaxDim || cols > CMat::kMaxDim) {
    throw ValidationError("kron result exceeds the 4x4 capacity");
  }
  CMat r(rows, cols);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      for (int k = 0; k < b.rows(); ++k) {
        for (int l = 0; l < b.cols(); ++l) {
          r.at(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return r;
}

CMat dagger(const CMat& a) {
  CMat r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      r.at(j, i) = std::conj(a(i, j));
    }
  }
  return r;
}

cdouble inner(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) {
    throw ValidationError("inner product size mismatch");
  }
  cdouble s = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    s += std::conj(a(i)) * b(i);
  }
  return s;
}

bool is_unitary(const CMat& a, double tol) {
  if (a.rows() != a.cols()) {
    return false;
  }
  return max_abs_diff(matmul(a, dagger(a)), CMat::identity(a.rows())) <= tol;
}

double max_abs_diff(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("max_abs_diff shape mismatch");
  }
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
    }
  }
  return m;
}

bool approx_equal(const CMat& a, const CMat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return false;
  }
  return max_abs_diff(a, b) <= tol;
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition (cyclic Jacobi)
// ---------------------------------------------------------------------------

namespace {

constexpr double kHermTol = 1e-10;       // allowed asymmetry of the input
constexpr double kOffTol = 1e-14;        // convergence target for off-diagonals
constexpr double kClusterGap = 1e-9;     // eigenvalues closer than this form a cluster
constexpr int kMaxSweeps = 64;

// Applies one two-sided Jacobi rotation that zeroes A[p][q].  The rotation
// J acts on the (p, q) plane: it first strips the phase of the off-diagonal
// entry and then performs the classic real rotation.  V accumulates the
// product of rotations, so its columns converge to the eigenvectors.
void jacobi_rotate(CMat& A, CMat& V, int p, int q) {
  const cdouble g = A(p, q);
  const double ag = std::abs(g);
  if (ag < kOffTol * 1e-2) {
    return;
  }
  const cdouble u = g / ag;  // phase of the off-diagonal entry
  const double app = A(p, p).real();
  const double aqq = A(q, q).real();
  const double zeta = (app - aqq) / (2.0 * ag);
  // Smaller root of t^2 + 2*zeta*t - 1 = 0, the classic stable choice.
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // J = diag(1, conj(u)) * [[c, -s], [s, c]] restricted to the (p, q) plane:
  //   J[p][p] = c,          J[p][q] = -s,
  //   J[q][p] = conj(u)*s,  J[q][q] = conj(u)*c.
  const int n = A.rows();
  // Rows: A <- J^dag * A.
  for (int k = 0; k < n; ++k) {
    const cdouble apk = A(p, k);
    const cdouble aqk = A(q, k);
    A.at(p, k) = c * apk + u * s * aqk;
    A.at(q, k) = -s * apk + u * c * aqk;
  }
  // Columns: A <- A * J, and accumulate V <- V * J.
  for (int k = 0; k < n; ++k) {
    const cdouble akp = A(k, p);
    const cdouble akq = A(k, q);
    A.at(k, p) = akp * c + akq * std::conj(u) * s;
    A.at(k, q) = -akp * s + akq * std::conj(u) * c;

    const cdouble vkp = V(k, p);
    const cdouble vkq = V(k, q);
    V.at(k, p) = vkp * c + vkq * std::conj(u) * s;
    V.at(k, q) = -vkp * s + vkq * std::conj(u) * c;
  }
}

double max_offdiag(const CMat& A) {
  double m = 0.0;
  for (int p = 0; p < A.rows(); ++p) {
    for (int q = p + 1; q < A.cols(); ++q) {
      m = std::max(m, std::abs(A(p, q)));
    }
  }
  return m;
}

// Multiplies each eigenvector column by a unit phase so that its first
// component of largest modulus becomes real and non-negative.
void fix_column_phase(CMat& V, int col) {
  int best = 0;
  double best_mod = -1.0;
  for (int i = 0; i < V.rows(); ++i) {
    const double m = std::abs(V(i, col));
    if (m > best_mod + 1e-12) {
      best_mod = m;
      best = i;
    }
  }
  if (best_mod <= 0.0) {
    return;
  }
  const cdouble phase = V(best, col) / std::abs(V(best, col));
  for (int i = 0; i < V.rows(); ++i) {
    V.at(i, col) /= phase;
  }
}

// Modified Gram-Schmidt over a cluster of columns [lo, hi); Jacobi already
// delivers orthonormal columns, this pass just tightens degenerate clusters.
void orthonormalize_cluster(CMat& V, int lo, int hi) {
  for (int c = lo; c < hi; ++c) {
    for (int prev = lo; prev < c; ++prev) {
      cdouble proj = 0.0;
      for (int i = 0; i < V.rows(); ++i) {
        proj += std::conj(V(i, prev)) * V(i, c);
      }
      for (int i = 0; i < V.rows(); ++i) {
        V.at(i, c) -= proj * V(i, prev);
      }
    }
    double nrm = 0.0;
    for (int i = 0; i < V.rows(); ++i) {
      nrm += std::norm(V(i, c));
    }
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) {
      throw ValidationError("eigenvector cluster collapsed during re-orthonormalization");
    }
    for (int i = 0; i < V.rows(); ++i) {
      V.at(i, c) /= nrm;
    }
  }
}

}  // namespace

HermEig hermitian_eig(const CMat& a) {
  if (a.rows() != a.cols()) {
    throw ValidationError("hermitian_eig requires a square matrix");
  }
  if (max_abs_diff(a, dagger(a)) > kHermTol) {
    throw ValidationError("hermitian_eig input is not Hermitian within 1e-10");
  }
  const int n = a.rows();

  CMat A = a;
  // Force exact Hermitian symmetry so rounding in the input cannot drift.
  for (int i = 0; i < n; ++i) {
    A.at(i, i) = A(i, i).real();
    for (int j = i + 1; j < n; ++j) {
      const cdouble avg = 0.5 * (A(i, j) + std::conj(A(j, i)));
      A.at(i, j) = avg;
      A.at(j, i) = std::conj(avg);
    }
  }
  CMat V = CMat::identity(n);

  for (int sweep = 0; sweep < kMaxSweeps && max_offdiag(A) > kOffTol; ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        jacobi_rotate(A, V, p, q);
      }
    }
  }

  // Sort eigenpairs ascending by eigenvalue.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) {
    diag[i] = A(i, i).real();
  }
  std::sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });

  HermEig out;
  out.values.resize(n);
  out.vectors = CMat(n, n);
  for (int c = 0; c < n; ++c) {
    out.values[c] = diag[order[c]];
    for (int r = 0; r < n; ++r) {
      out.vectors.at(r, c) = V(r, order[c]);
    }
  }

  // Tighten degenerate clusters, then pin each column's phase.
  int lo = 0;
  while (lo < n) {
    int hi = lo + 1;
    while (hi < n && out.values[hi] - out.values[hi - 1] < kClusterGap) {
      ++hi;
    }
    if (hi - lo > 1) {
      orthonormalize_cluster(out.vectors, lo, hi);
    }
    lo = hi;
  }
  for (int c = 0; c < n; ++c) {
    fix_column_phase(out.vectors, c);
  }
  return out;
}

}  // namespace mdbench
