#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "curvedfem/errors.hpp"

namespace curvedfem {

/// Row-major (CSR) sparse matrix.
using CsrMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

/// Sparse symmetric matrix in CSR storage.
class SparseSym {
public:
  SparseSym() = default;
  /// Takes ownership of `m`. Throws DimensionMismatch if `m` is not square
  /// and Error if it is not symmetric within `symmetry_tol` (relative to the
  /// largest entry).
  explicit SparseSym(CsrMatrix m, double symmetry_tol = 1e-12);

  static SparseSym from_triplets(int n,
                                 const std::vector<Eigen::Triplet<double>> &t,
                                 double symmetry_tol = 1e-12);
  static SparseSym identity(int n);

  int rows() const { return static_cast<int>(m_.rows()); }
  long nonzeros() const { return m_.nonZeros(); }
  const CsrMatrix &csr() const { return m_; }
  double coeff(int i, int j) const { return m_.coeff(i, j); }
  Eigen::VectorXd diagonal() const { return m_.diagonal(); }

private:
  CsrMatrix m_;
};

/// y = A x, summing each row in stored column order.
Eigen::VectorXd matvec(const SparseSym &A, const Eigen::VectorXd &x);

struct SolveStats {
  int iterations{0};
  /// ||b - A x|| / ||b|| (absolute when b = 0).
  double final_residual{0};
  bool converged{false};
};

class NotConverged : public Error {
public:
  NotConverged(const std::string &what, SolveStats stats)
      : Error(what), stats_(stats) {}
  const SolveStats &stats() const { return stats_; }

private:
  SolveStats stats_;
};

struct CgResult {
  Eigen::VectorXd x;
  SolveStats stats;
};

/// Called after every iteration with the iteration count and current iterate.
using CgObserver = std::function<void(int, const Eigen::VectorXd &)>;

/// Jacobi-preconditioned conjugate gradients from a zero initial guess.
/// Stops when ||b - A x|| <= tol ||b||. `maxit` <= 0 means 10 n. Throws
/// NotConverged on iteration exhaustion or on a non-positive curvature
/// p^T A p (indefinite operator).
CgResult cg_solve(const SparseSym &A, const Eigen::VectorXd &b,
                  double tol = 1e-12, int maxit = 0,
                  const CgObserver &observer = {});

} // namespace curvedfem
