#include "curvedfem/linalg.hpp"

#include <cmath>
#include <sstream>

namespace curvedfem {

SparseSym::SparseSym(CsrMatrix m, double symmetry_tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    throw DimensionMismatch("symmetric matrix must be square");
  m_.makeCompressed();
  const CsrMatrix t = m_.transpose();
  double scale = 0;
  for (int k = 0; k < m_.nonZeros(); ++k)
    scale = std::max(scale, std::abs(m_.valuePtr()[k]));
  const CsrMatrix d = m_ - t;
  double diff = 0;
  for (int k = 0; k < d.nonZeros(); ++k)
    diff = std::max(diff, std::abs(d.valuePtr()[k]));
  if (diff > symmetry_tol * scale) {
    std::ostringstream os;
    os << "matrix is not symmetric: max |A - A^T| = " << diff
       << " relative to max |A| = " << scale;
    throw Error(os.str());
  }
}

SparseSym SparseSym::from_triplets(int n,
                                   const std::vector<Eigen::Triplet<double>> &t,
                                   double symmetry_tol) {
  CsrMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return SparseSym(std::move(m), symmetry_tol);
}

SparseSym SparseSym::identity(int n) {
  CsrMatrix m(n, n);
  m.setIdentity();
  return SparseSym(std::move(m));
}

Eigen::VectorXd matvec(const SparseSym &A, const Eigen::VectorXd &x) {
  const CsrMatrix &m = A.csr();
  if (x.size() != m.cols()) {
    std::ostringstream os;
    os << "matvec: matrix has " << m.cols() << " columns, vector has "
       << x.size() << " entries";
    throw DimensionMismatch(os.str());
  }
  Eigen::VectorXd y(m.rows());
  const int *outer = m.outerIndexPtr();
  const int *inner = m.innerIndexPtr();
  const double *values = m.valuePtr();
  for (int i = 0; i < m.rows(); ++i) {
    double sum = 0;
    for (int k = outer[i]; k < outer[i + 1]; ++k)
      sum += values[k] * x[inner[k]];
    y[i] = sum;
  }
  return y;
}

CgResult cg_solve(const SparseSym &A, const Eigen::VectorXd &b, double tol,
                  int maxit, const CgObserver &observer) {
  const int n = A.rows();
  if (b.size() != n)
    throw DimensionMismatch("cg_solve: right-hand side has wrong size");
  if (!(tol > 0))
    throw Error("cg_solve: tolerance must be positive");
  if (maxit <= 0)
    maxit = 10 * std::max(n, 1);

  Eigen::VectorXd inv_diag = A.diagonal();
  for (int i = 0; i < n; ++i)
    inv_diag[i] = inv_diag[i] > 0 ? 1.0 / inv_diag[i] : 1.0;

  CgResult result;
  result.x = Eigen::VectorXd::Zero(n);
  SolveStats &stats = result.stats;
  const double b_norm = b.norm();
  const double scale = b_norm > 0 ? b_norm : 1.0;
  if (b_norm == 0) {
    stats.converged = true;
    return result;
  }

  // The recursive residual can drift from the true one; restart from the
  // current iterate until the true residual meets the tolerance.
  constexpr int kMaxRestarts = 5;
  for (int restart = 0; restart <= kMaxRestarts; ++restart) {
    Eigen::VectorXd r = b - matvec(A, result.x);
    stats.final_residual = r.norm() / scale;
    if (stats.final_residual <= tol) {
      stats.converged = true;
      return result;
    }
    Eigen::VectorXd z = inv_diag.cwiseProduct(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    while (stats.iterations < maxit) {
      const Eigen::VectorXd Ap = matvec(A, p);
      const double curvature = p.dot(Ap);
      if (!(curvature > 0)) {
        stats.final_residual = r.norm() / scale;
        std::ostringstream os;
        os << "CG breakdown: p^T A p = " << curvature << " at iteration "
           << stats.iterations << " (matrix not positive definite)";
        throw NotConverged(os.str(), stats);
      }
      const double alpha = rz / curvature;
      result.x += alpha * p;
      r -= alpha * Ap;
      ++stats.iterations;
      if (observer)
        observer(stats.iterations, result.x);
      if (r.norm() <= tol * scale)
        break;
      z = inv_diag.cwiseProduct(r);
      const double rz_next = r.dot(z);
      p = z + (rz_next / rz) * p;
      rz = rz_next;
    }
    if (stats.iterations >= maxit)
      break;
  }
  stats.final_residual = (b - matvec(A, result.x)).norm() / scale;
  stats.converged = stats.final_residual <= tol;
  if (stats.converged)
    return result;
  std::ostringstream os;
  os << "CG did not converge: relative residual " << stats.final_residual
     << " after " << stats.iterations << " iterations (tolerance " << tol
     << ")";
  throw NotConverged(os.str(), stats);
}

} // namespace curvedfem
