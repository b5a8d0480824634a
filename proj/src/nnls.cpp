#include "conic/nnls.hpp"

#include <string>

#include "conic/errors.hpp"

namespace conic::nnls {

namespace {

Eigen::VectorXd solve_on(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                         const std::vector<bool>& passive) {
  std::vector<int> idx;
  for (int j = 0; j < static_cast<int>(passive.size()); ++j)
    if (passive[j]) idx.push_back(j);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(A.cols());
  if (idx.empty()) return z;
  Eigen::MatrixXd sub(A.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = A.col(idx[c]);
  Eigen::VectorXd zs = sub.colPivHouseholderQr().solve(b);
  for (std::size_t c = 0; c < idx.size(); ++c) z(idx[c]) = zs(static_cast<Eigen::Index>(c));
  return z;
}

}  // namespace

Result solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol, int max_iter) {
  if (A.rows() != b.size()) throw DomainError("nnls: dimension mismatch");
  const int n = static_cast<int>(A.cols());
  if (max_iter <= 0) max_iter = 3 * n + 10;
  const double wtol = tol * std::max(1.0, b.norm());

  Result res;
  res.x = Eigen::VectorXd::Zero(n);
  res.passive.assign(n, false);
  std::vector<bool> blocked(n, false);

  for (;;) {
    Eigen::VectorXd w = A.transpose() * (b - A * res.x);
    int enter = -1;
    for (int j = 0; j < n; ++j) {
      if (!res.passive[j] && !blocked[j] && w(j) > wtol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    if (++res.iterations > max_iter) {
      throw NumericError("nnls: no convergence after " + std::to_string(max_iter) + " iterations");
    }
    res.passive[enter] = true;
    Eigen::VectorXd z = solve_on(A, b, res.passive);
    if (z(enter) <= 0.0) {
      // Rounding made the entering column useless; skip it until x changes.
      res.passive[enter] = false;
      blocked[enter] = true;
      continue;
    }
    for (int inner = 0; inner <= n; ++inner) {
      bool feasible = true;
      for (int j = 0; j < n; ++j)
        if (res.passive[j] && z(j) <= 0.0) feasible = false;
      if (feasible) break;
      double alpha = 1.0;
      for (int j = 0; j < n; ++j) {
        if (res.passive[j] && z(j) <= 0.0) {
          double denom = res.x(j) - z(j);
          if (denom > 0.0) alpha = std::min(alpha, res.x(j) / denom);
        }
      }
      res.x += alpha * (z - res.x);
      for (int j = 0; j < n; ++j) {
        if (res.passive[j] && res.x(j) <= tol * std::max(1.0, res.x.cwiseAbs().maxCoeff())) {
          res.passive[j] = false;
          res.x(j) = 0.0;
        }
      }
      z = solve_on(A, b, res.passive);
    }
    for (int j = 0; j < n; ++j) res.x(j) = res.passive[j] ? std::max(z(j), 0.0) : 0.0;
    std::fill(blocked.begin(), blocked.end(), false);
  }
  return res;
}

}  // namespace conic::nnls
