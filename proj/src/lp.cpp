#include "conic/lp.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "conic/errors.hpp"

namespace conic::lp {

namespace {

// Tableau rows 0..m-1 are constraints, row m holds reduced costs of a
// maximization (entering candidates have positive reduced cost). The last
// column is the right-hand side.
struct Tableau {
  Eigen::MatrixXd T;
  std::vector<int> basis;
  int m = 0;
  int cols = 0;

  void pivot(int row, int col) {
    T.row(row) /= T(row, col);
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      double f = T(i, col);
      if (f != 0.0) T.row(i) -= f * T.row(row);
    }
    basis[row] = col;
  }

  Status run(double eps, int max_iter) {
    for (int iter = 0; iter < max_iter; ++iter) {
      int enter = -1;
      for (int j = 0; j < cols; ++j) {
        if (T(m, j) > eps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::optimal;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        double a = T(i, enter);
        if (a > eps) best = std::min(best, std::max(0.0, T(i, cols)) / a);
      }
      int leave = -1;
      for (int i = 0; i < m; ++i) {
        double a = T(i, enter);
        if (a <= eps) continue;
        double ratio = std::max(0.0, T(i, cols)) / a;
        if (ratio <= best + eps * (1.0 + best) && (leave < 0 || basis[i] < basis[leave])) leave = i;
      }
      if (leave < 0) return Status::unbounded;
      pivot(leave, enter);
    }
    return Status::iteration_limit;
  }
};

int iteration_budget(int m, int n) { return 50 * (m + n) + 1000; }

}  // namespace

Result maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                double eps) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != n) throw DomainError("lp::maximize: dimension mismatch");
  if (m > 0 && b.minCoeff() < 0) throw DomainError("lp::maximize: requires b >= 0");
  Tableau tab;
  tab.m = m;
  tab.cols = n + m;
  tab.T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  tab.T.topLeftCorner(m, n) = A;
  tab.T.block(0, n, m, m).setIdentity();
  tab.T.col(n + m).head(m) = b;
  tab.T.row(m).head(n) = c.transpose();
  tab.basis.resize(m);
  for (int i = 0; i < m; ++i) tab.basis[i] = n + i;

  Result res;
  res.status = tab.run(eps, iteration_budget(m, n));
  res.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < n) res.x(tab.basis[i]) = tab.T(i, n + m);
  res.objective = c.dot(res.x);
  return res;
}

Result phase_one(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double eps) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m) throw DomainError("lp::phase_one: dimension mismatch");
  if (m > 0 && b.minCoeff() < 0) throw DomainError("lp::phase_one: requires b >= 0");
  Tableau tab;
  tab.m = m;
  tab.cols = n + m;
  tab.T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  tab.T.topLeftCorner(m, n) = A;
  tab.T.block(0, n, m, m).setIdentity();
  tab.T.col(n + m).head(m) = b;
  // maximize -sum(artificials); with artificials basic the reduced-cost row is
  // the column sums of the original columns.
  for (int i = 0; i < m; ++i) {
    tab.T.row(m).head(n) += A.row(i);
    tab.T(m, n + m) += b(i);
  }
  tab.basis.resize(m);
  for (int i = 0; i < m; ++i) tab.basis[i] = n + i;

  Result res;
  res.status = tab.run(eps, iteration_budget(m, n));
  res.x = Eigen::VectorXd::Zero(n);
  double slack = 0.0;
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n)
      res.x(tab.basis[i]) = tab.T(i, n + m);
    else
      slack += tab.T(i, n + m);
  }
  res.objective = slack;
  return res;
}

}  // namespace conic::lp
