#pragma once

#include <Eigen/Dense>
#include <vector>

namespace conic::nnls {

struct Result {
  Eigen::VectorXd x;
  std::vector<bool> passive;
  int iterations = 0;
};

// Lawson-Hanson active-set solver for  min ||A x - b||  subject to  x >= 0.
// The entering variable is the lowest index whose dual value exceeds
// tol * max(1, ||b||), which keeps the path deterministic.
// Throws NumericError when max_iter outer iterations are exceeded
// (max_iter <= 0 selects 3 * cols + 10).
Result solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol = 1e-9,
             int max_iter = 0);

}  // namespace conic::nnls
