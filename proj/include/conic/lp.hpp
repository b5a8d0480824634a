#pragma once

#include <Eigen/Dense>

namespace conic::lp {

enum class Status { optimal, unbounded, iteration_limit };

struct Result {
  Status status = Status::optimal;
  double objective = 0.0;
  Eigen::VectorXd x;
};

// maximize c.x  subject to  A x <= b, x >= 0, with b >= 0 (the origin is feasible).
// Dense tableau simplex with Bland's rule.
Result maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                double eps = 1e-12);

// Phase-one of the simplex method for  A x = b, x >= 0  with b >= 0.
// Returns the minimal total artificial slack; 0 means feasible.
Result phase_one(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double eps = 1e-12);

}  // namespace conic::lp
