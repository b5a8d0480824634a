#include <doctest.h>

#include <functional>
#include <random>

#include "conic/errors.hpp"
#include "conic/lp.hpp"
#include "conic/nnls.hpp"

using namespace conic;

namespace {

// max c.x over {A x <= b, x >= 0} by enumerating every vertex.
double brute_force_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows()), n = static_cast<int>(A.cols());
  Eigen::MatrixXd G(m + n, n);
  Eigen::VectorXd h(m + n);
  G << A, -Eigen::MatrixXd::Identity(n, n);
  h << b, Eigen::VectorXd::Zero(n);
  double best = -1e300;
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      Eigen::MatrixXd M(n, n);
      Eigen::VectorXd r(n);
      for (int i = 0; i < n; ++i) {
        M.row(i) = G.row(pick[i]);
        r(i) = h(pick[i]);
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
      if (lu.rank() < n) return;
      Eigen::VectorXd x = lu.solve(r);
      if (((G * x - h).array() > 1e-9).any()) return;
      best = std::max(best, c.dot(x));
      return;
    }
    for (int i = start; i < m + n; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

// min ||A x - b|| over x >= 0 by trying every support.
double brute_force_nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(A.cols());
  double best = b.norm();
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> cols;
    for (int j = 0; j < n; ++j)
      if (mask >> j & 1) cols.push_back(j);
    Eigen::MatrixXd S(A.rows(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) S.col(j) = A.col(cols[j]);
    Eigen::VectorXd z = S.colPivHouseholderQr().solve(b);
    if ((z.array() < 0).any()) continue;
    best = std::min(best, (S * z - b).norm());
  }
  return best;
}

}  // namespace

TEST_CASE("simplex solves a textbook LP") {
  Eigen::MatrixXd A(3, 2);
  A << 1, 0, 0, 2, 3, 2;
  Eigen::VectorXd b(3), c(2);
  b << 4, 12, 18;
  c << 3, 5;
  auto r = lp::maximize(A, b, c);
  CHECK(r.status == lp::Status::optimal);
  CHECK(r.objective == doctest::Approx(36));
  CHECK(r.x(0) == doctest::Approx(2));
  CHECK(r.x(1) == doctest::Approx(6));
}

TEST_CASE("Bland's rule terminates on Beale's cycling example") {
  Eigen::MatrixXd A(3, 4);
  A << 0.25, -8, -1, 9, 0.5, -12, -0.5, 3, 0, 0, 1, 0;
  Eigen::VectorXd b(3), c(4);
  b << 0, 0, 1;
  c << 0.75, -20, 0.5, -6;
  auto r = lp::maximize(A, b, c);
  CHECK(r.status == lp::Status::optimal);
  CHECK(r.objective == doctest::Approx(1.25));
  CHECK(r.objective == doctest::Approx(brute_force_lp(A, b, c)));
}

TEST_CASE("simplex reports unbounded problems") {
  Eigen::MatrixXd A(1, 2);
  A << 1, -1;
  Eigen::VectorXd b(1), c(2);
  b << 1;
  c << 1, 1;
  CHECK(lp::maximize(A, b, c).status == lp::Status::unbounded);
}

TEST_CASE("simplex agrees with vertex enumeration on random bounded LPs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  std::uniform_real_distribution<double> pos(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4, m = 1 + trial % 3;
    Eigen::MatrixXd A(m + n, n);
    Eigen::VectorXd b(m + n), c(n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) A(i, j) = u(rng);
      b(i) = trial % 5 == 0 ? 0.0 : pos(rng);  // degenerate origin every fifth trial
    }
    A.bottomRows(n) = Eigen::MatrixXd::Identity(n, n);
    b.tail(n).setConstant(5.0);
    for (int j = 0; j < n; ++j) c(j) = u(rng);
    auto r = lp::maximize(A, b, c);
    INFO("trial " << trial);
    REQUIRE(r.status == lp::Status::optimal);
    CHECK(r.objective == doctest::Approx(brute_force_lp(A, b, c)).epsilon(1e-9));
    CHECK(((A * r.x - b).array() <= 1e-9).all());
    CHECK((r.x.array() >= -1e-12).all());
  }
}

TEST_CASE("phase one detects feasibility") {
  Eigen::MatrixXd A(2, 3);
  A << 1, 1, 1, 1, -1, 0;
  Eigen::VectorXd b(2);
  b << 1, 0;
  CHECK(lp::phase_one(A, b).objective == doctest::Approx(0).epsilon(1e-12));
  Eigen::MatrixXd A2(2, 2);
  A2 << 1, 1, 1, 1;
  Eigen::VectorXd b2(2);
  b2 << 1, 2;
  CHECK(lp::phase_one(A2, b2).objective > 0.1);
}

TEST_CASE("NNLS matches brute-force support search and satisfies KKT") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = 2 + trial % 5, cols = 1 + trial % 6;
    Eigen::MatrixXd A(rows, cols);
    Eigen::VectorXd b(rows);
    for (int i = 0; i < rows; ++i) {
      b(i) = g(rng);
      for (int j = 0; j < cols; ++j) A(i, j) = g(rng);
    }
    auto r = nnls::solve(A, b);
    INFO("trial " << trial);
    CHECK((r.x.array() >= 0).all());
    CHECK((A * r.x - b).norm() == doctest::Approx(brute_force_nnls(A, b)).epsilon(1e-8));
    Eigen::VectorXd w = A.transpose() * (b - A * r.x);
    for (int j = 0; j < cols; ++j) {
      CHECK(w(j) <= 1e-7);
      if (r.x(j) > 1e-9) CHECK(std::abs(w(j)) <= 1e-7);
    }
  }
}

TEST_CASE("NNLS edge cases") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(3, 3);
  Eigen::VectorXd b(3);
  b << -1, -2, -3;
  CHECK(nnls::solve(A, b).x.isZero());
  b << 1, 2, 3;
  CHECK(nnls::solve(A, b).x.isApprox(b));
  Eigen::MatrixXd dup(2, 2);
  dup << 1, 1, 0, 0;
  Eigen::VectorXd t(2);
  t << 2, 0;
  auto r = nnls::solve(dup, t);
  CHECK((dup * r.x - t).norm() == doctest::Approx(0).epsilon(1e-12));
}
