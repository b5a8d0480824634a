#include "conic/geometry.hpp"

#include <cmath>
#include <string>

#include "conic/errors.hpp"
#include "conic/lp.hpp"
#include "conic/nnls.hpp"

namespace conic::geom {

Eigen::MatrixXd normalized_rows(const Eigen::MatrixXd& points) {
  Eigen::MatrixXd out = points;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    double nrm = out.row(i).norm();
    if (nrm > 0.0) out.row(i) /= nrm;
  }
  return out;
}

bool origin_in_convex_hull(const Eigen::MatrixXd& points, double tol) {
  if (points.rows() == 0) throw DomainError("origin_in_convex_hull needs at least one point");
  const Eigen::Index q = points.cols();
  if (q == 0) return true;
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd X(n, q);
  for (Eigen::Index i = 0; i < n; ++i) {
    double nrm = points.row(i).norm();
    if (nrm <= tol) return true;
    X.row(i) = points.row(i) / nrm;
  }
  Eigen::MatrixXd A(q + 1, n);
  A.topRows(q) = X.transpose();
  A.row(q).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(q + 1);
  b(q) = 1.0;
  auto res = lp::phase_one(A, b);
  if (res.status != lp::Status::optimal) {
    throw NumericError("origin_in_convex_hull: phase-one simplex did not terminate (" +
                       std::to_string(n) + " points in dimension " + std::to_string(q) + ")");
  }
  return res.objective <= tol;
}

bool is_pointed(const Eigen::MatrixXd& vectors, double tol) {
  const int q = static_cast<int>(vectors.cols());
  if (q == 0) return true;
  std::vector<Eigen::VectorXd> keep;
  for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
    double nrm = vectors.row(i).norm();
    if (nrm > tol) keep.push_back(vectors.row(i).transpose() / nrm);
  }
  if (keep.empty()) return true;
  const int r = static_cast<int>(keep.size());
  const int cols = 2 * q + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(r + 2 * q + 1, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(r + 2 * q + 1);
  for (int i = 0; i < r; ++i) {
    A.block(i, 0, 1, q) = keep[i].transpose();
    A.block(i, q, 1, q) = -keep[i].transpose();
    A(i, 2 * q) = 1.0;
  }
  for (int k = 0; k < 2 * q + 1; ++k) {
    A(r + k, k) = 1.0;
    b(r + k) = 1.0;
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(cols);
  c(2 * q) = 1.0;
  auto res = lp::maximize(A, b, c);
  if (res.status != lp::Status::optimal) {
    throw NumericError("pointedness LP did not reach an optimum (" + std::to_string(r) +
                       " generators in dimension " + std::to_string(q) + ")");
  }
  return res.objective > tol;
}

bool is_full_cone(const ConeSample& cone) {
  if (cone.size() == 0) return cone.dim() == 0;
  return !is_pointed(cone.generators, cone.tol);
}

Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& basis, int ambient) {
  const int m = static_cast<int>(basis.cols());
  if (m == 0) return Eigen::MatrixXd::Identity(ambient, ambient);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(ambient, ambient);
  return Q.rightCols(ambient - m);
}

namespace {

void check_subset(const ConeSample& cone, std::span<const int> subset) {
  int prev = -1;
  for (int i : subset) {
    if (i <= prev || i >= cone.size()) {
      throw DomainError("face subset must be increasing generator indices in 0.." +
                        std::to_string(cone.size() - 1));
    }
    prev = i;
  }
}

// Orthonormal basis of span(selected rows)^perp; throws on rank deficiency.
Eigen::MatrixXd face_complement(const ConeSample& cone, std::span<const int> subset) {
  const int d = cone.dim();
  const int k = static_cast<int>(subset.size());
  Eigen::MatrixXd S(d, k);
  for (int c = 0; c < k; ++c) {
    Eigen::VectorXd v = cone.generators.row(subset[c]).transpose();
    double nrm = v.norm();
    if (nrm <= 0.0) throw DegenerateInput("selected generator is the zero vector");
    S.col(c) = v / nrm;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(S);
  double smin = svd.singularValues()(k - 1);
  if (smin < kGeneralPositionTol) {
    throw DegenerateInput("selected generators are numerically linearly dependent (smallest singular value " +
                          std::to_string(smin) + ")");
  }
  return orthogonal_complement(S, d);
}

Eigen::MatrixXd project_others(const ConeSample& cone, std::span<const int> subset,
                               const Eigen::MatrixXd& W) {
  std::vector<bool> chosen(cone.size(), false);
  for (int i : subset) chosen[i] = true;
  Eigen::MatrixXd out(cone.size() - static_cast<int>(subset.size()), W.cols());
  Eigen::Index row = 0;
  for (int i = 0; i < cone.size(); ++i) {
    if (chosen[i]) continue;
    Eigen::RowVectorXd g = cone.generators.row(i);
    double nrm = g.norm();
    if (nrm > 0.0) g /= nrm;
    out.row(row++) = g * W;
  }
  return out;
}

}  // namespace

bool is_face(const ConeSample& cone, std::span<const int> subset) {
  check_subset(cone, subset);
  const int k = static_cast<int>(subset.size());
  if (k >= cone.dim()) {
    throw DomainError("is_face requires 1 <= k <= d-1 selected generators (got k=" +
                      std::to_string(k) + ", d=" + std::to_string(cone.dim()) + ")");
  }
  if (k == 0) return is_pointed(cone.generators, cone.tol);
  Eigen::MatrixXd W = face_complement(cone, subset);
  return is_pointed(project_others(cone, subset, W), cone.tol);
}

bool intersects_subspace(const ConeSample& cone, const Subspace& V) {
  const int d = cone.dim();
  if (V.ambient() != d) throw DomainError("subspace and cone live in different dimensions");
  if (V.dim() < 1) throw DomainError("intersects_subspace requires dim V >= 1");
  if (cone.size() == 0) return false;
  if (V.dim() == d) return cone.generators.rowwise().norm().maxCoeff() > 0.0;
  Eigen::MatrixXd W = orthogonal_complement(V.basis, d);
  return origin_in_convex_hull(normalized_rows(cone.generators) * W, cone.tol);
}

ConeProjection project_onto_cone(const Eigen::VectorXd& g, const ConeSample& cone) {
  if (g.size() != cone.dim()) throw DomainError("projection point has the wrong dimension");
  ConeProjection out;
  if (cone.size() == 0) {
    out.point = Eigen::VectorXd::Zero(cone.dim());
    return out;
  }
  Eigen::MatrixXd A = normalized_rows(cone.generators).transpose();
  auto sol = nnls::solve(A, g, cone.tol);
  out.point = A * sol.x;
  double xmax = sol.x.maxCoeff();
  if (xmax > 0.0) {
    for (int j = 0; j < static_cast<int>(sol.x.size()); ++j)
      if (sol.x(j) > cone.tol * xmax) out.active_set.push_back(j);
  }
  out.face_dim = std::min(static_cast<int>(out.active_set.size()), cone.dim());
  return out;
}

Subspace sample_uniform_subspace(int d, int m, std::mt19937_64& rng) {
  if (d < 0 || m < 0 || m > d) {
    throw DomainError("subspace sampling requires 0 <= m <= d (got m=" + std::to_string(m) +
                      ", d=" + std::to_string(d) + ")");
  }
  Subspace V;
  if (m == 0) {
    V.basis = Eigen::MatrixXd(d, 0);
    return V;
  }
  std::normal_distribution<double> normal;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::MatrixXd G(d, m);
    for (int c = 0; c < m; ++c)
      for (int r = 0; r < d; ++r) G(r, c) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd R = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    bool ok = true;
    for (int i = 0; i < m; ++i)
      if (std::abs(R(i, i)) < 1e-10) ok = false;
    if (!ok) continue;
    V.basis = qr.householderQ() * Eigen::MatrixXd::Identity(d, m);
    return V;
  }
  throw SamplingError("could not draw a full-rank Gaussian matrix for subspace sampling");
}

FaceCount count_k_faces(const ConeSample& cone, int k) {
  const int d = cone.dim();
  if (k < 0 || k > d - 1) {
    throw DomainError("count_k_faces requires 0 <= k <= d-1 (got k=" + std::to_string(k) +
                      ", d=" + std::to_string(d) + ")");
  }
  FaceCount out;
  if (is_full_cone(cone)) {
    out.degenerate = true;
    return out;
  }
  if (k == 0) {
    out.count = 1;
    return out;
  }
  for_each_subset(cone.size(), k, [&](std::span<const int> s) {
    if (is_face(cone, s)) ++out.count;
  });
  return out;
}

ConeSample tangent_cone_projection_base(const ConeSample& cone, std::span<const int> subset) {
  if (subset.empty()) return cone;
  if (!is_face(cone, subset)) throw DomainError("tangent cone base requested for a non-face subset");
  Eigen::MatrixXd W = face_complement(cone, subset);
  ConeSample out;
  out.generators = project_others(cone, subset, W);
  out.model = ModelTag::generic;
  out.tol = cone.tol;
  return out;
}

ConeSample polar_cone(const ConeSample& cone) {
  const int d = cone.dim();
  ConeSample out;
  out.model = ModelTag::generic;
  out.tol = cone.tol;
  if (is_full_cone(cone)) {
    out.generators = Eigen::MatrixXd(0, d);
    return out;
  }
  if (cone.size() < d) throw DegenerateInput("polar of a lower-dimensional cone is not pointed");
  std::vector<Eigen::VectorXd> normals;
  Eigen::MatrixXd G = normalized_rows(cone.generators);
  for_each_subset(cone.size(), d - 1, [&](std::span<const int> s) {
    Eigen::VectorXd u;
    if (s.empty()) {
      u = Eigen::VectorXd::Ones(1);
    } else {
      if (!is_face(cone, s)) return;
      u = face_complement(cone, s).col(0);
    }
    double side = (G * u).sum();
    normals.push_back(side > 0.0 ? Eigen::VectorXd(-u) : u);
  });
  out.generators.resize(static_cast<Eigen::Index>(normals.size()), d);
  for (std::size_t i = 0; i < normals.size(); ++i)
    out.generators.row(static_cast<Eigen::Index>(i)) = normals[i].transpose();
  return out;
}

bool in_general_position(const Eigen::MatrixXd& generators, double rel_tol) {
  const int n = static_cast<int>(generators.rows());
  const int d = static_cast<int>(generators.cols());
  Eigen::MatrixXd G = normalized_rows(generators);
  for (int i = 0; i < n; ++i)
    if (G.row(i).norm() == 0.0) return false;
  if (n < d) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
    return svd.singularValues()(n - 1) >= rel_tol;
  }
  bool ok = true;
  Eigen::MatrixXd M(d, d);
  for_each_subset(n, d, [&](std::span<const int> s) {
    if (!ok) return;
    for (int r = 0; r < d; ++r) M.row(r) = G.row(s[r]);
    if (std::abs(M.partialPivLu().determinant()) < rel_tol) ok = false;
  });
  return ok;
}

}  // namespace conic::geom
