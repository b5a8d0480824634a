#pragma once

#include <Eigen/Dense>
#include <random>
#include <span>
#include <vector>

namespace conic::geom {

inline constexpr double kDefaultTol = 1e-9;
// Relative determinant threshold of the general-position guard.
inline constexpr double kGeneralPositionTol = 1e-12;

enum class ModelTag { a_bridge, b_walk, generic };

// Positive hull of the rows of `generators` (an n x d matrix).
struct ConeSample {
  Eigen::MatrixXd generators;
  ModelTag model = ModelTag::generic;
  double tol = kDefaultTol;
  long rejected = 0;  // general-position resamples spent producing this cone

  int dim() const { return static_cast<int>(generators.cols()); }
  int size() const { return static_cast<int>(generators.rows()); }
};

// Orthonormal columns spanning a linear subspace of R^d (d x m).
struct Subspace {
  Eigen::MatrixXd basis;

  int ambient() const { return static_cast<int>(basis.rows()); }
  int dim() const { return static_cast<int>(basis.cols()); }
};

struct ConeProjection {
  Eigen::VectorXd point;
  std::vector<int> active_set;  // generator rows with strictly positive coefficient
  int face_dim = 0;
};

struct FaceCount {
  long count = 0;
  bool degenerate = false;  // set when the cone is all of R^d
};

// Rows scaled to unit length; zero rows stay zero.
Eigen::MatrixXd normalized_rows(const Eigen::MatrixXd& points);

// Is 0 a convex combination of the rows of `points`? Decided by phase-one
// feasibility of  sum l_i x_i = 0, sum l_i = 1, l >= 0  on normalized rows.
bool origin_in_convex_hull(const Eigen::MatrixXd& points, double tol = kDefaultTol);

// Does pos(rows) contain no line? Maximizes the margin delta with
// <u, s_i> + delta <= 0, |u|_inf <= 1; pointed iff delta > tol.
// Rows with norm below tol are ignored; an empty set is pointed.
bool is_pointed(const Eigen::MatrixXd& vectors, double tol = kDefaultTol);

bool is_full_cone(const ConeSample& cone);

// Does pos of the selected rows (0-based, increasing) form a face of the cone?
// Projects the remaining generators onto the orthogonal complement M of their
// span and tests whether the projected cone is a proper (pointed) cone in M.
bool is_face(const ConeSample& cone, std::span<const int> subset);

// pos(generators) meets V in a nonzero point.
bool intersects_subspace(const ConeSample& cone, const Subspace& V);

// Orthonormal basis of the orthogonal complement of span(columns of basis).
Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& basis, int ambient);

ConeProjection project_onto_cone(const Eigen::VectorXd& g, const ConeSample& cone);

Subspace sample_uniform_subspace(int d, int m, std::mt19937_64& rng);

FaceCount count_k_faces(const ConeSample& cone, int k);

// C|M written in an orthonormal basis of M = span(selected)^perp; the empty
// subset returns the cone itself. Throws DomainError if the subset is not a face.
ConeSample tangent_cone_projection_base(const ConeSample& cone, std::span<const int> subset);

// Polar cone {y : <y, s_i> <= 0 for all i}. For a pointed full-dimensional
// cone its generators are the outer facet normals; for R^d it is {0}, returned
// as a cone with no generators.
ConeSample polar_cone(const ConeSample& cone);

// Every d-subset of the normalized rows has |det| >= rel_tol.
bool in_general_position(const Eigen::MatrixXd& generators, double rel_tol = kGeneralPositionTol);

// Calls visit(subset) for every increasing k-subset of {0..n-1}.
template <class F>
void for_each_subset(int n, int k, F&& visit) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    visit(std::span<const int>(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace conic::geom
