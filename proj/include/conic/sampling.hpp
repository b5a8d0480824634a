#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>

#include "conic/geometry.hpp"

namespace conic::sim {

using Rng = std::mt19937_64;

enum class DistFamily { gaussian_iid, heavy_tail_iid, scaled_gaussian_exchangeable };

// gaussian_iid: independent standard Gaussian increments.
// heavy_tail_iid: independent standard Cauchy coordinates (no mean).
// scaled_gaussian_exchangeable: X_i = D G_i with G_i iid standard Gaussian and
//   one random diagonal D = diag(exp(scale_sigma * N(0,1))) shared by all
//   increments of a sample, so the increments are dependent.
struct DistributionSpec {
  DistFamily family = DistFamily::gaussian_iid;
  int d = 1;
  double scale_sigma = 1.0;
};

const char* dist_name(DistFamily f);  // "gaussian", "heavy", "scaled"
DistFamily parse_dist(const std::string& name);

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream for one (seed, sample index, substream) triple.
Rng derive_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0);

// n x d matrix of increments.
Eigen::MatrixXd draw_increments(const DistributionSpec& dist, int n, Rng& rng);

// Rows S_1..S_n.
Eigen::MatrixXd walk_points(const Eigen::MatrixXd& increments);
// Rows S~_1..S~_{n-1} of the centered increments X_i - S_n/n.
Eigen::MatrixXd bridge_points(const Eigen::MatrixXd& increments);

inline constexpr int kMaxResamples = 1000;

// Cones of the walk and bridge models with the general-position guard;
// rejected draws are counted in ConeSample::rejected.
geom::ConeSample sample_walk(const DistributionSpec& dist, int n, Rng& rng);
geom::ConeSample sample_bridge(const DistributionSpec& dist, int n, Rng& rng);

}  // namespace conic::sim
