#include "conic/sampling.hpp"

#include <cmath>

#include "conic/errors.hpp"

namespace conic::sim {

const char* dist_name(DistFamily f) {
  switch (f) {
    case DistFamily::gaussian_iid: return "gaussian";
    case DistFamily::heavy_tail_iid: return "heavy";
    case DistFamily::scaled_gaussian_exchangeable: return "scaled";
  }
  return "?";
}

DistFamily parse_dist(const std::string& name) {
  if (name == "gaussian" || name == "gaussian_iid") return DistFamily::gaussian_iid;
  if (name == "heavy" || name == "heavy_tail_iid") return DistFamily::heavy_tail_iid;
  if (name == "scaled" || name == "scaled_gaussian_exchangeable")
    return DistFamily::scaled_gaussian_exchangeable;
  throw DomainError("unknown distribution '" + name + "' (expected gaussian, heavy or scaled)");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng derive_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ index);
  h = splitmix64(h ^ (stream * 0xd1342543de82ef95ULL));
  return Rng(h);
}

Eigen::MatrixXd draw_increments(const DistributionSpec& dist, int n, Rng& rng) {
  const int d = dist.d;
  Eigen::MatrixXd X(n, d);
  switch (dist.family) {
    case DistFamily::gaussian_iid: {
      std::normal_distribution<double> normal;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) X(i, k) = normal(rng);
      break;
    }
    case DistFamily::heavy_tail_iid: {
      std::cauchy_distribution<double> cauchy;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) X(i, k) = cauchy(rng);
      break;
    }
    case DistFamily::scaled_gaussian_exchangeable: {
      std::normal_distribution<double> normal;
      Eigen::VectorXd scale(d);
      for (int k = 0; k < d; ++k) scale(k) = std::exp(dist.scale_sigma * normal(rng));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) X(i, k) = scale(k) * normal(rng);
      break;
    }
  }
  return X;
}

Eigen::MatrixXd walk_points(const Eigen::MatrixXd& increments) {
  Eigen::MatrixXd S = increments;
  for (Eigen::Index i = 1; i < S.rows(); ++i) S.row(i) += S.row(i - 1);
  return S;
}

Eigen::MatrixXd bridge_points(const Eigen::MatrixXd& increments) {
  const Eigen::Index n = increments.rows();
  Eigen::RowVectorXd mean = increments.colwise().sum() / static_cast<double>(n);
  Eigen::MatrixXd centered = increments.rowwise() - mean;
  Eigen::MatrixXd S = walk_points(centered);
  return S.topRows(n - 1);
}

namespace {

geom::ConeSample guarded(const DistributionSpec& dist, int n, Rng& rng, bool bridge) {
  geom::ConeSample cone;
  cone.model = bridge ? geom::ModelTag::a_bridge : geom::ModelTag::b_walk;
  for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
    Eigen::MatrixXd X = draw_increments(dist, n, rng);
    cone.generators = bridge ? bridge_points(X) : walk_points(X);
    if (geom::in_general_position(cone.generators)) return cone;
    ++cone.rejected;
  }
  throw SamplingError("general-position guard rejected " + std::to_string(kMaxResamples + 1) +
                      " consecutive draws");
}

}  // namespace

geom::ConeSample sample_walk(const DistributionSpec& dist, int n, Rng& rng) {
  if (n < dist.d) throw DomainError("walk sampling requires n >= d");
  return guarded(dist, n, rng, false);
}

geom::ConeSample sample_bridge(const DistributionSpec& dist, int n, Rng& rng) {
  if (n < dist.d + 1) throw DomainError("bridge sampling requires n >= d+1");
  return guarded(dist, n, rng, true);
}

}  // namespace conic::sim
