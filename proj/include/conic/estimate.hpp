#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "conic/exact.hpp"
#include "conic/formulas.hpp"
#include "conic/sampling.hpp"

namespace conic::sim {

struct RunConfig {
  formulas::FunctionalQuery query;
  DistributionSpec dist;  // dist.d is overwritten with query.model.d
  long samples = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  long samples = 0;
  std::optional<Rational> exact;
  std::optional<double> z;  // absent without a reference or when std_error == 0
  long rejected = 0;

  // |z| <= gate; with zero spread, the mean must match the reference to 1e-12.
  bool pass(double gate = 4.0) const;
};

// Value of the functional on one freshly sampled cone (or configuration),
// drawing everything from `rng`. Adds general-position resamples to `rejected`.
double measure(const formulas::FunctionalQuery& query, const DistributionSpec& dist, Rng& rng,
               long& rejected);

// Sample i uses derive_stream(seed, i), so the result does not depend on the
// number of workers.
MCEstimate estimate(const RunConfig& config);

// Face-dimension histogram of the Gaussian projection (k = 0..d) over
// config.samples cones; the counts always sum to config.samples.
std::vector<long> intrinsic_volume_histogram(const RunConfig& config);

}  // namespace conic::sim
