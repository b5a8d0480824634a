#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "conic/combinatorics.hpp"
#include "conic/estimate.hpp"
#include "conic/identities.hpp"

namespace conic::sim {

inline constexpr long kMinVerifyBudget = 10000;

struct Gate {
  std::string name;
  formulas::FunctionalQuery query;
};

// The Monte Carlo spot checks run by verify_suite for every distribution.
std::vector<Gate> standard_gates();

struct GateOutcome {
  Gate gate;
  DistFamily dist = DistFamily::gaussian_iid;
  MCEstimate estimate;
  bool pass = false;
};

struct VerifyOptions {
  long budget = 100000;  // samples per gate; below kMinVerifyBudget the MC part is skipped
  std::uint64_t seed = 1;
  int workers = 1;
  double threshold = 0.95;  // minimum MC pass rate per distribution
  double z_gate = 4.0;
  std::optional<comb::Perturbation> corrupt;  // mutation test of the identity suite
  std::vector<DistFamily> dists = {DistFamily::gaussian_iid, DistFamily::heavy_tail_iid,
                                   DistFamily::scaled_gaussian_exchangeable};
};

struct VerifyReport {
  std::vector<checks::CheckResult> identities;
  std::vector<GateOutcome> gates;
  bool mc_skipped = false;
  bool identities_pass = true;
  bool mc_pass = true;
  bool ok() const { return identities_pass && mc_pass; }
};

VerifyReport verify_suite(const VerifyOptions& options);

// Deterministic report document (schema 1); contains no timing or worker data.
nlohmann::json report_json(const VerifyReport& report, const VerifyOptions& options);

}  // namespace conic::sim
