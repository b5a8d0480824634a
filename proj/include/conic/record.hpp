#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "conic/estimate.hpp"
#include "conic/formulas.hpp"

namespace conic::io {

enum class Status { ok, fail, skipped };

const char* status_name(Status s);
Status parse_status(const std::string& s);

struct EstimateFields {
  double mean = 0.0;
  double std_error = 0.0;
  long samples = 0;
  std::optional<double> z;
  long rejected = 0;
};

// One line of CLI output: the query, its exact value and optionally an estimate.
struct OutputRecord {
  formulas::FunctionalQuery query;
  std::optional<Rational> exact;
  std::string citation;
  std::optional<EstimateFields> estimate;
  Status status = Status::ok;
};

EstimateFields fields_of(const sim::MCEstimate& e);

nlohmann::json to_json(const OutputRecord& r);
OutputRecord record_from_json(const nlohmann::json& j);

// Fixed column order; list-valued columns use ';' as separator and absent
// values are empty cells.
const std::string& csv_header();
std::string to_csv(const OutputRecord& r);
OutputRecord record_from_csv(const std::string& line);

}  // namespace conic::io
