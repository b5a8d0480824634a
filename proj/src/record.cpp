#include "conic/record.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "conic/errors.hpp"

namespace conic::io {

using formulas::FunctionalQuery;
using nlohmann::json;

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

Status parse_status(const std::string& s) {
  if (s == "ok") return Status::ok;
  if (s == "fail") return Status::fail;
  if (s == "skipped") return Status::skipped;
  throw DomainError("unknown record status '" + s + "'");
}

EstimateFields fields_of(const sim::MCEstimate& e) {
  return EstimateFields{e.mean, e.std_error, e.samples, e.z, e.rejected};
}

namespace {

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

std::vector<int> split_ints(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';')) out.push_back(std::stoi(tok));
  return out;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r' && ch != '\n') {
      cur += ch;
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

json to_json(const OutputRecord& r) {
  const FunctionalQuery& q = r.query;
  json query = {
      {"model", formulas::model_tag(q.model.kind)},
      {"n", q.model.n},
      {"d", q.model.d},
      {"functional", formulas::functional_name(q.functional)},
      {"k", q.k},
      {"m", q.m},
      {"l", q.l},
      {"j", q.j},
      {"indices", q.indices},
      {"walks", q.walks},
      {"bridges", q.bridges},
      {"conditioned", q.conditioned},
      {"dual", q.dual},
  };
  json out = {{"query", query}};
  if (r.exact) {
    out["exact"] = {{"num", r.exact->num().get_str()},
                    {"den", r.exact->den().get_str()},
                    {"approx", r.exact->to_double()}};
  }
  if (!r.citation.empty()) out["citation"] = r.citation;
  if (r.estimate) {
    const auto& e = *r.estimate;
    json est = {{"mean", e.mean}, {"stderr", e.std_error}, {"samples", e.samples},
                {"rejected", e.rejected}};
    est["z"] = e.z ? json(*e.z) : json(nullptr);
    out["estimate"] = est;
  }
  out["status"] = status_name(r.status);
  return out;
}

OutputRecord record_from_json(const json& j) {
  OutputRecord r;
  const json& q = j.at("query");
  r.query.model.kind = formulas::parse_model_tag(q.at("model").get<std::string>());
  r.query.model.n = q.at("n").get<long>();
  r.query.model.d = q.at("d").get<long>();
  r.query.functional = formulas::parse_functional(q.at("functional").get<std::string>());
  r.query.k = q.at("k").get<long>();
  r.query.m = q.at("m").get<long>();
  r.query.l = q.at("l").get<long>();
  r.query.j = q.at("j").get<long>();
  r.query.indices = q.at("indices").get<std::vector<int>>();
  r.query.walks = q.at("walks").get<std::vector<int>>();
  r.query.bridges = q.at("bridges").get<std::vector<int>>();
  r.query.conditioned = q.at("conditioned").get<bool>();
  r.query.dual = q.at("dual").get<bool>();
  if (j.contains("exact")) {
    r.exact = Rational(BigInt(j["exact"].at("num").get<std::string>()),
                       BigInt(j["exact"].at("den").get<std::string>()));
  }
  if (j.contains("citation")) r.citation = j["citation"].get<std::string>();
  if (j.contains("estimate")) {
    const json& e = j["estimate"];
    EstimateFields f;
    f.mean = e.at("mean").get<double>();
    f.std_error = e.at("stderr").get<double>();
    f.samples = e.at("samples").get<long>();
    f.rejected = e.at("rejected").get<long>();
    if (!e.at("z").is_null()) f.z = e["z"].get<double>();
    r.estimate = f;
  }
  r.status = parse_status(j.at("status").get<std::string>());
  return r;
}

const std::string& csv_header() {
  static const std::string h =
      "model,n,d,functional,k,m,l,j,indices,walks,bridges,conditioned,dual,num,den,approx,"
      "mean,stderr,samples,z,rejected,status";
  return h;
}

std::string to_csv(const OutputRecord& r) {
  const FunctionalQuery& q = r.query;
  std::vector<std::string> cells = {
      formulas::model_tag(q.model.kind),
      std::to_string(q.model.n),
      std::to_string(q.model.d),
      formulas::functional_name(q.functional),
      std::to_string(q.k),
      std::to_string(q.m),
      std::to_string(q.l),
      std::to_string(q.j),
      join(q.indices),
      join(q.walks),
      join(q.bridges),
      q.conditioned ? "1" : "0",
      q.dual ? "1" : "0",
  };
  if (r.exact) {
    cells.push_back(r.exact->num().get_str());
    cells.push_back(r.exact->den().get_str());
    cells.push_back(fmt_double(r.exact->to_double()));
  } else {
    cells.insert(cells.end(), {"", "", ""});
  }
  if (r.estimate) {
    const auto& e = *r.estimate;
    cells.push_back(fmt_double(e.mean));
    cells.push_back(fmt_double(e.std_error));
    cells.push_back(std::to_string(e.samples));
    cells.push_back(e.z ? fmt_double(*e.z) : "");
    cells.push_back(std::to_string(e.rejected));
  } else {
    cells.insert(cells.end(), {"", "", "", "", ""});
  }
  cells.push_back(status_name(r.status));
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
  return line;
}

OutputRecord record_from_csv(const std::string& line) {
  auto c = split_csv(line);
  if (c.size() != 22) throw DomainError("CSV record must have 22 columns");
  OutputRecord r;
  auto& q = r.query;
  q.model.kind = formulas::parse_model_tag(c[0]);
  q.model.n = std::stol(c[1]);
  q.model.d = std::stol(c[2]);
  q.functional = formulas::parse_functional(c[3]);
  q.k = std::stol(c[4]);
  q.m = std::stol(c[5]);
  q.l = std::stol(c[6]);
  q.j = std::stol(c[7]);
  q.indices = split_ints(c[8]);
  q.walks = split_ints(c[9]);
  q.bridges = split_ints(c[10]);
  q.conditioned = c[11] == "1";
  q.dual = c[12] == "1";
  if (!c[13].empty()) r.exact = Rational(BigInt(c[13]), BigInt(c[14]));
  if (!c[16].empty()) {
    EstimateFields f;
    f.mean = std::stod(c[16]);
    f.std_error = std::stod(c[17]);
    f.samples = std::stol(c[18]);
    if (!c[19].empty()) f.z = std::stod(c[19]);
    f.rejected = std::stol(c[20]);
    r.estimate = f;
  }
  r.status = parse_status(c[21]);
  return r;
}

}  // namespace conic::io
