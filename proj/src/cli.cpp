#include "conic/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <regex>

#include "conic/errors.hpp"
#include "conic/estimate.hpp"
#include "conic/record.hpp"
#include "conic/verify.hpp"

namespace conic::cli {

using formulas::Functional;
using formulas::FunctionalQuery;

namespace {

long parse_bound(const std::string& tok, long n, long d) {
  static const std::regex re(R"(^\s*(?:(-?\d+)|([nd])(?:\s*-\s*(\d+))?)\s*$)");
  std::smatch m;
  if (!std::regex_match(tok, m, re)) throw DomainError("cannot parse index bound '" + tok + "'");
  if (m[1].matched) return std::stol(m[1].str());
  long base = m[2].str() == "n" ? n : d;
  return m[3].matched ? base - std::stol(m[3].str()) : base;
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw DomainError("cannot parse integer list '" + s + "'");
    }
  }
  return out;
}

struct QueryFlags {
  std::string model = "B";
  long n = 0;
  long d = 0;
  std::string functional;
  std::string k, m, l, j;
  std::string indices, walks, bridges;
  bool conditioned = false;
  bool dual = false;
  std::string format = "json";
};

void add_query_flags(CLI::App* app, QueryFlags& f) {
  app->add_option("--model", f.model, "A (bridge) or B (walk)")->check(CLI::IsMember({"A", "B"}));
  app->add_option("--n", f.n, "number of increments");
  app->add_option("--d", f.d, "ambient dimension");
  app->add_option("--functional", f.functional,
                  "wendel, absorption, nonabsorption, fk, Uk, vk, Lambda, Y, Z, Y_dual, "
                  "face_intrinsic, tangent_intrinsic, face_prob, subspace_prob, joint_absorption; "
                  "fk/Uk/vk/Lambda accept a numeric suffix such as f1")
      ->required();
  app->add_option("--k", f.k, "index k or range a..b");
  app->add_option("--m", f.m, "index m or range a..b");
  app->add_option("--l", f.l, "index l or range a..b");
  app->add_option("--j", f.j, "index j or range a..b");
  app->add_option("--indices", f.indices, "face indices i1,i2,... (1-based steps)");
  app->add_option("--walks", f.walks, "walk block lengths for joint_absorption");
  app->add_option("--bridges", f.bridges, "bridge block lengths for joint_absorption");
  app->add_flag("--conditioned", f.conditioned, "condition on C != R^d");
  app->add_flag("--dual", f.dual, "evaluate on the polar cone");
  app->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

// Expands the flags into one query per index combination.
std::vector<FunctionalQuery> build_queries(const QueryFlags& f) {
  FunctionalQuery base;
  std::string name = f.functional;
  std::string k_spec = f.k;
  static const std::regex suffixed(R"(^(fk|f|Uk|U|vk|v|Lambda)(\d+)$)");
  std::smatch sm;
  if (std::regex_match(name, sm, suffixed)) {
    if (!k_spec.empty()) throw DomainError("functional '" + name + "' already fixes k; drop --k");
    std::string stem = sm[1].str();
    k_spec = sm[2].str();
    name = stem == "Lambda" ? "Lambda" : (stem.substr(0, 1) + "k");
  }
  base.functional = formulas::parse_functional(name);
  base.model.kind = formulas::parse_model_tag(f.model);
  base.model.n = f.n;
  base.model.d = f.d;
  base.indices = parse_list(f.indices);
  base.walks = parse_list(f.walks);
  base.bridges = parse_list(f.bridges);
  base.conditioned = f.conditioned;
  base.dual = f.dual;
  if (base.functional != Functional::wendel && base.functional != Functional::joint_absorption)
    formulas::validate(base.model);
  if (base.functional == Functional::joint_absorption && f.d < 1)
    throw DomainError("joint absorption requires --d >= 1");

  auto range = [&](const std::string& spec) {
    return spec.empty() ? std::vector<long>{0} : parse_range(spec, f.n, f.d);
  };
  std::vector<FunctionalQuery> out;
  for (long k : range(k_spec))
    for (long m : range(f.m))
      for (long l : range(f.l))
        for (long j : range(f.j)) {
          FunctionalQuery q = base;
          q.k = k;
          q.m = m;
          q.l = l;
          q.j = j;
          out.push_back(q);
        }
  return out;
}

void emit(const io::OutputRecord& r, const std::string& format, bool& header_done,
          std::ostream& out) {
  if (format == "csv") {
    if (!header_done) out << io::csv_header() << "\n";
    header_done = true;
    out << io::to_csv(r) << "\n";
  } else {
    out << io::to_json(r).dump() << "\n";
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CONIC_WALKS_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError(std::string("CONIC_WALKS_SEED is not an unsigned integer: '") + env + "'");
    }
  }
  return 1;
}

}  // namespace

std::vector<long> parse_range(const std::string& spec, long n, long d) {
  auto dots = spec.find("..");
  if (dots == std::string::npos) return {parse_bound(spec, n, d)};
  long lo = parse_bound(spec.substr(0, dots), n, d);
  long hi = parse_bound(spec.substr(dots + 2), n, d);
  if (hi < lo) throw DomainError("empty index range '" + spec + "'");
  std::vector<long> v;
  for (long x = lo; x <= hi; ++x) v.push_back(x);
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact expectations and Monte Carlo checks for positive hulls of random walks and bridges"};
  app.require_subcommand(1);

  QueryFlags exact_flags;
  auto* exact = app.add_subcommand("exact", "evaluate closed forms exactly");
  add_query_flags(exact, exact_flags);

  QueryFlags sim_flags;
  long samples = 100000;
  std::string seed_text;
  std::string dist = "gaussian";
  int workers = 1;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate with its exact reference");
  add_query_flags(simulate, sim_flags);
  simulate->add_option("--samples", samples, "number of sampled cones")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed_text, "64-bit seed (default: $CONIC_WALKS_SEED or 1)");
  simulate->add_option("--dist", dist, "gaussian, heavy or scaled")
      ->check(CLI::IsMember({"gaussian", "heavy", "scaled"}));
  simulate->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

  long budget = 100000;
  std::string verify_seed_text;
  std::string report_path = "report.json";
  int verify_workers = 1;
  double threshold = 0.95;
  bool corrupt = false;
  auto* verify = app.add_subcommand("verify", "identity suite plus Monte Carlo gates");
  verify->add_option("--budget", budget, "samples per Monte Carlo gate");
  verify->add_option("--seed", verify_seed_text, "64-bit seed (default: $CONIC_WALKS_SEED or 1)");
  verify->add_option("--out", report_path, "report file");
  verify->add_option("--workers", verify_workers, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--threshold", threshold, "minimum Monte Carlo pass rate per distribution");
  verify->add_flag("--corrupt-table", corrupt, "perturb one Stirling entry (harness self-test)")
      ->group("");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*exact) {
      bool header = false;
      const auto& ev = formulas::default_evaluator();
      std::vector<io::OutputRecord> records;
      for (const auto& q : build_queries(exact_flags)) {
        io::OutputRecord r;
        r.query = q;
        auto res = ev.evaluate(q);
        r.exact = res.exact;
        r.citation = res.citation;
        records.push_back(r);
      }
      for (const auto& r : records) emit(r, exact_flags.format, header, out);
      return kOk;
    }
    if (*simulate) {
      std::uint64_t seed = seed_text.empty() ? default_seed() : std::stoull(seed_text);
      bool header = false;
      for (const auto& q : build_queries(sim_flags)) {
        sim::RunConfig cfg;
        cfg.query = q;
        cfg.dist.family = sim::parse_dist(dist);
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.workers = workers;
        auto est = sim::estimate(cfg);
        io::OutputRecord r;
        r.query = q;
        r.exact = est.exact;
        r.citation = formulas::default_evaluator().evaluate(q).citation;
        r.estimate = io::fields_of(est);
        r.status = est.pass() ? io::Status::ok : io::Status::fail;
        emit(r, sim_flags.format, header, out);
      }
      return kOk;
    }
    if (*verify) {
      sim::VerifyOptions opt;
      opt.budget = budget;
      opt.seed = verify_seed_text.empty() ? default_seed() : std::stoull(verify_seed_text);
      opt.workers = verify_workers;
      opt.threshold = threshold;
      if (corrupt) opt.corrupt = comb::Perturbation{comb::Kind::first, 5, 2, 1};
      auto rep = sim::verify_suite(opt);
      auto doc = sim::report_json(rep, opt);
      std::ofstream f(report_path, std::ios::binary);
      if (!f) {
        err << "error: cannot write report to " << report_path << "\n";
        return kNumeric;
      }
      f << doc.dump(2) << "\n";
      long failed_ids = 0;
      for (const auto& r : rep.identities) failed_ids += r.pass ? 0 : 1;
      out << "identities: " << (rep.identities.size() - failed_ids) << "/" << rep.identities.size()
          << " passed\n";
      if (rep.mc_skipped) {
        out << "monte carlo: skipped (budget " << budget << " < " << sim::kMinVerifyBudget << ")\n";
      } else {
        long passed = 0;
        for (const auto& g : rep.gates) passed += g.pass ? 1 : 0;
        out << "monte carlo: " << passed << "/" << rep.gates.size() << " gates passed\n";
      }
      out << "report: " << report_path << "\n";
      return rep.ok() ? kOk : kVerifyFailed;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const SamplingError& e) {
    err << "sampling failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace conic::cli
