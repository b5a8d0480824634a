#include "conic/verify.hpp"

#include <map>

namespace conic::sim {

using formulas::Functional;
using formulas::FunctionalQuery;
using formulas::Model;
using formulas::ModelKind;

std::vector<Gate> standard_gates() {
  auto q = [](ModelKind kind, long n, long d, Functional f) {
    FunctionalQuery query;
    query.model = Model{kind, n, d};
    query.functional = f;
    return query;
  };
  std::vector<Gate> gates;
  gates.push_back({"nonabsorption A n=4 d=2", q(ModelKind::a_bridge, 4, 2, Functional::nonabsorption)});
  gates.push_back({"nonabsorption B n=2 d=1", q(ModelKind::b_walk, 2, 1, Functional::nonabsorption)});
  {
    auto f = q(ModelKind::b_walk, 3, 2, Functional::fk);
    f.k = 1;
    gates.push_back({"f_1 B n=3 d=2", f});
    auto g = q(ModelKind::a_bridge, 4, 2, Functional::fk);
    g.k = 1;
    gates.push_back({"f_1 A n=4 d=2", g});
  }
  for (long k = 0; k <= 2; ++k) {
    auto v = q(ModelKind::a_bridge, 3, 2, Functional::vk);
    v.k = k;
    gates.push_back({"v_" + std::to_string(k) + " A n=3 d=2", v});
  }
  {
    auto f = q(ModelKind::b_walk, 3, 2, Functional::face_prob);
    f.indices = {1};
    gates.push_back({"face_prob B n=3 d=2 i=(1)", f});
  }
  {
    auto u = q(ModelKind::a_bridge, 4, 2, Functional::Uk);
    u.k = 1;
    u.conditioned = true;
    gates.push_back({"U_1 conditioned A n=4 d=2", u});
  }
  {
    auto jq = q(ModelKind::b_walk, 1, 1, Functional::joint_absorption);
    jq.walks = {1};
    jq.bridges = {2};
    gates.push_back({"joint absorption walk[1]+bridge[2] d=1", jq});
  }
  for (ModelKind kind : {ModelKind::a_bridge, ModelKind::b_walk}) {
    const char* tag = formulas::model_tag(kind);
    auto y = q(kind, 5, 3, Functional::Y);
    y.m = 2;
    y.l = 1;
    gates.push_back({std::string("Y_{2,1} ") + tag + " n=5 d=3", y});
    auto z = q(kind, 5, 3, Functional::Z);
    z.j = 1;
    z.k = 2;
    gates.push_back({std::string("Z_{1,2} ") + tag + " n=5 d=3", z});
  }
  return gates;
}

VerifyReport verify_suite(const VerifyOptions& opt) {
  VerifyReport rep;
  comb::StirlingTables tables(opt.corrupt);
  formulas::Evaluator ev(tables);
  rep.identities = checks::identity_suite(ev);
  for (const auto& r : rep.identities) rep.identities_pass = rep.identities_pass && r.pass;

  if (opt.budget < kMinVerifyBudget) {
    rep.mc_skipped = true;
    return rep;
  }
  const auto gates = standard_gates();
  std::uint64_t stream = 0;
  for (DistFamily dist : opt.dists) {
    long passed = 0;
    for (const Gate& g : gates) {
      RunConfig cfg;
      cfg.query = g.query;
      cfg.dist.family = dist;
      cfg.samples = opt.budget;
      // distinct seeds per gate keep the checks independent of each other
      cfg.seed = splitmix64(opt.seed ^ splitmix64(++stream));
      cfg.workers = opt.workers;
      GateOutcome out{g, dist, estimate(cfg), false};
      out.pass = out.estimate.pass(opt.z_gate);
      passed += out.pass ? 1 : 0;
      rep.gates.push_back(out);
    }
    double rate = static_cast<double>(passed) / static_cast<double>(gates.size());
    if (rate < opt.threshold) rep.mc_pass = false;
  }
  return rep;
}

nlohmann::json report_json(const VerifyReport& rep, const VerifyOptions& opt) {
  using nlohmann::json;
  json ids = json::array();
  for (const auto& r : rep.identities) {
    ids.push_back({{"name", r.name}, {"pass", r.pass}, {"cases", r.cases}, {"detail", r.detail}});
  }
  json gates = json::array();
  std::map<std::string, std::pair<long, long>> per_dist;
  for (const auto& g : rep.gates) {
    const auto& e = g.estimate;
    gates.push_back({{"name", g.gate.name},
                     {"dist", dist_name(g.dist)},
                     {"exact", e.exact ? e.exact->str() : ""},
                     {"mean", e.mean},
                     {"stderr", e.std_error},
                     {"z", e.z ? json(*e.z) : json(nullptr)},
                     {"samples", e.samples},
                     {"rejected", e.rejected},
                     {"pass", g.pass}});
    auto& [p, t] = per_dist[dist_name(g.dist)];
    p += g.pass ? 1 : 0;
    ++t;
  }
  json rates = json::object();
  for (const auto& [name, pt] : per_dist) {
    rates[name] = {{"passed", pt.first}, {"total", pt.second},
                   {"rate", static_cast<double>(pt.first) / static_cast<double>(pt.second)}};
  }
  return {
      {"schema", 1},
      {"seed", opt.seed},
      {"budget", opt.budget},
      {"threshold", opt.threshold},
      {"z_gate", opt.z_gate},
      {"corrupted_table", opt.corrupt.has_value()},
      {"identities", ids},
      {"identities_pass", rep.identities_pass},
      {"mc", {{"skipped", rep.mc_skipped},
              {"gates_per_distribution", static_cast<long>(standard_gates().size())},
              {"gates", gates},
              {"pass_rates", rates},
              {"pass", rep.mc_pass}}},
      {"ok", rep.ok()},
  };
}

}  // namespace conic::sim
