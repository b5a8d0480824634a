// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "conic/cli.hpp"
#include "conic/combinatorics.hpp"
#include "conic/formulas.hpp"
#include "conic/geometry.hpp"
#include "conic/identities.hpp"
#include "conic/verify.hpp"

using namespace conic;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

bool brute_force_is_face(const Eigen::MatrixXd& gen, std::span<const int> S) {
  const int n = static_cast<int>(gen.rows()), d = static_cast<int>(gen.cols());
  bool found = false;
  geom::for_each_subset(n, d - 1, [&](std::span<const int> T) {
    if (found) return;
    for (int s : S)
      if (std::find(T.begin(), T.end(), s) == T.end()) return;
    Eigen::MatrixXd M(d - 1, d);
    for (int i = 0; i < d - 1; ++i) M.row(i) = gen.row(T[i]);
    Eigen::VectorXd normal = Eigen::FullPivLU<Eigen::MatrixXd>(M).kernel().col(0);
    int pos = 0, neg = 0;
    for (int i = 0; i < n; ++i) {
      if (std::find(T.begin(), T.end(), i) != T.end()) continue;
      (gen.row(i).dot(normal) > 0 ? pos : neg)++;
    }
    found = pos == 0 || neg == 0;
  });
  return found;
}

void criterion1() {
  auto t0 = Clock::now();
  comb::StirlingTables fresh;
  auto results = checks::stirling_identities(fresh, 30);
  auto comps = checks::composition_convolutions(fresh, 8);
  results.insert(results.end(), comps.begin(), comps.end());
  double secs = seconds_since(t0);
  long cases = 0, failed = 0;
  for (const auto& r : results) {
    cases += r.cases;
    failed += r.pass ? 0 : 1;
  }
  report(1, failed == 0 && secs < 10, "Stirling and composition identities, n <= 30 / n <= 8",
         std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) +
             " checks, " + std::to_string(cases) + " cases, " + fmt("%.2f s", secs));
}

void criterion2() {
  Rational w = formulas::Evaluator::wendel_probability(4, 3);
  report(2, w == Rational(7, 8), "Wendel probability for n=4, d=3", "got " + w.str());
}

void criterion3() {
  auto t0 = Clock::now();
  comb::StirlingTables fresh;
  formulas::Evaluator ev(fresh);
  auto results = checks::formula_consistency(ev, 10, 5);
  double secs = seconds_since(t0);
  long cases = 0, failed = 0;
  std::string bad;
  for (const auto& r : results) {
    cases += r.cases;
    if (!r.pass) {
      ++failed;
      bad += " " + r.name;
    }
  }
  report(3, failed == 0 && secs < 10, "exact formula consistency, n <= 10, d <= 5",
         std::to_string(cases) + " exact comparisons, " + fmt("%.2f s", secs) +
             (bad.empty() ? "" : ", failed:" + bad));
}

void criterion4() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  long instances = 0, subsets = 0, agree = 0;
  while (instances < 1000) {
    const int d = 2 + static_cast<int>(instances % 2);
    const int n = d + static_cast<int>((instances / 2) % (7 - d));
    geom::ConeSample c;
    c.generators.resize(n, d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) c.generators(i, j) = g(rng);
    if (!geom::in_general_position(c.generators)) continue;
    ++instances;
    for (int k = 1; k < d; ++k) {
      geom::for_each_subset(n, k, [&](std::span<const int> s) {
        ++subsets;
        agree += geom::is_face(c, s) == brute_force_is_face(c.generators, s) ? 1 : 0;
      });
    }
  }
  double secs = seconds_since(t0);
  report(4, agree == subsets && secs < 120, "is_face against supporting-hyperplane search",
         std::to_string(instances) + " cones, " + std::to_string(agree) + "/" +
             std::to_string(subsets) + " subsets agree, " + fmt("%.2f s", secs));
}

std::string gate_summary(const sim::VerifyReport& rep, sim::DistFamily fam, long& passed,
                         long& total) {
  passed = total = 0;
  double worst = 0;
  std::string worst_name;
  for (const auto& o : rep.gates) {
    if (o.dist != fam) continue;
    ++total;
    passed += o.pass ? 1 : 0;
    double z = o.estimate.z ? std::abs(*o.estimate.z) : 0.0;
    if (z >= worst) {
      worst = z;
      worst_name = o.gate.name;
    }
  }
  return std::string(sim::dist_name(fam)) + " " + std::to_string(passed) + "/" +
         std::to_string(total) + ", max |z| " + fmt("%.2f", worst) + " at " + worst_name;
}

void criteria5and6() {
  sim::VerifyOptions opt;
  opt.budget = 100000;
  opt.seed = 20240611;
  opt.dists = {sim::DistFamily::gaussian_iid};
  opt.threshold = 1.0;
  auto t0 = Clock::now();
  sim::VerifyReport rep = sim::verify_suite(opt);
  double secs = seconds_since(t0);
  long passed = 0, total = 0;
  std::string s = gate_summary(rep, sim::DistFamily::gaussian_iid, passed, total);
  report(5, total > 0 && passed == total && secs < 600, "Gaussian Monte Carlo gates at 1e5 samples",
         s + ", " + fmt("%.1f s", secs));

  opt.dists = {sim::DistFamily::heavy_tail_iid, sim::DistFamily::scaled_gaussian_exchangeable};
  rep = sim::verify_suite(opt);
  long p1 = 0, t1 = 0, p2 = 0, t2 = 0;
  std::string a = gate_summary(rep, sim::DistFamily::heavy_tail_iid, p1, t1);
  std::string b = gate_summary(rep, sim::DistFamily::scaled_gaussian_exchangeable, p2, t2);
  bool ok = t1 > 0 && t2 > 0 && p1 >= 0.95 * t1 && p2 >= 0.95 * t2;
  report(6, ok, "distribution-free gates (>= 95% per distribution)", a + "; " + b);
}

std::string slurp(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) return {};
  std::string s;
  char buf[4096];
  for (std::size_t k; (k = std::fread(buf, 1, sizeof buf, f)) > 0;) s.append(buf, k);
  std::fclose(f);
  return s;
}

void criterion7() {
  const std::string a = "acceptance_report_a.json", b = "acceptance_report_b.json",
                    c = "acceptance_report_c.json";
  std::ostringstream out, err;
  auto verify = [&](const std::string& path, const std::string& workers) {
    return cli::run({"conic-walks", "verify", "--seed", "77", "--budget", "10000", "--workers",
                     workers, "--out", path},
                    out, err);
  };
  int ca = verify(a, "1"), cb = verify(b, "1"), cc = verify(c, "3");
  std::string ra = slurp(a), rb = slurp(b), rc = slurp(c);
  bool ok = ca == 0 && cb == 0 && cc == 0 && !ra.empty() && ra == rb && ra == rc;
  std::remove(a.c_str());
  std::remove(b.c_str());
  std::remove(c.c_str());
  report(7, ok, "verify reports byte-identical across reruns and worker counts",
         std::to_string(ra.size()) + " bytes, exit codes " + std::to_string(ca) + "," +
             std::to_string(cb) + "," + std::to_string(cc));
}

void criterion8() {
  auto t0 = Clock::now();
  comb::StirlingTables fresh;
  formulas::Evaluator ev(fresh);
  Rational v = ev.expected_fk({formulas::ModelKind::a_bridge, 500, 3}, 1, true);
  double secs = seconds_since(t0);
  double x = v.to_double();
  report(8, std::abs(x - 6.0) <= 0.6 && secs < 5, "conditioned E f_1, A-bridge n=500, d=3",
         fmt("%.6f", x) + " vs 6, " + fmt("%.3f s", secs));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criteria5and6();
  criterion7();
  criterion8();
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
