#include "conic/estimate.hpp"

#include <cmath>
#include <thread>

#include "conic/errors.hpp"
#include "conic/geometry.hpp"

namespace conic::sim {

using formulas::Functional;
using formulas::FunctionalQuery;
using formulas::ModelKind;
using geom::ConeSample;

namespace {

constexpr int kMaxConditioningDraws = 100000;

ConeSample draw_cone(const FunctionalQuery& q, const DistributionSpec& dist, Rng& rng,
                     long& rejected) {
  const int n = static_cast<int>(q.model.n);
  for (int attempt = 0; attempt < kMaxConditioningDraws; ++attempt) {
    ConeSample c = q.model.kind == ModelKind::a_bridge ? sample_bridge(dist, n, rng)
                                                       : sample_walk(dist, n, rng);
    rejected += c.rejected;
    if (!q.conditioned || !geom::is_full_cone(c)) return c;
  }
  throw SamplingError("conditioning on C != R^d failed for every draw");
}

Eigen::VectorXd gaussian_vector(int d, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd g(d);
  for (int i = 0; i < d; ++i) g(i) = normal(rng);
  return g;
}

ConeSample sub_cone(const ConeSample& cone, std::span<const int> subset) {
  ConeSample f;
  f.generators.resize(static_cast<Eigen::Index>(subset.size()), cone.dim());
  for (std::size_t r = 0; r < subset.size(); ++r)
    f.generators.row(static_cast<Eigen::Index>(r)) = cone.generators.row(subset[r]);
  f.tol = cone.tol;
  return f;
}

// U_k of a cone that is pointed or {0}: half the indicator that a uniform
// (d-k)-subspace meets it.
double quermass_pointed(const ConeSample& c, int k, Rng& rng) {
  const int d = c.dim();
  if (k >= d) return 0.0;
  auto V = geom::sample_uniform_subspace(d, d - k, rng);
  return geom::intersects_subspace(c, V) ? 0.5 : 0.0;
}

// Functionals of one cone; the cone may be R^d, pointed, or {0} (no generators).
double evaluate_on(const FunctionalQuery& q, const ConeSample& c, Rng& rng) {
  const int d = c.dim();
  const bool full = geom::is_full_cone(c);
  switch (q.functional) {
    case Functional::absorption: return full ? 1.0 : 0.0;
    case Functional::nonabsorption: return full ? 0.0 : 1.0;
    case Functional::fk: {
      if (full) return 0.0;
      return static_cast<double>(geom::count_k_faces(c, static_cast<int>(q.k)).count);
    }
    case Functional::Uk: {
      const int k = static_cast<int>(q.k);
      if (full) return (d - k > 0 && (d - k) % 2 == 1) ? 1.0 : 0.0;
      return quermass_pointed(c, k, rng);
    }
    case Functional::vk: {
      if (full) return q.k == d ? 1.0 : 0.0;
      auto proj = geom::project_onto_cone(gaussian_vector(d, rng), c);
      return proj.face_dim == q.k ? 1.0 : 0.0;
    }
    case Functional::Lambda:
    case Functional::Y: {
      const int m = static_cast<int>(q.functional == Functional::Lambda ? q.k : q.m);
      const int l = static_cast<int>(q.functional == Functional::Lambda ? q.k - 1 : q.l);
      if (full) return 0.0;
      auto V = geom::sample_uniform_subspace(d, d - l, rng);
      double total = 0.0;
      geom::for_each_subset(c.size(), m, [&](std::span<const int> s) {
        if (geom::is_face(c, s) && geom::intersects_subspace(sub_cone(c, s), V)) total += 0.5;
      });
      return total;
    }
    case Functional::Z: {
      const int j = static_cast<int>(q.j);
      const int k = static_cast<int>(q.k);
      if (full || k == d) return 0.0;
      if (j == 0) return quermass_pointed(c, k, rng);
      double total = 0.0;
      geom::for_each_subset(c.size(), j, [&](std::span<const int> s) {
        if (!geom::is_face(c, s)) return;
        ConeSample base = geom::tangent_cone_projection_base(c, s);
        total += quermass_pointed(base, k - j, rng);
      });
      return total;
    }
    case Functional::face_intrinsic_sum: {
      const int m = static_cast<int>(q.m);
      const int l = static_cast<int>(q.l);
      if (m == d) {
        if (full) return l == d ? 1.0 : 0.0;
        return geom::project_onto_cone(gaussian_vector(d, rng), c).face_dim == l ? 1.0 : 0.0;
      }
      if (full) return 0.0;
      Eigen::VectorXd g = gaussian_vector(d, rng);
      double total = 0.0;
      geom::for_each_subset(c.size(), m, [&](std::span<const int> s) {
        if (m > 0 && !geom::is_face(c, s)) return;
        if (geom::project_onto_cone(g, sub_cone(c, s)).face_dim == l) total += 1.0;
      });
      return total;
    }
    case Functional::tangent_intrinsic_sum: {
      const int j = static_cast<int>(q.j);
      const int k = static_cast<int>(q.k);
      if (full) return 0.0;
      double total = 0.0;
      geom::for_each_subset(c.size(), j, [&](std::span<const int> s) {
        if (j > 0 && !geom::is_face(c, s)) return;
        ConeSample base = geom::tangent_cone_projection_base(c, s);
        auto proj = geom::project_onto_cone(gaussian_vector(base.dim(), rng), base);
        if (proj.face_dim == k - j) total += 1.0;
      });
      return total;
    }
    case Functional::face_prob: {
      std::vector<int> rows;
      for (int i : q.indices) rows.push_back(i - 1);
      return geom::is_face(c, rows) ? 1.0 : 0.0;
    }
    case Functional::subspace_prob: {
      const int k = static_cast<int>(q.k);
      auto V = geom::sample_uniform_subspace(d, d - k, rng);
      return geom::intersects_subspace(c, V) ? 1.0 : 0.0;
    }
    default:
      break;
  }
  throw DomainError(std::string("no cone measurement for functional ") +
                    formulas::functional_name(q.functional));
}

void check_measurable(const FunctionalQuery& q) {
  if (q.dual && !formulas::supports_dual(q.functional)) {
    throw DomainError(std::string("polar-cone variant is not available for functional ") +
                      formulas::functional_name(q.functional));
  }
  if (q.conditioned && !formulas::supports_conditioning(q.functional)) {
    throw DomainError(std::string("conditioning on C != R^d is not defined for functional ") +
                      formulas::functional_name(q.functional));
  }
}

}  // namespace

bool MCEstimate::pass(double gate) const {
  if (!exact) return true;
  if (z) return std::abs(*z) <= gate;
  return std::abs(mean - exact->to_double()) <= 1e-12;
}

double measure(const FunctionalQuery& q, const DistributionSpec& dist_in, Rng& rng,
               long& rejected) {
  DistributionSpec dist = dist_in;
  dist.d = static_cast<int>(q.model.d);
  switch (q.functional) {
    case Functional::wendel: {
      // n symmetric iid points; the event is 0 outside their convex hull.
      const int n = static_cast<int>(q.model.n);
      for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
        Eigen::MatrixXd X = draw_increments(dist, n, rng);
        if (!geom::in_general_position(X)) {
          ++rejected;
          continue;
        }
        return geom::origin_in_convex_hull(X) ? 0.0 : 1.0;
      }
      throw SamplingError("general-position guard rejected every Wendel configuration");
    }
    case Functional::joint_absorption: {
      for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
        std::vector<Eigen::MatrixXd> blocks;
        Eigen::Index rows = 0;
        for (int w : q.walks) {
          blocks.push_back(walk_points(draw_increments(dist, w, rng)));
          rows += blocks.back().rows();
        }
        for (int b : q.bridges) {
          blocks.push_back(bridge_points(draw_increments(dist, b, rng)));
          rows += blocks.back().rows();
        }
        Eigen::MatrixXd P(rows, dist.d);
        Eigen::Index at = 0;
        for (auto& B : blocks) {
          P.middleRows(at, B.rows()) = B;
          at += B.rows();
        }
        if (!geom::in_general_position(P)) {
          ++rejected;
          continue;
        }
        return geom::origin_in_convex_hull(P) ? 1.0 : 0.0;
      }
      throw SamplingError("general-position guard rejected every joint configuration");
    }
    default:
      break;
  }
  check_measurable(q);
  ConeSample c = draw_cone(q, dist, rng, rejected);
  if (!q.dual) return evaluate_on(q, c, rng);

  // Polar-cone functionals, with f_k(C°), v_k(C°), ... measured on C° itself.
  FunctionalQuery pq = q;
  pq.dual = false;
  if (q.functional == Functional::Y && q.m == q.model.d) {
    // Y_{d,l}(C°) is U_l(C°): the only d-face of C° is C° itself.
    pq.functional = Functional::Uk;
    pq.k = q.l;
  }
  ConeSample polar = geom::polar_cone(c);
  if (polar.size() == 0 && pq.functional == Functional::fk) return q.k == 0 ? 1.0 : 0.0;
  if (pq.functional == Functional::fk && q.k == 0) return 1.0;
  if (pq.functional == Functional::fk && q.k == q.model.d) return 1.0;
  return evaluate_on(pq, polar, rng);
}

MCEstimate estimate(const RunConfig& cfg) {
  if (cfg.samples < 1) throw DomainError("Monte Carlo needs at least one sample");
  if (cfg.workers < 1) throw DomainError("worker count must be >= 1");
  MCEstimate out;
  if (cfg.query.functional != Functional::wendel && cfg.query.functional != Functional::joint_absorption)
    formulas::validate(cfg.query.model);
  out.exact = formulas::default_evaluator().evaluate(cfg.query).exact;

  const long N = cfg.samples;
  std::vector<double> values(static_cast<std::size_t>(N));
  std::vector<long> rejected(static_cast<std::size_t>(cfg.workers), 0);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(cfg.workers));
  auto work = [&](int w) {
    try {
      for (long i = w; i < N; i += cfg.workers) {
        Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(i));
        values[static_cast<std::size_t>(i)] = measure(cfg.query, cfg.dist, rng, rejected[w]);
      }
    } catch (...) {
      errors[static_cast<std::size_t>(w)] = std::current_exception();
    }
  };
  if (cfg.workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(N);
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  double var = N > 1 ? ss / static_cast<double>(N - 1) : 0.0;
  out.std_error = std::sqrt(var / static_cast<double>(N));
  out.samples = N;
  for (long r : rejected) out.rejected += r;
  if (out.std_error > 0.0) out.z = (out.mean - out.exact->to_double()) / out.std_error;
  return out;
}

std::vector<long> intrinsic_volume_histogram(const RunConfig& cfg) {
  const int d = static_cast<int>(cfg.query.model.d);
  formulas::validate(cfg.query.model);
  DistributionSpec dist = cfg.dist;
  dist.d = d;
  std::vector<long> counts(static_cast<std::size_t>(d + 1), 0);
  long rejected = 0;
  for (long i = 0; i < cfg.samples; ++i) {
    Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(i));
    ConeSample c = draw_cone(cfg.query, dist, rng, rejected);
    int k = geom::is_full_cone(c) ? d
                                  : geom::project_onto_cone(gaussian_vector(d, rng), c).face_dim;
    ++counts[static_cast<std::size_t>(k)];
  }
  return counts;
}

}  // namespace conic::sim
