#pragma once

#include <span>
#include <string>
#include <vector>

#include "conic/combinatorics.hpp"
#include "conic/exact.hpp"

namespace conic::formulas {

enum class ModelKind { a_bridge, b_walk };

// A_bridge: positive hull of the bridge points S_1..S_{n-1}, needs n >= d+1.
// B_walk: positive hull of the walk points S_1..S_n, needs n >= d.
struct Model {
  ModelKind kind = ModelKind::b_walk;
  long n = 0;
  long d = 0;
};

void validate(const Model& model);
const char* model_tag(ModelKind kind);  // "A" or "B"
ModelKind parse_model_tag(const std::string& tag);

enum class Functional {
  wendel,
  absorption,
  nonabsorption,
  fk,
  Uk,
  vk,
  Lambda,
  Y,
  Z,
  face_intrinsic_sum,
  tangent_intrinsic_sum,
  Y_dual,
  face_prob,
  subspace_prob,
  joint_absorption,
};

const char* functional_name(Functional f);
Functional parse_functional(const std::string& name);

struct FunctionalQuery {
  Model model;
  Functional functional = Functional::nonabsorption;
  long k = 0;
  long m = 0;
  long l = 0;
  long j = 0;
  std::vector<int> indices;  // face_prob: 1-based step indices i_1 < ... < i_k
  std::vector<int> walks;    // joint_absorption block lengths
  std::vector<int> bridges;
  bool conditioned = false;
  bool dual = false;
};

struct FormulaResult {
  Rational exact;
  double decimal = 0.0;
  std::string citation;
};

// All closed forms, evaluated exactly against one set of tables. Conditioned
// variants refer to the cone conditioned on not being all of R^d.
class Evaluator {
 public:
  explicit Evaluator(const comb::StirlingTables& tables = comb::StirlingTables::shared())
      : t_(tables) {}

  static Rational wendel_probability(long n, long d);

  Rational absorption_probability(const Model& model) const;
  Rational nonabsorption_probability(const Model& model) const;
  Rational expected_Y(const Model& model, long m, long l, bool conditioned = false) const;
  Rational expected_Z(const Model& model, long j, long k, bool conditioned = false) const;
  Rational expected_fk(const Model& model, long k, bool conditioned = false) const;
  Rational expected_Uk(const Model& model, long k, bool conditioned = false) const;
  Rational expected_vk(const Model& model, long k, bool conditioned = false) const;
  Rational expected_Lambda(const Model& model, long k, bool conditioned = false) const;
  Rational expected_face_intrinsic_sum(const Model& model, long m, long l,
                                       bool conditioned = false) const;
  Rational expected_tangent_intrinsic_sum(const Model& model, long j, long k,
                                          bool conditioned = false) const;
  Rational expected_Y_dual(const Model& model, long m, long l, bool conditioned = false) const;
  // Z_{j,k} of the polar cone, obtained from the Y/Z duality lemma.
  Rational expected_Z_dual(const Model& model, long j, long k, bool conditioned = false) const;
  // Probability that pos{S_{i_1},...,S_{i_k}} is a k-face, and its complement.
  Rational face_probability(const Model& model, std::span<const int> indices) const;
  Rational face_out_probability(const Model& model, std::span<const int> indices) const;
  // P[C meets a fixed (d-k)-dimensional subspace in general position nontrivially].
  Rational subspace_intersection_probability(const Model& model, long k) const;
  Rational joint_absorption_probability(std::span<const int> walks, std::span<const int> bridges,
                                        long d) const;

  FormulaResult evaluate(const FunctionalQuery& query) const;

  const comb::StirlingTables& tables() const { return t_; }

 private:
  // Family-independent building blocks; see formulas.cpp.
  BigInt c(const Model& model, long x) const;
  BigInt conv(const Model& model, long x, long m) const;
  BigInt small(const Model& model, long m, long x) const;
  BigInt conv_tail(const Model& model, long top, long m) const;
  BigInt c_tail_down(const Model& model, long top) const;
  Rational norm(const Model& model) const;
  Rational prefactor(const Model& model, long j) const;
  Rational face_sum(const Model& model, std::span<const int> indices, bool inside) const;

  const comb::StirlingTables& t_;
};

const Evaluator& default_evaluator();

// True when the functional is defined for conditioned queries by dividing by
// the nonabsorption probability or by a dedicated formula.
bool supports_conditioning(Functional f);
bool supports_dual(Functional f);

}  // namespace conic::formulas
