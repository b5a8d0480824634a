#include "conic/formulas.hpp"

#include <sstream>

#include "conic/errors.hpp"

namespace conic::formulas {

using comb::Kind;

namespace {

void require(bool ok, const std::string& hypothesis, const std::string& got) {
  if (!ok) throw DomainError(hypothesis + " (got " + got + ")");
}

std::string kv(std::initializer_list<std::pair<const char*, long>> items) {
  std::ostringstream os;
  bool first = true;
  for (auto& [name, value] : items) {
    if (!first) os << ", ";
    os << name << "=" << value;
    first = false;
  }
  return os.str();
}

}  // namespace

const char* model_tag(ModelKind kind) { return kind == ModelKind::a_bridge ? "A" : "B"; }

ModelKind parse_model_tag(const std::string& tag) {
  if (tag == "A" || tag == "a") return ModelKind::a_bridge;
  if (tag == "B" || tag == "b") return ModelKind::b_walk;
  throw DomainError("model must be A (bridge) or B (walk), got '" + tag + "'");
}

void validate(const Model& model) {
  require(model.d >= 1, "ambient dimension must satisfy d >= 1", kv({{"d", model.d}}));
  if (model.kind == ModelKind::a_bridge) {
    require(model.n >= model.d + 1, "A-bridge general position (GP') requires n >= d+1",
            kv({{"n", model.n}, {"d", model.d}}));
  } else {
    require(model.n >= model.d, "B-walk general position (GP) requires n >= d",
            kv({{"n", model.n}, {"d", model.d}}));
  }
}

const char* functional_name(Functional f) {
  switch (f) {
    case Functional::wendel: return "wendel";
    case Functional::absorption: return "absorption";
    case Functional::nonabsorption: return "nonabsorption";
    case Functional::fk: return "fk";
    case Functional::Uk: return "Uk";
    case Functional::vk: return "vk";
    case Functional::Lambda: return "Lambda";
    case Functional::Y: return "Y";
    case Functional::Z: return "Z";
    case Functional::face_intrinsic_sum: return "face_intrinsic";
    case Functional::tangent_intrinsic_sum: return "tangent_intrinsic";
    case Functional::Y_dual: return "Y_dual";
    case Functional::face_prob: return "face_prob";
    case Functional::subspace_prob: return "subspace_prob";
    case Functional::joint_absorption: return "joint_absorption";
  }
  return "?";
}

Functional parse_functional(const std::string& name) {
  static const std::pair<const char*, Functional> table[] = {
      {"wendel", Functional::wendel},
      {"absorption", Functional::absorption},
      {"nonabsorption", Functional::nonabsorption},
      {"fk", Functional::fk},
      {"Uk", Functional::Uk},
      {"vk", Functional::vk},
      {"Lambda", Functional::Lambda},
      {"Y", Functional::Y},
      {"Z", Functional::Z},
      {"face_intrinsic", Functional::face_intrinsic_sum},
      {"tangent_intrinsic", Functional::tangent_intrinsic_sum},
      {"Y_dual", Functional::Y_dual},
      {"face_prob", Functional::face_prob},
      {"subspace_prob", Functional::subspace_prob},
      {"joint_absorption", Functional::joint_absorption},
  };
  for (auto& [n, f] : table)
    if (name == n) return f;
  throw DomainError("unknown functional '" + name + "'");
}

bool supports_conditioning(Functional f) {
  switch (f) {
    case Functional::fk:
    case Functional::Uk:
    case Functional::vk:
    case Functional::Lambda:
    case Functional::Y:
    case Functional::Z:
    case Functional::face_intrinsic_sum:
    case Functional::tangent_intrinsic_sum:
    case Functional::Y_dual:
      return true;
    default:
      return false;
  }
}

bool supports_dual(Functional f) {
  switch (f) {
    case Functional::fk:
    case Functional::Uk:
    case Functional::vk:
    case Functional::Lambda:
    case Functional::Y:
    case Functional::Z:
      return true;
    default:
      return false;
  }
}

// c(x): [n x] for bridges, B[n, x-1] for walks. With this shift every tail in
// the two model families has the same shape.
BigInt Evaluator::c(const Model& model, long x) const {
  if (model.kind == ModelKind::a_bridge) return t_.get(Kind::first, model.n, x);
  return t_.get(Kind::first_b, model.n, x - 1);
}

// conv(x, m): [n x]{x, m+1} for bridges, B[n, x-1] B{x-1, m} for walks.
BigInt Evaluator::conv(const Model& model, long x, long m) const {
  if (model.kind == ModelKind::a_bridge) {
    if (x < 0) return 0;
    const BigInt& a = t_.get(Kind::first, model.n, x);
    if (a == 0) return 0;
    return a * t_.get(Kind::second, x, m + 1);
  }
  if (x - 1 < 0) return 0;
  const BigInt& a = t_.get(Kind::first_b, model.n, x - 1);
  if (a == 0) return 0;
  return a * t_.get(Kind::second_b, x - 1, m);
}

// small(m, x): [m+1, x] for bridges, B[m, x-1] for walks.
BigInt Evaluator::small(const Model& model, long m, long x) const {
  if (model.kind == ModelKind::a_bridge) return t_.get(Kind::first, m + 1, x);
  return t_.get(Kind::first_b, m, x - 1);
}

// sum_{r>=0} conv(top - 2r, m)
BigInt Evaluator::conv_tail(const Model& model, long top, long m) const {
  BigInt s = 0;
  for (long x = top; x >= 0; x -= 2) s += conv(model, x, m);
  return s;
}

// sum_{r>=0} c(top - 2r)
BigInt Evaluator::c_tail_down(const Model& model, long top) const {
  BigInt s = 0;
  for (long x = top; x >= 0; x -= 2) s += c(model, x);
  return s;
}

// Number of symmetry images: n! for bridges, 2^n n! for walks.
Rational Evaluator::norm(const Model& model) const {
  BigInt f = comb::factorial(model.n);
  if (model.kind == ModelKind::b_walk) f *= comb::pow2(model.n);
  return Rational(f);
}

// (j+1)!/n! for bridges, j!/(2^(n-j) n!) for walks.
Rational Evaluator::prefactor(const Model& model, long j) const {
  if (model.kind == ModelKind::a_bridge)
    return Rational(comb::factorial(j + 1), comb::factorial(model.n));
  return Rational(comb::factorial(j), comb::pow2(model.n - j) * comb::factorial(model.n));
}

Rational Evaluator::wendel_probability(long n, long d) {
  require(n >= 1 && d >= 1, "Wendel probability requires n >= 1 and d >= 1",
          kv({{"n", n}, {"d", d}}));
  BigInt s = 0;
  for (long k = 0; k <= d - 1; ++k) s += comb::binomial(n - 1, k);
  return Rational(s, comb::pow2(n - 1));
}

Rational Evaluator::nonabsorption_probability(const Model& model) const {
  validate(model);
  return Rational(2) * Rational(c_tail_down(model, model.d)) / norm(model);
}

Rational Evaluator::absorption_probability(const Model& model) const {
  validate(model);
  BigInt s = 0;
  for (long x = model.d + 2; x <= model.n + 1; x += 2) s += c(model, x);
  return Rational(2) * Rational(s) / norm(model);
}

Rational Evaluator::expected_Y(const Model& model, long m, long l, bool conditioned) const {
  validate(model);
  require(0 <= l && l < m && m <= model.d - 1, "E Y_{m,l} requires 0 <= l < m <= d-1",
          kv({{"m", m}, {"l", l}, {"d", model.d}}));
  BigInt g = 0;
  for (long x = l + 2; x <= m + 1; x += 2) g += small(model, m, x);
  Rational v = Rational(2) * Rational(BigInt(g * conv_tail(model, model.d, m))) / norm(model);
  if (conditioned) v /= nonabsorption_probability(model);
  return v;
}

Rational Evaluator::expected_Z(const Model& model, long j, long k, bool conditioned) const {
  validate(model);
  require(0 <= j && j <= k && k <= model.d, "E Z_{j,k} requires 0 <= j <= k <= d",
          kv({{"j", j}, {"k", k}, {"d", model.d}}));
  BigInt diff = conv_tail(model, model.d, j) - conv_tail(model, k, j);
  Rational v = prefactor(model, j) * Rational(diff);
  if (conditioned) v /= nonabsorption_probability(model);
  return v;
}

Rational Evaluator::expected_fk(const Model& model, long k, bool conditioned) const {
  validate(model);
  require(0 <= k && k <= model.d - 1, "E f_k requires 0 <= k <= d-1",
          kv({{"k", k}, {"d", model.d}}));
  if (k == 0) return conditioned ? Rational(1) : nonabsorption_probability(model);
  Rational v = Rational(2) * prefactor(model, k) * Rational(conv_tail(model, model.d, k));
  if (conditioned) v /= nonabsorption_probability(model);
  return v;
}

Rational Evaluator::expected_Uk(const Model& model, long k, bool conditioned) const {
  validate(model);
  const long d = model.d;
  require(0 <= k && k <= d, "E U_k requires 0 <= k <= d", kv({{"k", k}, {"d", d}}));
  if (conditioned) {
    BigInt top = c_tail_down(model, d);
    BigInt low = k >= 0 ? c_tail_down(model, k) : BigInt(0);
    return Rational(top - low, 2 * top);
  }
  BigInt s = 0;
  if ((d - k) % 2 == 1) {
    for (long x = k + 2; x <= model.n + 1; x += 2) s += c(model, x);
    for (long x = d + 2; x <= model.n + 1; x += 2) s += c(model, x);
  } else {
    for (long x = k + 2; x <= d; x += 2) s += c(model, x);
  }
  return Rational(s) / norm(model);
}

Rational Evaluator::expected_vk(const Model& model, long k, bool conditioned) const {
  validate(model);
  const long d = model.d;
  require(0 <= k && k <= d, "E v_k requires 0 <= k <= d", kv({{"k", k}, {"d", d}}));
  if (conditioned) {
    BigInt den = 2 * c_tail_down(model, d);
    if (k < d) return Rational(c(model, k + 1), den);
    BigInt alt = 0;
    for (long r = 0; d - r >= 0; ++r) {
      if (r % 2 == 0)
        alt += c(model, d - r);
      else
        alt -= c(model, d - r);
    }
    return Rational(alt, den);
  }
  if (k < d) return Rational(c(model, k + 1)) / norm(model);
  BigInt s = 0;
  for (long x = d + 1; x <= model.n + 1; ++x) s += c(model, x);
  return Rational(s) / norm(model);
}

Rational Evaluator::expected_Lambda(const Model& model, long k, bool conditioned) const {
  validate(model);
  require(1 <= k && k <= model.d - 1, "E Lambda_k requires 1 <= k <= d-1",
          kv({{"k", k}, {"d", model.d}}));
  Rational v = Rational(2) * Rational(conv_tail(model, model.d, k)) / norm(model);
  if (conditioned) v /= nonabsorption_probability(model);
  return v;
}

Rational Evaluator::expected_face_intrinsic_sum(const Model& model, long m, long l,
                                                bool conditioned) const {
  validate(model);
  require(0 <= l && l <= m && m <= model.d,
          "expected sum of v_l over m-faces requires 0 <= l <= m <= d",
          kv({{"m", m}, {"l", l}, {"d", model.d}}));
  // The only d-face of a full-dimensional cone is the cone itself, so the sum
  // over d-faces is v_l(C). The product closed form degenerates to 0 here.
  if (m == model.d) return expected_vk(model, l, conditioned);
  Rational v = Rational(2) * Rational(BigInt(small(model, m, l + 1) * conv_tail(model, model.d, m))) /
               norm(model);
  if (conditioned) v /= nonabsorption_probability(model);
  return v;
}

Rational Evaluator::expected_tangent_intrinsic_sum(const Model& model, long j, long k,
                                                   bool conditioned) const {
  validate(model);
  const long d = model.d;
  require(0 <= j && j <= d - 1 && j <= k && k <= d,
          "expected sum of v_k over tangent cones at j-faces requires 0 <= j <= d-1 and j <= k <= d",
          kv({{"j", j}, {"k", k}, {"d", d}}));
  BigInt s = 0;
  if (k <= d - 1) {
    s = conv(model, k + 1, j);
  } else {
    for (long r = 0; d - r >= 0; ++r) {
      if (r % 2 == 0)
        s += conv(model, d - r, j);
      else
        s -= conv(model, d - r, j);
    }
  }
  Rational v = prefactor(model, j) * Rational(s);
  if (conditioned) v /= nonabsorption_probability(model);
  return v;
}

Rational Evaluator::expected_Y_dual(const Model& model, long m, long l, bool conditioned) const {
  validate(model);
  const long d = model.d;
  require(0 <= l && l < m && m <= d, "E Y_{m,l} of the polar cone requires 0 <= l < m <= d",
          kv({{"m", m}, {"l", l}, {"d", d}}));
  Rational v = prefactor(model, d - m) * Rational(conv_tail(model, d - l, d - m));
  if (conditioned) v /= nonabsorption_probability(model);
  return v;
}

// Z_{j,k}(C°) from Y_{m,l}(C) = 1/2 f_{d-m}(C°) - Z_{d-m,d-l}(C°) applied to C°
// (valid when C is pointed); every term below vanishes when C = R^d.
Rational Evaluator::expected_Z_dual(const Model& model, long j, long k, bool conditioned) const {
  validate(model);
  const long d = model.d;
  require(0 <= j && j <= k && k <= d, "E Z_{j,k} of the polar cone requires 0 <= j <= k <= d",
          kv({{"j", j}, {"k", k}, {"d", d}}));
  if (k == d) return Rational(0);
  if (j == 0) return expected_Y_dual(model, d, k, conditioned);
  Rational half_f = Rational(1, 2) * expected_fk(model, d - j, conditioned);
  if (j == k) return half_f;
  return half_f - expected_Y(model, d - j, d - k, conditioned);
}

Rational Evaluator::face_sum(const Model& model, std::span<const int> indices, bool inside) const {
  validate(model);
  const long d = model.d;
  const long k = static_cast<long>(indices.size());
  const long limit = model.kind == ModelKind::a_bridge ? model.n - 1 : model.n;
  require(1 <= k && k <= d - 1, "face probability requires 1 <= k <= d-1 indices",
          kv({{"k", k}, {"d", d}}));
  std::vector<int> parts;
  long prev = 0;
  for (int i : indices) {
    require(i > prev, "face indices must satisfy 1 <= i_1 < ... < i_k", kv({{"i", i}}));
    parts.push_back(static_cast<int>(i - prev));
    prev = i;
  }
  require(prev <= limit,
          model.kind == ModelKind::a_bridge ? "bridge face indices require i_k <= n-1"
                                            : "walk face indices require i_k <= n",
          kv({{"i_k", prev}, {"n", model.n}}));
  const long rest = model.n - prev;
  std::vector<BigInt> poly =
      model.kind == ModelKind::b_walk ? comb::poly_P(model.n, parts) : comb::poly_Q(model.n, parts);
  auto coef = [&](long r) -> BigInt {
    if (r < 0 || r >= static_cast<long>(poly.size())) return 0;
    return poly[r];
  };
  BigInt s = 0;
  if (inside) {
    for (long r = d - k - 1; r >= 0; r -= 2) s += coef(r);
  } else {
    for (long r = d - k + 1; r < static_cast<long>(poly.size()); r += 2) s += coef(r);
  }
  BigInt den = comb::factorial(rest);
  for (int j : parts) den *= comb::factorial(j);
  if (model.kind == ModelKind::b_walk) den *= comb::pow2(rest);
  return Rational(2 * s, den);
}

Rational Evaluator::face_probability(const Model& model, std::span<const int> indices) const {
  return face_sum(model, indices, true);
}

Rational Evaluator::face_out_probability(const Model& model, std::span<const int> indices) const {
  return face_sum(model, indices, false);
}

Rational Evaluator::subspace_intersection_probability(const Model& model, long k) const {
  validate(model);
  require(0 <= k && k <= model.d - 1,
          "subspace intersection probability requires 0 <= k <= d-1 (subspace of dimension d-k >= 1)",
          kv({{"k", k}, {"d", model.d}}));
  BigInt s = 0;
  for (long x = k + 2; x <= model.n + 1; x += 2) s += c(model, x);
  return Rational(2) * Rational(s) / norm(model);
}

Rational Evaluator::joint_absorption_probability(std::span<const int> walks,
                                                 std::span<const int> bridges, long d) const {
  require(d >= 1, "joint absorption requires d >= 1", kv({{"d", d}}));
  require(!walks.empty() || !bridges.empty(), "joint absorption requires at least one block",
          "no blocks");
  std::vector<long> roots;
  BigInt den = 1;
  for (int n : walks) {
    require(n >= 1, "walk block lengths must be >= 1", kv({{"length", n}}));
    comb::append_walk_factors(n, roots);
    den *= comb::pow2(n) * comb::factorial(n);
  }
  for (int m : bridges) {
    require(m >= 2, "bridge block lengths must be >= 2", kv({{"length", m}}));
    comb::append_bridge_factors(m, roots);
    den *= comb::factorial(m);
  }
  auto poly = comb::expand_linear(roots);
  BigInt s = 0;
  for (long r = d + 1; r < static_cast<long>(poly.size()); r += 2) s += poly[r];
  return Rational(2 * s, den);
}

FormulaResult Evaluator::evaluate(const FunctionalQuery& q) const {
  const Model& mdl = q.model;
  const std::string tag = mdl.kind == ModelKind::a_bridge ? "A-bridge" : "B-walk";
  if (q.conditioned && !supports_conditioning(q.functional)) {
    throw DomainError(std::string("conditioning on C != R^d is not defined for functional ") +
                      functional_name(q.functional));
  }
  if (q.dual && !supports_dual(q.functional)) {
    throw DomainError(std::string("polar-cone variant is not available for functional ") +
                      functional_name(q.functional));
  }
  const bool cond = q.conditioned;
  const long d = mdl.d;
  FormulaResult out;
  std::string cite;
  switch (q.functional) {
    case Functional::wendel:
      out.exact = wendel_probability(mdl.n, d);
      cite = "Wendel probability P[0 not in conv(S_1..S_n)]";
      break;
    case Functional::absorption:
      out.exact = absorption_probability(mdl);
      cite = "absorption probability P[C = R^d], " + tag;
      break;
    case Functional::nonabsorption:
      out.exact = nonabsorption_probability(mdl);
      cite = "nonabsorption probability P[C != R^d], " + tag;
      break;
    case Functional::fk:
      if (q.dual) {
        validate(mdl);
        require(0 <= q.k && q.k <= d, "E f_k of the polar cone requires 0 <= k <= d",
                kv({{"k", q.k}, {"d", d}}));
        out.exact = q.k == 0 ? Rational(1) : expected_fk(mdl, d - q.k, cond);
        cite = "f_k(C°) = f_{d-k}(C) with the f-vector closed form, " + tag;
      } else {
        out.exact = expected_fk(mdl, q.k, cond);
        cite = "expected f-vector E f_k, " + tag;
      }
      break;
    case Functional::Uk:
      if (q.dual) {
        validate(mdl);
        require(0 <= q.k && q.k <= d, "E U_k of the polar cone requires 0 <= k <= d",
                kv({{"k", q.k}, {"d", d}}));
        out.exact = q.k == d ? Rational(0) : expected_Y_dual(mdl, d, q.k, cond);
        cite = "U_k(C°) = Y_{d,k}(C°) via the polar-cone Y formula, " + tag;
      } else {
        out.exact = expected_Uk(mdl, q.k, cond);
        cite = std::string(cond ? "conditioned " : "") + "expected quermassintegral E U_k, " + tag;
      }
      break;
    case Functional::vk:
      if (q.dual) {
        validate(mdl);
        require(0 <= q.k && q.k <= d, "E v_k of the polar cone requires 0 <= k <= d",
                kv({{"k", q.k}, {"d", d}}));
        out.exact = expected_vk(mdl, d - q.k, cond);
        cite = "v_k(C°) = v_{d-k}(C) with the intrinsic volume closed form, " + tag;
      } else {
        out.exact = expected_vk(mdl, q.k, cond);
        cite = std::string(cond ? "conditioned " : "") + "expected intrinsic volume E v_k, " + tag;
      }
      break;
    case Functional::Lambda:
      if (q.dual) {
        validate(mdl);
        require(1 <= q.k && q.k <= d - 1, "E Lambda_k of the polar cone requires 1 <= k <= d-1",
                kv({{"k", q.k}, {"d", d}}));
        out.exact = expected_Y_dual(mdl, q.k, q.k - 1, cond);
        cite = "Lambda_k(C°) = Y_{k,k-1}(C°) via the polar-cone Y formula, " + tag;
      } else {
        out.exact = expected_Lambda(mdl, q.k, cond);
        cite = "expected total k-face solid angle E Lambda_k, " + tag;
      }
      break;
    case Functional::Y:
      if (q.dual) {
        out.exact = expected_Y_dual(mdl, q.m, q.l, cond);
        cite = "polar-cone E Y_{m,l}(C°), " + tag;
      } else {
        out.exact = expected_Y(mdl, q.m, q.l, cond);
        cite = "size functional E Y_{m,l}, " + tag;
      }
      break;
    case Functional::Y_dual:
      out.exact = expected_Y_dual(mdl, q.m, q.l, cond);
      cite = "polar-cone E Y_{m,l}(C°), " + tag;
      break;
    case Functional::Z:
      if (q.dual) {
        out.exact = expected_Z_dual(mdl, q.j, q.k, cond);
        cite = "derived: E Z_{j,k}(C°) via the Y/Z duality lemma (no printed closed form), " + tag;
      } else {
        out.exact = expected_Z(mdl, q.j, q.k, cond);
        cite = "tangent functional E Z_{j,k}, " + tag;
      }
      break;
    case Functional::face_intrinsic_sum:
      out.exact = expected_face_intrinsic_sum(mdl, q.m, q.l, cond);
      cite = q.m == d ? "sum of v_l over d-faces equals E v_l(C), " + tag
                      : "expected sum of v_l(F) over m-faces, " + tag;
      break;
    case Functional::tangent_intrinsic_sum:
      out.exact = expected_tangent_intrinsic_sum(mdl, q.j, q.k, cond);
      cite = "expected sum of v_k(T_F C) over j-faces, " + tag;
      break;
    case Functional::face_prob:
      out.exact = face_probability(mdl, q.indices);
      cite = mdl.kind == ModelKind::b_walk ? "walk face probability via P-coefficients"
                                           : "bridge face probability via Q-coefficients";
      break;
    case Functional::subspace_prob:
      out.exact = subspace_intersection_probability(mdl, q.k);
      cite = "subspace intersection probability P[C meets V_{d-k}], " + tag;
      break;
    case Functional::joint_absorption:
      out.exact = joint_absorption_probability(q.walks, q.bridges, d);
      cite = "joint absorption P[0 in conv of all walk and bridge points]";
      break;
  }
  out.decimal = out.exact.to_double();
  out.citation = cite;
  return out;
}

const Evaluator& default_evaluator() {
  static const Evaluator ev;
  return ev;
}

}  // namespace conic::formulas
