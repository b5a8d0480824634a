#include <doctest.h>

#include "conic/errors.hpp"
#include "conic/formulas.hpp"
#include "conic/identities.hpp"

using namespace conic;
using namespace conic::formulas;

namespace {

const Evaluator& ev() { return default_evaluator(); }
Model A(long n, long d) { return {ModelKind::a_bridge, n, d}; }
Model B(long n, long d) { return {ModelKind::b_walk, n, d}; }
Rational q(long a, long b) { return Rational(BigInt(a), BigInt(b)); }

}  // namespace

TEST_CASE("Wendel probability") {
  CHECK(Evaluator::wendel_probability(4, 3) == q(7, 8));
  CHECK(Evaluator::wendel_probability(2, 1) == q(1, 2));
  for (long n = 1; n <= 10; ++n) CHECK(Evaluator::wendel_probability(n, n) == 1);
  CHECK_THROWS_AS(Evaluator::wendel_probability(0, 2), DomainError);
  CHECK_THROWS_AS(Evaluator::wendel_probability(3, 0), DomainError);
}

TEST_CASE("absorption probabilities") {
  CHECK(ev().nonabsorption_probability(A(3, 2)) == 1);
  CHECK(ev().nonabsorption_probability(B(2, 1)) == q(3, 4));
  CHECK(ev().nonabsorption_probability(A(4, 2)) == q(11, 12));
  CHECK(ev().absorption_probability(A(4, 2)) == q(1, 12));
  // B-walk, n=4, d=2: P[full] = 2 B[4,3] / (2^4 4!), P[not full] = 2 B[4,1] / (2^4 4!)
  const Rational norm(16 * 24);
  Rational expect = Rational(2) * Rational(comb::stirling(comb::Kind::first_b, 4, 3)) / norm;
  CHECK(ev().nonabsorption_probability(B(4, 2)) ==
        Rational(2) * Rational(comb::stirling(comb::Kind::first_b, 4, 1)) / norm);
  CHECK(ev().absorption_probability(B(4, 2)) == expect);
  for (long d = 1; d <= 4; ++d) {
    CHECK(ev().nonabsorption_probability(B(d, d)) == 1);
    CHECK(ev().nonabsorption_probability(A(d + 1, d)) == 1);
  }
}

TEST_CASE("model hypotheses are enforced") {
  CHECK_THROWS_AS(ev().nonabsorption_probability(A(3, 3)), DomainError);
  CHECK_THROWS_AS(ev().nonabsorption_probability(B(2, 3)), DomainError);
  CHECK_THROWS_AS(ev().nonabsorption_probability(B(2, 0)), DomainError);
  try {
    ev().expected_Y(A(5, 3), 3, 1);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("0 <= l < m <= d-1") != std::string::npos);
  }
  CHECK_THROWS_AS(ev().expected_Z(A(5, 3), 2, 1), DomainError);
  CHECK_THROWS_AS(ev().expected_fk(B(5, 3), 3), DomainError);
  CHECK_THROWS_AS(ev().expected_Uk(B(5, 3), 4), DomainError);
  CHECK_THROWS_AS(ev().expected_vk(B(5, 3), -1), DomainError);
  CHECK_THROWS_AS(ev().expected_Lambda(B(5, 3), 0), DomainError);
  CHECK_THROWS_AS(ev().expected_tangent_intrinsic_sum(B(5, 3), 3, 3), DomainError);
  CHECK_THROWS_AS(ev().expected_Y_dual(B(5, 3), 2, 2), DomainError);
  CHECK_THROWS_AS(ev().subspace_intersection_probability(B(5, 3), 3), DomainError);
  std::vector<int> bad_order{2, 1};
  CHECK_THROWS_AS(ev().face_probability(B(5, 3), bad_order), DomainError);
  std::vector<int> beyond{5};
  CHECK_THROWS_AS(ev().face_probability(A(5, 3), beyond), DomainError);  // bridge needs i_k <= n-1
  CHECK_NOTHROW(ev().face_probability(B(5, 3), beyond));
  std::vector<int> none;
  CHECK_THROWS_AS(ev().joint_absorption_probability(none, none, 2), DomainError);
  std::vector<int> short_bridge{1};
  CHECK_THROWS_AS(ev().joint_absorption_probability(none, short_bridge, 2), DomainError);
}

TEST_CASE("Y, Z and f-vector values") {
  CHECK(ev().expected_Y(A(4, 3), 2, 1) == q(1, 2));
  CHECK(ev().expected_Y(B(3, 2), 1, 0) == q(23, 24));
  CHECK(ev().expected_Z(A(4, 2), 0, 1) == q(5, 24));
  CHECK(ev().expected_fk(B(3, 2), 1) == q(23, 12));
  CHECK(ev().expected_fk(A(4, 2), 1) == q(11, 6));
  CHECK(ev().expected_fk(A(4, 2), 1) == Rational(2) * ev().nonabsorption_probability(A(4, 2)));
  for (long d = 1; d <= 6; ++d)
    for (long k = 0; k <= d - 1; ++k) CHECK(ev().expected_fk(B(d, d), k) == comb::binomial(d, k));
  CHECK(ev().expected_Z(A(6, 3), 3, 3) == 0);
  CHECK(ev().expected_Z(B(6, 3), 3, 3) == 0);
}

TEST_CASE("quermassintegrals and intrinsic volumes") {
  CHECK(ev().expected_Uk(A(4, 2), 1, true) == q(5, 22));
  CHECK(ev().expected_vk(A(3, 2), 0) == q(1, 3));
  CHECK(ev().expected_vk(A(3, 2), 1) == q(1, 2));
  CHECK(ev().expected_vk(A(3, 2), 2) == q(1, 6));
  CHECK(ev().expected_vk(B(2, 2), 0) == q(3, 8));
  CHECK(ev().expected_vk(B(2, 2), 1) == q(1, 2));
  CHECK(ev().expected_vk(B(2, 2), 2) == q(1, 8));
  for (long d = 1; d <= 5; ++d) {
    CHECK(ev().expected_Uk(B(d + 3, d), d) == 0);
    CHECK(ev().expected_Uk(A(d + 3, d), d, true) == 0);
  }
}

TEST_CASE("Lambda, face and tangent sums") {
  CHECK(ev().expected_Lambda(A(4, 3), 2) == q(1, 2));
  CHECK(ev().expected_Lambda(A(4, 3), 2) == ev().expected_Y(A(4, 3), 2, 1));
  CHECK(ev().expected_face_intrinsic_sum(A(4, 2), 1, 0) == q(11, 12));
  CHECK(ev().expected_tangent_intrinsic_sum(A(3, 2), 1, 1) == 1);
  // d-faces: the cone itself
  for (long l = 0; l <= 3; ++l) {
    CHECK(ev().expected_face_intrinsic_sum(B(6, 3), 3, l) == ev().expected_vk(B(6, 3), l));
    CHECK(ev().expected_face_intrinsic_sum(A(6, 3), 3, l, true) ==
          ev().expected_vk(A(6, 3), l, true));
  }
  // B-walk n=2, d=2, j=0, k=1: B[2,1] B{1,0} / (2^2 2!)
  CHECK(ev().expected_tangent_intrinsic_sum(B(2, 2), 0, 1) == q(4, 8));
}

TEST_CASE("polar-cone values") {
  CHECK(ev().expected_Y_dual(A(3, 2), 2, 0) == q(1, 2));
  for (long d = 2; d <= 4; ++d) {
    for (long n = d + 1; n <= d + 3; ++n) {
      for (Model md : {A(n, d), B(n, d)}) {
        for (long m = 1; m <= d; ++m)
          for (long l = 0; l < m; ++l)
            CHECK(ev().expected_Y_dual(md, m, l) ==
                  Rational(1, 2) * ev().expected_fk(md, d - m) - ev().expected_Z(md, d - m, d - l));
        // Z of the polar obtained from Y of the cone, and vice versa.
        for (long j = 1; j < d; ++j)
          for (long k = j + 1; k < d; ++k)
            CHECK(ev().expected_Z_dual(md, j, k) ==
                  Rational(1, 2) * ev().expected_fk(md, d - j) - ev().expected_Y(md, d - j, d - k));
      }
    }
  }
  FunctionalQuery fq;
  fq.model = B(5, 3);
  fq.functional = Functional::fk;
  fq.dual = true;
  fq.k = 1;
  CHECK(ev().evaluate(fq).exact == ev().expected_fk(B(5, 3), 2));
  fq.k = 0;
  CHECK(ev().evaluate(fq).exact == 1);
  fq.k = 3;
  CHECK(ev().evaluate(fq).exact == ev().nonabsorption_probability(B(5, 3)));
  fq.functional = Functional::Z;
  fq.j = 1;
  fq.k = 2;
  CHECK(ev().evaluate(fq).citation.find("derived") != std::string::npos);
}

TEST_CASE("face and subspace probabilities") {
  std::vector<int> i1{1};
  CHECK(ev().face_probability(B(3, 2), i1) == q(3, 4));
  CHECK(ev().face_probability(B(3, 2), i1) + ev().face_out_probability(B(3, 2), i1) == 1);
  for (long d = 2; d <= 5; ++d) {
    for (int i = 1; i <= d; ++i) {
      std::vector<int> idx{i};
      CHECK(ev().face_probability(B(d, d), idx) == 1);
    }
  }
  CHECK(ev().subspace_intersection_probability(B(2, 2), 1) == q(1, 4));
  for (long d = 1; d <= 4; ++d) {
    CHECK(ev().subspace_intersection_probability(B(d + 2, d), 0) == 1);
    CHECK(ev().subspace_intersection_probability(A(d + 2, d), 0) == 1);
  }
}

TEST_CASE("joint absorption") {
  std::vector<int> w1{1}, b2{2}, none;
  CHECK(ev().joint_absorption_probability(w1, b2, 1) == q(1, 2));
  for (long d = 1; d <= 3; ++d) {
    for (int n = static_cast<int>(d) + 1; n <= 7; ++n) {
      std::vector<int> one{n};
      CHECK(ev().joint_absorption_probability(one, none, d) == ev().absorption_probability(B(n, d)));
      CHECK(ev().joint_absorption_probability(none, one, d) == ev().absorption_probability(A(n, d)));
    }
  }
}

TEST_CASE("evaluate dispatch rejects unsupported variants") {
  FunctionalQuery fq;
  fq.model = B(4, 2);
  fq.functional = Functional::face_prob;
  fq.indices = {1};
  fq.conditioned = true;
  CHECK_THROWS_AS(ev().evaluate(fq), DomainError);
  fq.conditioned = false;
  fq.dual = true;
  CHECK_THROWS_AS(ev().evaluate(fq), DomainError);
  fq.dual = false;
  auto r = ev().evaluate(fq);
  CHECK(r.decimal == doctest::Approx(r.exact.to_double()));
  CHECK(!r.citation.empty());
}

TEST_CASE("identity suite passes and detects a tampered table") {
  for (const auto& r : checks::identity_suite(ev())) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.pass);
  }
  for (comb::Kind kind : {comb::Kind::first, comb::Kind::second, comb::Kind::first_b,
                          comb::Kind::second_b}) {
    comb::StirlingTables bad(comb::Perturbation{kind, 6, 3, 1});
    Evaluator tampered(bad);
    long failures = 0;
    for (const auto& r : checks::identity_suite(tampered)) failures += r.pass ? 0 : 1;
    CHECK(failures >= 1);
  }
}

TEST_CASE("large-n conditioned f-vector approaches its limit") {
  Rational v = ev().expected_fk(A(500, 3), 1, true);
  CHECK(v.to_double() == doctest::Approx(6.0).epsilon(0.1));
  CHECK(checks::large_n_check(ev()).pass);
}
