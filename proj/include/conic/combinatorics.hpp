#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "conic/exact.hpp"

namespace conic::comb {

// first:    signless Stirling numbers of the first kind [n k]
// second:   Stirling numbers of the second kind {n k}
// first_b:  B[n,k], coefficients of (t+1)(t+3)...(t+2n-1)
// second_b: B{n,k} = sum_m 2^(m-k) C(n,m) {m k}
enum class Kind { first = 0, second = 1, first_b = 2, second_b = 3 };

const char* kind_name(Kind kind);

// Shifts one stored entry by delta. Only used to mutation-test the identity suite.
struct Perturbation {
  Kind kind;
  long n;
  long k;
  long delta;
};

// Lazily grown, memoized triangles for the four families. Entries are never
// freed while the object lives, so references returned by get() stay valid
// across later growth. Safe for concurrent readers.
class StirlingTables {
 public:
  StirlingTables() = default;
  explicit StirlingTables(std::optional<Perturbation> perturbation);
  StirlingTables(const StirlingTables&) = delete;
  StirlingTables& operator=(const StirlingTables&) = delete;

  // Entry (n,k); zero when k is outside 0..n. Throws DomainError for n < 0.
  const BigInt& get(Kind kind, long n, long k) const;
  long max_n(Kind kind) const;
  const std::optional<Perturbation>& perturbation() const { return perturbation_; }

  // Process-wide unperturbed instance.
  static const StirlingTables& shared();

 private:
  using Triangle = std::vector<std::vector<BigInt>>;
  const Triangle& ensure(Kind kind, long n) const;

  std::optional<Perturbation> perturbation_;
  mutable std::mutex mutex_;
  mutable std::array<std::shared_ptr<const Triangle>, 4> current_;
  mutable std::vector<std::shared_ptr<const Triangle>> retired_;
};

BigInt stirling(Kind kind, long n, long k);
BigInt binomial(long n, long k);
BigInt factorial(long n);
BigInt pow2(long e);

// Coefficients (ascending powers of t) of prod_i (t + roots[i]).
std::vector<BigInt> expand_linear(std::span<const long> roots);
std::vector<BigInt> multiply(std::span<const BigInt> a, std::span<const BigInt> b);

// Factor lists shared by the P and Q polynomials.
void append_walk_factors(long length, std::vector<long>& roots);    // (t+1)(t+3)...(t+2w-1)
void append_bridge_factors(long length, std::vector<long>& roots);  // (t+1)(t+2)...(t+j-1)

// Composition blocks for a total of n: parts j_1..j_k, each >= 1.
// P: trailing walk block n - sum(parts) >= 0. Q: trailing bridge block >= 1.
std::vector<BigInt> poly_P(long n, std::span<const int> parts);
std::vector<BigInt> poly_Q(long n, std::span<const int> parts);
BigInt coeff_P(long n, std::span<const int> parts, long r);
BigInt coeff_Q(long n, std::span<const int> parts, long r);

}  // namespace conic::comb
