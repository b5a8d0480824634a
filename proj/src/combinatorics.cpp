#include "conic/combinatorics.hpp"

#include <string>

#include "conic/errors.hpp"

namespace conic::comb {

namespace {

using Triangle = std::vector<std::vector<BigInt>>;

Triangle build_first(long N) {
  Triangle t(N + 1);
  t[0] = {1};
  for (long n = 1; n <= N; ++n) {
    t[n].assign(n + 1, 0);
    for (long k = 1; k <= n; ++k) {
      t[n][k] = t[n - 1][k - 1];
      if (k <= n - 1) t[n][k] += (n - 1) * t[n - 1][k];
    }
  }
  return t;
}

Triangle build_second(long N) {
  Triangle t(N + 1);
  t[0] = {1};
  for (long n = 1; n <= N; ++n) {
    t[n].assign(n + 1, 0);
    for (long k = 1; k <= n; ++k) {
      t[n][k] = t[n - 1][k - 1];
      if (k <= n - 1) t[n][k] += k * t[n - 1][k];
    }
  }
  return t;
}

Triangle build_first_b(long N) {
  Triangle t(N + 1);
  t[0] = {1};
  for (long n = 1; n <= N; ++n) {
    t[n].assign(n + 1, 0);
    for (long k = 0; k <= n; ++k) {
      if (k >= 1) t[n][k] = t[n - 1][k - 1];
      if (k <= n - 1) t[n][k] += (2 * n - 1) * t[n - 1][k];
    }
  }
  return t;
}

// Definitional sum; the three-term recurrence is only checked in tests.
Triangle build_second_b(long N) {
  Triangle s2 = build_second(N);
  Triangle t(N + 1);
  std::vector<BigInt> binom_row{1};
  for (long n = 0; n <= N; ++n) {
    if (n > 0) {
      std::vector<BigInt> next(n + 1, 1);
      for (long m = 1; m < n; ++m) next[m] = binom_row[m - 1] + binom_row[m];
      binom_row = std::move(next);
    }
    t[n].assign(n + 1, 0);
    for (long k = 0; k <= n; ++k) {
      BigInt acc = 0;
      BigInt p2 = 1;
      for (long m = k; m <= n; ++m) {
        acc += p2 * binom_row[m] * s2[m][k];
        p2 <<= 1;
      }
      t[n][k] = acc;
    }
  }
  return t;
}

Triangle build(Kind kind, long N) {
  switch (kind) {
    case Kind::first: return build_first(N);
    case Kind::second: return build_second(N);
    case Kind::first_b: return build_first_b(N);
    case Kind::second_b: return build_second_b(N);
  }
  return {};
}

const BigInt& zero() {
  static const BigInt z = 0;
  return z;
}

}  // namespace

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::first: return "first";
    case Kind::second: return "second";
    case Kind::first_b: return "first_B";
    case Kind::second_b: return "second_B";
  }
  return "?";
}

StirlingTables::StirlingTables(std::optional<Perturbation> perturbation)
    : perturbation_(perturbation) {}

const StirlingTables::Triangle& StirlingTables::ensure(Kind kind, long n) const {
  auto idx = static_cast<std::size_t>(kind);
  std::lock_guard<std::mutex> lock(mutex_);
  auto& cur = current_[idx];
  if (cur && static_cast<long>(cur->size()) > n) return *cur;
  long target = ((n / 32) + 1) * 32;
  auto fresh = std::make_shared<Triangle>(build(kind, target));
  if (perturbation_ && perturbation_->kind == kind && perturbation_->n >= 0 &&
      perturbation_->n <= target && perturbation_->k >= 0 && perturbation_->k <= perturbation_->n) {
    (*fresh)[perturbation_->n][perturbation_->k] += perturbation_->delta;
  }
  if (cur) retired_.push_back(cur);
  cur = std::move(fresh);
  return *cur;
}

const BigInt& StirlingTables::get(Kind kind, long n, long k) const {
  if (n < 0) {
    throw DomainError(std::string("Stirling-type number ") + kind_name(kind) +
                      " requires n >= 0 (got n=" + std::to_string(n) + ")");
  }
  if (k < 0 || k > n) return zero();
  return ensure(kind, n)[n][k];
}

long StirlingTables::max_n(Kind kind) const {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto& cur = current_[static_cast<std::size_t>(kind)];
  return cur ? static_cast<long>(cur->size()) - 1 : -1;
}

const StirlingTables& StirlingTables::shared() {
  static const StirlingTables instance;
  return instance;
}

BigInt stirling(Kind kind, long n, long k) { return StirlingTables::shared().get(kind, n, k); }

BigInt binomial(long n, long k) {
  if (n < 0) throw DomainError("binomial requires n >= 0 (got n=" + std::to_string(n) + ")");
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt factorial(long n) {
  if (n < 0) throw DomainError("factorial requires n >= 0");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInt pow2(long e) {
  if (e < 0) throw DomainError("pow2 requires a nonnegative exponent");
  BigInt r = 1;
  r <<= static_cast<mp_bitcnt_t>(e);
  return r;
}

std::vector<BigInt> expand_linear(std::span<const long> roots) {
  std::vector<BigInt> c{1};
  for (long a : roots) {
    std::vector<BigInt> next(c.size() + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += a * c[i];
      next[i + 1] += c[i];
    }
    c = std::move(next);
  }
  return c;
}

std::vector<BigInt> multiply(std::span<const BigInt> a, std::span<const BigInt> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<BigInt> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

void append_walk_factors(long length, std::vector<long>& roots) {
  for (long i = 1; i <= length; ++i) roots.push_back(2 * i - 1);
}

void append_bridge_factors(long length, std::vector<long>& roots) {
  for (long i = 1; i <= length - 1; ++i) roots.push_back(i);
}

namespace {

long checked_parts_sum(long n, std::span<const int> parts, const char* what) {
  if (n < 0) throw DomainError(std::string(what) + " requires n >= 0");
  long sum = 0;
  for (int j : parts) {
    if (j < 1) throw DomainError(std::string(what) + ": every composition part must be >= 1");
    sum += j;
  }
  if (sum > n) {
    throw DomainError(std::string(what) + ": parts sum to " + std::to_string(sum) +
                      " which exceeds n=" + std::to_string(n));
  }
  return sum;
}

}  // namespace

std::vector<BigInt> poly_P(long n, std::span<const int> parts) {
  long sum = checked_parts_sum(n, parts, "P coefficient");
  std::vector<long> roots;
  append_walk_factors(n - sum, roots);
  for (int j : parts) append_bridge_factors(j, roots);
  return expand_linear(roots);
}

std::vector<BigInt> poly_Q(long n, std::span<const int> parts) {
  long sum = checked_parts_sum(n, parts, "Q coefficient");
  if (n - sum < 1) {
    throw DomainError("Q coefficient: the trailing block j_{k+1} = n - (j_1+...+j_k) must be >= 1");
  }
  std::vector<long> roots;
  for (int j : parts) append_bridge_factors(j, roots);
  append_bridge_factors(n - sum, roots);
  return expand_linear(roots);
}

BigInt coeff_P(long n, std::span<const int> parts, long r) {
  auto p = poly_P(n, parts);
  if (r < 0 || r >= static_cast<long>(p.size())) return 0;
  return p[r];
}

BigInt coeff_Q(long n, std::span<const int> parts, long r) {
  auto q = poly_Q(n, parts);
  if (r < 0 || r >= static_cast<long>(q.size())) return 0;
  return q[r];
}

}  // namespace conic::comb
