#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <thread>
#include <vector>

#include "conic/combinatorics.hpp"
#include "conic/errors.hpp"
#include "conic/identities.hpp"

using namespace conic;
using comb::Kind;

namespace {

// Independent oracles, deliberately naive.

long cycles_of(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  long c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++c;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) seen[j] = true;
  }
  return c;
}

std::vector<long> brute_first_row(int n) {
  std::vector<long> row(n + 1, 0);
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    ++row[cycles_of(p)];
  } while (std::next_permutation(p.begin(), p.end()));
  return row;
}

// Set partitions as restricted growth strings.
std::vector<long> brute_second_row(int n) {
  std::vector<long> row(n + 1, 0);
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == n) {
      ++row[blocks];
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      a[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return row;
}

// Coefficients of prod (t + r_i) in 128-bit arithmetic.
std::vector<__int128> naive_expand(const std::vector<long>& roots) {
  std::vector<__int128> c{1};
  for (long r : roots) {
    std::vector<__int128> nx(c.size() + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      nx[i] += c[i] * r;
      nx[i + 1] += c[i];
    }
    c = nx;
  }
  return c;
}

BigInt big(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  BigInt r = 0;
  BigInt place = 1;
  while (u > 0) {
    r += place * static_cast<unsigned long>(u % 1000000000u);
    place *= 1000000000u;
    u /= 1000000000u;
  }
  return neg ? BigInt(-r) : r;
}

long choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("first kind equals permutation cycle counts") {
  for (int n = 0; n <= 7; ++n) {
    auto row = brute_first_row(n);
    if (n == 0) row = {1};
    for (int k = 0; k <= n; ++k) CHECK(comb::stirling(Kind::first, n, k) == row[k]);
  }
  CHECK(comb::stirling(Kind::first, 4, 2) == 11);
}

TEST_CASE("second kind equals set partition counts") {
  for (int n = 1; n <= 8; ++n) {
    auto row = brute_second_row(n);
    for (int k = 0; k <= n; ++k) CHECK(comb::stirling(Kind::second, n, k) == row[k]);
  }
  for (int n = 0; n <= 40; ++n) CHECK(comb::stirling(Kind::second, n, n) == 1);
}

TEST_CASE("B-analogue of the first kind equals coefficients of (t+1)(t+3)...(t+2n-1)") {
  for (int n = 0; n <= 12; ++n) {
    std::vector<long> roots;
    for (int i = 1; i <= n; ++i) roots.push_back(2 * i - 1);
    auto c = naive_expand(roots);
    for (int k = 0; k <= n; ++k) CHECK(comb::stirling(Kind::first_b, n, k) == big(c[k]));
  }
  std::vector<BigInt> row;
  for (int k = 0; k <= 3; ++k) row.push_back(comb::stirling(Kind::first_b, 3, k));
  CHECK(row == std::vector<BigInt>{15, 23, 9, 1});
}

TEST_CASE("B-analogue of the second kind equals its defining sum and satisfies the recurrence") {
  for (int n = 0; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      long s = 0;
      for (int m = k; m <= n; ++m) {
        auto s2 = m == 0 ? std::vector<long>{1} : brute_second_row(m);
        s += (1L << (m - k)) * choose(n, m) * s2[k];
      }
      CHECK(comb::stirling(Kind::second_b, n, k) == s);
    }
  }
  CHECK(comb::stirling(Kind::second_b, 2, 0) == 1);
  CHECK(comb::stirling(Kind::second_b, 2, 1) == 4);
  CHECK(comb::stirling(Kind::second_b, 2, 2) == 1);
  for (int n = 1; n <= 30; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(comb::stirling(Kind::second_b, n, k) ==
            comb::stirling(Kind::second_b, n - 1, k - 1) +
                (2 * k + 1) * comb::stirling(Kind::second_b, n - 1, k));
}

TEST_CASE("index conventions and domain errors") {
  for (Kind kind : {Kind::first, Kind::second, Kind::first_b, Kind::second_b}) {
    CHECK(comb::stirling(kind, 0, 0) == 1);
    CHECK(comb::stirling(kind, 5, -1) == 0);
    CHECK(comb::stirling(kind, 5, 6) == 0);
    CHECK_THROWS_AS(comb::stirling(kind, -1, 0), DomainError);
  }
  CHECK(comb::binomial(3, 1) == 3);
  CHECK(comb::binomial(3, 0) + comb::binomial(3, 1) + comb::binomial(3, 2) == 7);
  CHECK(comb::binomial(5, 2) == 10);
  CHECK(comb::binomial(5, 7) == 0);
  CHECK(comb::binomial(5, -1) == 0);
  CHECK_THROWS_AS(comb::binomial(-2, 1), DomainError);
}

TEST_CASE("rows stay exact at n = 500") {
  BigInt s1 = 0, b1 = 0;
  for (int k = 0; k <= 500; ++k) {
    s1 += comb::stirling(Kind::first, 500, k);
    b1 += comb::stirling(Kind::first_b, 500, k);
  }
  CHECK(s1 == comb::factorial(500));
  CHECK(b1 == comb::pow2(500) * comb::factorial(500));
}

TEST_CASE("coefficient polynomials P and Q") {
  std::vector<int> one{1};
  CHECK(comb::coeff_P(3, one, 0) == 3);
  CHECK(comb::coeff_P(3, one, 1) == 4);
  CHECK(comb::coeff_P(3, one, 2) == 1);
  CHECK(comb::coeff_P(3, one, 3) == 0);
  CHECK(comb::coeff_P(3, one, -1) == 0);
  std::vector<int> ones{1, 1, 1};
  CHECK(comb::coeff_P(3, ones, 0) == 1);
  CHECK(comb::poly_P(3, ones).size() == 1);
  CHECK(comb::coeff_Q(2, one, 0) == 1);
  std::vector<int> two{2};
  CHECK(comb::coeff_Q(4, two, 0) == 1);
  CHECK(comb::coeff_Q(4, two, 1) == 2);
  CHECK(comb::coeff_Q(4, two, 2) == 1);
  CHECK(comb::coeff_Q(4, two, 3) == 0);

  std::vector<int> bad{0, 2};
  CHECK_THROWS_AS(comb::coeff_P(4, bad, 0), DomainError);
  std::vector<int> too_long{3, 3};
  CHECK_THROWS_AS(comb::coeff_P(5, too_long, 0), DomainError);
  std::vector<int> full{2, 2};
  CHECK_THROWS_AS(comb::coeff_Q(4, full, 0), DomainError);  // trailing block would be 0
}

TEST_CASE("P and Q at t = 1 equal the product of factor values") {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (int used = k; used <= n; ++used) {
        checks::for_each_composition(used, k, [&](const std::vector<int>& parts) {
          BigInt sum = 0;
          for (long r = 0; r <= n - k; ++r) sum += comb::coeff_P(n, parts, r);
          BigInt expect = comb::pow2(n - used) * comb::factorial(n - used);
          for (int j : parts) expect *= comb::factorial(j);
          CHECK(sum == expect);
          if (used < n) {
            BigInt q = 0;
            for (long r = 0; r <= n - k - 1; ++r) q += comb::coeff_Q(n, parts, r);
            BigInt eq = comb::factorial(n - used);
            for (int j : parts) eq *= comb::factorial(j);
            CHECK(q == eq);
          }
        });
      }
    }
  }
}

TEST_CASE("composition convolutions by independent enumeration") {
  // Compositions of n enumerated as subsets of the n-1 cut points.
  for (int n = 1; n <= 8; ++n) {
    std::vector<std::vector<Rational>> lhsQ(n, std::vector<Rational>(n + 1, Rational(0)));
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
      std::vector<int> parts;
      int last = 0;
      for (int c = 1; c < n; ++c) {
        if (mask & (1u << (c - 1))) {
          parts.push_back(c - last);
          last = c;
        }
      }
      parts.push_back(n - last);
      int m = static_cast<int>(parts.size()) - 1;
      std::vector<int> head(parts.begin(), parts.end() - 1);
      BigInt den = 1;
      for (int j : parts) den *= comb::factorial(j);
      for (int N = 0; N <= n; ++N) {
        BigInt c = comb::coeff_Q(n, head, N - m - 1);
        if (c != 0) lhsQ[m][N] += Rational(c, den);
      }
    }
    for (int m = 0; m <= n - 1; ++m)
      for (int N = 0; N <= n; ++N)
        CHECK(lhsQ[m][N] == Rational(comb::factorial(m + 1), comb::factorial(n)) *
                                Rational(BigInt(comb::stirling(Kind::first, n, N) *
                                                comb::stirling(Kind::second, N, m + 1))));
  }
}

TEST_CASE("identity suite components pass on correct tables") {
  for (const auto& r : checks::stirling_identities(comb::StirlingTables::shared())) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.pass);
    CHECK(r.cases > 0);
  }
  for (const auto& r : checks::composition_convolutions(comb::StirlingTables::shared())) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("perturbation touches exactly one entry and breaks the recurrence check") {
  comb::StirlingTables bad(comb::Perturbation{Kind::first_b, 4, 1, 1});
  for (int n = 0; n <= 10; ++n)
    for (int k = 0; k <= n; ++k) {
      BigInt expect = comb::stirling(Kind::first_b, n, k) + ((n == 4 && k == 1) ? 1 : 0);
      CHECK(bad.get(Kind::first_b, n, k) == expect);
    }
  bool any_fail = false;
  for (const auto& r : checks::stirling_identities(bad)) any_fail = any_fail || !r.pass;
  CHECK(any_fail);
}

TEST_CASE("tables are safe under concurrent growth") {
  comb::StirlingTables t;
  std::vector<BigInt> results(4);
  std::vector<std::thread> pool;
  for (int w = 0; w < 4; ++w) {
    pool.emplace_back([&, w] {
      BigInt s = 0;
      for (int n = 0; n <= 120; ++n) s += t.get(Kind::first, n, n / 2 + w % 2);
      results[w] = s;
    });
  }
  for (auto& th : pool) th.join();
  CHECK(results[0] == results[2]);
  CHECK(results[1] == results[3]);
  CHECK(t.max_n(Kind::first) >= 120);
}
