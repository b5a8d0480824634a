#include "conic/identities.hpp"

#include <sstream>

#include "conic/errors.hpp"

namespace conic::checks {

using comb::Kind;
using formulas::Evaluator;
using formulas::Model;
using formulas::ModelKind;

namespace {

class Check {
 public:
  explicit Check(std::string name) { r_.name = std::move(name); }

  template <class A, class B>
  void equal(const A& lhs, const B& rhs, const std::string& where) {
    ++r_.cases;
    if (lhs == rhs || !r_.pass) return;
    r_.pass = false;
    std::ostringstream os;
    os << where << ": " << lhs << " != " << rhs;
    r_.detail = os.str();
  }

  void truth(bool ok, const std::string& where) {
    ++r_.cases;
    if (ok || !r_.pass) return;
    r_.pass = false;
    r_.detail = where;
  }

  CheckResult done() { return r_; }

 private:
  CheckResult r_;
};

std::string at(std::initializer_list<std::pair<const char*, long>> items) {
  std::ostringstream os;
  bool first = true;
  for (auto& [name, value] : items) {
    os << (first ? "" : " ") << name << "=" << value;
    first = false;
  }
  return os.str();
}

std::string at_model(const Model& m, std::initializer_list<std::pair<const char*, long>> items) {
  return std::string(formulas::model_tag(m.kind)) + " " + at({{"n", m.n}, {"d", m.d}}) +
         (items.size() ? " " + at(items) : "");
}

BigInt falling(long x, long k) {
  BigInt r = 1;
  for (long i = 0; i < k; ++i) r *= (x - i);
  return r;
}

std::vector<Model> models_up_to(long max_n, long max_d) {
  std::vector<Model> out;
  for (long d = 1; d <= max_d; ++d) {
    for (long n = d; n <= max_n; ++n) {
      out.push_back({ModelKind::b_walk, n, d});
      if (n >= d + 1) out.push_back({ModelKind::a_bridge, n, d});
    }
  }
  return out;
}

void index_tuples(int limit, int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      visit(cur);
      return;
    }
    for (int i = start; i <= limit; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(1);
}

}  // namespace

void for_each_composition(int total, int count,
                          const std::function<void(const std::vector<int>&)>& visit) {
  if (count < 0 || total < count) return;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int parts_left) {
    if (parts_left == 0) {
      if (left == 0) visit(cur);
      return;
    }
    for (int j = 1; j <= left - (parts_left - 1); ++j) {
      cur.push_back(j);
      rec(left - j, parts_left - 1);
      cur.pop_back();
    }
  };
  rec(total, count);
}

std::vector<CheckResult> stirling_identities(const comb::StirlingTables& t, long max_n) {
  std::vector<CheckResult> out;

  {
    Check c("stirling boundary values");
    for (Kind kind : {Kind::first, Kind::second, Kind::first_b, Kind::second_b}) {
      c.equal(t.get(kind, 0, 0), BigInt(1), std::string(comb::kind_name(kind)) + " (0,0)");
      for (long n = 0; n <= max_n; ++n) {
        c.equal(t.get(kind, n, -1), BigInt(0), std::string(comb::kind_name(kind)) + " k=-1");
        c.equal(t.get(kind, n, n + 1), BigInt(0), std::string(comb::kind_name(kind)) + " k=n+1");
      }
    }
    for (long n = 0; n <= max_n; ++n) {
      c.equal(t.get(Kind::first, n, n), BigInt(1), at({{"first (n,n) n", n}}));
      c.equal(t.get(Kind::second, n, n), BigInt(1), at({{"second (n,n) n", n}}));
      c.equal(t.get(Kind::first_b, n, n), BigInt(1), at({{"first_B (n,n) n", n}}));
      c.equal(t.get(Kind::second_b, n, n), BigInt(1), at({{"second_B (n,n) n", n}}));
    }
    out.push_back(c.done());
  }

  {
    Check c("stirling recurrences");
    for (long n = 1; n <= max_n; ++n) {
      for (long k = 0; k <= n; ++k) {
        auto w = at({{"n", n}, {"k", k}});
        c.equal(t.get(Kind::first, n, k),
                BigInt(t.get(Kind::first, n - 1, k - 1) + (n - 1) * t.get(Kind::first, n - 1, k)),
                "first " + w);
        c.equal(t.get(Kind::second, n, k),
                BigInt(t.get(Kind::second, n - 1, k - 1) + k * t.get(Kind::second, n - 1, k)),
                "second " + w);
        c.equal(t.get(Kind::first_b, n, k),
                BigInt(t.get(Kind::first_b, n - 1, k - 1) +
                       (2 * n - 1) * t.get(Kind::first_b, n - 1, k)),
                "first_B " + w);
        c.equal(t.get(Kind::second_b, n, k),
                BigInt(t.get(Kind::second_b, n - 1, k - 1) +
                       (2 * k + 1) * t.get(Kind::second_b, n - 1, k)),
                "second_B " + w);
      }
    }
    out.push_back(c.done());
  }

  {
    Check c("second_B definitional sum");
    for (long n = 0; n <= max_n; ++n) {
      for (long k = 0; k <= n; ++k) {
        BigInt s = 0;
        for (long m = k; m <= n; ++m)
          s += comb::pow2(m - k) * comb::binomial(n, m) * t.get(Kind::second, m, k);
        c.equal(t.get(Kind::second_b, n, k), s, at({{"n", n}, {"k", k}}));
      }
    }
    out.push_back(c.done());
  }

  {
    Check c("polynomial expansions (n <= 12)");
    for (long n = 0; n <= std::min<long>(max_n, 12); ++n) {
      std::vector<long> rising, odd;
      for (long i = 0; i < n; ++i) rising.push_back(i);
      comb::append_walk_factors(n, odd);
      auto pr = comb::expand_linear(rising);
      auto po = comb::expand_linear(odd);
      for (long k = 0; k <= n; ++k) {
        c.equal(t.get(Kind::first, n, k), pr[k], at({{"first n", n}, {"k", k}}));
        c.equal(t.get(Kind::first_b, n, k), po[k], at({{"first_B n", n}, {"k", k}}));
      }
      // x^n = sum_k {n k} x(x-1)...(x-k+1) and
      // (2x+1)^n = sum_k B{n,k} 2^k x(x-1)...(x-k+1)
      for (long x = 0; x <= n + 1; ++x) {
        BigInt s2 = 0, sb = 0;
        for (long k = 0; k <= n; ++k) {
          s2 += t.get(Kind::second, n, k) * falling(x, k);
          sb += t.get(Kind::second_b, n, k) * comb::pow2(k) * falling(x, k);
        }
        BigInt xn, odd_n;
        mpz_ui_pow_ui(xn.get_mpz_t(), static_cast<unsigned long>(x), static_cast<unsigned long>(n));
        mpz_ui_pow_ui(odd_n.get_mpz_t(), static_cast<unsigned long>(2 * x + 1),
                      static_cast<unsigned long>(n));
        c.equal(s2, xn, at({{"second n", n}, {"x", x}}));
        c.equal(sb, odd_n, at({{"second_B n", n}, {"x", x}}));
      }
    }
    out.push_back(c.done());
  }

  {
    Check c("stirling row sums");
    for (long n = 0; n <= max_n; ++n) {
      BigInt s1 = 0, s1_odd = 0, b1 = 0, b1_even = 0;
      for (long k = 0; k <= n; ++k) {
        s1 += t.get(Kind::first, n, k);
        b1 += t.get(Kind::first_b, n, k);
        if (k % 2 == 1) s1_odd += t.get(Kind::first, n, k);
        if (k % 2 == 0) b1_even += t.get(Kind::first_b, n, k);
      }
      BigInt nf = comb::factorial(n);
      c.equal(s1, nf, at({{"first n", n}}));
      c.equal(b1, BigInt(comb::pow2(n) * nf), at({{"first_B n", n}}));
      if (n >= 2) c.equal(BigInt(2 * s1_odd), nf, at({{"first odd half n", n}}));
      if (n >= 1) c.equal(b1_even, BigInt(comb::pow2(n - 1) * nf), at({{"first_B even half n", n}}));
    }
    out.push_back(c.done());
  }

  {
    Check c("stirling convolution identities");
    for (long n = 0; n <= max_n; ++n) {
      for (long j = 0; j <= n; ++j) {
        BigInt plain = 0, alt = 0;
        for (long k = 0; k <= n; ++k) {
          BigInt term = t.get(Kind::first_b, n, k) * t.get(Kind::second_b, k, j);
          plain += term;
          alt += (k % 2 == 0) ? term : BigInt(-term);
        }
        BigInt lhs = plain * comb::pow2(j) * comb::factorial(j);
        c.equal(lhs, BigInt(comb::pow2(n) * comb::factorial(n) * comb::binomial(n, j)),
                at({{"B-sum n", n}, {"j", j}}));
        if (j < n) c.equal(alt, BigInt(0), at({{"B-alternating n", n}, {"j", j}}));
      }
      for (long j = 0; j + 1 <= n; ++j) {
        BigInt plain = 0, alt = 0;
        for (long k = 0; k <= n; ++k) {
          BigInt term = t.get(Kind::first, n, k) * t.get(Kind::second, k, j + 1);
          plain += term;
          alt += (k % 2 == 0) ? term : BigInt(-term);
        }
        c.equal(BigInt(plain * comb::factorial(j + 1)),
                BigInt(comb::factorial(n) * comb::binomial(n - 1, j)),
                at({{"A-sum n", n}, {"j", j}}));
        if (j < n - 1) c.equal(alt, BigInt(0), at({{"A-alternating n", n}, {"j", j}}));
      }
    }
    out.push_back(c.done());
  }
  return out;
}

std::vector<CheckResult> composition_convolutions(const comb::StirlingTables& t, long max_n) {
  std::vector<CheckResult> out;
  {
    // sum over j_1..j_m >= 1, j_{m+1} >= 0 of P(N-m) / (prod j_i! * j_{m+1}! 2^{j_{m+1}})
    //   = m!/(2^{n-m} n!) B[n,N] B{N,m}
    Check c("P-coefficient composition convolution");
    for (long n = 1; n <= max_n; ++n) {
      for (long m = 0; m <= n; ++m) {
        std::vector<Rational> lhs(n + 1, Rational(0));
        for (long used = m; used <= n; ++used) {
          for_each_composition(static_cast<int>(used), static_cast<int>(m),
                               [&](const std::vector<int>& parts) {
            auto poly = comb::poly_P(n, parts);
            BigInt den = comb::factorial(n - used) * comb::pow2(n - used);
            for (int j : parts) den *= comb::factorial(j);
            for (long N = 0; N <= n; ++N) {
              long r = N - m;
              if (r < 0 || r >= static_cast<long>(poly.size())) continue;
              lhs[N] += Rational(poly[r], den);
            }
          });
        }
        for (long N = 0; N <= n; ++N) {
          Rational rhs = Rational(comb::factorial(m), comb::pow2(n - m) * comb::factorial(n)) *
                         Rational(BigInt(t.get(Kind::first_b, n, N) * t.get(Kind::second_b, N, m)));
          c.equal(lhs[N], rhs, at({{"n", n}, {"m", m}, {"N", N}}));
        }
      }
    }
    out.push_back(c.done());
  }
  {
    // sum over compositions of n into m+1 parts of Q(N-m-1) / prod j_i!
    //   = (m+1)!/n! [n N]{N, m+1}
    Check c("Q-coefficient composition convolution");
    for (long n = 1; n <= max_n; ++n) {
      for (long m = 0; m <= n - 1; ++m) {
        std::vector<Rational> lhs(n + 1, Rational(0));
        for_each_composition(static_cast<int>(n), static_cast<int>(m + 1),
                             [&](const std::vector<int>& all) {
          std::vector<int> parts(all.begin(), all.end() - 1);
          auto poly = comb::poly_Q(n, parts);
          BigInt den = 1;
          for (int j : all) den *= comb::factorial(j);
          for (long N = 0; N <= n; ++N) {
            long r = N - m - 1;
            if (r < 0 || r >= static_cast<long>(poly.size())) continue;
            lhs[N] += Rational(poly[r], den);
          }
        });
        for (long N = 0; N <= n; ++N) {
          Rational rhs = Rational(comb::factorial(m + 1), comb::factorial(n)) *
                         Rational(BigInt(t.get(Kind::first, n, N) * t.get(Kind::second, N, m + 1)));
          c.equal(lhs[N], rhs, at({{"n", n}, {"m", m}, {"N", N}}));
        }
      }
    }
    out.push_back(c.done());
  }
  return out;
}

std::vector<CheckResult> formula_consistency(const Evaluator& ev, long max_n, long max_d) {
  const auto models = models_up_to(max_n, max_d);
  Check ranges("probabilities in [0,1] and nonnegative expectations");
  Check yf("2 E Y_{k,0} = E f_k");
  Check duality("Y/Z duality lemma");
  Check crofton("Crofton relations between E U_k and E v_k");
  Check vsum("sum of E v_k is 1");
  Check faces("sum of face probabilities over index tuples = E f_k");
  Check inout("face in/out probabilities sum to 1");
  Check cond("conditioned variants");
  Check misc("face, tangent and subspace identities");

  for (const Model& md : models) {
    const long d = md.d;
    const Rational non = ev.nonabsorption_probability(md);
    const Rational abs = ev.absorption_probability(md);
    ranges.truth(non >= 0 && non <= 1, at_model(md, {}) + " nonabsorption outside [0,1]");
    ranges.equal(non + abs, Rational(1), at_model(md, {}) + " absorption + nonabsorption");

    for (long k = 1; k <= d - 1; ++k) {
      Rational f = ev.expected_fk(md, k);
      ranges.truth(f >= 0, at_model(md, {{"f_k k", k}}));
      yf.equal(Rational(2) * ev.expected_Y(md, k, 0), f, at_model(md, {{"k", k}}));
      misc.equal(ev.expected_Lambda(md, k), ev.expected_Y(md, k, k - 1),
                 at_model(md, {{"Lambda k", k}}));
      misc.equal(ev.expected_face_intrinsic_sum(md, k, k), ev.expected_Lambda(md, k),
                 at_model(md, {{"face v_m sum m", k}}));
    }

    for (long m = 1; m <= d; ++m) {
      for (long l = 0; l < m; ++l) {
        Rational lhs = ev.expected_Y_dual(md, m, l);
        Rational rhs = Rational(1, 2) * ev.expected_fk(md, d - m) - ev.expected_Z(md, d - m, d - l);
        duality.equal(lhs, rhs, at_model(md, {{"m", m}, {"l", l}}));
      }
    }

    Rational vtot = 0, vtot_c = 0;
    for (long k = 0; k <= d; ++k) {
      Rational v = ev.expected_vk(md, k);
      Rational vc = ev.expected_vk(md, k, true);
      ranges.truth(v >= 0 && v <= 1 && vc >= 0 && vc <= 1, at_model(md, {{"v_k k", k}}));
      vtot += v;
      vtot_c += vc;
      // conditioned intrinsic volumes: remove the R^d atom, which sits at v_d
      Rational expect_c = (k < d ? v : v - abs) / non;
      cond.equal(vc, expect_c, at_model(md, {{"v_k k", k}}));
    }
    vsum.equal(vtot, Rational(1), at_model(md, {}));
    vsum.equal(vtot_c, Rational(1), at_model(md, {{"conditioned", 1}}));

    for (long k = 0; k <= d; ++k) {
      Rational u = ev.expected_Uk(md, k);
      Rational uc = ev.expected_Uk(md, k, true);
      ranges.truth(u >= 0 && u <= Rational(1) && uc >= 0 && uc <= 1, at_model(md, {{"U_k k", k}}));
      Rational odd = 0, odd_c = 0;
      for (long j = 1; k + j <= d; j += 2) {
        odd += ev.expected_vk(md, k + j);
        odd_c += ev.expected_vk(md, k + j, true);
      }
      crofton.equal(u, odd, at_model(md, {{"k", k}}));
      crofton.equal(uc, odd_c, at_model(md, {{"conditioned k", k}}));
      const long u_space = (d - k > 0 && (d - k) % 2 == 1) ? 1 : 0;
      cond.equal(uc, (u - Rational(u_space) * abs) / non, at_model(md, {{"U_k k", k}}));
      misc.equal(u, ev.expected_Z(md, 0, k) + Rational(u_space) * abs,
                 at_model(md, {{"U_k = Z_{0,k} + boundary k", k}}));
      if (k <= d - 1) {
        misc.equal(ev.expected_Z(md, 0, k),
                   Rational(1, 2) * (ev.subspace_intersection_probability(md, k) - abs),
                   at_model(md, {{"Z_{0,k} vs subspace probability k", k}}));
      }
    }
    // v_k = U_{k-1} - U_{k+1}, v_{d-1} = U_{d-2}, v_d = U_{d-1}
    for (long k = 1; k <= d; ++k) {
      Rational rhs = ev.expected_Uk(md, k - 1) - (k + 1 <= d ? ev.expected_Uk(md, k + 1) : Rational(0));
      crofton.equal(ev.expected_vk(md, k), rhs, at_model(md, {{"differencing k", k}}));
    }

    for (long j = 0; j <= d - 1; ++j) {
      Rational tot = 0;
      for (long k = j; k <= d; ++k) {
        Rational ts = ev.expected_tangent_intrinsic_sum(md, j, k);
        ranges.truth(ts >= 0, at_model(md, {{"tangent j", j}, {"k", k}}));
        tot += ts;
        if (k >= j + 1 && k <= d - 2)
          misc.equal(ts, ev.expected_Z(md, j, k - 1) - ev.expected_Z(md, j, k + 1),
                     at_model(md, {{"tangent via Z j", j}, {"k", k}}));
        if (k == d - 1 && k >= j + 1)
          misc.equal(ts, ev.expected_Z(md, j, d - 2), at_model(md, {{"tangent via Z j", j}, {"k", k}}));
        if (k == d && k >= j + 1)
          misc.equal(ts, ev.expected_Z(md, j, d - 1), at_model(md, {{"tangent via Z j", j}, {"k", k}}));
        cond.equal(ev.expected_tangent_intrinsic_sum(md, j, k, true), ts / non,
                   at_model(md, {{"tangent j", j}, {"k", k}}));
      }
      misc.equal(tot, ev.expected_fk(md, j), at_model(md, {{"tangent sum = f_j j", j}}));
    }

    for (long m = 0; m <= d; ++m) {
      for (long l = 0; l <= m; ++l) {
        Rational fi = ev.expected_face_intrinsic_sum(md, m, l);
        ranges.truth(fi >= 0, at_model(md, {{"face sum m", m}, {"l", l}}));
        if (m < d) {
          cond.equal(ev.expected_face_intrinsic_sum(md, m, l, true), fi / non,
                     at_model(md, {{"face sum m", m}, {"l", l}}));
        }
        if (l < m && m <= d - 1) {
          Rational odd = 0;
          for (long j = 1; l + j <= m; j += 2) odd += ev.expected_face_intrinsic_sum(md, m, l + j);
          crofton.equal(odd, ev.expected_Y(md, m, l), at_model(md, {{"face Crofton m", m}, {"l", l}}));
        }
      }
    }

    for (long m = 1; m <= d - 1; ++m) {
      for (long l = 0; l < m; ++l) {
        Rational y = ev.expected_Y(md, m, l);
        ranges.truth(y >= 0, at_model(md, {{"Y m", m}, {"l", l}}));
        cond.equal(ev.expected_Y(md, m, l, true), y / non, at_model(md, {{"Y m", m}, {"l", l}}));
      }
      cond.equal(ev.expected_fk(md, m, true), ev.expected_fk(md, m) / non, at_model(md, {{"f k", m}}));
      cond.equal(ev.expected_Lambda(md, m, true), ev.expected_Lambda(md, m) / non,
                 at_model(md, {{"Lambda k", m}}));
    }
    for (long j = 0; j <= d; ++j) {
      for (long k = j; k <= d; ++k) {
        Rational z = ev.expected_Z(md, j, k);
        ranges.truth(z >= 0, at_model(md, {{"Z j", j}, {"k", k}}));
        cond.equal(ev.expected_Z(md, j, k, true), z / non, at_model(md, {{"Z j", j}, {"k", k}}));
      }
    }
    for (long m = 1; m <= d; ++m)
      for (long l = 0; l < m; ++l)
        cond.equal(ev.expected_Y_dual(md, m, l, true), ev.expected_Y_dual(md, m, l) / non,
                   at_model(md, {{"Y dual m", m}, {"l", l}}));

    for (long k = 0; k <= d - 1; ++k) {
      Rational p = ev.subspace_intersection_probability(md, k);
      ranges.truth(p >= 0 && p <= 1, at_model(md, {{"subspace k", k}}));
    }
    misc.equal(ev.subspace_intersection_probability(md, 0), Rational(1), at_model(md, {{"subspace k", 0}}));

    const int limit = static_cast<int>(md.kind == ModelKind::a_bridge ? md.n - 1 : md.n);
    for (long k = 1; k <= d - 1; ++k) {
      Rational tot = 0;
      index_tuples(limit, static_cast<int>(k), [&](const std::vector<int>& idx) {
        Rational in = ev.face_probability(md, idx);
        Rational outp = ev.face_out_probability(md, idx);
        ranges.truth(in >= 0 && in <= 1, at_model(md, {{"face prob k", k}}));
        inout.equal(in + outp, Rational(1), at_model(md, {{"k", k}, {"i_k", idx.back()}}));
        tot += in;
      });
      faces.equal(tot, ev.expected_fk(md, k), at_model(md, {{"k", k}}));
    }

    std::vector<int> one{static_cast<int>(md.n)};
    std::vector<int> none;
    misc.equal(md.kind == ModelKind::b_walk ? ev.joint_absorption_probability(one, none, d)
                                            : ev.joint_absorption_probability(none, one, d),
               abs, at_model(md, {{"joint absorption single block", 1}}));
  }

  return {ranges.done(), yf.done(), duality.done(), crofton.done(), vsum.done(),
          faces.done(), inout.done(), cond.done(), misc.done()};
}

CheckResult wendel_check() {
  Check c("Wendel probability");
  c.equal(Evaluator::wendel_probability(4, 3), Rational(7, 8), "n=4 d=3");
  c.equal(Evaluator::wendel_probability(2, 1), Rational(1, 2), "n=2 d=1");
  for (long n = 1; n <= 8; ++n)
    for (long d = n; d <= n + 2; ++d)
      c.equal(Evaluator::wendel_probability(n, d), Rational(1), at({{"n", n}, {"d", d}}));
  return c.done();
}

CheckResult large_n_check(const Evaluator& ev) {
  Check c("large-n conditioned E f_1, bridge n=500 d=3");
  Model md{ModelKind::a_bridge, 500, 3};
  Rational v = ev.expected_fk(md, 1, true);
  Rational target = 6;
  Rational dev = v - target;
  if (dev < 0) dev = -dev;
  c.truth(dev * 10 <= target, "value " + std::to_string(v.to_double()) + " not within 10% of 6");
  return c.done();
}

std::vector<CheckResult> identity_suite(const Evaluator& ev) {
  std::vector<CheckResult> all = stirling_identities(ev.tables());
  for (auto& r : composition_convolutions(ev.tables())) all.push_back(r);
  all.push_back(wendel_check());
  for (auto& r : formula_consistency(ev)) all.push_back(r);
  all.push_back(large_n_check(ev));
  return all;
}

}  // namespace conic::checks
