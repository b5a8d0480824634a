#include "conic/exact.hpp"

#include <ostream>

#include "conic/errors.hpp"

namespace conic {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::from_mpq(const mpq_class& q) {
  Rational r;
  r.q_ = q;
  r.q_.canonicalize();
  return r;
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  BigInt num, den = 1;
  bool ok = !text.empty();
  if (slash == std::string::npos) {
    ok = ok && num.set_str(text, 10) == 0;
  } else {
    ok = ok && num.set_str(text.substr(0, slash), 10) == 0 &&
         den.set_str(text.substr(slash + 1), 10) == 0;
  }
  if (!ok) throw DomainError("not a rational literal: '" + text + "'");
  return Rational(num, den);
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw DomainError("division by zero rational");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace conic
