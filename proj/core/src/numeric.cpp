#include "ecn/numeric.hpp"

#include <stdexcept>

namespace ecn {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Nat::Nat(const mpz_class& v) : v_(v) {
  if (sgn(v_) < 0) throw std::invalid_argument("Nat from negative value");
}

std::optional<Nat> Nat::parse(std::string_view text) {
  if (!all_digits(text)) return std::nullopt;
  return Nat(mpz_class(std::string(text), 10));
}

bool Nat::fits_u64() const {
  return mpz_sizeinbase(v_.get_mpz_t(), 2) <= 64;
}

std::uint64_t Nat::to_u64() const {
  mpz_class lo = v_ & mpz_class(0xffffffff);
  mpz_class hi = v_ >> 32;
  return (static_cast<std::uint64_t>(hi.get_ui()) << 32) | lo.get_ui();
}

Nat trunc_sub(const Nat& a, const Nat& b) {
  if (a.raw() <= b.raw()) return Nat();
  return Nat(mpz_class(a.raw() - b.raw()));
}

Nat div_floor(const Nat& a, const Nat& b) {
  if (b.is_zero()) return Nat();
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return Nat(q);
}

Nat isqrt(const Nat& a) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), a.raw().get_mpz_t());
  return Nat(r);
}

Nat nat_pow2(std::uint64_t k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return Nat(r);
}

std::optional<Int> Int::parse(std::string_view text) {
  bool neg = !text.empty() && text.front() == '-';
  std::string_view digits = neg ? text.substr(1) : text;
  if (!all_digits(digits)) return std::nullopt;
  mpz_class v(std::string(digits), 10);
  if (neg) v = -v;
  return Int(v);
}

Rational::Rational(const Int& num, const Nat& den) {
  if (den.is_zero()) throw std::invalid_argument("Rational with zero denominator");
  v_ = mpq_class(num.raw(), den.raw());
  v_.canonicalize();
}

Rational::Rational(long num, unsigned long den) {
  if (den == 0) throw std::invalid_argument("Rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::wrap(const mpq_class& q) {
  Rational r;
  r.v_ = q;
  r.v_.canonicalize();
  return r;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto i = Int::parse(text);
    if (!i) return std::nullopt;
    return Rational(*i);
  }
  auto num = Int::parse(text.substr(0, slash));
  auto den = Nat::parse(text.substr(slash + 1));
  if (!num || !den || den->is_zero()) return std::nullopt;
  return Rational(*num, *den);
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational rat_abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

Ordering rat_cmp(const Rational& a, const Rational& b) {
  int c = cmp(a.raw(), b.raw());
  return c < 0 ? Ordering::kLess : c > 0 ? Ordering::kGreater : Ordering::kEqual;
}

Rational pow2(std::int64_t k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
  mpq_class q = k >= 0 ? mpq_class(p, 1) : mpq_class(1, p);
  q.canonicalize();
  Rational r(Int(mpz_class(q.get_num())), Nat(mpz_class(q.get_den())));
  return r;
}

Rational rat_div(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::invalid_argument("rational division by zero");
  mpq_class q = a.raw() / b.raw();
  q.canonicalize();
  return Rational(Int(mpz_class(q.get_num())), Nat(mpz_class(q.get_den())));
}

Int rat_floor(const Rational& a) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.raw().get_num().get_mpz_t(), a.raw().get_den().get_mpz_t());
  return Int(q);
}

Int rat_ceil(const Rational& a) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.raw().get_num().get_mpz_t(), a.raw().get_den().get_mpz_t());
  return Int(q);
}

}  // namespace ecn
