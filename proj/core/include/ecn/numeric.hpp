#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

// Exact arbitrary-precision numbers. All values are immutable once built and
// all operations are pure, so concurrent use needs no coordination.

namespace ecn {

enum class Ordering { kLess = -1, kEqual = 0, kGreater = 1 };

/// Unbounded non-negative integer (canonical: one representation per value).
class Nat {
 public:
  Nat() : v_(0) {}
  explicit Nat(unsigned long v) : v_(v) {}
  explicit Nat(const mpz_class& v);

  /// Parses a non-empty decimal digit string. Anything else -> nullopt.
  static std::optional<Nat> parse(std::string_view text);

  const mpz_class& raw() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool fits_u64() const;
  std::uint64_t to_u64() const;  // caller ensures fits_u64()
  std::string str() const { return v_.get_str(); }

  friend Nat operator+(const Nat& a, const Nat& b) { return Nat(mpz_class(a.v_ + b.v_)); }
  friend Nat operator*(const Nat& a, const Nat& b) { return Nat(mpz_class(a.v_ * b.v_)); }
  friend bool operator==(const Nat& a, const Nat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Nat& a, const Nat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Nat& a, const Nat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Nat& a, const Nat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Nat& a, const Nat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Nat& a, const Nat& b) { return a.v_ >= b.v_; }

 private:
  mpz_class v_;
};

Nat trunc_sub(const Nat& a, const Nat& b);   // max(a-b, 0)
Nat div_floor(const Nat& a, const Nat& b);   // floor(a/b); division by zero yields 0
Nat isqrt(const Nat& a);                     // floor(sqrt(a))
Nat nat_pow2(std::uint64_t k);               // 2^k

/// Signed unbounded integer. sign() is 0 exactly when the value is 0.
class Int {
 public:
  Int() : v_(0) {}
  explicit Int(long v) : v_(v) {}
  explicit Int(const mpz_class& v) : v_(v) {}
  explicit Int(const Nat& n) : v_(n.raw()) {}

  /// Parses `[-]digits`. Anything else -> nullopt.
  static std::optional<Int> parse(std::string_view text);

  int sign() const { return sgn(v_); }
  Nat magnitude() const { return Nat(mpz_class(abs(v_))); }
  const mpz_class& raw() const { return v_; }
  std::string str() const { return v_.get_str(); }

  friend Int operator+(const Int& a, const Int& b) { return Int(mpz_class(a.v_ + b.v_)); }
  friend Int operator-(const Int& a, const Int& b) { return Int(mpz_class(a.v_ - b.v_)); }
  friend Int operator*(const Int& a, const Int& b) { return Int(mpz_class(a.v_ * b.v_)); }
  friend Int operator-(const Int& a) { return Int(mpz_class(-a.v_)); }
  friend bool operator==(const Int& a, const Int& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Int& a, const Int& b) { return a.v_ != b.v_; }
  friend bool operator<(const Int& a, const Int& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Int& a, const Int& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Int& a, const Int& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Int& a, const Int& b) { return a.v_ >= b.v_; }

 private:
  mpz_class v_;
};

/// Exact rational, always normalized: gcd(|num|, den) = 1 and den > 0.
class Rational {
 public:
  Rational() : v_(0) {}
  explicit Rational(long v) : v_(v) {}
  explicit Rational(const Int& v) : v_(v.raw()) {}
  Rational(const Int& num, const Nat& den);  // den must be nonzero
  Rational(long num, unsigned long den);

  /// Parses `[-]num/den` or `[-]digits`. Unnormalized input is normalized.
  static std::optional<Rational> parse(std::string_view text);

  Int num() const { return Int(mpz_class(v_.get_num())); }
  Nat den() const { return Nat(mpz_class(v_.get_den())); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return v_ == 0; }
  const mpq_class& raw() const { return v_; }
  /// Canonical text form `[-]num/den` (integers print as `n/1`).
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return wrap(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return wrap(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return wrap(a.v_ * b.v_); }
  friend Rational operator-(const Rational& a) { return wrap(-a.v_); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  static Rational wrap(const mpq_class& q);
  mpq_class v_;
};

Rational rat_abs(const Rational& a);
Ordering rat_cmp(const Rational& a, const Rational& b);

/// Exact power of two as a rational; k may be negative.
Rational pow2(std::int64_t k);

/// Exact division; b must be nonzero (used only with known-nonzero divisors).
Rational rat_div(const Rational& a, const Rational& b);

/// Largest integer <= a and smallest integer >= a.
Int rat_floor(const Rational& a);
Int rat_ceil(const Rational& a);

}  // namespace ecn
