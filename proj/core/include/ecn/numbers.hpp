#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "ecn/gcn.hpp"
#include "ecn/machine.hpp"
#include "ecn/numeric.hpp"
#include "ecn/prf.hpp"

// Decidable number classes: an integer part plus a syntactically-checkable
// coefficient program. Membership is a terminating syntactic decision;
// approximation of the power-series classes is total given a step budget.

namespace ecn::numbers {

enum class SignedDigit : int { kMinus = -1, kZero = 0, kPlus = 1 };

inline Rational digit_value(SignedDigit d) { return Rational(static_cast<long>(d)); }

/// Coefficients read as 0 / nonzero-means-1; series I + sum P(i) 2^-i.
struct Prcn {
  Int int_part;
  prf::ExprPtr coeff;
};

/// Coefficients read as 0, 1 means +1, anything above 1 means -1; allowing
/// -1 lets later terms revise earlier overestimates.
struct Sprcn {
  Int int_part;
  prf::ExprPtr coeff;
};

/// Arbitrary machine allowed, but every emit is syntactically a bit. No
/// approximation guarantee exists: the next coefficient may never arrive, so
/// this class only gets validation and bounded-step sampling.
struct Rcn {
  Int int_part;
  machine::ToyMachine coeff;
};

struct ApproxResult {
  Rational value;        // the partial sum p_n
  std::uint32_t order;   // n
  Rational error_bound;  // 2^-n, a bound on |limit - value|
};

int coeff_prcn(const Prcn& x, std::uint32_t i, const prf::EvalBudget& budget);
SignedDigit coeff_sprcn(const Sprcn& x, std::uint32_t i, const prf::EvalBudget& budget);

ApproxResult approx(const Prcn& x, std::uint32_t n, const prf::EvalBudget& budget);
ApproxResult approx(const Sprcn& x, std::uint32_t n, const prf::EvalBudget& budget);

enum class Comparison { kApartBelow, kApartAbove, kWithinTolerance };

/// Three-valued tolerance comparison; equality of limits is undecidable, so
/// kWithinTolerance asserts nothing beyond |p_x - p_y| <= 2*2^-n. An Apart
/// verdict is sound: the limits really are separated in that direction.
Comparison compare_tol(const Sprcn& x, const Sprcn& y, std::uint32_t n,
                       const prf::EvalBudget& budget);

/// Bounded-step sampling for the unmodulated class: run the machine for at
/// most step_cap steps collecting coefficients.
struct RcnSample {
  Rational partial;      // int_part + emitted coefficients so far
  std::uint32_t coefficients;
  std::uint64_t steps;
  bool halted;
};
RcnSample rcn_sample(const Rcn& x, std::uint64_t step_cap);

using ParsedNumber = std::variant<Prcn, Sprcn, Rcn, gcn::Ngcn, gcn::Gcn>;

enum class NumberClass { kPrcn, kSprcn, kRcn, kNgcn, kGcn };
std::string_view class_name(NumberClass c);

/// Canonical `.ecn` text. deserialize(serialize(x)) is structurally x and
/// serialize is byte-stable across round-trips.
std::string serialize(const Prcn& x);
std::string serialize(const Sprcn& x);
std::string serialize(const Rcn& x);
std::string serialize(const gcn::Ngcn& x);
std::string serialize(const gcn::Gcn& x);  // machine-backed only
std::string serialize(const ParsedNumber& x);

struct Rejection {
  std::string reason;
  std::size_t position = 0;
};

struct ValidateResult {
  std::optional<ParsedNumber> accepted;  // engaged exactly on Accept
  NumberClass cls = NumberClass::kPrcn;
  Rejection rejection;                   // meaningful exactly on Reject
  bool ok() const { return accepted.has_value(); }
};

/// Total decision procedure for the `.ecn` format: never hangs, never throws;
/// rejection is a value.
ValidateResult validate(std::string_view text);

struct DeserializeError : std::runtime_error {
  explicit DeserializeError(const std::string& what) : std::runtime_error(what) {}
};

/// validate() that throws DeserializeError instead of returning a rejection.
ParsedNumber deserialize(std::string_view text);

}  // namespace ecn::numbers
