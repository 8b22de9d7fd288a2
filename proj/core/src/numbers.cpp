#include "ecn/numbers.hpp"

namespace ecn::numbers {

namespace {

Nat eval_coeff(const prf::ExprPtr& coeff, std::uint32_t i, const prf::EvalBudget& budget) {
  Nat arg(static_cast<unsigned long>(i));
  return prf::eval(*coeff, std::span<const Nat>(&arg, 1), budget);
}

}  // namespace

int coeff_prcn(const Prcn& x, std::uint32_t i, const prf::EvalBudget& budget) {
  return eval_coeff(x.coeff, i, budget).is_zero() ? 0 : 1;
}

SignedDigit coeff_sprcn(const Sprcn& x, std::uint32_t i, const prf::EvalBudget& budget) {
  Nat v = eval_coeff(x.coeff, i, budget);
  if (v.is_zero()) return SignedDigit::kZero;
  if (v == Nat(1)) return SignedDigit::kPlus;
  return SignedDigit::kMinus;
}

namespace {

template <typename Number, typename DigitFn>
ApproxResult partial_sum(const Number& x, std::uint32_t n, DigitFn digit) {
  Rational p(x.int_part);
  for (std::uint32_t i = 1; i <= n; ++i)
    p = p + digit(i) * pow2(-static_cast<std::int64_t>(i));
  return ApproxResult{p, n, pow2(-static_cast<std::int64_t>(n))};
}

}  // namespace

ApproxResult approx(const Prcn& x, std::uint32_t n, const prf::EvalBudget& budget) {
  return partial_sum(x, n, [&](std::uint32_t i) {
    return Rational(static_cast<long>(coeff_prcn(x, i, budget)));
  });
}

ApproxResult approx(const Sprcn& x, std::uint32_t n, const prf::EvalBudget& budget) {
  return partial_sum(x, n,
                     [&](std::uint32_t i) { return digit_value(coeff_sprcn(x, i, budget)); });
}

Comparison compare_tol(const Sprcn& x, const Sprcn& y, std::uint32_t n,
                       const prf::EvalBudget& budget) {
  Rational diff = approx(x, n, budget).value - approx(y, n, budget).value;
  Rational tol = Rational(2) * pow2(-static_cast<std::int64_t>(n));
  if (diff > tol) return Comparison::kApartAbove;
  if (-diff > tol) return Comparison::kApartBelow;
  return Comparison::kWithinTolerance;
}

RcnSample rcn_sample(const Rcn& x, std::uint64_t step_cap) {
  machine::Run run(x.coeff);
  RcnSample s{Rational(x.int_part), 0, 0, false};
  std::uint32_t i = 0;
  while (run.steps_taken() < step_cap && !run.halted()) {
    if (auto emitted = run.step()) {
      ++i;
      s.partial = s.partial + *emitted * pow2(-static_cast<std::int64_t>(i));
    }
  }
  s.coefficients = i;
  s.steps = run.steps_taken();
  s.halted = run.halted();
  return s;
}

}  // namespace ecn::numbers
