#include "ecn/construct.hpp"

namespace ecn::construct {

using numbers::SignedDigit;

std::pair<Rational, Rational> diagonalize(std::uint32_t k, const prf::EvalBudget& budget) {
  prf::Enumerator en;
  Rational lo(0l);
  Rational width(1l);
  for (std::uint32_t i = 1; i <= k; ++i) {
    numbers::Sprcn si{Int(0l), en.at(i - 1)};
    Rational p = numbers::approx(si, 2 * i, budget).value;
    Rational radius = pow2(-2 * static_cast<std::int64_t>(i));
    Rational cert_lo = p - radius;
    Rational cert_hi = p + radius;

    Rational w = radius;  // 4^-i
    Rational quarter = w * Rational(1, 4);
    bool placed = false;
    // aligned quarter cells first, then the offset grid one level finer
    for (int pass = 0; pass < 2 && !placed; ++pass) {
      int positions = pass == 0 ? 4 : 13;
      Rational step = pass == 0 ? w : quarter;
      for (int j = 0; j < positions; ++j) {
        Rational a = lo + step * Rational(static_cast<long>(j));
        if (a + w < cert_lo || cert_hi < a) {
          lo = a;
          width = w;
          placed = true;
          break;
        }
      }
    }
    if (!placed)
      throw DiagonalBlocked("stage " + std::to_string(i) +
                            ": certified interval blocks every candidate cell");
  }
  return {lo, lo + width};
}

std::vector<SignedDigit> theorem3_prefix(std::uint32_t count, std::uint64_t step_cap) {
  prf::Enumerator en;
  std::vector<SignedDigit> out;
  for (std::uint32_t i = 1; i <= count; ++i) {
    prf::ExprPtr g = en.at(i - 1);
    Nat arg(static_cast<unsigned long>(i));
    Nat value;
    std::uint64_t steps = 0;
    try {
      auto r = prf::eval_steps(*g, std::span<const Nat>(&arg, 1), prf::EvalBudget{step_cap});
      value = r.first;
      steps = r.second;
    } catch (const prf::BudgetExceeded&) {
      throw StepCapExceeded("program " + std::to_string(i) + " needs more than " +
                            std::to_string(step_cap) + " steps");
    }
    out.push_back(SignedDigit::kPlus);
    for (std::uint64_t s = 0; s < steps; ++s) out.push_back(SignedDigit::kZero);
    out.push_back(value.is_zero() ? SignedDigit::kMinus : SignedDigit::kPlus);
  }
  return out;
}

std::vector<int> unsigned_expansion(std::span<const SignedDigit> digits) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < digits.size()) {
    if (digits[i] != SignedDigit::kPlus)
      throw std::invalid_argument("block must start with digit 1");
    std::size_t j = i + 1;
    while (j < digits.size() && digits[j] == SignedDigit::kZero) ++j;
    if (j >= digits.size()) throw std::invalid_argument("block is missing its final digit");
    std::size_t zeros = j - i - 1;
    if (digits[j] == SignedDigit::kPlus) {
      out.push_back(1);
      out.insert(out.end(), zeros, 0);
      out.push_back(1);
    } else {
      out.push_back(0);
      out.insert(out.end(), zeros + 1, 1);
    }
    i = j + 1;
  }
  return out;
}

}  // namespace ecn::construct
