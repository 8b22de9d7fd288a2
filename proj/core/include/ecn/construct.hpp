#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ecn/numbers.hpp"
#include "ecn/numeric.hpp"
#include "ecn/prf.hpp"

// Conversion of modulated rational sequences into signed power-series
// numbers, the arithmetic built on that conversion, named constants, and the
// desk-scale enumeration demos.

namespace ecn::construct {

/// Rational sequence q_m = (num_pos(m) - num_neg(m)) / max(den(m), 1) with a
/// claimed Cauchy modulus: |q_i - q_j| < 2^-e for all i, j >= modulus(e).
/// All four expressions are arity 1. Whether `modulus` really is a modulus
/// for the sequence is the caller's obligation; it is not decidable here.
struct PrSeq {
  prf::ExprPtr num_pos;
  prf::ExprPtr num_neg;
  prf::ExprPtr den;
  prf::ExprPtr modulus;
};

/// Raised when the digit choice falls outside the valid correction range,
/// which certifies that `modulus` was not a Cauchy modulus for the sequence.
struct InvalidModulus : std::runtime_error {
  explicit InvalidModulus(const std::string& what) : std::runtime_error(what) {}
};

/// Converts the sequence to a signed power-series number with the same
/// limit. The integer part is fixed from a_1 (nearest integer, half-way ties
/// toward minus infinity); each later digit corrects the running partial sum
/// toward a_(n+1) by trisecting the correction range. The returned
/// coefficient program embeds the four input expressions and replays that
/// construction; evaluating it budgets like any other expression.
numbers::Sprcn to_sprcn(const PrSeq& s, const prf::EvalBudget& budget);

/// Reference run of the same construction in exact rational arithmetic.
/// subseq holds a_1..a_(depth+1), partials p_0..p_depth, digits d_1..d_depth.
/// Asserts |p_n - a_(n+1)| <= 2^-(n+1) at every step and throws
/// InvalidModulus the moment the trisection range is violated.
struct ConversionTrace {
  Int int_part;
  std::vector<Rational> subseq;
  std::vector<Rational> partials;
  std::vector<numbers::SignedDigit> digits;
};
ConversionTrace convert_trace(const PrSeq& s, std::uint32_t depth,
                              const prf::EvalBudget& budget);

// Arithmetic. Sums carry modulus e+1; products carry e plus a shift from the
// integer-part magnitudes. There is no division: a multiplicative inverse is
// not computable in general (deciding whether the operand's limit is zero is
// not possible), so none is offered.
numbers::Sprcn sprcn_add(const numbers::Sprcn& x, const numbers::Sprcn& y,
                         const prf::EvalBudget& budget);
numbers::Sprcn sprcn_neg(const numbers::Sprcn& x);
numbers::Sprcn sprcn_sub(const numbers::Sprcn& x, const numbers::Sprcn& y,
                         const prf::EvalBudget& budget);
numbers::Sprcn sprcn_mul(const numbers::Sprcn& x, const numbers::Sprcn& y,
                         const prf::EvalBudget& budget);

// Named constants.
numbers::Sprcn const_sqrt2();
numbers::Sprcn const_pi();
numbers::Sprcn const_e();
/// Coefficient i: +1 at i=1; for i>=2, 0 when 2i splits into two primes,
/// otherwise -1 when 13 divides i and +1 when it does not.
numbers::Sprcn goldbach_number();

// Sequence fixtures (also used by the conversion tests).
PrSeq constant_seq(const Rational& v);          // q_m = v, modulus 0
PrSeq geometric_seq();                          // q_m = 1 - 2^-m, modulus e
PrSeq alternating_geometric_seq();              // q_m -> 1/3, modulus e
PrSeq harmonic_decay_seq();                     // q_m = 1/(m+1), modulus 2^e
PrSeq leibniz_pi_seq();                         // 4 - 4/3 + 4/5 - ..., modulus 2^(e+3)
PrSeq nilakantha_pi_seq();                      // 3 + 4/(2*3*4) - ..., modulus 2^((e+2) div 3)
PrSeq e_series_seq();                           // sum 1/k!, factorial-tail modulus

/// File form of a sequence: header line `class: PRSEQ`, then the four
/// labeled expressions. parse_prseq throws numbers::DeserializeError.
std::string serialize_prseq(const PrSeq& s);
PrSeq parse_prseq(std::string_view text);

struct DiagonalBlocked : std::runtime_error {
  explicit DiagonalBlocked(const std::string& what) : std::runtime_error(what) {}
};

/// Closed dyadic interval [lo, hi] of width 4^-k, nested per stage, exactly
/// disjoint from the certified interval [p_i - 2^-2i, p_i + 2^-2i] of each of
/// the first k enumerated signed numbers (integer part 0, coefficient program
/// i-th in the fixed enumeration), where p_i = approx(s_i, 2i). Any number in
/// the interval therefore differs from every s_i.
std::pair<Rational, Rational> diagonalize(std::uint32_t k, const prf::EvalBudget& budget);

struct StepCapExceeded : std::runtime_error {
  explicit StepCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Signed-expansion blocks for the first `count` enumerated unary programs
/// specialized at their own index: each block is 1, then one 0 per evaluation
/// step, then the program's value mapped to -1 (value 0) or +1 (value >= 1).
/// A program needing more than step_cap steps aborts with StepCapExceeded.
std::vector<numbers::SignedDigit> theorem3_prefix(std::uint32_t count, std::uint64_t step_cap);

/// Rewrites complete blocks `1 0^T s` into the equal unsigned expansion:
/// s=+1 keeps the block, s=-1 turns it into 0 followed by T+1 ones.
std::vector<int> unsigned_expansion(std::span<const numbers::SignedDigit> digits);

}  // namespace ecn::construct
