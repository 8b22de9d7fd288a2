#include "ecn/construct.hpp"
#include "expr_build.hpp"

namespace ecn::construct {

using numbers::Sprcn;
using prf::ExprPtr;

namespace {

using namespace build;

ExprPtr arg1() { return prf::proj(1, 1); }

ExprPtr parity(ExprPtr e) {  // 1 on odd input
  return tsub(e, mul(nat_c(2), div_floor(e, nat_c(2))));
}

// Alternating-series accumulators with denominator factor D(k) and numerator
// 4, positive terms on odd k. Kept as separate loops with at most two packed
// components; unpairing costs a root extraction, so the states stay small.

// product of factor(1..m), arity 1
ExprPtr product_loop(const std::function<ExprPtr(ExprPtr)>& factor) {
  const std::uint32_t a = 3;
  ExprPtr k0 = prf::proj(2, a);
  ExprPtr acc = select(sgn(k0), prf::proj(3, a), nat_c(1));
  ExprPtr body = mul(std::move(acc), factor(succ_of(k0)));
  return prf::bloop(std::move(body), prf::proj(1, 1));
}

enum class Sign { kPlus, kMinus };

// numerator track over the common denominator P(m) = product of factor(1..m):
// init*P(m) + sum over active k of 4*P(m)/D(k). The product is computed once
// and shared through the composition; each division is exact.
ExprPtr signed_sum_part(const std::function<ExprPtr(ExprPtr)>& factor, std::uint64_t init_int,
                        Sign part) {
  ExprPtr kk = succ_of(prf::proj(3, 3));
  ExprPtr d = factor(kk);
  ExprPtr odd = parity(kk);
  ExprPtr active = part == Sign::kPlus ? std::move(odd) : not1(std::move(odd));
  ExprPtr in_range = le(std::move(kk), prf::proj(1, 3));
  ExprPtr term = mul(mul(std::move(in_range), std::move(active)),
                     mul(nat_c(4), div_floor(prf::proj(2, 3), std::move(d))));
  ExprPtr inner = add(mul(nat_c(part == Sign::kPlus ? init_int : 0), prf::proj(2, 2)),
                      prf::bsum(std::move(term), prf::proj(1, 2)));
  return prf::comp(std::move(inner), {prf::proj(1, 1), product_loop(factor)});
}

PrSeq alternating_series(const std::function<ExprPtr(ExprPtr)>& factor, std::uint64_t init_int,
                         ExprPtr modulus) {
  PrSeq s;
  s.num_pos = signed_sum_part(factor, init_int, Sign::kPlus);
  s.num_neg = signed_sum_part(factor, init_int, Sign::kMinus);
  s.den = product_loop(factor);
  s.modulus = std::move(modulus);
  return s;
}

}  // namespace

PrSeq constant_seq(const Rational& v) {
  PrSeq s;
  s.num_pos = nat_c(v.sign() >= 0 ? v.num().magnitude() : Nat());
  s.num_neg = nat_c(v.sign() < 0 ? v.num().magnitude() : Nat());
  s.den = nat_c(v.den());
  s.modulus = nat_c(0);
  return s;
}

PrSeq geometric_seq() {
  PrSeq s;
  s.num_pos = tsub(pow2_of(arg1(), 1), nat_c(1));
  s.num_neg = nat_c(0);
  s.den = pow2_of(arg1(), 1);
  s.modulus = arg1();
  return s;
}

PrSeq alternating_geometric_seq() {
  ExprPtr p2 = pow2_of(arg1(), 1);
  PrSeq s;
  s.num_pos = select(parity(arg1()), add(p2, nat_c(1)), tsub(p2, nat_c(1)));
  s.num_neg = nat_c(0);
  s.den = mul(nat_c(3), p2);
  s.modulus = arg1();
  return s;
}

PrSeq harmonic_decay_seq() {
  PrSeq s;
  s.num_pos = nat_c(1);
  s.num_neg = nat_c(0);
  s.den = succ_of(arg1());
  s.modulus = pow2_of(arg1(), 1);
  return s;
}

PrSeq leibniz_pi_seq() {
  // terms 4/(2k-1), positive first; tail below 4/(2n+1)
  auto factor = [](ExprPtr k) { return tsub(mul(nat_c(2), std::move(k)), nat_c(1)); };
  return alternating_series(factor, 0, pow2_of(add(arg1(), nat_c(3)), 1));
}

PrSeq nilakantha_pi_seq() {
  // terms 4/((2k)(2k+1)(2k+2)) after the leading 3; tail bound gives the
  // cube-root-flavoured modulus 2^((e+2) div 3)
  auto factor = [](ExprPtr k) {
    ExprPtr t = mul(nat_c(2), std::move(k));
    return mul(mul(t, succ_of(t)), add(t, nat_c(2)));
  };
  return alternating_series(factor, 3,
                            pow2_of(div_floor(add(arg1(), nat_c(2)), nat_c(3)), 1));
}

PrSeq e_series_seq() {
  // numerator track: state pair(numerator, k!); q_m = (sum of m!/k!, k<=m) / m!
  const std::uint32_t a = 3;
  ExprPtr k0 = prf::proj(2, a);
  ExprPtr st = prf::proj(3, a);
  ExprPtr started = sgn(k0);
  ExprPtr num = select(started, fst(st), nat_c(1));
  ExprPtr den = select(started, snd(st), nat_c(1));
  ExprPtr kk = succ_of(k0);
  ExprPtr body = pair(succ_of(mul(std::move(num), kk)), mul(std::move(den), kk));
  ExprPtr loop = prf::bloop(std::move(body), prf::proj(1, 1));

  // smallest n with (n+1)! > 2^(e+1), counted as the failures before it
  ExprPtr fact_body = mul(max2(prf::proj(4, 4), nat_c(1)), succ_of(prf::proj(3, 4)));
  ExprPtr fact = prf::bloop(std::move(fact_body), succ_of(prf::proj(2, 2)));
  ExprPtr small = le(std::move(fact), pow2_of(succ_of(prf::proj(1, 2)), 2));
  ExprPtr modulus = prf::bsum(std::move(small), add(arg1(), nat_c(2)));

  PrSeq s;
  s.num_pos = fst(std::move(loop));
  s.num_neg = nat_c(0);
  s.den = product_loop([](ExprPtr k) { return k; });  // m!
  s.modulus = std::move(modulus);
  return s;
}

Sprcn const_pi() { return to_sprcn(nilakantha_pi_seq(), prf::EvalBudget{1'000'000}); }

Sprcn const_e() { return to_sprcn(e_series_seq(), prf::EvalBudget{1'000'000}); }

Sprcn const_sqrt2() {
  // digit n: +1 while the square of the running value is below 2, else -1;
  // state pair(scaled partial sum, digit), partial after k digits = pnum/2^k
  const std::uint32_t a = 3;
  ExprPtr k0 = prf::proj(2, a);
  ExprPtr st = prf::proj(3, a);
  ExprPtr pnum = select(sgn(k0), fst(st), nat_c(1));
  ExprPtr scale4 = pow2_of(mul(nat_c(2), k0), a);  // 4^k
  ExprPtr below = not1(le(mul(nat_c(2), std::move(scale4)), mul(pnum, pnum)));
  ExprPtr next = tsub(add(mul(nat_c(2), std::move(pnum)), mul(nat_c(2), below)), nat_c(1));
  ExprPtr code = select(below, nat_c(1), nat_c(2));
  ExprPtr body = pair(std::move(next), std::move(code));
  return Sprcn{Int(1l), snd(prf::bloop(std::move(body), prf::proj(1, 1)))};
}

namespace {

ExprPtr is_prime_fn() {
  // proper divisors up to x/2 + 1; primes are the x >= 2 with none
  ExprPtr x2 = prf::proj(1, 2);
  ExprPtr d = prf::proj(2, 2);
  ExprPtr divides = eq(mul(d, div_floor(x2, d)), x2);
  ExprPtr proper = mul(le(nat_c(2), d), lt(d, x2));
  ExprPtr witnesses =
      prf::bsum(mul(std::move(proper), std::move(divides)),
                add(div_floor(prf::proj(1, 1), nat_c(2)), nat_c(1)));
  return mul(le(nat_c(2), prf::proj(1, 1)), not1(sgn(std::move(witnesses))));
}

}  // namespace

Sprcn goldbach_number() {
  ExprPtr prime = is_prime_fn();
  ExprPtr i = arg1();

  ExprPtr i2 = prf::proj(1, 2);
  ExprPtr p = prf::proj(2, 2);
  ExprPtr split = mul(app1(prime, p), app1(prime, tsub(mul(nat_c(2), i2), p)));
  ExprPtr found = sgn(prf::bsum(std::move(split), prf::proj(1, 1)));

  ExprPtr div13 = eq(mul(nat_c(13), div_floor(i, nat_c(13))), i);
  ExprPtr code =
      select(eq(i, nat_c(1)), nat_c(1),
             select(std::move(found), nat_c(0), select(std::move(div13), nat_c(2), nat_c(1))));
  return Sprcn{Int(0l), std::move(code)};
}

}  // namespace ecn::construct
