#pragma once

#include "ecn/prf.hpp"

// Internal helpers for assembling expression trees. Binary combinators take
// operand subtrees; anything that projects needs the ambient arity spelled
// out by the caller.

namespace ecn::build {

using prf::ExprPtr;

inline ExprPtr nat_c(std::uint64_t v) { return prf::cnat(v); }
inline ExprPtr nat_c(const Nat& v) { return prf::cnat(v); }

inline ExprPtr app1(ExprPtr f, ExprPtr x) { return prf::comp(std::move(f), {std::move(x)}); }

inline ExprPtr add(ExprPtr a, ExprPtr b) {
  return prf::comp(prf::leaf(prf::Tag::kAdd), {std::move(a), std::move(b)});
}
inline ExprPtr mul(ExprPtr a, ExprPtr b) {
  return prf::comp(prf::leaf(prf::Tag::kMul), {std::move(a), std::move(b)});
}
inline ExprPtr tsub(ExprPtr a, ExprPtr b) {
  return prf::comp(prf::leaf(prf::Tag::kTruncSub), {std::move(a), std::move(b)});
}
inline ExprPtr div_floor(ExprPtr a, ExprPtr b) {
  return prf::comp(prf::leaf(prf::Tag::kDiv), {std::move(a), std::move(b)});
}
inline ExprPtr le(ExprPtr a, ExprPtr b) {
  return prf::comp(prf::leaf(prf::Tag::kLe), {std::move(a), std::move(b)});
}
inline ExprPtr max2(ExprPtr a, ExprPtr b) {
  return prf::comp(prf::leaf(prf::Tag::kMax), {std::move(a), std::move(b)});
}
inline ExprPtr sgn(ExprPtr a) { return app1(prf::leaf(prf::Tag::kSgn), std::move(a)); }
inline ExprPtr pair(ExprPtr a, ExprPtr b) {
  return prf::comp(prf::leaf(prf::Tag::kPair), {std::move(a), std::move(b)});
}
inline ExprPtr fst(ExprPtr a) { return app1(prf::leaf(prf::Tag::kFst), std::move(a)); }
inline ExprPtr snd(ExprPtr a) { return app1(prf::leaf(prf::Tag::kSnd), std::move(a)); }
inline ExprPtr succ_of(ExprPtr a) { return app1(prf::succ(), std::move(a)); }

// boolean-flavoured helpers over {0,1} values
inline ExprPtr not1(ExprPtr a) { return tsub(nat_c(1), std::move(a)); }
inline ExprPtr eq(ExprPtr a, ExprPtr b) {
  return mul(le(a, b), le(b, a));
}
inline ExprPtr lt(ExprPtr a, ExprPtr b) { return not1(le(std::move(b), std::move(a))); }
/// cond must evaluate to 0 or 1; both branches are evaluated (strict).
inline ExprPtr select(ExprPtr cond, ExprPtr then_e, ExprPtr else_e) {
  ExprPtr taken = mul(cond, std::move(then_e));
  ExprPtr skipped = mul(not1(std::move(cond)), std::move(else_e));
  return add(std::move(taken), std::move(skipped));
}

/// 2^e at the given ambient arity.
inline ExprPtr pow2_of(ExprPtr e, std::uint32_t ambient) {
  ExprPtr prev = prf::proj(ambient + 2, ambient + 2);
  ExprPtr body = mul(nat_c(2), max2(std::move(prev), nat_c(1)));
  return max2(prf::bloop(std::move(body), std::move(e)), nat_c(1));
}

/// sum of f(i) for i = 1..m (a fixed small count); 0 when m = 0.
inline ExprPtr sum_1_to_m(const ExprPtr& f, std::uint32_t m, std::uint32_t ambient) {
  if (m == 0) return nat_c(0);
  ExprPtr counter = prf::proj(ambient + 1, ambient + 1);
  ExprPtr body = app1(f, succ_of(std::move(counter)));
  return prf::bsum(std::move(body), nat_c(m - 1));
}

}  // namespace ecn::build
