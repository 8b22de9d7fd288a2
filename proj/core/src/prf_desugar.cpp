#include "ecn/prf.hpp"

namespace ecn::prf {

namespace {

// Core-only building blocks, shared by the sugar rewrites below. Recursion is
// always on the last argument: f(x..,0)=base(x..), f(x..,y+1)=step(x..,y,f).
ExprPtr pred_core() {
  static const ExprPtr e = primrec(zero(), proj(1, 2));
  return e;
}

ExprPtr zero1_core() {
  static const ExprPtr e = primrec(zero(), proj(2, 2));
  return e;
}

ExprPtr zero_at(std::uint32_t n) {
  if (n == 0) return zero();
  return comp(zero1_core(), {proj(1, n)});
}

ExprPtr const_at(const Nat& c, std::uint32_t n) {
  ExprPtr e = zero_at(n);
  // materializing c successor nodes; refuse absurd sizes
  if (!c.fits_u64() || c.to_u64() > 10'000'000)
    throw std::length_error("constant too large to desugar");
  for (std::uint64_t i = 0, m = c.to_u64(); i < m; ++i) e = comp(succ(), {e});
  return e;
}

ExprPtr add_core() {
  static const ExprPtr e = primrec(proj(1, 1), comp(succ(), {proj(3, 3)}));
  return e;
}

ExprPtr mul_core() {
  static const ExprPtr e = primrec(zero1_core(), comp(add_core(), {proj(1, 3), proj(3, 3)}));
  return e;
}

ExprPtr tsub_core() {
  static const ExprPtr e = primrec(proj(1, 1), comp(pred_core(), {proj(3, 3)}));
  return e;
}

ExprPtr sgn_core() {
  static const ExprPtr e = primrec(zero(), comp(succ(), {zero_at(2)}));
  return e;
}

ExprPtr le_core() {
  static const ExprPtr e =
      comp(tsub_core(), {const_at(Nat(1ul), 2), comp(tsub_core(), {proj(1, 2), proj(2, 2)})});
  return e;
}

ExprPtr max_core() {
  static const ExprPtr e =
      comp(add_core(), {proj(1, 2), comp(tsub_core(), {proj(2, 2), proj(1, 2)})});
  return e;
}

// triangle(y) = 0 + 1 + ... + y
ExprPtr tri_core() {
  static const ExprPtr e =
      primrec(zero(), comp(add_core(), {proj(2, 2), comp(succ(), {proj(1, 2)})}));
  return e;
}

ExprPtr pair_core() {
  static const ExprPtr e = comp(
      add_core(), {comp(tri_core(), {comp(add_core(), {proj(1, 2), proj(2, 2)})}), proj(2, 2)});
  return e;
}

// count2(x, y) = #{ i in 1..y : triangle(i) <= x }
ExprPtr tri_count_core() {
  static const ExprPtr e = primrec(
      zero1_core(),
      comp(add_core(),
           {proj(3, 3),
            comp(le_core(), {comp(tri_core(), {comp(succ(), {proj(2, 3)})}), proj(1, 3)})}));
  return e;
}

ExprPtr unpair_w_core() {
  static const ExprPtr e = comp(tri_count_core(), {proj(1, 1), proj(1, 1)});
  return e;
}

ExprPtr snd_core() {
  static const ExprPtr e = comp(tsub_core(), {proj(1, 1), comp(tri_core(), {unpair_w_core()})});
  return e;
}

ExprPtr fst_core() {
  static const ExprPtr e = comp(tsub_core(), {unpair_w_core(), snd_core()});
  return e;
}

// divcnt(x, y, c) = #{ i in 1..c : i*y <= x }
ExprPtr div_core() {
  static const ExprPtr divcnt = primrec(
      comp(zero1_core(), {proj(1, 2)}),
      comp(add_core(),
           {proj(4, 4),
            comp(le_core(),
                 {comp(mul_core(), {comp(succ(), {proj(3, 4)}), proj(2, 4)}), proj(1, 4)})}));
  static const ExprPtr e =
      comp(mul_core(),
           {comp(sgn_core(), {proj(2, 2)}), comp(divcnt, {proj(1, 2), proj(2, 2), proj(1, 2)})});
  return e;
}

std::vector<ExprPtr> projections(std::uint32_t n, std::uint32_t of) {
  std::vector<ExprPtr> ps;
  ps.reserve(n);
  for (std::uint32_t i = 1; i <= n; ++i) ps.push_back(proj(i, of));
  return ps;
}

ExprPtr desugar_sum(ExprPtr body, ExprPtr bound, std::uint32_t n) {
  if (n == 0) {
    ExprPtr base = comp(body, {zero()});
    ExprPtr step =
        comp(add_core(), {proj(2, 2), comp(body, {comp(succ(), {proj(1, 2)})})});
    return comp(primrec(base, step), {bound});
  }
  std::vector<ExprPtr> body_args = projections(n, n + 2);
  body_args.push_back(comp(succ(), {proj(n + 1, n + 2)}));
  ExprPtr step = comp(add_core(), {proj(n + 2, n + 2), comp(body, body_args)});
  std::vector<ExprPtr> base_args = projections(n, n);
  base_args.push_back(zero_at(n));
  ExprPtr base = comp(body, base_args);
  std::vector<ExprPtr> outer = projections(n, n);
  outer.push_back(bound);
  return comp(primrec(base, step), outer);
}

ExprPtr desugar_loop(ExprPtr body, ExprPtr bound, std::uint32_t n) {
  ExprPtr loopf = primrec(zero_at(n), body);
  std::vector<ExprPtr> outer = projections(n, n);
  outer.push_back(bound);
  return comp(loopf, outer);
}

ExprPtr desugar_rec(const Expr& e) {
  switch (e.tag) {
    case Tag::kZero:
    case Tag::kSucc:
    case Tag::kProj:
      return std::make_shared<const Expr>(e);
    case Tag::kComp: {
      std::vector<ExprPtr> gs;
      for (std::size_t i = 1; i < e.kids.size(); ++i) gs.push_back(desugar_rec(*e.kids[i]));
      return comp(desugar_rec(*e.kids[0]), std::move(gs));
    }
    case Tag::kPrimRec:
      return primrec(desugar_rec(*e.kids[0]), desugar_rec(*e.kids[1]));
    case Tag::kConst: return const_at(e.value, 0);
    case Tag::kAdd: return add_core();
    case Tag::kMul: return mul_core();
    case Tag::kTruncSub: return tsub_core();
    case Tag::kDiv: return div_core();
    case Tag::kSgn:
    case Tag::kAbsSgn: return sgn_core();
    case Tag::kLe: return le_core();
    case Tag::kMax: return max_core();
    case Tag::kPair: return pair_core();
    case Tag::kFst: return fst_core();
    case Tag::kSnd: return snd_core();
    case Tag::kSum:
    case Tag::kLoop: {
      ArityReport r = check(e);
      std::uint32_t n = r.any_arity ? 0 : r.arity;
      ExprPtr body = desugar_rec(*e.kids[0]);
      ExprPtr bound = desugar_rec(*e.kids[1]);
      return e.tag == Tag::kSum ? desugar_sum(std::move(body), std::move(bound), n)
                                : desugar_loop(std::move(body), std::move(bound), n);
    }
  }
  throw ArityMismatch("corrupt expression tree");
}

}  // namespace

ExprPtr desugar(const Expr& e) {
  ArityReport r = check(e);
  if (!r.well_formed) throw ArityMismatch("cannot desugar ill-formed expression: " + r.error);
  return desugar_rec(e);
}

bool is_core(const Expr& e) {
  switch (e.tag) {
    case Tag::kZero:
    case Tag::kSucc:
    case Tag::kProj: return true;
    case Tag::kComp:
    case Tag::kPrimRec:
      for (const auto& kid : e.kids)
        if (!is_core(*kid)) return false;
      return true;
    default: return false;
  }
}

}  // namespace ecn::prf
