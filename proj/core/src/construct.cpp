#include "ecn/construct.hpp"

#include "ecn/gcn.hpp"
#include "expr_build.hpp"

namespace ecn::construct {

using numbers::SignedDigit;
using numbers::Sprcn;
using prf::ExprPtr;

namespace {

using namespace build;

Nat eval_at(const ExprPtr& e, const Nat& arg, const prf::EvalBudget& budget) {
  return prf::eval(*e, std::span<const Nat>(&arg, 1), budget);
}

Rational q_at(const PrSeq& s, const Nat& m, const prf::EvalBudget& budget) {
  Nat pos = eval_at(s.num_pos, m, budget);
  Nat neg = eval_at(s.num_neg, m, budget);
  Nat den = eval_at(s.den, m, budget);
  if (den.is_zero()) den = Nat(1ul);
  return Rational(Int(pos.raw()) - Int(neg.raw()), den);
}

// max(modulus(1), ..., modulus(up_to)); the index of a_n uses up_to = n+1.
Nat subseq_index(const PrSeq& s, std::uint32_t up_to, const prf::EvalBudget& budget) {
  Nat m;
  for (std::uint32_t e = 1; e <= up_to; ++e) {
    Nat c = eval_at(s.modulus, Nat(e), budget);
    if (m < c) m = c;
  }
  return m;
}

Int initial_integer(const PrSeq& s, const prf::EvalBudget& budget) {
  Rational a1 = q_at(s, subseq_index(s, 2, budget), budget);
  return rat_ceil(a1 - Rational(1, 2));
}

// Coefficient program replaying the construction. Input n; one loop
// iteration per digit. Loop state packs pair(pp, pn) with the partial sum
// after k digits equal to (pp - pn) / 2^k; the digit itself is the parity
// pair of the final state. Shared intermediate values are passed through
// compositions so each is evaluated once per iteration.
ExprPtr conversion_coeff(const PrSeq& s, const Int& int_part) {
  Nat cip = int_part.sign() >= 0 ? int_part.magnitude() : Nat();
  Nat cin = int_part.sign() < 0 ? int_part.magnitude() : Nat();

  // innermost update, arity 6: (pp, pn, tp, tn, td, eth) with
  // t = a_(k+2) - p_k = (tp - tn) / td; digit +1 iff t >= 2^-(k+2),
  // digit -1 iff t < -2^-(k+2); new state encodes the digit in the parities
  ExprPtr pp = prf::proj(1, 6), pn = prf::proj(2, 6);
  ExprPtr tp = prf::proj(3, 6), tn = prf::proj(4, 6);
  ExprPtr td = prf::proj(5, 6), eth = prf::proj(6, 6);
  ExprPtr cplus = le(add(td, mul(tn, eth)), mul(tp, eth));
  ExprPtr cminus = not1(le(mul(tn, eth), add(td, mul(tp, eth))));
  ExprPtr update = pair(add(mul(nat_c(2), pp), std::move(cplus)),
                        add(mul(nat_c(2), pn), std::move(cminus)));

  // arity 7: (pp, pn, u, v, dd, e2, eth) -> t's numerator tracks and scale
  ExprPtr u7 = prf::proj(3, 7), v7 = prf::proj(4, 7), dd7 = prf::proj(5, 7);
  ExprPtr e27 = prf::proj(6, 7);
  ExprPtr mid = prf::comp(std::move(update),
                          {prf::proj(1, 7), prf::proj(2, 7),
                           add(mul(u7, e27), mul(prf::proj(2, 7), dd7)),
                           add(mul(v7, e27), mul(prf::proj(1, 7), dd7)),
                           mul(dd7, e27), prf::proj(7, 7)});

  // arity 4: (n, k, state, mu) -> evaluate the sequence at mu and the scales
  ExprPtr k4 = prf::proj(2, 4), st4 = prf::proj(3, 4), mu4 = prf::proj(4, 4);
  ExprPtr wrap = prf::comp(
      std::move(mid),
      {select(sgn(k4), fst(st4), nat_c(cip)), select(sgn(k4), snd(st4), nat_c(cin)),
       app1(s.num_pos, mu4), app1(s.num_neg, mu4), max2(app1(s.den, mu4), nat_c(1)),
       pow2_of(k4, 4), pow2_of(add(k4, nat_c(2)), 4)});

  // loop body, arity 3: (n, k, state); the index of a_(k+2) is the max of
  // the modulus over 1..k+3
  ExprPtr mu_body =
      max2(prf::proj(5, 5), app1(s.modulus, succ_of(prf::proj(4, 5))));
  ExprPtr mu = prf::bloop(std::move(mu_body), add(prf::proj(2, 3), nat_c(3)));
  ExprPtr body = prf::comp(std::move(wrap),
                           {prf::proj(1, 3), prf::proj(2, 3), prf::proj(3, 3), std::move(mu)});

  ExprPtr loop = prf::bloop(std::move(body), prf::proj(1, 1));

  // arity 1: digit code from the final state's parities
  auto parity_of = [](ExprPtr e) {
    ExprPtr halved = mul(nat_c(2), div_floor(e, nat_c(2)));
    return tsub(std::move(e), std::move(halved));
  };
  ExprPtr z = prf::proj(1, 1);
  ExprPtr extract = add(parity_of(fst(z)), mul(nat_c(2), parity_of(snd(z))));
  return prf::comp(std::move(extract), {std::move(loop)});
}

}  // namespace

Sprcn to_sprcn(const PrSeq& s, const prf::EvalBudget& budget) {
  Int i = initial_integer(s, budget);
  return Sprcn{i, conversion_coeff(s, i)};
}

ConversionTrace convert_trace(const PrSeq& s, std::uint32_t depth,
                              const prf::EvalBudget& budget) {
  ConversionTrace t;
  t.subseq.reserve(depth + 1);
  for (std::uint32_t n = 1; n <= depth + 1; ++n)
    t.subseq.push_back(q_at(s, subseq_index(s, n + 1, budget), budget));

  t.int_part = rat_ceil(t.subseq[0] - Rational(1, 2));
  Rational p(t.int_part);
  t.partials.push_back(p);
  for (std::uint32_t n = 1; n <= depth; ++n) {
    Rational bound = pow2(-static_cast<std::int64_t>(n) - 1);
    Rational diff = t.subseq[n] - p;  // a_(n+1) - p_(n-1)
    if (diff < -(bound + bound + bound) || diff >= bound + bound + bound)
      throw InvalidModulus("digit " + std::to_string(n) +
                           ": correction " + diff.str() + " outside the trisection range; " +
                           "the given modulus is not a Cauchy modulus for the sequence");
    SignedDigit d = diff < -bound  ? SignedDigit::kMinus
                    : diff < bound ? SignedDigit::kZero
                                   : SignedDigit::kPlus;
    p = p + numbers::digit_value(d) * pow2(-static_cast<std::int64_t>(n));
    if (rat_abs(t.subseq[n] - p) > bound)
      throw InvalidModulus("digit " + std::to_string(n) + ": correction invariant violated");
    t.digits.push_back(d);
    t.partials.push_back(p);
  }
  return t;
}

namespace {

using namespace build;

// Loop accumulating the scaled partial sum of one digit stream: after m
// iterations the value is init*2^m + sum part(code(i)) * 2^(m-i), i = 1..m.
// `part` picks which digit codes contribute: +1 codes (code = 1) or -1 codes
// (code >= 2).
enum class Part { kPlus, kMinus };

ExprPtr scaled_partial(const ExprPtr& coeff, Part part, const Nat& init) {
  const std::uint32_t a = 3;  // (n, k, acc)
  ExprPtr k = prf::proj(2, a);
  ExprPtr acc = prf::proj(3, a);
  ExprPtr code = app1(coeff, succ_of(k));
  ExprPtr term = part == Part::kPlus ? eq(code, nat_c(1)) : le(nat_c(2), std::move(code));
  ExprPtr carried = select(sgn(k), std::move(acc), nat_c(init));
  ExprPtr body = add(mul(nat_c(2), std::move(carried)), std::move(term));
  return prf::bloop(std::move(body), prf::proj(1, 1));
}

ExprPtr two_stream_partial(const ExprPtr& cx, const ExprPtr& cy, Part part, const Nat& init) {
  const std::uint32_t a = 3;
  ExprPtr k = prf::proj(2, a);
  ExprPtr acc = prf::proj(3, a);
  auto term = [&](const ExprPtr& c) {
    ExprPtr code = app1(c, succ_of(k));
    return part == Part::kPlus ? eq(code, nat_c(1)) : le(nat_c(2), std::move(code));
  };
  ExprPtr carried = select(sgn(k), std::move(acc), nat_c(init));
  ExprPtr body = add(mul(nat_c(2), std::move(carried)), add(term(cx), term(cy)));
  return prf::bloop(std::move(body), prf::proj(1, 1));
}

Nat pos_part(const Int& i) { return i.sign() >= 0 ? i.magnitude() : Nat(); }
Nat neg_part(const Int& i) { return i.sign() < 0 ? i.magnitude() : Nat(); }

}  // namespace

Sprcn sprcn_add(const Sprcn& x, const Sprcn& y, const prf::EvalBudget& budget) {
  Int isum = x.int_part + y.int_part;
  PrSeq s;
  s.num_pos = two_stream_partial(x.coeff, y.coeff, Part::kPlus, pos_part(isum));
  s.num_neg = two_stream_partial(x.coeff, y.coeff, Part::kMinus, neg_part(isum));
  s.den = pow2_of(prf::proj(1, 1), 1);
  s.modulus = app1(prf::succ(), prf::proj(1, 1));  // e+1
  return to_sprcn(s, budget);
}

Sprcn sprcn_neg(const Sprcn& x) {
  // flip digit codes: 1 -> 2, >1 -> 1, 0 -> 0
  ExprPtr code = app1(x.coeff, prf::proj(1, 1));
  ExprPtr was_plus = mul(eq(code, nat_c(1)), nat_c(2));
  ExprPtr was_minus = le(nat_c(2), std::move(code));
  return Sprcn{-x.int_part, add(std::move(was_plus), std::move(was_minus))};
}

Sprcn sprcn_sub(const Sprcn& x, const Sprcn& y, const prf::EvalBudget& budget) {
  return sprcn_add(x, sprcn_neg(y), budget);
}

Sprcn sprcn_mul(const Sprcn& x, const Sprcn& y, const prf::EvalBudget& budget) {
  ExprPtr xp = scaled_partial(x.coeff, Part::kPlus, pos_part(x.int_part));
  ExprPtr xn = scaled_partial(x.coeff, Part::kMinus, neg_part(x.int_part));
  ExprPtr yp = scaled_partial(y.coeff, Part::kPlus, pos_part(y.int_part));
  ExprPtr yn = scaled_partial(y.coeff, Part::kMinus, neg_part(y.int_part));

  PrSeq s;
  s.num_pos = add(mul(xp, yp), mul(xn, yn));
  s.num_neg = add(mul(xp, yn), mul(xn, yp));
  s.den = pow2_of(mul(nat_c(2), prf::proj(1, 1)), 1);
  // partial sums are bounded by |I|+1 <= 2^log2_bound(|I|+2)
  std::uint64_t shift = gcn::log2_bound(x.int_part.magnitude() + Nat(2ul)) +
                        gcn::log2_bound(y.int_part.magnitude() + Nat(2ul));
  s.modulus = add(prf::proj(1, 1), nat_c(shift));
  return to_sprcn(s, budget);
}

namespace {

prf::ExprPtr parse_labeled_expr(std::string_view line, std::string_view key) {
  if (line.substr(0, key.size()) != key)
    throw numbers::DeserializeError("expected '" + std::string(key) + "'");
  auto payload = line.substr(key.size());
  prf::ExprPtr e;
  try {
    e = prf::parse(payload);
  } catch (const prf::SyntaxError& err) {
    throw numbers::DeserializeError(err.what());
  }
  if (!prf::usable_at(prf::check(*e), 1))
    throw numbers::DeserializeError("payload must be usable at arity 1");
  return e;
}

}  // namespace

std::string serialize_prseq(const PrSeq& s) {
  return "class: PRSEQ\nnumpos: " + prf::print(*s.num_pos) + "\nnumneg: " +
         prf::print(*s.num_neg) + "\nden: " + prf::print(*s.den) + "\nmodulus: " +
         prf::print(*s.modulus) + "\n";
}

PrSeq parse_prseq(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) lines.push_back(line);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
  }
  if (lines.size() != 5 || lines[0] != "class: PRSEQ")
    throw numbers::DeserializeError("expected a five-line PRSEQ file");
  PrSeq s;
  s.num_pos = parse_labeled_expr(lines[1], "numpos: ");
  s.num_neg = parse_labeled_expr(lines[2], "numneg: ");
  s.den = parse_labeled_expr(lines[3], "den: ");
  s.modulus = parse_labeled_expr(lines[4], "modulus: ");
  return s;
}

}  // namespace ecn::construct
