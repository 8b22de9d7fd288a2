#include "ecn/prf.hpp"

namespace ecn::prf {

namespace {

struct Ev {
  std::uint64_t remaining;

  void tick() {
    if (remaining == 0) throw BudgetExceeded();
    --remaining;
  }

  // Loop forms pay one step per iteration through the body application, so a
  // bound beyond the remaining budget is already unaffordable.
  std::uint64_t affordable_u64(const Nat& bound) {
    if (!bound.fits_u64() || bound.to_u64() > remaining) throw BudgetExceeded();
    return bound.to_u64();
  }

  Nat run(const Expr& e, std::span<const Nat> args) {
    tick();
    switch (e.tag) {
      case Tag::kZero: return Nat();
      case Tag::kConst: return e.value;
      case Tag::kSucc: return args[0] + Nat(1);
      case Tag::kProj: return args[e.k - 1];
      case Tag::kAdd: return args[0] + args[1];
      case Tag::kMul: return args[0] * args[1];
      case Tag::kTruncSub: return trunc_sub(args[0], args[1]);
      case Tag::kDiv: return div_floor(args[0], args[1]);
      case Tag::kSgn:
      case Tag::kAbsSgn: return Nat(args[0].is_zero() ? 0ul : 1ul);
      case Tag::kLe: return Nat(args[0] <= args[1] ? 1ul : 0ul);
      case Tag::kMax: return args[0] < args[1] ? args[1] : args[0];
      case Tag::kPair: {
        mpz_class s = args[0].raw() + args[1].raw();
        return Nat(mpz_class(s * (s + 1) / 2 + args[1].raw()));
      }
      case Tag::kFst:
      case Tag::kSnd: {
        mpz_class z = args[0].raw();
        mpz_class r;
        mpz_class m = 8 * z + 1;
        mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
        mpz_class w = (r - 1) / 2;
        mpz_class snd = z - w * (w + 1) / 2;
        return Nat(mpz_class(e.tag == Tag::kSnd ? snd : w - snd));
      }
      case Tag::kComp: {
        std::vector<Nat> rs;
        rs.reserve(e.kids.size() - 1);
        for (std::size_t i = 1; i < e.kids.size(); ++i) rs.push_back(run(*e.kids[i], args));
        return run(*e.kids[0], rs);
      }
      case Tag::kPrimRec: {
        std::uint64_t n = affordable_u64(args.back());
        std::span<const Nat> front = args.subspan(0, args.size() - 1);
        Nat acc = run(*e.kids[0], front);
        std::vector<Nat> buf(front.begin(), front.end());
        buf.emplace_back();
        buf.emplace_back();
        for (std::uint64_t y = 0; y < n; ++y) {
          buf[buf.size() - 2] = Nat(mpz_class(static_cast<unsigned long>(y)));
          buf[buf.size() - 1] = std::move(acc);
          acc = run(*e.kids[1], buf);
        }
        return acc;
      }
      case Tag::kSum: {
        // body and bound see exactly the node's own arity worth of arguments
        if (e.loop_ambient < 0) throw ArityMismatch("ill-formed loop");
        std::span<const Nat> fwd = args.first(static_cast<std::size_t>(e.loop_ambient));
        std::uint64_t b = affordable_u64(run(*e.kids[1], fwd));
        std::vector<Nat> buf(fwd.begin(), fwd.end());
        buf.emplace_back();
        Nat acc;
        for (std::uint64_t i = 0; i <= b; ++i) {
          buf.back() = Nat(mpz_class(static_cast<unsigned long>(i)));
          acc = acc + run(*e.kids[0], buf);
        }
        return acc;
      }
      case Tag::kLoop: {
        if (e.loop_ambient < 0) throw ArityMismatch("ill-formed loop");
        std::span<const Nat> fwd = args.first(static_cast<std::size_t>(e.loop_ambient));
        std::uint64_t b = affordable_u64(run(*e.kids[1], fwd));
        std::vector<Nat> buf(fwd.begin(), fwd.end());
        buf.emplace_back();
        buf.emplace_back();
        Nat acc;
        for (std::uint64_t k = 0; k < b; ++k) {
          buf[buf.size() - 2] = Nat(mpz_class(static_cast<unsigned long>(k)));
          buf[buf.size() - 1] = std::move(acc);
          acc = run(*e.kids[0], buf);
        }
        return acc;
      }
    }
    throw ArityMismatch("corrupt expression tree");
  }
};

void require_applicable(const Expr& e, std::size_t argc) {
  ArityReport r = check(e);
  if (!r.well_formed) throw ArityMismatch("expression is not well-formed: " + r.error);
  if (!usable_at(r, static_cast<std::uint32_t>(argc)))
    throw ArityMismatch("expression of arity " + std::to_string(r.arity) + " applied to " +
                        std::to_string(argc) + " arguments");
}

}  // namespace

Nat eval(const Expr& e, std::span<const Nat> args, const EvalBudget& budget) {
  require_applicable(e, args.size());
  Ev ev{budget.max_steps};
  return ev.run(e, args);
}

std::pair<Nat, std::uint64_t> eval_steps(const Expr& e, std::span<const Nat> args,
                                         const EvalBudget& budget) {
  require_applicable(e, args.size());
  Ev ev{budget.max_steps};
  Nat v = ev.run(e, args);
  return {std::move(v), budget.max_steps - ev.remaining};
}

}  // namespace ecn::prf
