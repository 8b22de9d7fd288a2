#pragma once

// Independent reference computations the tests check the library against.
// Everything here is deliberately written from scratch against the
// documented behaviour, not by calling the code under test.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ecn/numbers.hpp"
#include "ecn/numeric.hpp"
#include "ecn/prf.hpp"

namespace oracles {

using ecn::Int;
using ecn::Nat;
using ecn::Rational;

/// Certified enclosure of pi via 16*atan(1/5) - 4*atan(1/239) with explicit
/// alternating-series tail bounds; width below 2^-64.
struct PiEnclosure {
  Rational lo, hi;
};

inline PiEnclosure pi_enclosure() {
  auto atan_inv = [](long x, int terms, Rational& out_tail) {
    Rational sum(0l);
    Rational xr(1l, static_cast<unsigned long>(x));
    Rational xsq = xr * xr;
    Rational power = xr;  // x^-(2k+1)
    for (int k = 0; k <= terms; ++k) {
      Rational term = power * Rational(1l, static_cast<unsigned long>(2 * k + 1));
      sum = (k % 2 == 0) ? sum + term : sum - term;
      power = power * xsq;
    }
    out_tail = power * Rational(1l, static_cast<unsigned long>(2 * terms + 3));
    return sum;
  };
  Rational t5, t239;
  Rational a5 = atan_inv(5, 16, t5);
  Rational a239 = atan_inv(239, 5, t239);
  Rational sixteen(16l), four(4l);
  PiEnclosure e;
  e.lo = sixteen * (a5 - t5) - four * (a239 + t239);
  e.hi = sixteen * (a5 + t5) - four * (a239 - t239);
  return e;
}

/// Certified enclosure of e from the factorial series with tail 2/(n+1)!.
inline PiEnclosure e_enclosure() {
  Rational sum(1l);
  Rational term(1l);
  int n = 30;
  for (int k = 1; k <= n; ++k) {
    term = term * Rational(1l, static_cast<unsigned long>(k));
    sum = sum + term;
  }
  Rational tail = term * Rational(2l, static_cast<unsigned long>(n + 1));
  return {sum, sum + tail};
}

/// Reference interpreter for the five-combinator core with the same cost
/// model (one step per application, recursion counted per unrolled call).
struct RefResult {
  Nat value;
  std::uint64_t steps = 0;
};

inline Nat ref_eval(const ecn::prf::Expr& e, std::span<const Nat> args, std::uint64_t& steps) {
  using ecn::prf::Tag;
  ++steps;
  switch (e.tag) {
    case Tag::kZero: return Nat();
    case Tag::kSucc: return args[0] + Nat(1ul);
    case Tag::kProj: return args[e.k - 1];
    case Tag::kComp: {
      std::vector<Nat> inner;
      for (std::size_t i = 1; i < e.kids.size(); ++i)
        inner.push_back(ref_eval(*e.kids[i], args, steps));
      return ref_eval(*e.kids[0], inner, steps);
    }
    case Tag::kPrimRec: {
      std::vector<Nat> front(args.begin(), args.end() - 1);
      Nat acc = ref_eval(*e.kids[0], front, steps);
      Nat limit = args.back();
      std::vector<Nat> step_args = front;
      step_args.emplace_back();
      step_args.emplace_back();
      for (Nat y; y < limit; y = y + Nat(1ul)) {
        step_args[step_args.size() - 2] = y;
        step_args[step_args.size() - 1] = acc;
        acc = ref_eval(*e.kids[1], step_args, steps);
      }
      return acc;
    }
    default: throw std::logic_error("reference interpreter handles core only");
  }
}

inline RefResult ref_eval_core(const ecn::prf::Expr& e, std::span<const Nat> args) {
  RefResult r;
  r.value = ref_eval(e, args, r.steps);
  return r;
}

/// Exhaustive maximum over all non-overlapping jump-pair selections.
inline std::uint32_t max_jump_pairs_exhaustive(std::span<const Rational> q,
                                               const Rational& threshold) {
  std::size_t n = q.size();
  std::vector<int> memo(n + 1, -1);
  auto best = [&](auto&& self, std::size_t i) -> int {
    if (i >= n) return 0;
    if (memo[i] >= 0) return memo[i];
    int r = self(self, i + 1);  // skip index i
    for (std::size_t b = i + 1; b < n; ++b) {
      Rational d = ecn::rat_abs(q[b] - q[i]);
      if (d > threshold) {
        int c = 1 + self(self, b + 1);
        if (c > r) r = c;
      }
    }
    memo[i] = r;
    return r;
  };
  return static_cast<std::uint32_t>(best(best, 0));
}

/// Random well-formed expressions usable at the given arity, for property
/// tests. Rejection-sampled; deterministic for a fixed generator state.
inline ecn::prf::ExprPtr random_expr(std::mt19937_64& rng, int max_size, std::uint32_t arity) {
  using namespace ecn::prf;
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
  auto gen_tree = [&](auto&& self, int budget) -> ExprPtr {
    int choice = pick(0, budget <= 1 ? 5 : 11);
    switch (choice) {
      case 0: return zero();
      case 1: return succ();
      case 2: return cnat(static_cast<std::uint64_t>(pick(0, 4)));
      case 3: {
        auto n = static_cast<std::uint32_t>(pick(1, 3));
        return proj(static_cast<std::uint32_t>(pick(1, static_cast<int>(n))), n);
      }
      case 4: return leaf(static_cast<Tag>(pick(static_cast<int>(Tag::kAdd),
                                                static_cast<int>(Tag::kSnd))));
      case 5: return leaf(Tag::kSgn);
      case 6: {
        int m = pick(1, 2);
        std::vector<ExprPtr> gs;
        for (int i = 0; i < m; ++i) gs.push_back(self(self, (budget - 2) / (m + 1) + 1));
        return comp(self(self, (budget - 2) / (m + 1) + 1), std::move(gs));
      }
      case 7: return primrec(self(self, (budget - 1) / 2), self(self, (budget - 1) / 2));
      case 8:
      case 9: return bsum(self(self, (budget - 1) / 2), self(self, (budget - 1) / 2));
      default: return bloop(self(self, (budget - 1) / 2), self(self, (budget - 1) / 2));
    }
  };
  while (true) {
    ExprPtr e = gen_tree(gen_tree, max_size);
    if (tree_size(*e) > static_cast<std::size_t>(max_size)) continue;
    ArityReport r = check(*e);
    if (usable_at(r, arity)) return e;
  }
}

/// Random expressions additionally cheap enough to evaluate at 1..max_arg.
inline ecn::prf::ExprPtr random_cheap_expr(std::mt19937_64& rng, int max_size,
                                           std::uint32_t max_arg, std::uint64_t budget) {
  while (true) {
    ecn::prf::ExprPtr e = random_expr(rng, max_size, 1);
    try {
      for (std::uint32_t i = 1; i <= max_arg; ++i) {
        Nat arg(i);
        ecn::prf::eval(*e, std::span<const Nat>(&arg, 1), ecn::prf::EvalBudget{budget});
      }
      return e;
    } catch (const ecn::prf::BudgetExceeded&) {
    }
  }
}

// Hand-built signed numbers with known limits.
inline ecn::numbers::Sprcn sprcn_zero() { return {Int(0l), ecn::prf::zero()}; }
inline ecn::numbers::Sprcn sprcn_one() { return {Int(1l), ecn::prf::zero()}; }
inline ecn::numbers::Sprcn sprcn_two() { return {Int(2l), ecn::prf::zero()}; }
/// digit +1 at position 1 only: value 1/2
inline ecn::numbers::Sprcn sprcn_half() {
  return {Int(0l), ecn::prf::parse("(C (SUGAR mul) (C (SUGAR le) (P 1 1) (SUGAR const 1)) "
                                   "(C (SUGAR le) (SUGAR const 1) (P 1 1)))")};
}
/// -1 + digit +1 at position 2: value -3/4
inline ecn::numbers::Sprcn sprcn_neg_three_quarters() {
  return {Int(-1l), ecn::prf::parse("(C (SUGAR mul) (C (SUGAR le) (P 1 1) (SUGAR const 2)) "
                                    "(C (SUGAR le) (SUGAR const 2) (P 1 1)))")};
}

inline std::vector<std::pair<ecn::numbers::Sprcn, Rational>> known_limit_fixtures() {
  return {{sprcn_zero(), Rational(0l)},
          {sprcn_one(), Rational(1l)},
          {sprcn_half(), Rational(1l, 2ul)},
          {sprcn_neg_three_quarters(), Rational(-3l, 4ul)},
          {sprcn_two(), Rational(2l)}};
}

}  // namespace oracles
