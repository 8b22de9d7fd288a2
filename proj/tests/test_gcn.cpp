#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "ecn/gcn.hpp"
#include "expr_build.hpp"
#include "support/oracles.hpp"

using namespace ecn;
using namespace ecn::gcn;

namespace {

const prf::EvalBudget kBig{100'000'000};

Rational rq(long n, unsigned long d) { return Rational(n, d); }

std::vector<Rational> rational_list(std::initializer_list<Rational> xs) { return xs; }

prf::ExprPtr linear_bound(std::uint64_t slope, std::uint64_t offset) {
  using namespace build;
  return add(mul(nat_c(slope), prf::proj(1, 1)), nat_c(offset));
}

Gcn generator_gcn(std::function<std::optional<Rational>(std::uint64_t)> gen, Nat m,
                  prf::ExprPtr jump) {
  Gcn g;
  g.make_inner = [gen = std::move(gen)]() { return generator_inner(gen); };
  g.bound_m = std::move(m);
  g.jump_bound = std::move(jump);
  return g;
}

std::vector<Rational> drive(const Gcn& g, int n, JumpLedger* out = nullptr) {
  JumpLedger ledger;
  std::vector<Rational> got;
  for (int i = 0; i < n; ++i) {
    auto [v, next] = wrapper_next(g, ledger, kBig);
    ledger = std::move(next);
    got.push_back(v);
  }
  if (out) *out = std::move(ledger);
  return got;
}

}  // namespace

TEST_CASE("coefficient revisions freeze at the bound") {
  using namespace build;
  // P(1, m) = 0 for m < 4, then 1; one revision allowed
  prf::ExprPtr i = prf::proj(1, 2);
  prf::ExprPtr m = prf::proj(2, 2);
  Ngcn late{Int(0l), mul(eq(i, nat_c(1)), le(nat_c(4), m)), nat_c(1)};
  CHECK(ngcn_partial(late, 5, kBig) == rq(1, 2));
  CHECK(ngcn_partial(late, 3, kBig) == Rational(0l));

  // alternating 0,1,0,1... freezes at its first change
  Ngcn flip{Int(0l),
            mul(eq(prf::proj(1, 2), nat_c(1)),
                tsub(m, mul(nat_c(2), div_floor(m, nat_c(2))))),
            nat_c(1)};
  // P(1,1)=1 already: no change ever happens, digit follows the latest value
  // at each horizon; with P(1,m)=parity(m) the first change (1->0 at m=2)
  // freezes the digit at 0
  CHECK(ngcn_partial(flip, 6, kBig) == Rational(0l));

  Ngcn constant{Int(3l), nat_c(0), nat_c(1)};
  for (std::uint32_t n = 0; n <= 6; ++n)
    CHECK(ngcn_partial(constant, n, kBig) == Rational(3l));
}

TEST_CASE("digits never change after the revision budget is spent") {
  using namespace build;
  // P(2, m) flips every step; budget 2 freezes after the second change
  prf::ExprPtr body =
      mul(eq(prf::proj(1, 2), nat_c(2)),
          tsub(prf::proj(2, 2), mul(nat_c(2), div_floor(prf::proj(2, 2), nat_c(2)))));
  Ngcn x{Int(0l), body, nat_c(2)};
  // values at m=1..: 1,0,1,0,...; change #1 at m=2 (->0), #2 at m=3 (->1): frozen 1
  for (std::uint32_t n = 3; n <= 8; ++n)
    CHECK(ngcn_partial(x, n, kBig) == rq(1, 4));
}

TEST_CASE("jump counting examples") {
  CHECK(count_jumps(rational_list({Rational(0l), Rational(1l), Rational(0l)}), rq(1, 2)) == 1);
  CHECK(count_jumps(rational_list({Rational(0l), Rational(1l), Rational(0l), Rational(1l)}),
                    rq(1, 2)) == 2);
  CHECK(count_jumps(rational_list({Rational(0l), Rational(0l), Rational(0l)}), rq(1, 2)) == 0);
  // the window must consider every anchor, not only the first element
  CHECK(count_jumps(rational_list({rq(1, 2), rq(2, 5), rq(3, 2), Rational(10l), Rational(0l)}),
                    Rational(1l)) == 2);
}

TEST_CASE("jump counting equals exhaustive search on a value grid") {
  const Rational grid[] = {Rational(0l), rq(1, 4),  rq(-1, 4), rq(1, 2),
                           rq(-1, 2),    Rational(1l), Rational(-1l)};
  const Rational thresholds[] = {rq(1, 8), rq(1, 4), rq(1, 2)};
  std::mt19937_64 rng(61);
  int cases = 0;
  for (int len = 2; len <= 8; ++len) {
    for (int t = 0; t < 300; ++t) {
      std::vector<Rational> q;
      for (int i = 0; i < len; ++i) q.push_back(grid[rng() % 7]);
      for (const Rational& thr : thresholds) {
        CHECK(count_jumps(q, thr) == oracles::max_jump_pairs_exhaustive(q, thr));
        ++cases;
      }
    }
  }
  CHECK(cases >= 5000);
}

TEST_CASE("wrapper emits the mandatory zero first") {
  Gcn g = generator_gcn([](std::uint64_t) { return Rational(1l); }, Nat(2ul),
                        linear_bound(1, 1));
  auto out = drive(g, 1);
  CHECK(out[0] == Rational(0l));
}

TEST_CASE("wrapper clamps outputs beyond the bound") {
  Gcn g = generator_gcn([](std::uint64_t i) { return Rational(static_cast<long>(3 + i)); },
                        Nat(2ul), linear_bound(1, 1));
  auto out = drive(g, 4);
  CHECK(out == rational_list({Rational(0l), Rational(0l), Rational(0l), Rational(0l)}));
}

TEST_CASE("wrapper censors a jump that would exhaust the bound") {
  // j(k) = 1 forbids every jump at every scale: 1/2 must be censored
  auto gen = [](std::uint64_t i) {
    return i == 0 ? rq(1, 2) : rq(1, 2);
  };
  Gcn strict = generator_gcn(gen, Nat(1ul), prf::cnat(1));
  JumpLedger ledger;
  auto out = drive(strict, 3, &ledger);
  CHECK(out == rational_list({Rational(0l), Rational(0l), Rational(0l)}));
  CHECK(ledger.censored >= 1);
  CHECK(!ledger.breached);

  // j(k) = k+1 admits the same proposal
  Gcn loose = generator_gcn(gen, Nat(1ul), linear_bound(1, 1));
  auto out2 = drive(loose, 2);
  CHECK(out2[1] == rq(1, 2));
}

TEST_CASE("sum against a single-zero machine tracks the operand") {
  machine::ToyMachine mx;
  mx.program.push_back({machine::OpCode::kInc, 0, 0});
  mx.program.push_back({machine::OpCode::kInc, 1, 0});
  mx.program.push_back({machine::OpCode::kInc, 1, 0});
  mx.program.push_back({machine::OpCode::kEmitR, 0, 1});
  mx.program.push_back({machine::OpCode::kHalt, 0, 0});
  Gcn x = machine_gcn(mx, Nat(1ul), linear_bound(1, 1));

  machine::ToyMachine zm;
  zm.program.push_back({machine::OpCode::kEmitC, 0, 0});
  zm.program.push_back({machine::OpCode::kHalt, 0, 0});
  Gcn zero = machine_gcn(zm, Nat(1ul), linear_bound(1, 1));

  Gcn sum = gcn_add(x, zero);
  CHECK(sum.bound_m == Nat(2ul));
  // hand trace: mandatory 0, the combined stream's own leading 0, the zero
  // side's emission (0 + nothing), then the operand's value plus 0 repeating
  auto got = drive(sum, 5);
  CHECK(got == rational_list({Rational(0l), Rational(0l), Rational(0l), rq(1, 2), rq(1, 2)}));
  // the nonzero behaviour is exactly the operand's
  auto alone = drive(x, 2);
  CHECK(alone.back() == got.back());
}

TEST_CASE("interleaved sum of two half-emitters walks 0, 1/2, 1") {
  auto emit_half_once = [](std::uint64_t i) -> std::optional<Rational> {
    if (i == 0) return rq(1, 2);
    return std::nullopt;
  };
  Gcn a = generator_gcn(emit_half_once, Nat(1ul), linear_bound(2, 1));
  Gcn b = generator_gcn(emit_half_once, Nat(1ul), linear_bound(2, 1));
  Gcn sum = gcn_add(a, b);
  prf::EvalBudget small{16};
  JumpLedger ledger;
  std::vector<Rational> got;
  for (int i = 0; i < 4; ++i) {
    auto [v, next] = wrapper_next(sum, ledger, small);
    ledger = std::move(next);
    got.push_back(v);
  }
  CHECK(got == rational_list({Rational(0l), Rational(0l), rq(1, 2), Rational(1l)}));
}

TEST_CASE("negation wraps pointwise") {
  auto gen = [](std::uint64_t i) -> std::optional<Rational> {
    if (i == 0) return rq(1, 3);
    if (i == 1) return rq(-1, 4);
    return std::nullopt;
  };
  Gcn g = generator_gcn(gen, Nat(1ul), linear_bound(2, 1));
  Gcn n = gcn_neg(g);
  auto got = drive(n, 3);
  CHECK(got == rational_list({Rational(0l), rq(-1, 3), rq(1, 4)}));

  Gcn nn = gcn_neg(gcn_neg(g));
  CHECK(drive(nn, 3) == drive(g, 3));
}

TEST_CASE("product bound and jump bound follow the construction") {
  machine::ToyMachine stall;
  stall.program.push_back({machine::OpCode::kHalt, 0, 0});
  Gcn x = machine_gcn(stall, Nat(4ul), prf::cnat(1));
  Gcn y = machine_gcn(stall, Nat(2ul), prf::cnat(1));
  Gcn p = gcn_mul(x, y);
  CHECK(p.bound_m == Nat(8ul));
  CHECK(log2_bound(x.bound_m) == 2);
  CHECK(log2_bound(y.bound_m) == 1);
  auto jb = [&](unsigned long k) {
    Nat arg(k);
    return prf::eval(*p.jump_bound, std::span<const Nat>(&arg, 1), kBig);
  };
  CHECK(jb(1) == Nat(3ul));  // sum of J_X over 1..1 plus J_Y over 1..2
  for (unsigned long k = 2; k <= 6; ++k) CHECK(jb(k) == Nat(2ul));
}

TEST_CASE("product of constant streams approaches the product of limits") {
  auto half = [](std::uint64_t) -> std::optional<Rational> { return rq(1, 2); };
  auto third = [](std::uint64_t) -> std::optional<Rational> { return rq(1, 3); };
  Gcn x = generator_gcn(half, Nat(1ul), linear_bound(2, 2));
  Gcn y = generator_gcn(third, Nat(1ul), linear_bound(2, 2));
  Gcn p = gcn_mul(x, y);
  auto got = drive(p, 40);
  CHECK(rat_abs(got.back() - rq(1, 6)) <= pow2(-8));

  Gcn pz = gcn_mul(x, generator_gcn([](std::uint64_t) { return Rational(0l); }, Nat(1ul),
                                    linear_bound(2, 2)));
  for (const Rational& v : drive(pz, 10)) CHECK(v == Rational(0l));
}

TEST_CASE("well-behaved products are never censored") {
  // monotone convergent operands within generous declared bounds; one
  // censoring event would be a finding against the combined jump bound
  auto rising = [](long target_num, unsigned long target_den) {
    return [=](std::uint64_t i) -> std::optional<Rational> {
      Rational target(target_num, target_den);
      return target - target * pow2(-static_cast<std::int64_t>(i + 1));
    };
  };
  Gcn x = generator_gcn(rising(1, 2), Nat(1ul), linear_bound(2, 4));
  Gcn y = generator_gcn(rising(1, 3), Nat(1ul), linear_bound(2, 4));
  Gcn p = gcn_mul(x, y);
  JumpLedger ledger;
  for (int i = 0; i < 100; ++i) {
    auto [v, next] = wrapper_next(p, ledger, kBig);
    ledger = std::move(next);
  }
  CHECK_MESSAGE(ledger.censored == 0,
                "the combined jump bound censored a well-behaved product stream");
  CHECK(rat_abs(ledger.emitted.back() - rq(1, 6)) <= rq(1, 64));
}

TEST_CASE("machine enumeration starts at HALT and is injective") {
  machine::Enumerator en;
  machine::ToyMachine first = en.at(0);
  REQUIRE(first.program.size() == 1);
  CHECK(first.program[0].op == machine::OpCode::kHalt);

  std::set<std::string> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) CHECK(seen.insert(machine::print(en.at(i))).second);
}

TEST_CASE("machine enumeration covers all short programs") {
  // brute force every well-formed machine of at most 2 instructions with
  // operands <= 1 and find each in the enumeration exactly once
  std::vector<machine::Instr> instrs;
  instrs.push_back({machine::OpCode::kHalt, 0, 0});
  for (std::uint32_t r = 0; r <= 1; ++r) {
    instrs.push_back({machine::OpCode::kInc, r, 0});
    for (std::uint32_t t = 0; t <= 1; ++t) {
      instrs.push_back({machine::OpCode::kDecJz, r, t});
      instrs.push_back({machine::OpCode::kEmitR, r, t});
    }
    instrs.push_back({machine::OpCode::kEmitC, r, 0});
  }

  std::vector<machine::ToyMachine> targets;
  for (const auto& a : instrs) {
    machine::ToyMachine one{{a}};
    if (machine::well_formed(one)) targets.push_back(one);
    for (const auto& b : instrs) {
      machine::ToyMachine two{{a, b}};
      if (machine::well_formed(two)) targets.push_back(two);
    }
  }

  machine::Enumerator en;
  std::set<std::string> enumerated;
  for (std::uint64_t i = 0; i < 20'000; ++i) enumerated.insert(machine::print(en.at(i)));
  for (const auto& t : targets) CHECK(enumerated.count(machine::print(t)) == 1);
}

TEST_CASE("staircase from the worked fixture") {
  auto ms = gcn::demo_fixture_machines();
  auto s = specker(3, 5, [&](std::uint64_t i) { return ms[i]; });
  CHECK(s == rational_list({Rational(0l), Rational(0l), rq(5, 8)}));
}

TEST_CASE("staircase is monotone with flips only upward") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 20; ++t) {
    std::vector<machine::ToyMachine> ms;
    for (int i = 0; i < 24; ++i) {
      if (rng() % 3 == 0) ms.push_back(machine::diverger());
      else ms.push_back(machine::halting_after(1 + rng() % 30));
    }
    auto s = specker(24, 40, [&](std::uint64_t i) { return ms[i]; });
    for (std::size_t m = 1; m < s.size(); ++m) CHECK(s[m - 1] <= s[m]);
    for (const Rational& v : s) {
      CHECK(v >= Rational(0l));
      CHECK(v < Rational(1l));
    }
  }
}

TEST_CASE("staircase agrees with its bounded-revision encoding") {
  auto ms = gcn::demo_fixture_machines();
  auto s = specker(3, 5, [&](std::uint64_t i) { return ms[i]; });
  Ngcn enc = specker_ngcn({std::uint64_t(3), std::nullopt, std::uint64_t(1)});
  for (std::uint32_t n = 1; n <= 3; ++n)
    CHECK(ngcn_partial(enc, n, kBig) == s[n - 1]);
}

TEST_CASE("wrapper keeps every per-scale bound for adversarial inners") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 10; ++t) {
    std::uint64_t seed = rng();
    auto gen = [seed](std::uint64_t i) -> std::optional<Rational> {
      std::mt19937_64 r(seed + i);
      long num = static_cast<long>(r() % 41) - 20;
      unsigned long den = 1 + r() % 8;
      return Rational(num, den);
    };
    Gcn g = generator_gcn(gen, Nat(2ul), linear_bound(1, 1));
    JumpLedger ledger;
    auto got = drive(g, 60, &ledger);
    CHECK(!ledger.breached);
    for (std::uint32_t k = 1; k <= 60; ++k) {
      Nat arg(k);
      Nat bound = prf::eval(*g.jump_bound, std::span<const Nat>(&arg, 1), kBig);
      std::uint32_t jumps = oracles::max_jump_pairs_exhaustive(
          ledger.emitted, pow2(-static_cast<std::int64_t>(k)));
      CHECK(Nat(jumps) < bound);
    }
    for (const Rational& v : ledger.emitted) CHECK(rat_abs(v) <= Rational(2l));
  }
}
