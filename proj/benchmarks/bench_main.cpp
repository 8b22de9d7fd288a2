#include <benchmark/benchmark.h>

#include <random>

#include "ecn/construct.hpp"
#include "ecn/gcn.hpp"
#include "ecn/numbers.hpp"
#include "ecn/prf.hpp"

using namespace ecn;

namespace {

const prf::EvalBudget kBudget{4'000'000'000ull};

void BM_EvalAddRecursion(benchmark::State& state) {
  prf::ExprPtr add = prf::parse("(R (P 1 1) (C S (P 3 3)))");
  std::vector<Nat> args{Nat(200ul), Nat(300ul)};
  for (auto _ : state) benchmark::DoNotOptimize(prf::eval(*add, args, kBudget));
}
BENCHMARK(BM_EvalAddRecursion);

void BM_PiApprox(benchmark::State& state) {
  numbers::Sprcn pi = construct::const_pi();
  auto bits = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(numbers::approx(pi, bits, kBudget));
}
BENCHMARK(BM_PiApprox)->Arg(8)->Arg(16)->Arg(20);

void BM_Sqrt2Approx(benchmark::State& state) {
  numbers::Sprcn r = construct::const_sqrt2();
  auto bits = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(numbers::approx(r, bits, kBudget));
}
BENCHMARK(BM_Sqrt2Approx)->Arg(16)->Arg(32);

void BM_SumApprox16(benchmark::State& state) {
  numbers::Sprcn a{Int(0l), prf::cnat(1)};
  numbers::Sprcn b{Int(1l), prf::zero()};
  numbers::Sprcn sum = construct::sprcn_add(a, b, kBudget);
  for (auto _ : state) benchmark::DoNotOptimize(numbers::approx(sum, 16, kBudget));
}
BENCHMARK(BM_SumApprox16);

void BM_CountJumps(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<Rational> q;
  for (int i = 0; i < state.range(0); ++i)
    q.push_back(Rational(static_cast<long>(rng() % 17) - 8, 4ul));
  Rational thr(1l, 4ul);
  for (auto _ : state) benchmark::DoNotOptimize(gcn::count_jumps(q, thr));
}
BENCHMARK(BM_CountJumps)->Arg(50)->Arg(200);

void BM_WrapperStep(benchmark::State& state) {
  auto gen = [](std::uint64_t i) -> std::optional<Rational> {
    return Rational(static_cast<long>(i % 5) - 2, 4ul);
  };
  gcn::Gcn g;
  g.make_inner = [gen]() { return gcn::generator_inner(gen); };
  g.bound_m = Nat(2ul);
  g.jump_bound = prf::parse("(C S (P 1 1))");
  for (auto _ : state) {
    gcn::JumpLedger ledger;
    for (int i = 0; i < 50; ++i) {
      auto [v, next] = gcn::wrapper_next(g, ledger, kBudget);
      ledger = std::move(next);
      benchmark::DoNotOptimize(v);
    }
  }
}
BENCHMARK(BM_WrapperStep);

void BM_Validate(benchmark::State& state) {
  std::string text = numbers::serialize(construct::const_pi());
  for (auto _ : state) benchmark::DoNotOptimize(numbers::validate(text));
}
BENCHMARK(BM_Validate);

}  // namespace

BENCHMARK_MAIN();
