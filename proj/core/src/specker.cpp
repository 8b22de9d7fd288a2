#include "ecn/gcn.hpp"

#include "expr_build.hpp"

namespace ecn::gcn {

std::vector<Rational> specker(std::uint32_t n, std::uint64_t step_cap,
                              const std::function<machine::ToyMachine(std::uint64_t)>& machines) {
  std::uint64_t sim_steps = std::min<std::uint64_t>(n, step_cap);
  std::vector<std::optional<std::uint64_t>> halt(n);
  for (std::uint32_t k = 0; k < n; ++k) {
    machine::ToyMachine m = machines(k);
    machine::Run run(m);
    halt[k] = run.run_to_halt(sim_steps);
  }
  std::vector<Rational> s;
  s.reserve(n);
  for (std::uint32_t m = 1; m <= n; ++m) {
    Rational v;
    for (std::uint32_t k = 1; k <= m; ++k)
      if (halt[k - 1] && *halt[k - 1] <= m) v = v + pow2(-static_cast<std::int64_t>(k));
    s.push_back(v);
  }
  return s;
}

Ngcn specker_ngcn(const std::vector<std::optional<std::uint64_t>>& halt_steps) {
  using namespace build;
  // coeff2(i, m) = 1 exactly when machine i halts within m steps
  ExprPtr i = prf::proj(1, 2);
  ExprPtr m = prf::proj(2, 2);
  ExprPtr acc = nat_c(0);
  for (std::size_t k = 0; k < halt_steps.size(); ++k) {
    if (!halt_steps[k]) continue;
    acc = add(std::move(acc),
              mul(eq(i, nat_c(k + 1)), le(nat_c(*halt_steps[k]), m)));
  }
  return Ngcn{Int(0l), std::move(acc), nat_c(1)};
}

std::vector<machine::ToyMachine> demo_fixture_machines() {
  return {machine::halting_after(3), machine::diverger(), machine::halting_after(1)};
}

}  // namespace ecn::gcn
