#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ecn/machine.hpp"
#include "ecn/numeric.hpp"
#include "ecn/prf.hpp"

// Convergence forced by bounding divergence: sequences whose jumps above each
// scale 2^-k are counted and capped instead of carrying a modulus of
// convergence. No rate of convergence is known or claimed anywhere here.

namespace ecn::gcn {

/// Power-series number whose binary coefficients may be revised a bounded
/// number of times. coeff2(i, m) is the m-th version of coefficient i
/// (outputs read as 0 / nonzero-means-1); revision(i) caps coefficient i's
/// revisions.
struct Ngcn {
  Int int_part;
  prf::ExprPtr coeff2;
  prf::ExprPtr revision;
};

/// Partial value at horizon n: int_part + sum over i = 0..n of d_i * 2^-i,
/// where d_i is coefficient i's value frozen at its revision(i)-th change
/// within versions 1..n (or its latest version when fewer changes occurred).
Rational ngcn_partial(const Ngcn& x, std::uint32_t n, const prf::EvalBudget& budget);

/// Maximum number of non-overlapping index pairs a1<b1<...<am<bm with
/// |q[a]-q[b]| > threshold. Earliest-closing-pair sweep; matches exhaustive
/// search (tested against it).
std::uint32_t count_jumps(std::span<const Rational> q, const Rational& threshold);

/// One step of an arbitrary rational-emitting process. May never emit again;
/// callers bound the number of steps they are willing to take.
class InnerProgram {
 public:
  virtual ~InnerProgram() = default;
  virtual std::optional<Rational> step() = 0;
  /// True once no future step can emit (e.g. the machine halted).
  virtual bool finished() const { return false; }
  virtual std::unique_ptr<InnerProgram> clone() const = 0;
};

std::unique_ptr<InnerProgram> machine_inner(machine::ToyMachine m);
/// Host-registered generator: gen(i) is the i-th emission (nullopt = silent step).
std::unique_ptr<InnerProgram> generator_inner(
    std::function<std::optional<Rational>(std::uint64_t)> gen);

/// A program plus an output bound M and a per-scale jump bound, run inside
/// the censoring wrapper that enforces both.
struct Gcn {
  std::function<std::unique_ptr<InnerProgram>()> make_inner;
  Nat bound_m;               // |accepted output| <= bound_m, bound_m >= 1
  prf::ExprPtr jump_bound;   // arity 1; outputs read as max(1, value)
  std::optional<machine::ToyMachine> source;  // set when machine-backed (serializable)
};

Gcn machine_gcn(machine::ToyMachine m, Nat bound, prf::ExprPtr jump_bound);

/// Wrapper state threaded through wrapper_next calls as a value.
struct JumpLedger {
  std::vector<Rational> emitted;               // accepted outputs q_1..q_n
  std::map<std::uint32_t, std::uint32_t> per_scale;  // scale k -> current jump count
  std::uint64_t censored = 0;                  // proposals replaced by repeats
  bool breached = false;                       // see wrapper_next notes

  // wrapper internals
  std::shared_ptr<InnerProgram> inner;         // cloned on copy via copy_for_next
  std::optional<Rational> min_nonzero_gap;     // over all pairs of emitted values

  JumpLedger() = default;
  JumpLedger(const JumpLedger& other);
  JumpLedger& operator=(const JumpLedger& other);
  JumpLedger(JumpLedger&&) = default;
  JumpLedger& operator=(JumpLedger&&) = default;
};

/// Advances the wrapper by one accepted output. The first call emits the
/// mandatory 0 without running the inner program. Afterwards the inner is
/// stepped (at most budget.max_steps per call; BudgetExceeded if it stays
/// silent that long, retry with a larger budget) and its proposal is accepted
/// unless it would break |q| <= M or any per-scale jump bound; a rejected
/// proposal is replaced by the previous accepted value.
///
/// Scales are checked up to max(n+1, stabilization scale of the candidate
/// prefix), which keeps every per-scale bound intact for nondecreasing jump
/// bounds no matter what the inner does. A bound that dips non-monotonically
/// below an already-lawful count at a late scale cannot be defended online;
/// that corner sets `breached` instead of failing silently.
std::pair<Rational, JumpLedger> wrapper_next(const Gcn& g, const JumpLedger& ledger,
                                             const prf::EvalBudget& budget);

Gcn gcn_add(const Gcn& x, const Gcn& y);
Gcn gcn_neg(const Gcn& x);
Gcn gcn_mul(const Gcn& x, const Gcn& y);

/// Smallest m with value <= 2^m (the exponent used by gcn_mul's jump bound).
std::uint32_t log2_bound(const Nat& value);

/// Specker-style staircase: digit k of S_m (k <= m) is 1 exactly when the
/// k-th machine halts within m steps. Machines are simulated for at most
/// min(n, step_cap) steps; divergence is fine.
std::vector<Rational> specker(std::uint32_t n, std::uint64_t step_cap,
                              const std::function<machine::ToyMachine(std::uint64_t)>& machines);

/// The same staircase as an Ngcn with revision bound 1, built from a table of
/// halting steps (nullopt = diverges). Index i of the table is machine i+1.
Ngcn specker_ngcn(const std::vector<std::optional<std::uint64_t>>& halt_steps);

/// The worked three-machine demo table: halts at 3, diverges, halts at 1.
std::vector<machine::ToyMachine> demo_fixture_machines();

}  // namespace ecn::gcn
