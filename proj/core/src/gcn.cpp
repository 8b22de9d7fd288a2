#include "ecn/gcn.hpp"

#include <deque>

#include "expr_build.hpp"

namespace ecn::gcn {

namespace {

Nat eval1(const prf::ExprPtr& e, std::uint64_t arg, const prf::EvalBudget& budget) {
  Nat a(static_cast<unsigned long>(arg));
  return prf::eval(*e, std::span<const Nat>(&a, 1), budget);
}

int bit_of(const Nat& v) { return v.is_zero() ? 0 : 1; }

}  // namespace

Rational ngcn_partial(const Ngcn& x, std::uint32_t n, const prf::EvalBudget& budget) {
  Rational p(x.int_part);
  std::vector<Nat> args(2);
  for (std::uint32_t i = 0; i <= n; ++i) {
    args[0] = Nat(static_cast<unsigned long>(i));
    Nat cap = eval1(x.revision, i, budget);
    args[1] = Nat(1ul);
    int cur = bit_of(prf::eval(*x.coeff2, args, budget));
    // revisions are counted on the interpreted bit; freeze at the cap-th change
    if (!cap.is_zero()) {
      Nat changes;
      for (std::uint32_t m = 2; m <= std::max(n, 1u); ++m) {
        args[1] = Nat(static_cast<unsigned long>(m));
        int v = bit_of(prf::eval(*x.coeff2, args, budget));
        if (v != cur) {
          cur = v;
          changes = changes + Nat(1);
          if (changes >= cap) break;
        }
      }
    }
    if (cur != 0) p = p + pow2(-static_cast<std::int64_t>(i));
  }
  return p;
}

std::uint32_t count_jumps(std::span<const Rational> q, const Rational& threshold) {
  std::uint32_t count = 0;
  bool have_window = false;
  Rational wmin, wmax;
  for (const Rational& v : q) {
    if (have_window && (v - wmin > threshold || wmax - v > threshold)) {
      ++count;
      have_window = false;  // pairs may not share or cross indices
    } else if (!have_window) {
      wmin = wmax = v;
      have_window = true;
    } else {
      if (v < wmin) wmin = v;
      if (v > wmax) wmax = v;
    }
  }
  return count;
}

namespace {

class MachineInner : public InnerProgram {
 public:
  explicit MachineInner(machine::ToyMachine m)
      : machine_(std::make_shared<const machine::ToyMachine>(std::move(m))), run_(*machine_) {}

  std::optional<Rational> step() override {
    if (run_.halted()) return std::nullopt;
    return run_.step();
  }
  bool finished() const override { return run_.halted(); }
  std::unique_ptr<InnerProgram> clone() const override {
    return std::make_unique<MachineInner>(*this);
  }

 private:
  std::shared_ptr<const machine::ToyMachine> machine_;
  machine::Run run_;
};

class GeneratorInner : public InnerProgram {
 public:
  explicit GeneratorInner(std::function<std::optional<Rational>(std::uint64_t)> gen)
      : gen_(std::move(gen)) {}

  std::optional<Rational> step() override { return gen_(next_++); }
  std::unique_ptr<InnerProgram> clone() const override {
    return std::make_unique<GeneratorInner>(*this);
  }

 private:
  std::function<std::optional<Rational>(std::uint64_t)> gen_;
  std::uint64_t next_ = 0;
};

enum class Combine { kSum, kProduct };

// Emits 0 first, then strictly alternates single steps of the two sides;
// whenever a side emits, proposes (new value combined with the last value of
// the other side, or 0 if none).
class PairInner : public InnerProgram {
 public:
  PairInner(std::unique_ptr<InnerProgram> x, std::unique_ptr<InnerProgram> y, Combine mode)
      : x_(std::move(x)), y_(std::move(y)), mode_(mode) {}

  PairInner(const PairInner& other)
      : x_(other.x_->clone()),
        y_(other.y_->clone()),
        mode_(other.mode_),
        turn_x_(other.turn_x_),
        emitted_zero_(other.emitted_zero_),
        last_x_(other.last_x_),
        last_y_(other.last_y_) {}

  std::optional<Rational> step() override {
    if (!emitted_zero_) {
      emitted_zero_ = true;
      return Rational(0l);
    }
    bool x_done = x_->finished();
    bool y_done = y_->finished();
    bool use_x = turn_x_;
    if (x_done && !y_done) use_x = false;
    if (y_done && !x_done) use_x = true;
    if (x_done && y_done) return std::nullopt;
    turn_x_ = !turn_x_;
    InnerProgram& side = use_x ? *x_ : *y_;
    auto v = side.step();
    if (!v) return std::nullopt;
    (use_x ? last_x_ : last_y_) = *v;
    Rational other = (use_x ? last_y_ : last_x_).value_or(Rational(0l));
    return mode_ == Combine::kSum ? *v + other : *v * other;
  }

  bool finished() const override {
    return emitted_zero_ && x_->finished() && y_->finished();
  }
  std::unique_ptr<InnerProgram> clone() const override {
    return std::make_unique<PairInner>(*this);
  }

 private:
  std::unique_ptr<InnerProgram> x_, y_;
  Combine mode_;
  bool turn_x_ = true;
  bool emitted_zero_ = false;
  std::optional<Rational> last_x_, last_y_;
};

class NegInner : public InnerProgram {
 public:
  explicit NegInner(std::unique_ptr<InnerProgram> inner) : inner_(std::move(inner)) {}
  NegInner(const NegInner& other) : inner_(other.inner_->clone()) {}

  std::optional<Rational> step() override {
    auto v = inner_->step();
    if (!v) return std::nullopt;
    return -*v;
  }
  bool finished() const override { return inner_->finished(); }
  std::unique_ptr<InnerProgram> clone() const override {
    return std::make_unique<NegInner>(*this);
  }

 private:
  std::unique_ptr<InnerProgram> inner_;
};

}  // namespace

std::unique_ptr<InnerProgram> machine_inner(machine::ToyMachine m) {
  return std::make_unique<MachineInner>(std::move(m));
}

std::unique_ptr<InnerProgram> generator_inner(
    std::function<std::optional<Rational>(std::uint64_t)> gen) {
  return std::make_unique<GeneratorInner>(std::move(gen));
}

Gcn machine_gcn(machine::ToyMachine m, Nat bound, prf::ExprPtr jump_bound) {
  Gcn g;
  g.source = m;
  g.make_inner = [m = std::move(m)]() { return machine_inner(m); };
  g.bound_m = std::move(bound);
  g.jump_bound = std::move(jump_bound);
  return g;
}

JumpLedger::JumpLedger(const JumpLedger& other)
    : emitted(other.emitted),
      per_scale(other.per_scale),
      censored(other.censored),
      breached(other.breached),
      inner(other.inner ? std::shared_ptr<InnerProgram>(other.inner->clone()) : nullptr),
      min_nonzero_gap(other.min_nonzero_gap) {}

JumpLedger& JumpLedger::operator=(const JumpLedger& other) {
  if (this != &other) *this = JumpLedger(other);
  return *this;
}

namespace {

// Scale beyond which jump counts cannot change: 2^-k below the smallest
// nonzero gap means every unequal pair already counts.
std::uint32_t stabilization_scale(const std::optional<Rational>& min_gap) {
  if (!min_gap) return 1;
  const mpq_class& g = min_gap->raw();
  auto num_bits = mpz_sizeinbase(g.get_num().get_mpz_t(), 2);
  auto den_bits = mpz_sizeinbase(g.get_den().get_mpz_t(), 2);
  std::size_t k = den_bits >= num_bits ? den_bits - num_bits + 1 : 1;
  while (pow2(-static_cast<std::int64_t>(k)) >= *min_gap) ++k;
  return static_cast<std::uint32_t>(k);
}

std::optional<Rational> updated_min_gap(const std::vector<Rational>& q,
                                        std::optional<Rational> current,
                                        const Rational& candidate) {
  for (const Rational& v : q) {
    Rational gap = rat_abs(candidate - v);
    if (!gap.is_zero() && (!current || gap < *current)) current = gap;
  }
  return current;
}

Nat effective_bound(const Gcn& g, std::uint32_t k, const prf::EvalBudget& budget) {
  Nat v = eval1(g.jump_bound, k, budget);
  return v.is_zero() ? Nat(1ul) : v;
}

bool scales_ok(const Gcn& g, const std::vector<Rational>& q,
               const std::optional<Rational>& min_gap, const prf::EvalBudget& budget,
               std::map<std::uint32_t, std::uint32_t>* counts_out) {
  std::uint32_t stable = stabilization_scale(min_gap);
  std::uint32_t limit = std::max(static_cast<std::uint32_t>(q.size()), stable);
  bool ok = true;
  std::map<std::uint32_t, std::uint32_t> counts;
  std::uint32_t c = 0;
  for (std::uint32_t k = 1; k <= limit; ++k) {
    // below the smallest nonzero gap every unequal pair already counts, so
    // the count is constant from the stabilization scale on
    if (k <= stable) c = count_jumps(q, pow2(-static_cast<std::int64_t>(k)));
    counts[k] = c;
    if (Nat(c) >= effective_bound(g, k, budget)) {
      ok = false;
      break;
    }
  }
  if (ok && counts_out) *counts_out = std::move(counts);
  return ok;
}

}  // namespace

std::pair<Rational, JumpLedger> wrapper_next(const Gcn& g, const JumpLedger& ledger,
                                             const prf::EvalBudget& budget) {
  JumpLedger next(ledger);
  if (next.emitted.empty()) {
    next.emitted.push_back(Rational(0l));
    next.per_scale[1] = 0;
    return {Rational(0l), std::move(next)};
  }
  if (!next.inner) next.inner = std::shared_ptr<InnerProgram>(g.make_inner());

  std::optional<Rational> proposal;
  for (std::uint64_t s = 0; s < budget.max_steps; ++s) {
    if (next.inner->finished()) break;
    if ((proposal = next.inner->step())) break;
  }
  Rational prev = next.emitted.back();
  if (!proposal && !next.inner->finished()) throw prf::BudgetExceeded();

  Rational candidate = proposal.value_or(prev);
  bool censor = false;
  if (rat_abs(candidate) > Rational(Int(g.bound_m))) censor = true;

  std::map<std::uint32_t, std::uint32_t> counts;
  std::optional<Rational> gap;
  if (!censor) {
    next.emitted.push_back(candidate);
    gap = updated_min_gap(ledger.emitted, next.min_nonzero_gap, candidate);
    if (!scales_ok(g, next.emitted, gap, budget, &counts)) {
      censor = true;
      next.emitted.pop_back();
    }
  }
  if (censor) {
    if (candidate != prev) ++next.censored;
    next.emitted.push_back(prev);
    gap = updated_min_gap(ledger.emitted, next.min_nonzero_gap, prev);
    if (!scales_ok(g, next.emitted, gap, budget, &counts)) {
      // a repeat adds no jumps; only a retroactively violated fresh scale
      // under a non-monotone bound lands here
      next.breached = true;
    }
  }
  next.min_nonzero_gap = gap;
  if (!counts.empty()) next.per_scale = std::move(counts);
  return {next.emitted.back(), std::move(next)};
}

Gcn gcn_add(const Gcn& x, const Gcn& y) {
  Gcn g;
  g.make_inner = [fx = x.make_inner, fy = y.make_inner]() -> std::unique_ptr<InnerProgram> {
    return std::make_unique<PairInner>(fx(), fy(), Combine::kSum);
  };
  g.bound_m = x.bound_m + y.bound_m;
  g.jump_bound = prf::comp(prf::leaf(prf::Tag::kAdd), {x.jump_bound, y.jump_bound});
  return g;
}

Gcn gcn_neg(const Gcn& x) {
  Gcn g;
  g.make_inner = [fx = x.make_inner]() -> std::unique_ptr<InnerProgram> {
    return std::make_unique<NegInner>(fx());
  };
  g.bound_m = x.bound_m;
  g.jump_bound = x.jump_bound;
  return g;
}

std::uint32_t log2_bound(const Nat& value) {
  if (value <= Nat(1ul)) return 0;
  mpz_class vm1 = value.raw() - 1;
  return static_cast<std::uint32_t>(mpz_sizeinbase(vm1.get_mpz_t(), 2));
}

Gcn gcn_mul(const Gcn& x, const Gcn& y) {
  using namespace build;
  Gcn g;
  g.make_inner = [fx = x.make_inner, fy = y.make_inner]() -> std::unique_ptr<InnerProgram> {
    return std::make_unique<PairInner>(fx(), fy(), Combine::kProduct);
  };
  g.bound_m = x.bound_m * y.bound_m;

  std::uint32_t mx = log2_bound(x.bound_m);
  std::uint32_t my = log2_bound(y.bound_m);
  ExprPtr k = prf::proj(1, 1);
  ExprPtr first = add(sum_1_to_m(x.jump_bound, my, 1), sum_1_to_m(y.jump_bound, mx, 1));
  ExprPtr later = add(app1(x.jump_bound, add(k, nat_c(my))),
                      app1(y.jump_bound, add(k, nat_c(mx))));
  g.jump_bound = select(eq(k, nat_c(1)), std::move(first), std::move(later));
  return g;
}

}  // namespace ecn::gcn
