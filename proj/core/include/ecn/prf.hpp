#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ecn/numeric.hpp"

// A total expression language over the naturals. The core basis is
// zero / successor / projection / composition / primitive recursion; on top of
// it sit sugar combinators (constants, machine arithmetic, pairing, bounded
// loops) that the evaluator runs natively and that desugar() eliminates.
// Every expression denotes a total function: loops always carry a bound that
// is evaluated before iterating, so well-formedness is a syntactic check and
// evaluation can only fail by exhausting an explicit step budget, never by
// diverging.
//
// Expressions are immutable trees shared by pointer; evaluation is pure.

namespace ecn::prf {

enum class Tag : std::uint8_t {
  // core
  kZero,      // constant 0, usable at any arity
  kSucc,      // x+1
  kProj,      // k-th of n arguments (1-based)
  kComp,      // kids = [f, g1..gm]
  kPrimRec,   // kids = [base, step]; f(x..,0)=base(x..), f(x..,y+1)=step(x..,y,f(x..,y))
  // sugar
  kConst,     // fixed natural, usable at any arity
  kAdd,       // x+y
  kMul,       // x*y
  kTruncSub,  // max(x-y, 0)
  kDiv,       // floor(x/y); x/0 = 0
  kSgn,       // 0 if x=0 else 1
  kAbsSgn,    // magnitude of the signed-digit reading of x: 0 if x=0 else 1
  kLe,        // 1 if x<=y else 0
  kMax,       // max(x,y)
  kPair,      // Cantor pairing (x+y)(x+y+1)/2 + y
  kFst,       // left inverse of kPair
  kSnd,       // right inverse of kPair
  kSum,       // kids = [body, bound]; sum of body(x..,i) for i = 0..bound(x..)
  kLoop,      // kids = [body, bound]; s0 = 0, s(k+1) = body(x..,k,sk), value s(bound(x..))
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  Tag tag;
  std::uint32_t k = 0;  // kProj: argument picked
  std::uint32_t n = 0;  // kProj: declared arity
  Nat value;            // kConst
  std::vector<ExprPtr> kids;
  // kSum/kLoop: how many leading arguments the body and bound see (their own
  // inferred arity; 0 for the constant-usable-anywhere case). Derived from
  // the children at construction, -1 while the children are ill-formed.
  std::int32_t loop_ambient = -1;
};

// Construction helpers (the only way the rest of the code builds trees).
ExprPtr zero();
ExprPtr succ();
ExprPtr proj(std::uint32_t k, std::uint32_t n);
ExprPtr comp(ExprPtr f, std::vector<ExprPtr> gs);
ExprPtr primrec(ExprPtr base, ExprPtr step);
ExprPtr cnat(Nat v);
ExprPtr cnat(std::uint64_t v);
ExprPtr leaf(Tag t);  // for the fixed-arity sugar leaves (kAdd .. kSnd)
ExprPtr bsum(ExprPtr body, ExprPtr bound);
ExprPtr bloop(ExprPtr body, ExprPtr bound);

bool structurally_equal(const Expr& a, const Expr& b);
/// Total order used by the enumerator: tag rank, then params, then children.
int structural_cmp(const Expr& a, const Expr& b);
std::size_t tree_size(const Expr& e);  // node count + declared projection arity

/// Canonical s-expression form; parse(print(e)) rebuilds e exactly.
std::string print(const Expr& e);

struct SyntaxError : std::runtime_error {
  SyntaxError(std::size_t position, const std::string& what)
      : std::runtime_error("syntax error at byte " + std::to_string(position) + ": " + what),
        position(position) {}
  std::size_t position;
};

/// Total parser for the grammar
///   expr := Z | S | (P k n) | (C f g1 ... gm) | (R base step)
///         | (SUGAR name args...)
/// Whitespace-insensitive, ASCII only. Throws SyntaxError on rejection.
ExprPtr parse(std::string_view text);

/// Result of the one-pass well-formedness decision. `any_arity` marks closed
/// constant terms usable at every arity; otherwise `arity` is exact.
struct ArityReport {
  bool well_formed = false;
  bool any_arity = false;
  std::uint32_t arity = 0;
  std::uint32_t error_node = 0;  // preorder index of the offending node
  std::string error;
};

/// Decides well-formedness; total on arbitrary trees, errors are data.
ArityReport check(const Expr& e);

/// True when a well-formed expression can be applied to `argc` arguments.
bool usable_at(const ArityReport& r, std::uint32_t argc);

struct EvalBudget {
  std::uint64_t max_steps = 1'000'000;
};

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded() : std::runtime_error("evaluation step budget exhausted") {}
};

struct ArityMismatch : std::runtime_error {
  explicit ArityMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// Value of the function at `args`. Cost model: one step per combinator
/// application; loop forms additionally pay one body application per
/// iteration. Exceeding the budget is resource exhaustion, not divergence.
Nat eval(const Expr& e, std::span<const Nat> args, const EvalBudget& budget);

/// eval plus the exact step count under the documented cost model.
std::pair<Nat, std::uint64_t> eval_steps(const Expr& e, std::span<const Nat> args,
                                         const EvalBudget& budget);

/// Rewrites every sugar node into the five-combinator core; extensionally
/// equal to the input on all arguments. Requires a well-formed input.
ExprPtr desugar(const Expr& e);

/// True when the tree uses only the five core combinators.
bool is_core(const Expr& e);

/// Deterministic bijection between indices and well-formed core expressions
/// usable at arity 1, ordered by (tree size, structural order). Caches size
/// classes internally; distinct instances enumerate identically.
class Enumerator {
 public:
  ExprPtr at(std::uint64_t index);
  /// Number of enumerated expressions of tree size <= s.
  std::uint64_t count_up_to_size(std::size_t s);

 private:
  const std::vector<ExprPtr>& trees_of_size(std::size_t s);
  void ensure_class(std::size_t s);
  std::vector<std::vector<ExprPtr>> trees_;      // all grammar trees, by exact size
  std::vector<std::uint64_t> class_end_;         // cumulative enumerated count per size
  std::vector<ExprPtr> flat_;                    // enumeration order
};

}  // namespace ecn::prf
