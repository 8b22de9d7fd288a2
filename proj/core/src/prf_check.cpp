#include "ecn/prf.hpp"

namespace ecn::prf {

namespace {

// Inferred applicability: closed constant terms fit every arity ("any"),
// everything else has one exact arity.
struct Arity {
  bool any = false;
  std::uint32_t n = 0;
};

struct Checker {
  ArityReport report;
  std::uint32_t next_index = 0;

  bool fail(std::uint32_t node, const std::string& what) {
    if (report.error.empty()) {
      report.error_node = node;
      report.error = what;
    }
    return false;
  }

  bool accepts(const Arity& a, std::uint32_t argc) const { return a.any || a.n == argc; }

  bool infer(const Expr& e, Arity& out) {
    std::uint32_t me = next_index++;
    switch (e.tag) {
      case Tag::kZero:
      case Tag::kConst:
        out = {true, 0};
        return true;
      case Tag::kSucc:
      case Tag::kSgn:
      case Tag::kAbsSgn:
      case Tag::kFst:
      case Tag::kSnd:
        out = {false, 1};
        return true;
      case Tag::kAdd:
      case Tag::kMul:
      case Tag::kTruncSub:
      case Tag::kDiv:
      case Tag::kLe:
      case Tag::kMax:
      case Tag::kPair:
        out = {false, 2};
        return true;
      case Tag::kProj:
        if (e.k < 1 || e.n < 1 || e.k > e.n)
          return fail(me, "projection needs 1 <= k <= n");
        out = {false, e.n};
        return true;
      case Tag::kComp: {
        if (e.kids.size() < 2) return fail(me, "composition needs at least one inner function");
        Arity f;
        if (!infer(*e.kids[0], f)) return false;
        std::uint32_t m = static_cast<std::uint32_t>(e.kids.size() - 1);
        if (!accepts(f, m))
          return fail(me, "outer function arity " + std::to_string(f.n) + " applied to " +
                              std::to_string(m) + " inner functions");
        bool have_fixed = false;
        std::uint32_t n = 0;
        for (std::size_t i = 1; i < e.kids.size(); ++i) {
          Arity g;
          if (!infer(*e.kids[i], g)) return false;
          if (g.any) continue;
          if (have_fixed && g.n != n)
            return fail(me, "inner functions disagree on arity");
          have_fixed = true;
          n = g.n;
        }
        out = have_fixed ? Arity{false, n} : Arity{true, 0};
        return true;
      }
      case Tag::kPrimRec: {
        Arity base, step;
        if (!infer(*e.kids[0], base)) return false;
        if (!infer(*e.kids[1], step)) return false;
        std::uint32_t n;
        if (!step.any) {
          if (step.n < 2) return fail(me, "recursion step needs arity >= 2");
          n = step.n - 2;
          if (!accepts(base, n))
            return fail(me, "recursion base arity does not match step");
          if (!base.any && n == 0)
            return fail(me, "recursion base must be a constant when the step has arity 2");
        } else if (!base.any) {
          n = base.n;
        } else {
          n = 0;
        }
        out = {false, n + 1};
        return true;
      }
      case Tag::kSum:
      case Tag::kLoop: {
        std::uint32_t extra = e.tag == Tag::kSum ? 1 : 2;
        Arity body, bound;
        if (!infer(*e.kids[0], body)) return false;
        if (!infer(*e.kids[1], bound)) return false;
        std::uint32_t n;
        if (!body.any) {
          if (body.n < extra) return fail(me, "loop body arity too small");
          n = body.n - extra;
          if (!accepts(bound, n) || (!bound.any && n == 0))
            return fail(me, "loop bound arity does not match body");
        } else if (!bound.any) {
          n = bound.n;
        } else {
          n = 0;
        }
        out = n == 0 ? Arity{true, 0} : Arity{false, n};
        return true;
      }
    }
    return fail(me, "unknown node");
  }
};

}  // namespace

ArityReport check(const Expr& e) {
  Checker c;
  Arity a;
  if (c.infer(e, a)) {
    c.report.well_formed = true;
    c.report.any_arity = a.any;
    c.report.arity = a.n;
  }
  return c.report;
}

bool usable_at(const ArityReport& r, std::uint32_t argc) {
  return r.well_formed && (r.any_arity || r.arity == argc);
}

}  // namespace ecn::prf
