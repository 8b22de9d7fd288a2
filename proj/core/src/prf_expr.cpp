#include "ecn/prf.hpp"

#include <sstream>

namespace ecn::prf {

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

int tag_rank(Tag t) { return static_cast<int>(t); }

const char* sugar_name(Tag t) {
  switch (t) {
    case Tag::kConst: return "const";
    case Tag::kAdd: return "add";
    case Tag::kMul: return "mul";
    case Tag::kTruncSub: return "tsub";
    case Tag::kDiv: return "div";
    case Tag::kSgn: return "sgn";
    case Tag::kAbsSgn: return "abssgn";
    case Tag::kLe: return "le";
    case Tag::kMax: return "max";
    case Tag::kPair: return "pair";
    case Tag::kFst: return "fst";
    case Tag::kSnd: return "snd";
    case Tag::kSum: return "sum";
    case Tag::kLoop: return "loop";
    default: return nullptr;
  }
}

}  // namespace

ExprPtr zero() {
  static const ExprPtr z = [] {
    Expr e;
    e.tag = Tag::kZero;
    return make(std::move(e));
  }();
  return z;
}

ExprPtr succ() {
  static const ExprPtr s = [] {
    Expr e;
    e.tag = Tag::kSucc;
    return make(std::move(e));
  }();
  return s;
}

ExprPtr proj(std::uint32_t k, std::uint32_t n) {
  Expr e;
  e.tag = Tag::kProj;
  e.k = k;
  e.n = n;
  return make(std::move(e));
}

ExprPtr comp(ExprPtr f, std::vector<ExprPtr> gs) {
  Expr e;
  e.tag = Tag::kComp;
  e.kids.reserve(gs.size() + 1);
  e.kids.push_back(std::move(f));
  for (auto& g : gs) e.kids.push_back(std::move(g));
  return make(std::move(e));
}

ExprPtr primrec(ExprPtr base, ExprPtr step) {
  Expr e;
  e.tag = Tag::kPrimRec;
  e.kids = {std::move(base), std::move(step)};
  return make(std::move(e));
}

ExprPtr cnat(Nat v) {
  Expr e;
  e.tag = Tag::kConst;
  e.value = std::move(v);
  return make(std::move(e));
}

ExprPtr cnat(std::uint64_t v) { return cnat(Nat(mpz_class(std::to_string(v)))); }

ExprPtr leaf(Tag t) {
  Expr e;
  e.tag = t;
  return make(std::move(e));
}

namespace {

ExprPtr finish_loop(Expr e) {
  ArityReport r = check(e);
  if (r.well_formed) e.loop_ambient = r.any_arity ? 0 : static_cast<std::int32_t>(r.arity);
  return make(std::move(e));
}

}  // namespace

ExprPtr bsum(ExprPtr body, ExprPtr bound) {
  Expr e;
  e.tag = Tag::kSum;
  e.kids = {std::move(body), std::move(bound)};
  return finish_loop(std::move(e));
}

ExprPtr bloop(ExprPtr body, ExprPtr bound) {
  Expr e;
  e.tag = Tag::kLoop;
  e.kids = {std::move(body), std::move(bound)};
  return finish_loop(std::move(e));
}

int structural_cmp(const Expr& a, const Expr& b) {
  if (tag_rank(a.tag) != tag_rank(b.tag)) return tag_rank(a.tag) < tag_rank(b.tag) ? -1 : 1;
  if (a.tag == Tag::kProj) {
    if (a.n != b.n) return a.n < b.n ? -1 : 1;
    if (a.k != b.k) return a.k < b.k ? -1 : 1;
    return 0;
  }
  if (a.tag == Tag::kConst) {
    if (a.value < b.value) return -1;
    if (b.value < a.value) return 1;
    return 0;
  }
  if (a.kids.size() != b.kids.size()) return a.kids.size() < b.kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    int c = structural_cmp(*a.kids[i], *b.kids[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool structurally_equal(const Expr& a, const Expr& b) { return structural_cmp(a, b) == 0; }

std::size_t tree_size(const Expr& e) {
  std::size_t s = 1;
  if (e.tag == Tag::kProj) s += e.n;
  for (const auto& kid : e.kids) s += tree_size(*kid);
  return s;
}

namespace {

void print_rec(const Expr& e, std::ostringstream& out) {
  switch (e.tag) {
    case Tag::kZero: out << "Z"; return;
    case Tag::kSucc: out << "S"; return;
    case Tag::kProj: out << "(P " << e.k << " " << e.n << ")"; return;
    case Tag::kComp:
      out << "(C";
      for (const auto& kid : e.kids) {
        out << " ";
        print_rec(*kid, out);
      }
      out << ")";
      return;
    case Tag::kPrimRec:
      out << "(R ";
      print_rec(*e.kids[0], out);
      out << " ";
      print_rec(*e.kids[1], out);
      out << ")";
      return;
    case Tag::kConst: out << "(SUGAR const " << e.value.str() << ")"; return;
    default: break;
  }
  out << "(SUGAR " << sugar_name(e.tag);
  for (const auto& kid : e.kids) {
    out << " ";
    print_rec(*kid, out);
  }
  out << ")";
}

}  // namespace

std::string print(const Expr& e) {
  std::ostringstream out;
  print_rec(e, out);
  return out.str();
}

}  // namespace ecn::prf
