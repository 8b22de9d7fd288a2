#include "ecn/prf.hpp"

namespace ecn::prf {

namespace {

constexpr std::size_t kMaxDepth = 10'000;
constexpr std::uint64_t kMaxProjArity = 1'000'000;

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                 text[pos] == '\r'))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& what) { throw SyntaxError(pos, what); }

  char peek() {
    if (pos >= text.size()) fail("unexpected end of input");
    return text[pos];
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  std::string_view token() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '(' || text[pos] == ')') {
      auto t = text.substr(pos, 1);
      ++pos;
      return t;
    }
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' && text[pos] != ' ' &&
           text[pos] != '\t' && text[pos] != '\n' && text[pos] != '\r')
      ++pos;
    return text.substr(start, pos - start);
  }

  Nat nat_token() {
    std::size_t at = pos;
    auto t = token();
    auto n = Nat::parse(t);
    if (!n) {
      pos = at;
      fail("expected a natural number");
    }
    return *n;
  }

  std::uint32_t small_nat_token(std::uint64_t limit) {
    std::size_t at = pos;
    Nat n = nat_token();
    if (!n.fits_u64() || n.to_u64() > limit) {
      pos = at;
      fail("number out of range");
    }
    return static_cast<std::uint32_t>(n.to_u64());
  }

  void expect_close() {
    skip_ws();
    if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
    ++pos;
  }

  ExprPtr expr(std::size_t depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    skip_ws();
    std::size_t at = pos;
    auto t = token();
    if (t == "Z") return zero();
    if (t == "S") return succ();
    if (t != "(") {
      pos = at;
      fail("expected Z, S or '('");
    }
    auto head = token();
    if (head == "P") {
      std::uint32_t k = small_nat_token(kMaxProjArity);
      std::uint32_t n = small_nat_token(kMaxProjArity);
      expect_close();
      return proj(k, n);
    }
    if (head == "C") {
      ExprPtr f = expr(depth + 1);
      std::vector<ExprPtr> gs;
      while (true) {
        skip_ws();
        if (pos < text.size() && text[pos] == ')') break;
        gs.push_back(expr(depth + 1));
      }
      expect_close();
      if (gs.empty()) fail("composition needs at least one inner function");
      return comp(std::move(f), std::move(gs));
    }
    if (head == "R") {
      ExprPtr base = expr(depth + 1);
      ExprPtr step = expr(depth + 1);
      expect_close();
      return primrec(std::move(base), std::move(step));
    }
    if (head == "SUGAR") {
      std::size_t name_at = pos;
      auto name = token();
      ExprPtr result;
      if (name == "const") {
        result = cnat(nat_token());
      } else if (name == "sum" || name == "loop") {
        ExprPtr body = expr(depth + 1);
        ExprPtr bound = expr(depth + 1);
        result = name == "sum" ? bsum(std::move(body), std::move(bound))
                               : bloop(std::move(body), std::move(bound));
      } else {
        Tag tag;
        if (name == "add") tag = Tag::kAdd;
        else if (name == "mul") tag = Tag::kMul;
        else if (name == "tsub") tag = Tag::kTruncSub;
        else if (name == "div") tag = Tag::kDiv;
        else if (name == "sgn") tag = Tag::kSgn;
        else if (name == "abssgn") tag = Tag::kAbsSgn;
        else if (name == "le") tag = Tag::kLe;
        else if (name == "max") tag = Tag::kMax;
        else if (name == "pair") tag = Tag::kPair;
        else if (name == "fst") tag = Tag::kFst;
        else if (name == "snd") tag = Tag::kSnd;
        else {
          pos = name_at;
          fail("unknown sugar name");
        }
        result = leaf(tag);
      }
      expect_close();
      return result;
    }
    pos = at;
    fail("expected P, C, R or SUGAR after '('");
  }
};

}  // namespace

ExprPtr parse(std::string_view text) {
  Parser p{text};
  ExprPtr e = p.expr(0);
  if (!p.at_end()) p.fail("trailing input after expression");
  return e;
}

}  // namespace ecn::prf
