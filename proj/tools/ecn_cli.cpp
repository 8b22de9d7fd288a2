// Command-line surface over the library: validation, approximation with
// explicit error bounds, arithmetic, named constants, enumeration, and the
// staircase / diagonalization demos. Approximations always print the exact
// rational partial sum next to its error bound; decimal output is a certified
// enclosure, never a bare rounded string.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ecn/construct.hpp"
#include "ecn/gcn.hpp"
#include "ecn/machine.hpp"
#include "ecn/numbers.hpp"
#include "ecn/prf.hpp"

namespace {

using namespace ecn;

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Options {
  std::uint32_t bits = 16;
  std::uint64_t budget = 1'000'000'000;
  std::uint64_t step_cap = 100'000;
  std::uint32_t count = 5;
  std::uint32_t decimal = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::optional<numbers::Sprcn> named_constant(const std::string& name) {
  if (name == "pi") return construct::const_pi();
  if (name == "sqrt2") return construct::const_sqrt2();
  if (name == "e") return construct::const_e();
  if (name == "goldbach") return construct::goldbach_number();
  return std::nullopt;
}

numbers::ParsedNumber load_number(const std::string& arg) {
  if (auto c = named_constant(arg)) return *c;
  return numbers::deserialize(read_file(arg));
}

numbers::Sprcn load_sprcn(const std::string& arg) {
  numbers::ParsedNumber n = load_number(arg);
  if (auto* s = std::get_if<numbers::Sprcn>(&n)) return *s;
  if (auto* p = std::get_if<numbers::Prcn>(&n)) return numbers::Sprcn{p->int_part, p->coeff};
  throw std::runtime_error(arg + ": need a PRCN or SPRCN operand");
}

// Certified decimal enclosure [lo, hi] with the requested digits, rounded
// outward so the printed interval always contains the true interval.
std::string decimal_enclosure(const Rational& lo, const Rational& hi, std::uint32_t digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  auto render = [&](const Int& scaled) {
    mpz_class v = scaled.raw();
    bool neg = v < 0;
    if (neg) v = -v;
    std::string s = v.get_str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    std::string out = (neg ? "-" : "") + s.substr(0, s.size() - digits);
    if (digits > 0) out += "." + s.substr(s.size() - digits);
    return out;
  };
  Int lo_scaled = rat_floor(lo * Rational(Int(scale), Nat(1ul)));
  Int hi_scaled = rat_ceil(hi * Rational(Int(scale), Nat(1ul)));
  return "[" + render(lo_scaled) + ", " + render(hi_scaled) + "]";
}

void print_approx(const numbers::ApproxResult& r, std::uint32_t decimal) {
  std::cout << r.value.str() << " " << r.error_bound.str() << "\n";
  if (decimal > 0)
    std::cout << decimal_enclosure(r.value - r.error_bound, r.value + r.error_bound, decimal)
              << "\n";
}

int cmd_validate(const std::string& path, const std::string& expected_class) {
  auto result = numbers::validate(read_file(path));
  if (result.ok()) {
    if (!expected_class.empty() && expected_class != numbers::class_name(result.cls)) {
      std::cout << "reject: class is " << numbers::class_name(result.cls) << ", not "
                << expected_class << "\n";
      return kExitRejected;
    }
    std::cout << "accept " << numbers::class_name(result.cls) << "\n";
    return kExitOk;
  }
  std::cout << "reject: " << result.rejection.reason << " (byte "
            << result.rejection.position << ")\n";
  return kExitRejected;
}

int cmd_eval(const std::string& input, const Options& opt) {
  prf::EvalBudget budget{opt.budget};
  numbers::ParsedNumber n = load_number(input);
  if (auto* s = std::get_if<numbers::Sprcn>(&n)) {
    print_approx(numbers::approx(*s, opt.bits, budget), opt.decimal);
    return kExitOk;
  }
  if (auto* p = std::get_if<numbers::Prcn>(&n)) {
    print_approx(numbers::approx(*p, opt.bits, budget), opt.decimal);
    return kExitOk;
  }
  if (auto* r = std::get_if<numbers::Rcn>(&n)) {
    auto s = numbers::rcn_sample(*r, opt.step_cap);
    std::cout << s.partial.str() << " no-error-bound coefficients=" << s.coefficients
              << " steps=" << s.steps << (s.halted ? " halted" : " running") << "\n";
    return kExitOk;
  }
  if (auto* g = std::get_if<gcn::Ngcn>(&n)) {
    std::cout << gcn::ngcn_partial(*g, opt.bits, budget).str() << " no-error-bound\n";
    return kExitOk;
  }
  auto& g = std::get<gcn::Gcn>(n);
  gcn::JumpLedger ledger;
  for (std::uint32_t i = 0; i < opt.count; ++i) {
    auto [v, next] = gcn::wrapper_next(g, ledger, budget);
    ledger = std::move(next);
    std::cout << v.str() << "\n";
  }
  return kExitOk;
}

int cmd_digits(const std::string& input, const Options& opt) {
  prf::EvalBudget budget{opt.budget};
  numbers::Sprcn s = load_sprcn(input);
  std::cout << "I: " << s.int_part.str() << "\n";
  for (std::uint32_t i = 1; i <= opt.bits; ++i) {
    if (i > 1) std::cout << " ";
    std::cout << static_cast<int>(numbers::coeff_sprcn(s, i, budget));
  }
  std::cout << "\n";
  return kExitOk;
}

int cmd_arith(const std::string& verb, const std::vector<std::string>& inputs,
              const Options& opt) {
  prf::EvalBudget budget{opt.budget};
  numbers::Sprcn a = load_sprcn(inputs[0]);
  numbers::Sprcn out;
  if (verb == "neg") {
    out = construct::sprcn_neg(a);
  } else {
    numbers::Sprcn b = load_sprcn(inputs[1]);
    out = verb == "add"   ? construct::sprcn_add(a, b, budget)
          : verb == "sub" ? construct::sprcn_sub(a, b, budget)
                          : construct::sprcn_mul(a, b, budget);
  }
  std::cout << numbers::serialize(out);
  return kExitOk;
}

int cmd_compare(const std::string& xa, const std::string& xb, const Options& opt) {
  prf::EvalBudget budget{opt.budget};
  auto v = numbers::compare_tol(load_sprcn(xa), load_sprcn(xb), opt.bits, budget);
  switch (v) {
    case numbers::Comparison::kApartBelow: std::cout << "apart-below\n"; break;
    case numbers::Comparison::kApartAbove: std::cout << "apart-above\n"; break;
    case numbers::Comparison::kWithinTolerance: std::cout << "within-tolerance\n"; break;
  }
  return kExitOk;
}

int cmd_enumerate(bool machines, const Options& opt) {
  if (machines) {
    machine::Enumerator en;
    for (std::uint32_t i = 0; i < opt.count; ++i)
      std::cout << i << ":\n" << machine::print(en.at(i));
  } else {
    prf::Enumerator en;
    for (std::uint32_t i = 0; i < opt.count; ++i)
      std::cout << i << ": " << prf::print(*en.at(i)) << "\n";
  }
  return kExitOk;
}

int cmd_specker(const std::string& fixtures, const Options& opt) {
  std::function<machine::ToyMachine(std::uint64_t)> source;
  if (fixtures == "demo") {
    auto ms = gcn::demo_fixture_machines();
    source = [ms](std::uint64_t i) {
      return i < ms.size() ? ms[i] : machine::diverger();
    };
  } else {
    source = [en = std::make_shared<machine::Enumerator>()](std::uint64_t i) {
      return en->at(i);
    };
  }
  for (const auto& q : gcn::specker(opt.count, opt.step_cap, source))
    std::cout << q.str() << "\n";
  return kExitOk;
}

int cmd_diagonalize(const Options& opt) {
  auto [lo, hi] = construct::diagonalize(opt.count, prf::EvalBudget{opt.budget});
  std::cout << "[" << lo.str() << ", " << hi.str() << "]\n";
  return kExitOk;
}

int cmd_theorem3(const Options& opt) {
  auto digits = construct::theorem3_prefix(opt.count, opt.step_cap);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0) std::cout << " ";
    std::cout << static_cast<int>(digits[i]);
  }
  std::cout << "\n";
  auto unsigned_form = construct::unsigned_expansion(digits);
  for (std::size_t i = 0; i < unsigned_form.size(); ++i) {
    if (i > 0) std::cout << " ";
    std::cout << unsigned_form[i];
  }
  std::cout << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decidable computed numbers: validate, approximate, combine"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--bits", opt.bits, "approximation order n (error bound 2^-n)");
  app.add_option("--budget", opt.budget, "evaluation step budget");
  app.add_option("--step-cap", opt.step_cap, "machine step cap");
  app.add_option("--count", opt.count, "how many items / outputs");
  app.add_option("--decimal", opt.decimal, "also print a certified decimal enclosure");

  std::vector<std::string> inputs;
  std::string fixtures = "enumerated";
  std::string expected_class;
  bool machines = false;
  app.add_option("--class", expected_class, "required class tag for validate");

  auto* validate = app.add_subcommand("validate", "decide membership of a .ecn file");
  validate->add_option("file", inputs)->required()->expected(1);
  auto* eval = app.add_subcommand("eval", "approximate with an explicit error bound");
  eval->add_option("input", inputs)->required()->expected(1);
  auto* digits = app.add_subcommand("digits", "print the signed coefficient stream");
  digits->add_option("input", inputs)->required()->expected(1);
  for (const char* verb : {"add", "sub", "mul"}) {
    auto* c = app.add_subcommand(verb, "combine two numbers; result on stdout");
    c->add_option("inputs", inputs)->required()->expected(2);
  }
  auto* neg = app.add_subcommand("neg", "negate a number; result on stdout");
  neg->add_option("input", inputs)->required()->expected(1);
  auto* compare = app.add_subcommand("compare", "three-valued tolerance comparison");
  compare->add_option("inputs", inputs)->required()->expected(2);
  auto* enumerate = app.add_subcommand("enumerate", "list the fixed enumeration");
  enumerate->add_flag("--machines", machines, "machines instead of expressions");
  auto* specker = app.add_subcommand("specker", "monotone staircase outputs");
  specker->add_option("--fixtures", fixtures, "demo | enumerated");
  app.add_subcommand("diagonalize", "interval avoiding the first --count numbers");
  app.add_subcommand("theorem3", "signed runtime-encoding blocks, then unsigned form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(inputs[0], expected_class);
    if (eval->parsed()) return cmd_eval(inputs[0], opt);
    if (digits->parsed()) return cmd_digits(inputs[0], opt);
    if (app.got_subcommand("add")) return cmd_arith("add", inputs, opt);
    if (app.got_subcommand("sub")) return cmd_arith("sub", inputs, opt);
    if (app.got_subcommand("mul")) return cmd_arith("mul", inputs, opt);
    if (neg->parsed()) return cmd_arith("neg", inputs, opt);
    if (compare->parsed()) return cmd_compare(inputs[0], inputs[1], opt);
    if (enumerate->parsed()) return cmd_enumerate(machines, opt);
    if (specker->parsed()) return cmd_specker(fixtures, opt);
    if (app.got_subcommand("diagonalize")) return cmd_diagonalize(opt);
    if (app.got_subcommand("theorem3")) return cmd_theorem3(opt);
  } catch (const prf::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const construct::StepCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const numbers::DeserializeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRejected;
  } catch (const prf::SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRejected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRejected;
  }
  return kExitUsage;
}
