#include "ecn/machine.hpp"

#include <algorithm>
#include <sstream>

namespace ecn::machine {

bool well_formed(const ToyMachine& m) {
  if (m.program.empty()) return false;
  for (const auto& ins : m.program) {
    switch (ins.op) {
      case OpCode::kHalt:
        if (ins.a != 0 || ins.b != 0) return false;
        break;
      case OpCode::kInc:
        if (ins.b != 0) return false;
        break;
      case OpCode::kDecJz:
        if (ins.b > m.program.size()) return false;
        break;
      case OpCode::kEmitC:
        if (ins.a > 1 || ins.b != 0) return false;
        break;
      case OpCode::kEmitR:
        break;
    }
  }
  return true;
}

bool emits_bits_only(const ToyMachine& m) {
  return std::none_of(m.program.begin(), m.program.end(),
                      [](const Instr& i) { return i.op == OpCode::kEmitR; });
}

std::string print(const ToyMachine& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.program.size(); ++i) {
    const auto& ins = m.program[i];
    out << i << ": ";
    switch (ins.op) {
      case OpCode::kHalt: out << "HALT"; break;
      case OpCode::kInc: out << "INC " << ins.a; break;
      case OpCode::kDecJz: out << "DECJZ " << ins.a << " " << ins.b; break;
      case OpCode::kEmitC: out << "EMITC " << ins.a; break;
      case OpCode::kEmitR: out << "EMITR " << ins.a << " " << ins.b; break;
    }
    out << "\n";
  }
  return out.str();
}

namespace {

bool parse_u32(std::istringstream& in, std::uint32_t& out) {
  long long v;
  if (!(in >> v) || v < 0 || v > 0xffffffffll) return false;
  out = static_cast<std::uint32_t>(v);
  return true;
}

}  // namespace

std::optional<ToyMachine> parse(std::string_view text) {
  ToyMachine m;
  std::istringstream lines{std::string(text)};
  std::string line;
  std::size_t expect = 0;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream in(line);
    std::string label, op;
    if (!(in >> label >> op)) return std::nullopt;
    if (label != std::to_string(expect) + ":") return std::nullopt;
    ++expect;
    Instr ins;
    if (op == "HALT") {
      ins.op = OpCode::kHalt;
    } else if (op == "INC") {
      ins.op = OpCode::kInc;
      if (!parse_u32(in, ins.a)) return std::nullopt;
    } else if (op == "DECJZ") {
      ins.op = OpCode::kDecJz;
      if (!parse_u32(in, ins.a) || !parse_u32(in, ins.b)) return std::nullopt;
    } else if (op == "EMITC") {
      ins.op = OpCode::kEmitC;
      if (!parse_u32(in, ins.a)) return std::nullopt;
    } else if (op == "EMITR") {
      ins.op = OpCode::kEmitR;
      if (!parse_u32(in, ins.a) || !parse_u32(in, ins.b)) return std::nullopt;
    } else {
      return std::nullopt;
    }
    std::string rest;
    if (in >> rest) return std::nullopt;
    m.program.push_back(ins);
  }
  if (!well_formed(m)) return std::nullopt;
  return m;
}

bool Run::halted() const {
  return pc_ >= m_->program.size() || m_->program[pc_].op == OpCode::kHalt;
}

std::optional<Rational> Run::step() {
  if (halted()) return std::nullopt;
  const Instr& ins = m_->program[pc_];
  ++steps_;
  auto reg = [&](std::uint32_t r) -> Nat& {
    if (regs_.size() <= r) regs_.resize(r + 1);
    return regs_[r];
  };
  switch (ins.op) {
    case OpCode::kHalt: break;
    case OpCode::kInc:
      reg(ins.a) = reg(ins.a) + Nat(1);
      ++pc_;
      break;
    case OpCode::kDecJz:
      if (reg(ins.a).is_zero()) {
        pc_ = ins.b;
      } else {
        reg(ins.a) = trunc_sub(reg(ins.a), Nat(1));
        ++pc_;
      }
      break;
    case OpCode::kEmitC:
      ++pc_;
      return Rational(static_cast<long>(ins.a));
    case OpCode::kEmitR: {
      Nat num = reg(ins.a);
      Nat den = reg(ins.b);
      ++pc_;
      return Rational(Int(num), den.is_zero() ? Nat(1) : den);
    }
  }
  return std::nullopt;
}

std::optional<std::uint64_t> Run::run_to_halt(std::uint64_t max_steps) {
  while (steps_ < max_steps) {
    if (halted()) return steps_;
    step();
  }
  return halted() ? std::optional<std::uint64_t>(steps_) : std::nullopt;
}

namespace {

int instr_cmp(const Instr& a, const Instr& b) {
  if (a.op != b.op) return a.op < b.op ? -1 : 1;
  if (a.a != b.a) return a.a < b.a ? -1 : 1;
  if (a.b != b.b) return a.b < b.b ? -1 : 1;
  return 0;
}

bool machine_less(const ToyMachine& a, const ToyMachine& b) {
  if (a.program.size() != b.program.size()) return a.program.size() < b.program.size();
  for (std::size_t i = 0; i < a.program.size(); ++i) {
    int c = instr_cmp(a.program[i], b.program[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

// All instructions of exactly the given weight, in lexicographic order.
std::vector<Instr> instrs_of_weight(std::uint32_t w, std::size_t program_len) {
  std::vector<Instr> out;
  if (w == 0) return out;
  std::uint32_t budget = w - 1;
  if (budget == 0) out.push_back({OpCode::kHalt, 0, 0});
  out.push_back({OpCode::kInc, budget, 0});
  for (std::uint32_t r = 0; r <= budget; ++r) {
    std::uint32_t t = budget - r;
    if (t <= program_len) out.push_back({OpCode::kDecJz, r, t});
  }
  if (budget <= 1) out.push_back({OpCode::kEmitC, budget, 0});
  for (std::uint32_t rn = 0; rn <= budget; ++rn)
    out.push_back({OpCode::kEmitR, rn, budget - rn});
  return out;
}

void gen_machines(std::uint32_t weight_left, std::size_t slots_left, std::size_t program_len,
                  ToyMachine& cur, std::vector<ToyMachine>& out) {
  if (slots_left == 0) {
    if (weight_left == 0) out.push_back(cur);
    return;
  }
  std::uint32_t max_w = weight_left - static_cast<std::uint32_t>(slots_left - 1);
  for (std::uint32_t w = 1; w <= max_w; ++w) {
    for (const Instr& ins : instrs_of_weight(w, program_len)) {
      cur.program.push_back(ins);
      gen_machines(weight_left - w, slots_left - 1, program_len, cur, out);
      cur.program.pop_back();
    }
  }
}

}  // namespace

void Enumerator::ensure_weight(std::uint32_t w) {
  while (max_weight_done_ < w) {
    std::uint32_t weight = ++max_weight_done_;
    std::vector<ToyMachine> batch;
    for (std::size_t len = 1; len <= weight; ++len) {
      ToyMachine cur;
      gen_machines(weight, len, len, cur, batch);
    }
    std::erase_if(batch, [](const ToyMachine& m) { return !well_formed(m); });
    std::sort(batch.begin(), batch.end(), machine_less);
    flat_.insert(flat_.end(), batch.begin(), batch.end());
  }
}

ToyMachine Enumerator::at(std::uint64_t index) {
  std::uint32_t w = max_weight_done_;
  while (flat_.size() <= index) ensure_weight(++w);
  return flat_[index];
}

ToyMachine halting_after(std::uint64_t steps) {
  ToyMachine m;
  for (std::uint64_t i = 0; i < steps; ++i) m.program.push_back({OpCode::kInc, 0, 0});
  m.program.push_back({OpCode::kHalt, 0, 0});
  return m;
}

ToyMachine diverger() {
  ToyMachine m;
  m.program.push_back({OpCode::kDecJz, 0, 0});
  return m;
}

}  // namespace ecn::machine
