#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecn/numeric.hpp"

// Minimal counter machine with an emit instruction. Unlike the total
// expression language, machines may diverge; that is the point.

namespace ecn::machine {

enum class OpCode : std::uint8_t {
  kHalt,   // HALT
  kInc,    // INC r        increment register r
  kDecJz,  // DECJZ r t    if r = 0 jump to t, else decrement r
  kEmitC,  // EMITC b      emit the constant bit b (0 or 1)
  kEmitR,  // EMITR rn rd  emit regs[rn] / max(regs[rd], 1)
};

struct Instr {
  OpCode op = OpCode::kHalt;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
};

struct ToyMachine {
  std::vector<Instr> program;

  bool operator==(const ToyMachine&) const = default;
};

/// Operands in range: jump targets <= program length, emitted bits in {0,1}.
/// The empty program is not well-formed.
bool well_formed(const ToyMachine& m);

/// True when every emit is an EMITC (so outputs are exactly bits).
bool emits_bits_only(const ToyMachine& m);

std::string print(const ToyMachine& m);  // numbered instruction lines

/// Parses the numbered-line form. Returns nullopt (never hangs) on rejection.
std::optional<ToyMachine> parse(std::string_view text);

/// Live execution state. One step executes one instruction; the machine has
/// halted once the pc sits on HALT or past the end.
class Run {
 public:
  explicit Run(const ToyMachine& m) : m_(&m) {}

  bool halted() const;
  /// Executes one instruction; returns the emitted value, if any.
  std::optional<Rational> step();
  std::uint64_t steps_taken() const { return steps_; }

  /// Steps until halt or the cap; returns the halting step count if it halted.
  std::optional<std::uint64_t> run_to_halt(std::uint64_t max_steps);

 private:
  const ToyMachine* m_;
  std::vector<Nat> regs_;
  std::uint64_t pc_ = 0;
  std::uint64_t steps_ = 0;
};

/// Deterministic bijection between indices and well-formed machines, ordered
/// by (weight = instruction count + operand magnitudes, then opcode/operand
/// lexicographic order). Index 0 is the single-instruction HALT machine.
class Enumerator {
 public:
  ToyMachine at(std::uint64_t index);

 private:
  void ensure_weight(std::uint32_t w);
  std::vector<ToyMachine> flat_;
  std::uint32_t max_weight_done_ = 0;
};

// Fixture helpers for demos and tests.
ToyMachine halting_after(std::uint64_t steps);  // halts after exactly `steps` steps
ToyMachine diverger();                          // never halts

}  // namespace ecn::machine
