#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "glab/natural.hpp"
#include "glab/program.hpp"

namespace glab {

/// Result of a budgeted run: either the program halted with R0 = value after
/// `steps` steps, or it was still running when `budget` steps were spent.
class EvalOutcome {
 public:
  static EvalOutcome halted(std::uint64_t value, std::uint64_t steps) {
    return EvalOutcome{true, value, steps, 0};
  }
  static EvalOutcome budget_exceeded(std::uint64_t budget) {
    return EvalOutcome{false, 0, budget, budget};
  }

  bool is_halted() const { return halted_; }
  /// Only meaningful when halted.
  std::uint64_t value() const { return value_; }
  /// Steps spent; equals the budget when exceeded.
  std::uint64_t steps() const { return steps_; }
  std::uint64_t budget() const { return budget_; }

  bool halted_with(std::uint64_t v) const { return halted_ && value_ == v; }

  std::string describe() const;

  friend bool operator==(const EvalOutcome&, const EvalOutcome&) = default;

 private:
  EvalOutcome(bool h, std::uint64_t v, std::uint64_t s, std::uint64_t b)
      : halted_(h), value_(v), steps_(s), budget_(b) {}

  bool halted_;
  std::uint64_t value_;
  std::uint64_t steps_;
  std::uint64_t budget_;
};

/// A program lowered for execution: registers renumbered densely (slot 0 is
/// R0) and jump targets clamped to the program length (= halt).
struct LoweredProgram {
  struct Step {
    Opcode op;
    std::uint32_t a = 0, b = 0, c = 0, d = 0;
    std::size_t target = 0;
  };
  std::vector<Step> steps;
  std::size_t slots = 1;
};

LoweredProgram lower(const Program& program);

/// Budgeted universal machine.
///
/// Each executed instruction costs one step. EVB spends one step of its own
/// and is additionally charged the steps of the inner run, whose budget is
/// R[s]; if the caller cannot afford the inner run the caller exceeds its
/// own budget. This keeps total work bounded by the outer budget and makes
/// the outcome of an EVB equal to a top-level eval with the same arguments.
///
/// An Interpreter caches decoded programs for 64-bit indices. The cache is
/// not shared between instances, so an Interpreter is not thread-safe but
/// independent instances are.
class Interpreter {
 public:
  EvalOutcome run(const Natural& index, std::uint64_t input, std::uint64_t budget);
  EvalOutcome run(const Program& program, std::uint64_t input, std::uint64_t budget);
  EvalOutcome run(const LoweredProgram& program, std::uint64_t input, std::uint64_t budget);

 private:
  std::shared_ptr<const LoweredProgram> fetch(std::uint64_t index);

  std::unordered_map<std::uint64_t, std::shared_ptr<const LoweredProgram>> cache_;
};

/// eval(i, n, budget) with a fresh interpreter.
EvalOutcome eval(const Natural& index, std::uint64_t input, std::uint64_t budget);
EvalOutcome eval(const Program& program, std::uint64_t input, std::uint64_t budget);

}  // namespace glab
