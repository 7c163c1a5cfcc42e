#include "glab/machine.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace glab {

std::string EvalOutcome::describe() const {
  std::ostringstream out;
  if (halted_) {
    out << "Halted(" << value_ << ", " << steps_ << ")";
  } else {
    out << "BudgetExceeded(" << budget_ << ")";
  }
  return out.str();
}

LoweredProgram lower(const Program& program) {
  LoweredProgram out;
  std::map<Natural, std::uint32_t> slot_of;
  slot_of.emplace(Natural{0}, 0);
  auto slot = [&](const Natural& reg) {
    auto [it, inserted] = slot_of.emplace(reg, static_cast<std::uint32_t>(slot_of.size()));
    return it->second;
  };
  const Natural length{program.size()};
  out.steps.reserve(program.size());
  for (const auto& ins : program) {
    LoweredProgram::Step step{ins.op};
    switch (ins.op) {
      case Opcode::kZero:
      case Opcode::kSucc: step.a = slot(ins.a); break;
      case Opcode::kTransfer:
        step.a = slot(ins.a);
        step.b = slot(ins.b);
        break;
      case Opcode::kJump:
        step.a = slot(ins.a);
        step.b = slot(ins.b);
        step.target = ins.c >= length ? program.size() : ins.c.convert_to<std::size_t>();
        break;
      case Opcode::kEval:
        step.a = slot(ins.a);
        step.b = slot(ins.b);
        step.c = slot(ins.c);
        step.d = slot(ins.d);
        break;
    }
    out.steps.push_back(step);
  }
  out.slots = slot_of.size();
  return out;
}

std::shared_ptr<const LoweredProgram> Interpreter::fetch(std::uint64_t index) {
  auto it = cache_.find(index);
  if (it != cache_.end()) return it->second;
  auto lowered = std::make_shared<const LoweredProgram>(lower(decode(Natural{index})));
  cache_.emplace(index, lowered);
  return lowered;
}

EvalOutcome Interpreter::run(const Natural& index, std::uint64_t input, std::uint64_t budget) {
  if (fits_u64(index)) return run(*fetch(index.convert_to<std::uint64_t>()), input, budget);
  return run(decode(index), input, budget);
}

EvalOutcome Interpreter::run(const Program& program, std::uint64_t input, std::uint64_t budget) {
  return run(lower(program), input, budget);
}

namespace {

struct Frame {
  std::shared_ptr<const LoweredProgram> keep_alive;
  const LoweredProgram* program = nullptr;
  std::size_t pc = 0;
  std::vector<std::uint64_t> regs;
  std::uint64_t limit = 0;      // steps this frame may spend
  std::uint64_t requested = 0;  // the budget the caller asked for
  std::uint64_t steps = 0;
  std::uint32_t out_slot = 0;   // caller register receiving the result
};

}  // namespace

EvalOutcome Interpreter::run(const LoweredProgram& root, std::uint64_t input, std::uint64_t budget) {
  std::vector<Frame> frames;
  {
    Frame f;
    f.program = &root;
    f.regs.assign(root.slots, 0);
    f.regs[0] = input;
    f.limit = budget;
    f.requested = budget;
    frames.push_back(std::move(f));
  }

  for (;;) {
    Frame& f = frames.back();
    const auto& code = f.program->steps;

    if (f.pc >= code.size()) {
      const std::uint64_t value = f.regs[0];
      const std::uint64_t spent = f.steps;
      if (frames.size() == 1) return EvalOutcome::halted(value, spent);
      const std::uint32_t out = f.out_slot;
      frames.pop_back();
      Frame& caller = frames.back();
      caller.steps += spent;
      caller.regs[out] = value + 1;
      ++caller.pc;
      continue;
    }

    if (f.steps >= f.limit) {
      if (frames.size() == 1) return EvalOutcome::budget_exceeded(budget);
      const bool truncated = f.limit < f.requested;
      const std::uint64_t spent = f.limit;
      const std::uint32_t out = f.out_slot;
      frames.pop_back();
      Frame& caller = frames.back();
      caller.steps += spent;
      // A truncated inner run used up everything the caller had left, so the
      // caller is now out of budget as well and unwinds on the next pass.
      if (!truncated) {
        caller.regs[out] = 0;
        ++caller.pc;
      }
      continue;
    }

    const auto& s = code[f.pc];
    ++f.steps;
    switch (s.op) {
      case Opcode::kZero:
        f.regs[s.a] = 0;
        ++f.pc;
        break;
      case Opcode::kSucc:
        ++f.regs[s.a];
        ++f.pc;
        break;
      case Opcode::kTransfer:
        f.regs[s.b] = f.regs[s.a];
        ++f.pc;
        break;
      case Opcode::kJump:
        f.pc = f.regs[s.a] == f.regs[s.b] ? s.target : f.pc + 1;
        break;
      case Opcode::kEval: {
        const std::uint64_t index = f.regs[s.a];
        const std::uint64_t inner_input = f.regs[s.b];
        const std::uint64_t requested = f.regs[s.c];
        const std::uint64_t remaining = f.limit - f.steps;
        Frame child;
        child.keep_alive = fetch(index);
        child.program = child.keep_alive.get();
        child.regs.assign(child.program->slots, 0);
        child.regs[0] = inner_input;
        child.requested = requested;
        child.limit = std::min(requested, remaining);
        child.out_slot = s.d;
        frames.push_back(std::move(child));  // invalidates f
        break;
      }
    }
  }
}

EvalOutcome eval(const Natural& index, std::uint64_t input, std::uint64_t budget) {
  Interpreter interp;
  return interp.run(index, input, budget);
}

EvalOutcome eval(const Program& program, std::uint64_t input, std::uint64_t budget) {
  Interpreter interp;
  return interp.run(program, input, budget);
}

}  // namespace glab
