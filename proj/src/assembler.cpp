#include "glab/assembler.hpp"

#include <bit>
#include <stdexcept>

namespace glab {

namespace {
constexpr std::size_t kUnbound = static_cast<std::size_t>(-1);
}

Assembler::Label Assembler::label() {
  bound_.push_back(kUnbound);
  return bound_.size() - 1;
}

void Assembler::bind(Label l) { bound_.at(l) = code_.size(); }

void Assembler::zero(Reg r) { emit(Instruction::zero(r)); }
void Assembler::inc(Reg r) { emit(Instruction::succ(r)); }
void Assembler::copy(Reg from, Reg to) { emit(Instruction::transfer(from, to)); }
void Assembler::evb(Reg index, Reg input, Reg budget, Reg out) {
  emit(Instruction::eval(index, input, budget, out));
}

void Assembler::emit_jump(Reg a, Reg b, Label target) {
  patches_.push_back({code_.size(), target});
  emit(Instruction::jump(a, b, 0));
}

void Assembler::jump_if_equal(Reg a, Reg b, Label target) { emit_jump(a, b, target); }
void Assembler::jump(Label target) { emit_jump(0, 0, target); }

void Assembler::halt() {
  if (end_label_ == static_cast<Label>(-1)) end_label_ = label();
  jump(end_label_);
}

void Assembler::add(Reg dst, Reg src) {
  if (dst == src) throw std::logic_error("Assembler::add: dst aliases src");
  const Reg counter = scratch();
  const Label loop = label();
  const Label done = label();
  zero(counter);
  bind(loop);
  jump_if_equal(counter, src, done);
  inc(dst);
  inc(counter);
  jump(loop);
  bind(done);
}

void Assembler::load(Reg dst, std::uint64_t value) {
  zero(dst);
  if (value <= 8) {
    for (std::uint64_t k = 0; k < value; ++k) inc(dst);
    return;
  }
  const Reg tmp = scratch();
  const int top = 63 - std::countl_zero(value);
  inc(dst);
  for (int bit = top - 1; bit >= 0; --bit) {
    copy(dst, tmp);
    add(dst, tmp);
    if ((value >> bit) & 1U) inc(dst);
  }
}

void Assembler::pair_into(Reg dst, Reg x, Reg y) {
  const Reg y_saved = scratch();
  const Reg sum = scratch();
  const Reg tri = scratch();
  const Reg k = scratch();
  copy(y, y_saved);
  copy(x, sum);
  add(sum, y_saved);
  zero(tri);
  zero(k);
  const Label loop = label();
  const Label done = label();
  bind(loop);
  jump_if_equal(k, sum, done);
  inc(k);
  add(tri, k);
  jump(loop);
  bind(done);
  add(tri, y_saved);
  copy(tri, dst);
}

void Assembler::unpair_into(Reg m, Reg first, Reg second) {
  // Walk the Cantor order: diagonal s, position y on it; x = s - y.
  const Reg count = scratch();
  const Reg diag = scratch();
  const Reg pos = scratch();
  zero(count);
  zero(diag);
  zero(pos);
  const Label walk = label();
  const Label next_diag = label();
  const Label found = label();
  bind(walk);
  jump_if_equal(count, m, found);
  inc(count);
  jump_if_equal(pos, diag, next_diag);
  inc(pos);
  jump(walk);
  bind(next_diag);
  inc(diag);
  zero(pos);
  jump(walk);
  bind(found);
  // first = diag - pos by counting up from pos.
  const Reg t = scratch();
  const Reg x = scratch();
  copy(pos, t);
  zero(x);
  const Label sub = label();
  const Label sub_done = label();
  bind(sub);
  jump_if_equal(t, diag, sub_done);
  inc(t);
  inc(x);
  jump(sub);
  bind(sub_done);
  copy(pos, second);
  copy(x, first);
}

void Assembler::affine_into(Reg dst, Reg x, std::uint64_t factor, std::uint64_t offset) {
  const Reg f = scratch();
  const Reg acc = scratch();
  const Reg k = scratch();
  load(f, factor);
  zero(acc);
  zero(k);
  const Label loop = label();
  const Label done = label();
  bind(loop);
  jump_if_equal(k, x, done);
  inc(k);
  add(acc, f);
  jump(loop);
  bind(done);
  if (offset > 0) {
    const Reg off = scratch();
    load(off, offset);
    add(acc, off);
  }
  copy(acc, dst);
}

void Assembler::decrement_into(Reg dst, Reg src) {
  const Reg c = scratch();
  const Reg v = scratch();
  zero(v);
  zero(c);
  inc(c);
  const Label loop = label();
  const Label done = label();
  bind(loop);
  jump_if_equal(c, src, done);
  inc(v);
  inc(c);
  jump(loop);
  bind(done);
  copy(v, dst);
}

void Assembler::inline_program(const Program& program, Label exit) {
  const std::size_t base = code_.size();
  const Natural length{program.size()};
  for (const auto& ins : program) {
    if (ins.op != Opcode::kJump) {
      emit(ins);
      continue;
    }
    if (ins.c < length) {
      emit(Instruction::jump(ins.a, ins.b, ins.c + base));
    } else {
      patches_.push_back({code_.size(), exit});
      emit(Instruction::jump(ins.a, ins.b, 0));
    }
  }
}

Program Assembler::finish() {
  if (end_label_ != static_cast<Label>(-1)) bind(end_label_);
  for (const auto& p : patches_) {
    const std::size_t addr = bound_.at(p.label);
    if (addr == kUnbound) throw std::logic_error("Assembler: unbound label");
    code_[p.at].c = addr;
  }
  patches_.clear();
  return std::move(code_);
}

}  // namespace glab
