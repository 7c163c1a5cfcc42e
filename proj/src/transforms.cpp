#include "glab/transforms.hpp"

#include <algorithm>
#include <stdexcept>

#include "glab/assembler.hpp"

namespace glab {

namespace {

Assembler::Reg scratch_base(const Program& p) { return to_u64(first_free_register(p)); }

// Emits `prelude`, then the original program with its jumps rebased.
template <class Prelude>
Natural prepend(const Natural& index, Prelude&& prelude) {
  const Program body = decode(index);
  Assembler as(scratch_base(body));
  prelude(as);
  const auto exit = as.label();
  as.inline_program(body, exit);
  as.bind(exit);
  return encode(as.finish());
}

}  // namespace

Natural s_const(const Natural& index, std::uint64_t c) {
  return prepend(index, [c](Assembler& as) {
    const auto reg_c = as.scratch();
    as.load(reg_c, c);
    as.pair_into(0, reg_c, 0);
  });
}

Natural project_component(const Natural& index, std::uint64_t component) {
  return s_const(index, component);
}

Natural precompose_affine(const Natural& index, std::uint64_t factor, std::uint64_t offset) {
  return prepend(index, [&](Assembler& as) { as.affine_into(0, 0, factor, offset); });
}

Program literal_program(const Literal& lit) {
  lit.validate();
  Assembler as(1);
  const auto k = as.scratch();

  std::vector<Assembler::Label> prefix_out;
  as.zero(k);
  for (std::size_t idx = 0; idx < lit.prefix.size(); ++idx) {
    prefix_out.push_back(as.label());
    as.jump_if_equal(0, k, prefix_out.back());
    as.inc(k);
  }

  const auto word = lit.tail_values();
  if (word.size() == 1) {
    as.load(0, word.front());
    as.halt();
  } else {
    // Walk k from the end of the prefix up to n, tracking the phase in the word.
    const auto period = as.scratch();
    const auto phase = as.scratch();
    as.load(period, word.size());
    as.zero(phase);
    const auto walk = as.label();
    const auto wrap = as.label();
    const auto dispatch = as.label();
    as.bind(walk);
    as.jump_if_equal(0, k, dispatch);
    as.inc(k);
    as.inc(phase);
    as.jump_if_equal(phase, period, wrap);
    as.jump(walk);
    as.bind(wrap);
    as.zero(phase);
    as.jump(walk);

    as.bind(dispatch);
    const auto probe = as.scratch();
    std::vector<Assembler::Label> word_out;
    as.zero(probe);
    for (std::size_t j = 0; j < word.size(); ++j) {
      word_out.push_back(as.label());
      as.jump_if_equal(phase, probe, word_out.back());
      as.inc(probe);
    }
    for (std::size_t j = 0; j < word.size(); ++j) {
      as.bind(word_out[j]);
      as.load(0, word[j]);
      as.halt();
    }
  }

  for (std::size_t idx = 0; idx < lit.prefix.size(); ++idx) {
    as.bind(prefix_out[idx]);
    as.load(0, lit.prefix[idx]);
    as.halt();
  }
  return as.finish();
}

Natural compile_literal(const Literal& lit) { return encode(literal_program(lit)); }

Program dovetail_program(std::span<const std::uint64_t> members) {
  Assembler as(1);
  const auto input = as.scratch();
  const auto budget = as.scratch();
  const auto out = as.scratch();
  const auto zero_reg = as.scratch();
  std::vector<Assembler::Reg> member_regs;
  for (auto m : members) {
    member_regs.push_back(as.scratch());
    as.load(member_regs.back(), m);
  }
  as.copy(0, input);
  as.zero(budget);
  as.zero(zero_reg);

  const auto round = as.label();
  const auto found = as.label();
  as.bind(round);
  as.inc(budget);
  for (auto reg : member_regs) {
    const auto next = as.label();
    as.evb(reg, input, budget, out);
    as.jump_if_equal(out, zero_reg, next);
    as.jump(found);
    as.bind(next);
  }
  as.jump(round);

  as.bind(found);
  as.decrement_into(0, out);
  as.halt();
  return as.finish();
}

Natural dovetail_index(std::span<const std::uint64_t> members) {
  return encode(dovetail_program(members));
}

Program finite_tuple_program(std::span<const Program> components) {
  if (components.empty()) throw std::invalid_argument("finite tuple needs a component");
  Assembler::Reg base = 1;
  for (const auto& c : components) base = std::max(base, scratch_base(c));
  Assembler as(base);
  const std::uint64_t n = components.size();

  const auto zero_reg = as.scratch();
  const auto head = as.label();
  as.zero(zero_reg);
  as.jump_if_equal(0, zero_reg, head);

  // m - 1 = q * n + r
  const auto m1 = as.scratch();
  as.decrement_into(m1, 0);
  const auto count = as.scratch();
  const auto q = as.scratch();
  const auto r = as.scratch();
  const auto width = as.scratch();
  as.load(width, n);
  as.zero(count);
  as.zero(q);
  as.zero(r);
  const auto loop = as.label();
  const auto carry = as.label();
  const auto divided = as.label();
  as.bind(loop);
  as.jump_if_equal(count, m1, divided);
  as.inc(count);
  as.inc(r);
  as.jump_if_equal(r, width, carry);
  as.jump(loop);
  as.bind(carry);
  as.zero(r);
  as.inc(q);
  as.jump(loop);

  as.bind(divided);
  const auto probe = as.scratch();
  std::vector<Assembler::Label> blocks;
  as.zero(probe);
  for (std::uint64_t j = 0; j < n; ++j) {
    blocks.push_back(as.label());
    as.jump_if_equal(r, probe, blocks.back());
    as.inc(probe);
  }
  const auto end = as.label();
  for (std::uint64_t j = 0; j < n; ++j) {
    as.bind(blocks[j]);
    as.copy(q, 0);
    as.inline_program(components[j], end);
    as.jump(end);
  }

  as.bind(head);
  as.load(0, n);
  as.bind(end);
  return as.finish();
}

Program first_projection_program() {
  Assembler as(1);
  const auto m = as.scratch();
  const auto x = as.scratch();
  const auto y = as.scratch();
  as.copy(0, m);
  as.unpair_into(m, x, y);
  as.copy(x, 0);
  return as.finish();
}

Program second_projection_program() {
  Assembler as(1);
  const auto m = as.scratch();
  const auto x = as.scratch();
  const auto y = as.scratch();
  as.copy(0, m);
  as.unpair_into(m, x, y);
  as.copy(y, 0);
  return as.finish();
}

}  // namespace glab
