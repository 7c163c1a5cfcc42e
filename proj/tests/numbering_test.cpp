#include <random>

#include <gtest/gtest.h>

#include "glab/assembler.hpp"
#include "glab/loop.hpp"
#include "glab/machine.hpp"
#include "glab/program.hpp"
#include "glab/transforms.hpp"

using namespace glab;

namespace {

constexpr std::uint64_t kBudget = 200000;

Natural self_loop() { return encode(Program{Instruction::jump(0, 0, 0)}); }

}  // namespace

TEST(Pairing, Examples) {
  EXPECT_EQ(pair(0, 0), 0);
  EXPECT_EQ(pair(1, 2), 8);
  EXPECT_EQ(unpair(1), (std::pair<Natural, Natural>{1, 0}));
  EXPECT_EQ(pair_u64(3, 4), 32u);  // (7*8)/2 + 4
}

TEST(Pairing, RoundTrip) {
  for (std::uint64_t n = 0; n < 20000; ++n) {
    const auto [x, y] = unpair_u64(n);
    ASSERT_EQ(pair_u64(x, y), n);
    ASSERT_EQ(pair(Natural{x}, Natural{y}), n);
  }
}

TEST(Pairing, LargeArgumentsStayExact) {
  const Natural big = Natural{1} << 90;
  const auto [x, y] = unpair(pair(big, big + 7));
  EXPECT_EQ(x, big);
  EXPECT_EQ(y, big + 7);
  EXPECT_THROW(pair_u64(std::uint64_t{1} << 40, std::uint64_t{1} << 40), std::overflow_error);
}

TEST(Coding, SmallIndices) {
  EXPECT_TRUE(decode(0).empty());
  EXPECT_EQ(decode(1), (Program{Instruction::zero(0)}));
  EXPECT_EQ(decode(2), (Program{Instruction::succ(0)}));
  EXPECT_EQ(decode(3), (Program{Instruction::transfer(0, 0)}));
  EXPECT_EQ(decode(4), (Program{Instruction::zero(0), Instruction::zero(0)}));
}

TEST(Coding, InstructionTags) {
  for (std::uint64_t m = 0; m < 5000; ++m) {
    const auto ins = decode_instruction(m);
    ASSERT_EQ(static_cast<std::uint64_t>(ins.op), m % 5);
    ASSERT_EQ(encode_instruction(ins), m);
  }
}

TEST(Coding, Bijection) {
  for (std::uint64_t m = 0; m < 50000; ++m) ASSERT_EQ(encode(decode(m)), m) << m;
}

TEST(Coding, LongProgramsRoundTrip) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Program p;
    const int len = 1 + static_cast<int>(rng() % 60);
    for (int k = 0; k < len; ++k) p.push_back(decode_instruction(rng() % 100000));
    ASSERT_EQ(decode(encode(p)), p);
  }
}

TEST(Coding, TextRoundTrip) {
  const Program p{Instruction::succ(0), Instruction::jump(0, 1, 4), Instruction::eval(1, 2, 3, 0),
                  Instruction::transfer(2, 5), Instruction::zero(3)};
  EXPECT_EQ(to_text(Instruction::jump(0, 1, 4)), "J 0 1 4");
  EXPECT_EQ(to_text(Instruction::eval(1, 2, 3, 0)), "EVB 1 2 3 0");
  EXPECT_EQ(parse_program(to_text(p)), p);
  EXPECT_EQ(parse_program("# comment\nS 0\n\nZ 1\n"), (Program{Instruction::succ(0), Instruction::zero(1)}));
  EXPECT_THROW(parse_instruction("Q 1"), std::invalid_argument);
}

TEST(Eval, Examples) {
  const auto succ = eval(2, 5, 100);
  EXPECT_TRUE(succ.halted_with(6));
  EXPECT_LE(succ.steps(), 2u);
  EXPECT_EQ(eval(self_loop(), 7, 50), EvalOutcome::budget_exceeded(50));
  const auto id = eval(0, 9, 10);
  EXPECT_TRUE(id.halted_with(9));
  EXPECT_LE(id.steps(), 1u);
}

TEST(Eval, JumpBeyondEndHalts) {
  const Program p{Instruction::jump(0, 0, 17), Instruction::succ(0)};
  EXPECT_TRUE(eval(p, 3, 10).halted_with(3));
}

TEST(Eval, EvbReturnsShiftedValueOrZero) {
  // R1 = 2 (successor index), R2 = 4 (budget), EVB 1 0 2 0.
  const Program p{Instruction::succ(1), Instruction::succ(1), Instruction::succ(2), Instruction::succ(2),
                  Instruction::succ(2), Instruction::succ(2), Instruction::eval(1, 0, 2, 0)};
  EXPECT_TRUE(eval(p, 10, 100).halted_with(12));
  // budget register is 0: the successor cannot finish
  const Program q{Instruction::succ(1), Instruction::succ(1), Instruction::eval(1, 0, 2, 0)};
  EXPECT_TRUE(eval(q, 10, 100).halted_with(0));
}

TEST(Eval, SelfApplicationTerminates) {
  // EVB on its own index with a large inner budget must not recurse forever.
  const Program p{Instruction::eval(0, 0, 0, 0)};
  const auto idx = encode(p);
  ASSERT_TRUE(fits_u64(idx));
  const auto out = eval(p, to_u64(idx), 1000);
  EXPECT_LE(out.steps(), 1000u);
}

TEST(Smn, Examples) {
  EXPECT_TRUE(eval(s_const(0, 3), 4, kBudget).halted_with(32));
  for (std::uint64_t c = 0; c < 5; ++c) {
    for (std::uint64_t n = 0; n < 5; ++n) EXPECT_TRUE(eval(s_const(1, c), n, kBudget).halted_with(0));
  }
}

TEST(Smn, GridAgainstDirectEvaluation) {
  std::mt19937_64 rng(3);
  Interpreter vm;
  for (int trial = 0; trial < 50; ++trial) {
    const Natural i = rng() % 10001;
    for (std::uint64_t c = 0; c <= 8; ++c) {
      const auto si = s_const(i, c);
      for (std::uint64_t n = 0; n <= 8; ++n) {
        const auto direct = vm.run(i, pair_u64(c, n), 5000);
        const auto via = vm.run(si, n, kBudget);
        if (direct.is_halted()) {
          ASSERT_TRUE(via.halted_with(direct.value())) << i << ' ' << c << ' ' << n;
        } else {
          // the substituted program runs the original after a prelude, so it cannot be faster
          ASSERT_FALSE(vm.run(si, n, 5000).is_halted());
        }
      }
    }
  }
}

TEST(Projection, ComponentOfFirstProjectionIsConstant) {
  const auto pi1 = encode(first_projection_program());
  const auto five = project_component(pi1, 5);
  for (std::uint64_t k = 0; k <= 16; ++k) EXPECT_TRUE(eval(five, k, kBudget).halted_with(5));
}

TEST(Projection, ZeroMatchesSconst) {
  const auto pi2 = encode(second_projection_program());
  for (std::uint64_t k = 0; k <= 32; ++k) {
    EXPECT_EQ(eval(project_component(pi2, 0), k, kBudget), eval(s_const(pi2, 0), k, kBudget));
  }
}

TEST(Projection, InterleavedPairComponent) {
  // q(pair(j, k)) = k + j, so component j is k -> k + j.
  Assembler as(1);
  const auto m = as.scratch(), x = as.scratch(), y = as.scratch();
  as.copy(0, m);
  as.unpair_into(m, x, y);
  as.add(y, x);
  as.copy(y, 0);
  const auto q = encode(as.finish());
  EXPECT_TRUE(eval(project_component(q, 1), 3, kBudget).halted_with(4));
  EXPECT_TRUE(eval(project_component(q, 0), 3, kBudget).halted_with(3));
}

TEST(Affine, Precompose) {
  const auto f = precompose_affine(0, 3, 2);
  for (std::uint64_t k = 0; k < 10; ++k) EXPECT_TRUE(eval(f, k, kBudget).halted_with(3 * k + 2));
}

TEST(Literal, CompiledValues) {
  const auto zero = compile_literal(Literal::constant(0));
  for (std::uint64_t n = 0; n <= 64; ++n) EXPECT_TRUE(eval(zero, n, kBudget).halted_with(0));
  const auto pre = compile_literal(Literal::constant(7, {1, 2, 3}));
  EXPECT_TRUE(eval(pre, 2, kBudget).halted_with(3));
  EXPECT_TRUE(eval(pre, 5, kBudget).halted_with(7));
  const auto par = compile_literal(Literal::periodic({0, 1}));
  EXPECT_TRUE(eval(par, 9, kBudget).halted_with(1));
}

TEST(Literal, RandomDescriptorsMatch) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::uint64_t> prefix(rng() % 5), word(1 + rng() % 4);
    for (auto& v : prefix) v = rng() % 40;
    for (auto& v : word) v = rng() % 40;
    const Literal lit = Literal::periodic(word, prefix);
    const auto idx = compile_literal(lit);
    for (std::uint64_t n = 0; n <= 32; ++n) ASSERT_TRUE(eval(idx, n, kBudget).halted_with(lit.at(n)));
  }
}

TEST(Tuple, FiniteTupleLayout) {
  const std::vector<Program> comps{Program{}, Program{Instruction::succ(0)}, Program{Instruction::zero(0)}};
  const auto t = finite_tuple_program(comps);
  EXPECT_TRUE(eval(t, 0, kBudget).halted_with(3));
  for (std::uint64_t k = 0; k < 6; ++k) {
    EXPECT_TRUE(eval(t, 1 + 3 * k, kBudget).halted_with(k));
    EXPECT_TRUE(eval(t, 2 + 3 * k, kBudget).halted_with(k + 1));
    EXPECT_TRUE(eval(t, 3 + 3 * k, kBudget).halted_with(0));
  }
}

TEST(Dovetail, FirstValueAmongMembers) {
  const std::uint64_t loop = to_u64(self_loop());
  const std::vector<std::uint64_t> members{loop, 2};
  EXPECT_TRUE(eval(dovetail_program(members), 4, kBudget).halted_with(5));
  const std::vector<std::uint64_t> only_loop{loop};
  EXPECT_FALSE(eval(dovetail_program(only_loop), 4, 5000).is_halted());
}

TEST(Loop, CompiledAgreesWithHost) {
  const LoopProgram succ{{LoopProgram::inc(0)}};
  const LoopProgram zero{{LoopProgram::zero(0)}};
  const LoopProgram ident{{LoopProgram::repeat(0, {LoopProgram::inc(1)}), LoopProgram::copy(1, 0)}};
  for (std::uint64_t n = 0; n <= 64; ++n) {
    EXPECT_TRUE(eval(compile_loop(succ), n, kBudget).halted_with(n + 1));
    EXPECT_TRUE(eval(compile_loop(zero), n, kBudget).halted_with(0));
    EXPECT_EQ(run_loop(ident, n), n);
    EXPECT_TRUE(eval(compile_loop(ident), n, kBudget).halted_with(n));
  }
}

TEST(Loop, RegistryProgramsHaltWithinReportedBound) {
  const auto reg = LoopRegistry::small(3);
  ASSERT_GT(reg.entries().size(), 100u);
  Interpreter vm;
  for (const auto& e : reg.entries()) {
    for (std::uint64_t n = 0; n <= 6; ++n) {
      const auto bound = loop_step_bound(e.source, n);
      const auto out = vm.run(e.index, n, bound);
      ASSERT_TRUE(out.is_halted()) << to_text(e.source);
      ASSERT_EQ(out.steps(), bound);
      ASSERT_EQ(out.value(), run_loop(e.source, n));
    }
  }
  EXPECT_TRUE(reg.contains(compile_loop(LoopProgram{{LoopProgram::inc(0)}})));
}
