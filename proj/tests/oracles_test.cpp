#include <random>

#include <gtest/gtest.h>

#include "glab/oracles.hpp"
#include "glab/program.hpp"
#include "glab/transforms.hpp"

using namespace glab;

namespace {

const Natural kLoop = encode(Program{Instruction::jump(0, 0, 0)});

StreamView lit(Literal l) { return StreamView(SeqDescriptor{std::move(l)}); }

OracleConfig small_cfg() { return OracleConfig{2000, 16, 300}; }

}  // namespace

TEST(Halts, Examples) {
  EXPECT_TRUE(halts(2, 0, OracleConfig{10, 1, 1}).halted_with(1));
  EXPECT_FALSE(halts(kLoop, 0, OracleConfig{10000, 1, 1}).is_halted());
}

TEST(Halts, AgreesWithEval) {
  std::mt19937_64 rng(1);
  const OracleConfig cfg{500, 8, 100};
  const Oracle oracle(cfg);
  for (int k = 0; k < 100; ++k) {
    const Natural i = rng() % 10000;
    const std::uint64_t n = rng() % 16;
    EXPECT_EQ(halts(i, n, cfg), eval(i, n, cfg.cap));
    EXPECT_EQ(oracle.halts(i, n), eval(i, n, cfg.cap));
  }
}

TEST(Compatible, Examples) {
  const auto cfg = small_cfg();
  EXPECT_TRUE(compatible(17, 17, cfg).compatible);
  EXPECT_EQ(compatible(1, 2, cfg), CompatibilityVerdict::no(0, 0, 1));
  for (Natural j : {0, 1, 2, 11, 101}) EXPECT_TRUE(compatible(kLoop, j, cfg).compatible);
}

TEST(Compatible, WitnessIsGenuine) {
  const auto cfg = small_cfg();
  const Oracle oracle(cfg);
  for (std::uint64_t i = 0; i < 40; ++i) {
    for (std::uint64_t j = 0; j < 40; ++j) {
      const auto v = compatible(i, j, cfg);
      EXPECT_EQ(oracle.compatible(i, j), v);
      if (!v.compatible) {
        EXPECT_TRUE(halts(i, v.witness_n, cfg).halted_with(v.v1));
        EXPECT_TRUE(halts(j, v.witness_n, cfg).halted_with(v.v2));
        EXPECT_NE(v.v1, v.v2);
      }
    }
  }
}

TEST(RandomSet, Examples) {
  const auto cfg = OracleConfig{10000, 32, 2000};
  for (std::uint64_t k = 0; k < 5; ++k) EXPECT_TRUE(in_R(k, 0, cfg));
  EXPECT_TRUE(in_R(0, 1, cfg));
  const Oracle oracle(cfg);
  bool found = false;
  for (std::uint64_t n = 101; n <= 2000 && !found; ++n) found = oracle.in_R(0, n);
  EXPECT_TRUE(found);
  EXPECT_EQ(search_R(3, 0, cfg, 10), std::optional<std::uint64_t>{0});
  const auto r = search_R(0, 1, cfg, 2000);
  ASSERT_TRUE(r.has_value());
  EXPECT_GE(*r, 1u);
  EXPECT_TRUE(in_R(0, *r, cfg));
}

TEST(RandomSet, MemoizedAgreesWithDirect) {
  const auto cfg = small_cfg();
  const Oracle oracle(cfg);
  for (std::uint64_t k = 0; k < 6; ++k) {
    for (std::uint64_t n = 0; n < 60; ++n) EXPECT_EQ(oracle.in_R(k, n), in_R(k, n, cfg)) << k << ' ' << n;
    EXPECT_EQ(oracle.search_R(k, 3, 100), search_R(k, 3, cfg, 100));
  }
}

TEST(MinIndex, Examples) {
  const auto cfg = small_cfg();
  EXPECT_EQ(min_index(lit(Literal::constant(0)), cfg), Natural{1});
  const StreamView identity(SeqDescriptor{Generated{0, 10}});
  EXPECT_EQ(min_index(identity, cfg), Natural{0});
  EXPECT_EQ(min_index(lit(Literal::constant(1)), cfg), Natural{11});
}

TEST(MinIndex, BoundedByCompiledLiteral) {
  const Oracle oracle(OracleConfig{100000, 16, 2000});
  std::mt19937_64 rng(9);
  for (int k = 0; k < 10; ++k) {
    const auto l = Literal::constant(rng() % 3, {rng() % 3});
    const auto s = lit(l);
    const auto c = compile_literal(l);
    EXPECT_TRUE(oracle.window_verifies(c, s));
    const auto m = oracle.min_index(s);
    if (m) EXPECT_LE(*m, c);
  }
}

TEST(MinIndex, MemoizedAgreesWithScan) {
  const auto cfg = small_cfg();
  const Oracle oracle(cfg);
  for (std::uint64_t i = 0; i <= cfg.index_bound; i += 7) {
    const StreamView s(SeqDescriptor{Generated{i, cfg.cap}});
    EXPECT_EQ(oracle.min_index(s), min_index(s, cfg)) << i;
  }
}

TEST(MinIndex, ResultWindowVerifies) {
  const auto cfg = small_cfg();
  const Oracle oracle(cfg);
  for (std::uint64_t i = 0; i <= cfg.index_bound; ++i) {
    const StreamView s(SeqDescriptor{Generated{i, cfg.cap}});
    if (const auto m = oracle.min_index(s)) {
      EXPECT_LE(*m, i);
      EXPECT_TRUE(window_verifies(*m, s, cfg));
    }
  }
}

TEST(Monotonicity, CapAndWindow) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 30; ++k) {
    const std::uint64_t i = rng() % 300;
    const StreamView s(SeqDescriptor{Generated{i, 100000}});
    const auto lo = min_index(s, OracleConfig{50, 8, 300});
    const auto hi = min_index(s, OracleConfig{5000, 8, 300});
    if (lo && hi) EXPECT_LE(*hi, *lo);
    // A longer window only adds constraints.
    const auto narrow = min_index(s, OracleConfig{5000, 4, 300});
    if (narrow && hi) EXPECT_LE(*narrow, *hi);
  }
}
