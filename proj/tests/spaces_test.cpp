#include <gtest/gtest.h>

#include "glab/program.hpp"
#include "glab/spaces.hpp"
#include "glab/transforms.hpp"

using namespace glab;

namespace {

StreamView lit(Literal l) { return StreamView(SeqDescriptor{std::move(l)}); }

}  // namespace

TEST(StreamGet, Examples) {
  EXPECT_EQ(stream_get(lit(Literal::constant(1, {4})), 0), 4u);
  EXPECT_EQ(stream_get(lit(Literal::periodic({2, 3})), 5), 3u);
  const StreamView loop(SeqDescriptor{Generated{encode(Program{Instruction::jump(0, 0, 0)}), 10}});
  EXPECT_FALSE(stream_get(loop, 0).has_value());
}

TEST(StreamGet, GeneratedUsesItsBudget) {
  const StreamView succ(SeqDescriptor{Generated{2, 1}});
  EXPECT_EQ(succ.get(7), 8u);
  const StreamView starved(SeqDescriptor{Generated{2, 0}});
  EXPECT_FALSE(starved.get(7).has_value());
}

TEST(StreamGet, Deterministic) {
  const StreamView s(SeqDescriptor{Generated{compile_literal(Literal::periodic({5, 1, 4}, {9})), 100000}});
  for (std::uint64_t n = 0; n < 20; ++n) EXPECT_EQ(s.get(n), s.get(n));
}

TEST(Pairing, Examples) {
  const auto p = pair_streams(lit(Literal::constant(0)), lit(Literal::constant(1)));
  EXPECT_EQ(p.get(3), 1u);
  EXPECT_EQ(p.get(4), 0u);
  const auto t = tuple_streams([](std::uint64_t n) { return lit(Literal::constant(n)); });
  EXPECT_EQ(t.get(pair_u64(2, 5)), 2u);
}

TEST(Pairing, RoundTrips) {
  const auto p = lit(Literal::periodic({3, 1, 4, 1, 5}, {9, 2}));
  const auto q = lit(Literal::constant(6, {0, 0, 7}));
  const auto pq = pair_streams(p, q);
  ASSERT_NE(pq.literal(), nullptr);
  const auto back0 = decimate(pq, 2, 0);
  const auto back1 = decimate(pq, 2, 1);
  for (std::uint64_t n = 0; n <= 16; ++n) {
    EXPECT_EQ(back0.get(n), p.get(n));
    EXPECT_EQ(back1.get(n), q.get(n));
  }
  const auto t = tuple_streams([&](std::uint64_t n) { return n == 0 ? p : q; });
  for (std::uint64_t k = 0; k <= 16; ++k) {
    EXPECT_EQ(project_stream(t, 0).get(k), p.get(k));
    EXPECT_EQ(project_stream(t, 1).get(k), q.get(k));
  }
}

TEST(Pairing, GeneratedComponentsPropagatePartiality) {
  const StreamView loop(SeqDescriptor{Generated{encode(Program{Instruction::jump(0, 0, 0)}), 10}});
  const auto pq = pair_streams(lit(Literal::constant(0)), loop);
  EXPECT_EQ(pq.get(0), 0u);
  EXPECT_FALSE(pq.get(1).has_value());
}

TEST(Literal, InterleaveIsExact) {
  const auto a = Literal::periodic({1, 2, 3}, {7});
  const auto b = Literal::periodic({4, 5});
  const auto ab = interleave(a, b);
  for (std::uint64_t m = 0; m < 60; ++m) EXPECT_EQ(ab.at(m), m % 2 ? b.at(m / 2) : a.at(m / 2));
  EXPECT_TRUE(interleave(Literal::constant(0), Literal::constant(0)).is_zero());
}

TEST(Descriptor, TextForms) {
  const auto a = parse_descriptor("lit prefix=1,2,3 tail=const:7");
  EXPECT_EQ(std::get<Literal>(a), Literal::constant(7, {1, 2, 3}));
  const auto b = parse_descriptor("lit tail=per:0,1");
  EXPECT_EQ(std::get<Literal>(b), Literal::periodic({0, 1}));
  const auto c = parse_descriptor("gen index=412 budget=1000");
  EXPECT_EQ(std::get<Generated>(c), (Generated{412, 1000}));
  for (const auto& d : {a, b, c}) EXPECT_EQ(parse_descriptor(to_text(d)), d);
  EXPECT_THROW(parse_descriptor("lit tail=per:"), std::invalid_argument);
  EXPECT_THROW(parse_descriptor("lit prefix=1"), std::invalid_argument);
  EXPECT_THROW(parse_descriptor("gen index=4"), std::invalid_argument);
  EXPECT_THROW(parse_descriptor("seq tail=const:1"), std::invalid_argument);
}

TEST(ConvergingName, Stages) {
  const SeqDescriptor a = Literal::constant(1), b = Literal::constant(2);
  const ConvergingName single{{{0, a}}};
  EXPECT_EQ(name_at_stage(single, 0), a);
  EXPECT_EQ(name_at_stage(single, 1000), a);
  const ConvergingName two{{{0, a}, {5, b}}};
  EXPECT_EQ(name_at_stage(two, 4), a);
  EXPECT_EQ(name_at_stage(two, 5), b);
  EXPECT_EQ(two.limit(), b);
  const ConvergingName bad{{{5, a}, {5, b}}};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(ConvergingName, TextRoundTrip) {
  const auto c = parse_converging_name("stage@0 lit tail=const:1 stage@5 lit prefix=3 tail=per:2,4");
  ASSERT_EQ(c.stages.size(), 2u);
  EXPECT_EQ(c.stages[1].first, 5u);
  EXPECT_EQ(to_text(parse_converging_name(to_text(c))), to_text(c));
}
