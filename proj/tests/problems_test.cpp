#include <gtest/gtest.h>

#include "glab/problems.hpp"
#include "glab/program.hpp"
#include "glab/transforms.hpp"

using namespace glab;

namespace {

Instance seq(Literal l) { return Instance{"x", StreamView(SeqDescriptor{std::move(l)})}; }
Instance bounded(Literal l, std::uint64_t m) { return Instance{"x", SeqBound{StreamView(SeqDescriptor{std::move(l)}), m}}; }

std::vector<std::uint64_t> values(const std::vector<Answer>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& a : v) out.push_back(to_u64(a));
  return out;
}

std::shared_ptr<const Oracle> oracle() {
  static auto o = std::make_shared<const Oracle>(OracleConfig{10000, 32, 2000});
  return o;
}

// solve_ref verifies, every listed answer verifies, and nothing verifying up to `limit` is missing.
void check_contract(const ProblemSpec& f, const Instance& x, std::uint64_t limit) {
  ASSERT_TRUE(f.domain_check(x)) << f.name;
  EXPECT_TRUE(f.verify(x, f.solve_ref(x))) << f.name;
  const auto listed = f.enumerate_answers(x);
  for (const auto& a : listed) EXPECT_TRUE(f.verify(x, a)) << f.name;
  for (std::uint64_t a = 0; a <= limit; ++a) {
    if (f.verify(x, a)) EXPECT_NE(std::find(listed.begin(), listed.end(), Answer{a}), listed.end()) << f.name << a;
  }
}

}  // namespace

TEST(Lpo, Examples) {
  const auto f = make_lpo();
  EXPECT_EQ(f.solve_ref(seq(Literal::constant(0))), 1);
  EXPECT_EQ(f.solve_ref(seq(Literal::constant(0, {0, 0, 1}))), 0);
  EXPECT_FALSE(f.verify(seq(Literal::constant(0, {0, 0, 1})), 1));
}

TEST(Llpo, Examples) {
  const auto f = make_llpo();
  const auto x = seq(interleave(Literal::constant(0), Literal::constant(3, {0})));
  EXPECT_EQ(values(f.enumerate_answers(x)), (std::vector<std::uint64_t>{1}));
  EXPECT_FALSE(f.domain_check(seq(interleave(Literal::constant(0), Literal::constant(0)))));
  check_contract(f, seq(interleave(Literal::constant(1), Literal::periodic({0, 2}))), 3);
}

TEST(LimN, Examples) {
  const auto f = make_lim_n();
  EXPECT_EQ(f.solve_ref(seq(Literal::constant(3, {5, 5, 3}))), 3);
  EXPECT_FALSE(f.domain_check(seq(Literal::periodic({1, 2}))));
}

TEST(Min, Examples) { EXPECT_EQ(make_min().solve_ref(seq(Literal::constant(9, {4, 2}))), 2); }

TEST(Boundedness, Examples) {
  const auto f = make_b(20);
  const auto x = seq(Literal::constant(2, {1, 3}));
  EXPECT_TRUE(f.verify(x, 3));
  EXPECT_FALSE(f.verify(x, 2));
  EXPECT_EQ(values(f.enumerate_answers(x)).front(), 3u);
  EXPECT_EQ(f.enumerate_answers(x).size(), 18u);
  check_contract(f, x, 20);
}

TEST(Inf, LeastNonEnumerated) {
  const auto f = make_inf();
  EXPECT_EQ(f.solve_ref(seq(Literal::constant(4, {3, 1}))), 0);
  EXPECT_EQ(f.solve_ref(seq(Literal::periodic({0, 2}, {1}))), 3);
}

TEST(ClosedChoice, Examples) {
  const auto f = make_cn(10);
  const auto x = seq(Literal::constant(1, {0, 1}));
  const auto a = values(f.enumerate_answers(x));
  EXPECT_EQ(a.front(), 2u);
  EXPECT_EQ(a.size(), 9u);
  check_contract(f, x, 10);
}

TEST(CompactChoice, Examples) {
  const auto f = make_kn();
  EXPECT_EQ(values(f.enumerate_answers(bounded(Literal::constant(2, {0, 2}), 2))), (std::vector<std::uint64_t>{1}));
  EXPECT_FALSE(f.domain_check(bounded(Literal::periodic({0, 1, 2}), 2)));
  EXPECT_FALSE(f.domain_check(bounded(Literal::constant(5), 2)));
  check_contract(f, bounded(Literal::constant(2, {0, 2}), 2), 5);
}

TEST(ClusterPoints, Examples) {
  const auto x = seq(Literal::periodic({1, 2}, {9}));
  EXPECT_EQ(values(make_cl_n().enumerate_answers(x)), (std::vector<std::uint64_t>{1, 2}));
  EXPECT_EQ(make_liminf_n().solve_ref(x), 1);
  EXPECT_TRUE(make_bwt_n().domain_check(x));
  check_contract(make_cl_n(), x, 12);
}

TEST(ClusterPoints, JumpInputUsesLimitName) {
  const ConvergingName c{{{0, Literal::constant(7)}, {3, Literal::periodic({4, 6})}}};
  EXPECT_EQ(make_liminf_n().solve_ref(Instance{"c", c}), 4);
}

TEST(LimMinhat, ReadsTheHorizon) {
  const auto f = make_lim_minhat();
  FiniteFamily fam{{StreamView(SeqDescriptor{Literal::constant(1)}), StreamView(SeqDescriptor{Literal::constant(3)}),
                    StreamView(SeqDescriptor{Literal::constant(3)})}};
  const Instance x{"f", fam};
  EXPECT_TRUE(f.domain_check(x));
  EXPECT_EQ(f.solve_ref(x), 3);
}

TEST(Goedel, Examples) {
  const auto g = make_g(oracle());
  const auto zero = seq(Literal::constant(0));
  EXPECT_TRUE(g.verify(zero, 1));
  EXPECT_FALSE(g.verify(zero, 0));
  const Instance identity{"id", StreamView(SeqDescriptor{Generated{0, 10}})};
  EXPECT_EQ(make_kol(oracle()).solve_ref(identity), 0);
  const auto kg = make_kol_geq(oracle());
  EXPECT_TRUE(kg.verify(zero, 1));
  EXPECT_FALSE(kg.verify(zero, 0));
}

TEST(Goedel, CarriedIndexIsAnAnswer) {
  const auto g = make_g(oracle());
  const auto c = compile_literal(Literal::constant(9, {0, 4}));
  const Instance x{"c", StreamView(SeqDescriptor{Generated{c, 100000}})};
  ASSERT_TRUE(g.domain_check(x));
  const auto answers = g.enumerate_answers(x);
  EXPECT_EQ(answers.back(), c);
}

TEST(Goedel, Contracts) {
  for (std::uint64_t i : {0, 1, 2, 11, 20, 80, 101}) {
    const Instance x{"i", StreamView(SeqDescriptor{Generated{i, 10000}})};
    check_contract(make_g(oracle()), x, 2000);
    check_contract(make_kol(oracle()), x, 2000);
    check_contract(make_kol_geq(oracle()), x, 2000);
  }
}

TEST(Goedel, KolIsLeastGAnswerAndBoundsCompose) {
  const auto g = make_g(oracle());
  const auto kol = make_kol(oracle());
  const auto kg = make_kol_geq(oracle());
  const auto gg = make_g_geq(oracle());
  for (std::uint64_t i = 0; i <= 300; i += 3) {
    const Instance x{"i", StreamView(SeqDescriptor{Generated{i, 10000}})};
    if (!kol.domain_check(x)) continue;
    const auto answers = g.enumerate_answers(x);
    EXPECT_EQ(kol.solve_ref(x), *std::min_element(answers.begin(), answers.end()));
    const auto b = kg.solve_ref(x);
    const Instance y{"y", SeqBound{sequence_of(x), to_u64(b)}};
    ASSERT_TRUE(gg.domain_check(y));
    EXPECT_TRUE(g.verify(x, gg.solve_ref(y)));
  }
}

TEST(Gstar, ListCodedAnswers) {
  const auto f = make_gstar(oracle());
  FiniteFamily fam{{StreamView(SeqDescriptor{Generated{0, 100}}), StreamView(SeqDescriptor{Literal::constant(0)})}};
  const Instance x{"f", fam};
  ASSERT_TRUE(f.domain_check(x));
  EXPECT_EQ(decode_list(f.solve_ref(x)), (std::vector<Natural>{0, 1}));
  EXPECT_FALSE(f.verify(x, encode_list({1, 0})));
}
