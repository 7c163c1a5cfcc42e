#include <sstream>

#include <gtest/gtest.h>

#include "glab/corpus.hpp"

using namespace glab;

namespace {

std::shared_ptr<const Oracle> oracle() {
  static auto o = std::make_shared<const Oracle>(OracleConfig{10000, 8, 300});
  return o;
}

}  // namespace

TEST(CorpusFormat, RoundTrips) {
  const std::string lines[] = {
      "problem=lim_n id=a lit prefix=5,5,3 tail=const:3",
      "problem=kol id=b gen index=412 budget=1000",
      "problem=k_n id=c lit prefix=0,2 tail=const:2 m=2",
      "problem=ghat id=d gen index=7 budget=10 width=3",
      "problem=gstar id=e lit tail=const:1 | gen index=2 budget=5",
      "problem=liminf_n id=f stage@0 lit tail=const:7 stage@3 lit tail=per:4,6",
  };
  for (const auto& l : lines) EXPECT_EQ(format_entry(parse_entry(l)), l);
}

TEST(CorpusFormat, ErrorsNameTheLine) {
  std::istringstream in("# header\nproblem=lpo lit tail=const:0\n\nproblem=lpo lit prefix=1\n");
  try {
    parse_corpus(in);
    FAIL() << "expected a parse error";
  } catch (const CorpusError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse_entry("problem=nope lit tail=const:0"), std::invalid_argument);
  EXPECT_THROW(parse_entry("problem=k_n lit tail=const:0"), std::invalid_argument);
  EXPECT_THROW(parse_entry("lim_n lit tail=const:0"), std::invalid_argument);
}

TEST(CorpusFormat, DefaultIds) {
  std::istringstream in("\nproblem=lpo lit tail=const:0\n");
  const auto c = parse_corpus(in);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].instance.id, "L2");
}

TEST(CorpusGen, Deterministic) {
  for (auto kind : {CorpusKind::kTotalPrograms, CorpusKind::kLiteralSequences, CorpusKind::kBoundedMonotone,
                    CorpusKind::kLpoMixed, CorpusKind::kFamilies}) {
    std::ostringstream a, b;
    write_corpus(a, generate_corpus(kind, 10, 7, oracle()));
    write_corpus(b, generate_corpus(kind, 10, 7, oracle()));
    EXPECT_EQ(a.str(), b.str()) << to_string(kind);
    EXPECT_EQ(parse_corpus_kind(to_string(kind)), kind);
  }
}

TEST(CorpusGen, InsideTheirDomains) {
  for (auto kind : {CorpusKind::kTotalPrograms, CorpusKind::kLiteralSequences, CorpusKind::kBoundedMonotone,
                    CorpusKind::kLpoMixed, CorpusKind::kFamilies}) {
    const auto c = generate_corpus(kind, 12, 3, oracle());
    EXPECT_EQ(c.size(), 12u) << to_string(kind);
    for (const auto& e : c) {
      const auto f = make_problem(e.problem, oracle(), 100);
      ASSERT_TRUE(f);
      EXPECT_TRUE(f->domain_check(e.instance)) << format_entry(e);
    }
  }
}

TEST(CorpusGen, GeneratorContracts) {
  const auto mono = generate_corpus(CorpusKind::kBoundedMonotone, 40, 5, oracle());
  for (const auto& e : mono) {
    const auto* l = literal_of(e.instance);
    ASSERT_NE(l, nullptr);
    for (std::uint64_t n = 0; n < 10; ++n) EXPECT_LE(l->at(n), l->at(n + 1));
  }
  const auto lpo = generate_corpus(CorpusKind::kLpoMixed, 20, 5, oracle());
  int zeros = 0;
  for (const auto& e : lpo) zeros += literal_of(e.instance)->is_zero();
  EXPECT_GT(zeros, 0);
  EXPECT_LT(zeros, 20);
}
