#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glab/learners.hpp"
#include "glab/literal.hpp"
#include "glab/oracles.hpp"
#include "glab/problems.hpp"

namespace glab {

/// A witness pair for f <= g: K maps f-instances to g-instances and H maps
/// (f-instance, g-answer) to an f-answer.
struct ReductionPair {
  std::string name;
  std::function<Instance(const Instance&)> K;
  std::function<Answer(const Instance&, const Answer&)> H;
};

struct Witness {
  /// input-outside-domain, domain-violation, verification-failure or error
  std::string kind;
  std::optional<Answer> g_answer;
  std::optional<Answer> f_answer;
  std::string detail;
};

struct InstanceRecord {
  std::string id;
  std::vector<Answer> g_answers;
  std::vector<Answer> f_answers;
  bool pass = false;
  std::vector<Witness> witnesses;
};

struct ReductionReport {
  std::string reduction;
  std::string corpus;
  std::vector<InstanceRecord> instances;
  bool pass = false;

  std::size_t witness_count() const;
};

/// Adversarial check: for every corpus instance x, K(x) must be in the
/// domain of g and H(x, a) must verify for f for EVERY enumerated g-answer
/// a. A passing report is re-verified before it is returned.
ReductionReport check_reduction(const ProblemSpec& f, const ProblemSpec& g, const ReductionPair& r,
                                const std::vector<Instance>& corpus, const std::string& corpus_name = "");

/// Generic answer-side mutants. constant-h returns 0; shift-h returns
/// a - 1 (a + 1 when a = 0).
ReductionPair mutate(const ReductionPair& r, const std::string& mode);

struct CatalogConfig {
  OracleConfig oracle{10000, 32, 2000};
  /// Universe of the B <= Kol_>= check; the constructed sequences have
  /// least indices in the tens of thousands.
  std::uint64_t b_index_bound = 65000;
  /// Window of the component problems of the family reductions; the
  /// tupled sequence is checked on a window wide enough to cover it.
  std::uint64_t family_window = 8;
  std::uint64_t max_family_width = 3;
  /// Listing ceiling for c_n and b answers.
  std::uint64_t answer_ceiling = 200;
  std::uint64_t stability_window = 100;
  std::size_t corpus_size = 30;
};

struct CatalogEntry {
  std::string name;
  ProblemSpec f;
  ProblemSpec g;
  ReductionPair pair;
  /// Modes accepted by `mutant`; each is expected to fail on `corpus`.
  std::vector<std::string> mutants;
  std::function<ReductionPair(const std::string&)> mutant;
  std::function<std::vector<Instance>(std::size_t size, std::uint64_t seed)> corpus;
};

/// The reductions the laboratory can check. Oracles are shared between
/// entries and built on first use.
class Catalog {
 public:
  explicit Catalog(CatalogConfig cfg = {});
  Catalog(const Catalog&) = delete;
  Catalog& operator=(const Catalog&) = delete;

  std::vector<std::string> names() const;
  /// Throws std::out_of_range for unknown names.
  const CatalogEntry& get(const std::string& name) const;
  const CatalogConfig& config() const { return cfg_; }

  std::shared_ptr<const Oracle> oracle() const { return oracle_; }
  std::shared_ptr<const Oracle> b_oracle() const { return b_oracle_; }

  /// The sequence K of lim_n <= G compiles: markers at even positions,
  /// q's values at odd ones. Exposed for the readout check.
  Literal limn_g_sequence(const Literal& q) const;
  /// The sequence K of B <= Kol_>= emits for q.
  Literal b_kolgeq_sequence(const Literal& q, bool stop_early = false) const;
  /// Normalization of lpo_kol: 0^ stays, a first nonzero at n gives 0^n 1^.
  static Literal lpo_normalize(const Literal& p);

 private:
  void add(CatalogEntry e);

  CatalogConfig cfg_;
  std::shared_ptr<const Oracle> oracle_;
  std::shared_ptr<const Oracle> b_oracle_;
  std::shared_ptr<const Oracle> family_oracle_;
  std::shared_ptr<const Oracle> wide_oracle_;
  std::map<std::string, CatalogEntry> entries_;
  std::vector<std::string> order_;
};

}  // namespace glab
