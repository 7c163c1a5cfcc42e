#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glab/loop.hpp"
#include "glab/natural.hpp"
#include "glab/oracles.hpp"
#include "glab/spaces.hpp"

namespace glab {

struct LearnerConfig {
  std::uint64_t index_bound = 2000;
  std::uint64_t window = 32;
  std::uint64_t cap = 10000;
  /// Identical consecutive guesses needed to declare convergence. Must
  /// exceed window + 1, the longest run a refuted candidate can produce.
  std::uint64_t stability_window = 100;
  std::uint64_t max_steps = 1000000;
  /// Budget for checking emitted programs. Dovetailed outputs pay for every
  /// member they interleave, so the search cap is far too small for them.
  std::uint64_t verify_budget = 200000000;

  OracleConfig oracle() const { return OracleConfig{cap, window, index_bound}; }
  void validate() const;
};

struct GuessTrace {
  std::vector<Natural> guesses;
  std::uint64_t mind_changes = 0;
  std::optional<std::uint64_t> stabilized_at;
  bool converged = false;

  std::optional<Natural> final_guess() const;
  /// Rebuilds the bookkeeping from `guesses`.
  static GuessTrace from_guesses(std::vector<Natural> guesses, std::uint64_t stability_window);
};

/// `step,guess,mind_change_flag` rows.
void write_trace_csv(std::ostream& out, const GuessTrace& trace);

/// Decodes once and checks phi_index against p on n <= window.
bool verify_output(const Natural& index, const StreamView& p, std::uint64_t window, std::uint64_t budget);

/// Drives a guess source until `stability_window` identical guesses in a
/// row, until the source is exhausted (returns nullopt), or until max_steps
/// guesses.
GuessTrace run_to_limit(const std::function<std::optional<Natural>()>& next, std::uint64_t stability_window,
                        std::uint64_t max_steps);

/// Why a candidate was abandoned: it disagreed with p at n (got is nullopt
/// when the candidate did not halt within its budget).
struct Refutation {
  Natural candidate;
  std::uint64_t n = 0;
  std::uint64_t expected = 0;
  std::optional<std::uint64_t> got;
};

enum class ProgramClass { kFull, kTotal };

struct EnumResult {
  GuessTrace trace;
  std::vector<Refutation> refutations;
  /// Final candidate when the trace converged.
  std::optional<Natural> limit;
  std::string failure;
};

/// Identification by enumeration. Candidates are 0, 1, 2, ... (full class,
/// evaluated under the cap) or the LOOP registry in index order (total
/// class, evaluated with each program's exact step bound). Each passed test
/// at n <= window emits the candidate; a failed test moves to the next.
EnumResult enum_learner(const StreamView& p, ProgramClass cls, const LearnerConfig& cfg,
                        const LoopRegistry* registry = nullptr);

/// Compatibility rows for the universe 0..m (bit j of row i set iff i ~ j).
class CompatMatrix {
 public:
  CompatMatrix(const Oracle& oracle, std::uint64_t m);
  std::uint64_t size() const { return rows_.size(); }
  bool compatible(std::uint64_t i, std::uint64_t j) const;
  /// Members j <= m of the pocket of i.
  std::vector<std::uint64_t> pocket(std::uint64_t i, std::uint64_t m) const;
  /// Fraction of indices 0..m that are partial on the window under the cap.
  double partial_fraction(std::uint64_t m) const;

 private:
  std::vector<std::vector<std::uint64_t>> rows_;  // bitsets
  std::vector<bool> partial_;
};

struct Pocket {
  std::uint64_t anchor = 0;
  std::vector<std::uint64_t> members;  // ascending
};

struct PocketTable {
  std::vector<Pocket> pockets;
  std::vector<Pocket> survivors;
};

PocketTable build_pockets(std::uint64_t m, const CompatMatrix& compat);
/// Drops internally incompatible pockets and duplicate member sets.
PocketTable prune_pockets(PocketTable t, const CompatMatrix& compat);
/// No survivor is a proper subset of another.
bool is_antichain(const std::vector<Pocket>& pockets);

struct AmalgamationResult {
  std::optional<Natural> index;
  PocketTable table;
  GuessTrace trace;
  /// Survivors still compatible with p after the window scan.
  std::vector<Pocket> p_compatible;
  std::string failure;
};

/// Pockets over 0..m, elimination of pockets that disagree with p on the
/// window, and a dovetailing program over the unique remaining pocket.
AmalgamationResult amalgamation_learn(const StreamView& p, std::uint64_t m, const Oracle& oracle,
                                      const CompatMatrix& compat, const LearnerConfig& cfg);

/// code(A) = sum over i in A of 2^(k - i).
Natural set_code(const std::vector<std::uint64_t>& members, std::uint64_t k);

struct BoundedMinResult {
  std::optional<Natural> index;
  std::vector<std::uint64_t> final_set;
  GuessTrace codes;
  std::string failure;
};

/// Shrinking sets A_0 = {0..k} ⊇ A_1 ⊇ ...: stage s tests candidate
/// s mod (k+1) at position s div (k+1) and removes it on a disagreement.
/// The output program returns the first value any member of the final set
/// produces.
BoundedMinResult bounded_min_learner(const StreamView& p, std::uint64_t k, const Oracle& oracle,
                                     const LearnerConfig& cfg);

struct LiminfRun {
  /// stages[t-1]: indices validating p on positions 0..t-1, ascending.
  std::vector<std::vector<std::uint64_t>> stages;
  std::vector<Natural> stream;
};

/// Stages t = 1..window+1.
LiminfRun kol_liminf_enumerator(const StreamView& p, const Oracle& oracle);

}  // namespace glab
