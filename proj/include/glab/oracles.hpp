#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "glab/machine.hpp"
#include "glab/natural.hpp"
#include "glab/spaces.hpp"

namespace glab {

/// Step cap standing in for the halting problem, argument window for
/// extensional checks (n <= window), and the universe of indices (i <= index_bound).
struct OracleConfig {
  std::uint64_t cap = 10000;
  std::uint64_t window = 32;
  std::uint64_t index_bound = 2000;

  void validate() const;
  friend bool operator==(const OracleConfig&, const OracleConfig&) = default;
};

struct CompatibilityVerdict {
  bool compatible = true;
  std::uint64_t witness_n = 0;
  std::uint64_t v1 = 0;
  std::uint64_t v2 = 0;

  static CompatibilityVerdict yes() { return {}; }
  static CompatibilityVerdict no(std::uint64_t n, std::uint64_t a, std::uint64_t b) { return {false, n, a, b}; }
  friend bool operator==(const CompatibilityVerdict&, const CompatibilityVerdict&) = default;
};

// Direct definitions. Every query recomputes from scratch; tests use these
// as the reference for the memoized Oracle below.

EvalOutcome halts(const Natural& i, std::uint64_t n, const OracleConfig& cfg);
/// Searches n <= window for a joint-halting disagreement.
CompatibilityVerdict compatible(const Natural& i, const Natural& j, const OracleConfig& cfg);
/// No i < n (and i <= index_bound) halts on k with value n within the cap.
bool in_R(std::uint64_t k, std::uint64_t n, const OracleConfig& cfg);
/// Least n in [lower, search_limit] with in_R(k, n).
std::optional<std::uint64_t> search_R(std::uint64_t k, std::uint64_t lower, const OracleConfig& cfg,
                                      std::uint64_t search_limit);
/// phi_i agrees with d on every n <= window within the cap.
bool window_verifies(const Natural& i, const StreamView& d, const OracleConfig& cfg);
/// Least window-verified i <= index_bound. nullopt when none exists or d is
/// partial on the window.
std::optional<Natural> min_index(const StreamView& d, const OracleConfig& cfg);

/// Memoized oracle over one configuration. Answers equal the direct
/// definitions above. Thread-safe.
class Oracle {
 public:
  explicit Oracle(OracleConfig cfg);

  const OracleConfig& config() const { return cfg_; }

  EvalOutcome halts(const Natural& i, std::uint64_t n) const;
  CompatibilityVerdict compatible(const Natural& i, const Natural& j) const;
  bool in_R(std::uint64_t k, std::uint64_t n) const;
  std::optional<std::uint64_t> search_R(std::uint64_t k, std::uint64_t lower, std::uint64_t search_limit) const;
  bool window_verifies(const Natural& i, const StreamView& d) const;
  std::optional<Natural> min_index(const StreamView& d) const;
  /// Every window-verified i <= index_bound, ascending.
  std::vector<std::uint64_t> window_matches(const StreamView& d) const;

  /// Window values of a universe index, or nullopt if it is partial on the window.
  const std::optional<std::vector<std::uint64_t>>& window_values(std::uint64_t i) const;
  /// Per-position outcomes of a universe index on the whole window, partial
  /// positions included.
  std::vector<MaybeValue> window_outcomes(std::uint64_t i) const;

 private:
  struct VectorHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const;
  };

  void build_table() const;
  const std::unordered_map<std::uint64_t, std::uint64_t>& first_producers(std::uint64_t k) const;

  OracleConfig cfg_;
  mutable std::mutex mu_;
  mutable bool table_built_ = false;
  mutable std::vector<std::optional<std::vector<std::uint64_t>>> values_;
  mutable std::unordered_map<std::vector<std::uint64_t>, std::vector<std::uint64_t>, VectorHash> by_values_;
  // k -> least i <= index_bound producing v on input k, for each v (UINT64_MAX if none)
  mutable std::map<std::uint64_t, std::unordered_map<std::uint64_t, std::uint64_t>> producers_;
  mutable std::unordered_map<std::uint64_t, std::vector<MaybeValue>> outcomes_;
};

}  // namespace glab
