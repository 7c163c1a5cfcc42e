#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "glab/literal.hpp"
#include "glab/oracles.hpp"
#include "glab/problems.hpp"

namespace glab {

/// One corpus line: `problem=<name> [id=<id>] <payload>`. The payload is a
/// descriptor, optionally followed by `m=<bound>` (k_n, g_geq) or
/// `width=<w>` (ghat); finite families separate descriptors with `|`;
/// jump inputs are `stage@<t> <descriptor> ...` lists.
struct CorpusEntry {
  std::string problem;
  Instance instance;
};

class CorpusError : public std::runtime_error {
 public:
  CorpusError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Throws std::invalid_argument.
CorpusEntry parse_entry(const std::string& line);
/// Throws std::invalid_argument for payloads without a descriptor.
std::string format_entry(const CorpusEntry& e);
/// Blank lines and lines starting with '#' are skipped. Entries without an
/// id get `L<line>`. Throws CorpusError.
std::vector<CorpusEntry> parse_corpus(std::istream& in);
void write_corpus(std::ostream& out, const std::vector<CorpusEntry>& entries);

enum class CorpusKind { kTotalPrograms, kLiteralSequences, kBoundedMonotone, kLpoMixed, kFamilies };

std::optional<CorpusKind> parse_corpus_kind(const std::string& s);
std::string to_string(CorpusKind k);

struct LiteralShape {
  std::size_t max_prefix = 4;
  std::uint64_t max_value = 6;
  std::size_t max_period = 3;
  bool converging = false;
};

Literal random_literal(std::mt19937_64& rng, const LiteralShape& shape);
/// Nondecreasing with a constant tail.
Literal random_monotone(std::mt19937_64& rng, std::size_t max_prefix, std::uint64_t max_value);

/// Deterministic in (kind, size, seed, oracle configuration). Every entry
/// passes its problem's domain check:
///   total-programs    kol over universe indices total on the window
///   literal-sequences cl_n over random literals
///   bounded-monotone  b over nondecreasing literals
///   lpo-mixed         lpo, zero and nonzero sequences alternating
///   families          ghat and gstar alternating
std::vector<CorpusEntry> generate_corpus(CorpusKind kind, std::size_t size, std::uint64_t seed,
                                         std::shared_ptr<const Oracle> oracle);

/// Nonzero lpo instances have their first nonzero entry at position 0 or 1:
/// the normalized sequences 1^ and 01^ are the only ones of that shape
/// with a least index inside a desk-scale universe.
Literal random_lpo_instance(std::mt19937_64& rng, bool zero);

}  // namespace glab
