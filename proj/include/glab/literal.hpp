#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace glab {

struct ConstantTail {
  std::uint64_t value = 0;
  friend bool operator==(const ConstantTail&, const ConstantTail&) = default;
};

/// Repeats `word` forever. The word is nonempty.
struct PeriodicTail {
  std::vector<std::uint64_t> word;
  friend bool operator==(const PeriodicTail&, const PeriodicTail&) = default;
};

/// A finitely presented total sequence: a literal prefix followed by a
/// constant or periodic tail.
struct Literal {
  std::vector<std::uint64_t> prefix;
  std::variant<ConstantTail, PeriodicTail> tail;

  static Literal constant(std::uint64_t c, std::vector<std::uint64_t> prefix = {}) {
    return Literal{std::move(prefix), ConstantTail{c}};
  }
  static Literal periodic(std::vector<std::uint64_t> word, std::vector<std::uint64_t> prefix = {}) {
    return Literal{std::move(prefix), PeriodicTail{std::move(word)}};
  }

  /// Throws std::invalid_argument on an empty periodic word.
  void validate() const;

  std::uint64_t at(std::uint64_t n) const;

  /// Values of the tail (each occurs infinitely often).
  std::vector<std::uint64_t> tail_values() const;
  /// Length of the tail period (1 for a constant tail).
  std::size_t period() const;

  std::set<std::uint64_t> range() const;
  /// Values occurring infinitely often.
  std::set<std::uint64_t> cluster_points() const;
  /// Convergent iff the tail takes a single value.
  bool converges() const;
  /// Only meaningful when converges().
  std::uint64_t limit() const;
  bool is_zero() const;
  std::uint64_t max_value() const;
  std::uint64_t min_value() const;

  friend bool operator==(const Literal&, const Literal&) = default;
};

}  // namespace glab
