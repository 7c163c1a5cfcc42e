#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "glab/natural.hpp"
#include "glab/program.hpp"

namespace glab {

struct LoopStmt;
using LoopBody = std::vector<LoopStmt>;

struct LoopInc {
  std::uint64_t reg;
};
struct LoopZero {
  std::uint64_t reg;
};
/// dst := src
struct LoopCopy {
  std::uint64_t src;
  std::uint64_t dst;
};
/// Runs body R[reg] times, counting from the value at entry.
struct LoopRepeat {
  std::uint64_t reg;
  LoopBody body;
};

struct LoopStmt {
  std::variant<LoopInc, LoopZero, LoopCopy, LoopRepeat> node;
};

/// A LOOP program. Input and output live in register 0.
struct LoopProgram {
  LoopBody body;

  static LoopStmt inc(std::uint64_t r) { return {LoopInc{r}}; }
  static LoopStmt zero(std::uint64_t r) { return {LoopZero{r}}; }
  static LoopStmt copy(std::uint64_t src, std::uint64_t dst) { return {LoopCopy{src, dst}}; }
  static LoopStmt repeat(std::uint64_t r, LoopBody body) { return {LoopRepeat{r, std::move(body)}}; }
};

/// Host-level reference semantics.
std::uint64_t run_loop(const LoopProgram& lp, std::uint64_t input);

Program compile_loop_program(const LoopProgram& lp);
Natural compile_loop(const LoopProgram& lp);

/// Exact number of machine steps the compiled program takes on `input`.
/// The compiled program halts within this many steps.
std::uint64_t loop_step_bound(const LoopProgram& lp, std::uint64_t input);

std::string to_text(const LoopProgram& lp);

/// Compiled LOOP programs sorted by index. This is the candidate space of
/// the total-class learner: every member halts on every input.
class LoopRegistry {
 public:
  struct Entry {
    Natural index;
    LoopProgram source;
  };

  /// All LOOP programs over registers {0, 1} with at most `max_statements`
  /// statements in total (nesting counts every statement once).
  static LoopRegistry small(std::size_t max_statements);

  const std::vector<Entry>& entries() const { return entries_; }
  bool contains(const Natural& index) const;

 private:
  std::vector<Entry> entries_;
};

}  // namespace glab
