#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "glab/program.hpp"

namespace glab {

/// Emits URM-lite code with symbolic labels and a few arithmetic macros.
///
/// Scratch registers are handed out upward from `first_scratch`; callers
/// pick it above every register used by code they inline.
class Assembler {
 public:
  using Label = std::size_t;
  using Reg = std::uint64_t;

  explicit Assembler(Reg first_scratch) : next_scratch_(first_scratch) {}

  Reg scratch() { return next_scratch_++; }
  Reg scratch_limit() const { return next_scratch_; }

  Label label();
  void bind(Label l);
  std::size_t size() const { return code_.size(); }

  void zero(Reg r);
  void inc(Reg r);
  void copy(Reg from, Reg to);
  void jump_if_equal(Reg a, Reg b, Label target);
  void jump(Label target);
  void evb(Reg index, Reg input, Reg budget, Reg out);
  /// Jump past the end of the finished program.
  void halt();

  /// dst += src. dst and src must differ.
  void add(Reg dst, Reg src);
  /// dst = value.
  void load(Reg dst, std::uint64_t value);
  /// dst = pair(x, y) (Cantor). dst may alias x or y.
  void pair_into(Reg dst, Reg x, Reg y);
  /// (first, second) = unpair(m). m must differ from both outputs.
  void unpair_into(Reg m, Reg first, Reg second);
  /// dst = factor * x + offset. dst may alias x.
  void affine_into(Reg dst, Reg x, std::uint64_t factor, std::uint64_t offset);
  /// dst = src - 1; loops forever when src == 0.
  void decrement_into(Reg dst, Reg src);

  /// Appends `program` verbatim; jumps inside it are rebased, jumps out of
  /// it go to `exit`.
  void inline_program(const Program& program, Label exit);

  Program finish();

 private:
  struct Patch {
    std::size_t at;
    Label label;
  };

  void emit(Instruction ins) { code_.push_back(std::move(ins)); }
  void emit_jump(Reg a, Reg b, Label target);

  Program code_;
  std::vector<std::size_t> bound_;  // label -> address, npos if unbound
  std::vector<Patch> patches_;
  Reg next_scratch_;
  Label end_label_ = static_cast<Label>(-1);
};

}  // namespace glab
