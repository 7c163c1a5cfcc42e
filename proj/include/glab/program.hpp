#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "glab/natural.hpp"

namespace glab {

/// The five URM-lite opcodes. The numeric value is the instruction tag
/// (instruction code mod 5).
enum class Opcode : std::uint8_t {
  kZero = 0,      ///< Z r      : R[r] <- 0
  kSucc = 1,      ///< S r      : R[r] <- R[r] + 1
  kTransfer = 2,  ///< T a b    : R[b] <- R[a]
  kJump = 3,      ///< J a b k  : if R[a] == R[b] goto k
  kEval = 4,      ///< EVB i n s o : R[o] <- v+1 if eval(R[i], R[n], R[s]) halts with v, else 0
};

/// One instruction. Unused operands are zero. Operands are unbounded
/// naturals so that decoding is total on every code.
struct Instruction {
  Opcode op = Opcode::kZero;
  Natural a, b, c, d;

  static Instruction zero(Natural r) { return {Opcode::kZero, std::move(r), 0, 0, 0}; }
  static Instruction succ(Natural r) { return {Opcode::kSucc, std::move(r), 0, 0, 0}; }
  static Instruction transfer(Natural from, Natural to) {
    return {Opcode::kTransfer, std::move(from), std::move(to), 0, 0};
  }
  static Instruction jump(Natural x, Natural y, Natural target) {
    return {Opcode::kJump, std::move(x), std::move(y), std::move(target), 0};
  }
  static Instruction eval(Natural index_reg, Natural input_reg, Natural budget_reg, Natural out_reg) {
    return {Opcode::kEval, std::move(index_reg), std::move(input_reg), std::move(budget_reg),
            std::move(out_reg)};
  }

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

using Program = std::vector<Instruction>;

Natural encode_instruction(const Instruction& ins);
Instruction decode_instruction(const Natural& code);

/// Bijective list code on finite lists of naturals: the empty list is 0, a
/// nonempty list is 1 + the bijective base-3 value of the string
/// bb(x1) ',' bb(x2) ',' ... where bb is bijective binary.
Natural encode_list(const std::vector<Natural>& items);
std::vector<Natural> decode_list(const Natural& code);

Natural encode(const Program& program);
Program decode(const Natural& index);

/// One past the highest register id mentioned by the program; at least 1
/// because R0 carries input and output.
Natural first_free_register(const Program& program);

/// Text form, one instruction per line: `Z 0`, `S 0`, `T 0 1`, `J 0 1 4`,
/// `EVB 1 2 3 0`.
std::string to_text(const Instruction& ins);
std::string to_text(const Program& program);
Instruction parse_instruction(std::string_view line);
/// Blank lines and `#` comments are skipped.
Program parse_program(std::string_view text);

}  // namespace glab
