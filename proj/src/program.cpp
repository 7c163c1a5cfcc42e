#include "glab/program.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace glab {

namespace {

// 3^39: the largest power of three whose bijective-digit chunks stay below 2^64.
constexpr std::uint64_t kPow3Chunk = 4052555153018976267ULL;
constexpr int kChunkDigits = 39;

Natural pow3(std::size_t e) {
  Natural r = 1;
  Natural base = 3;
  while (e > 0) {
    if (e & 1U) r *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return r;
}

// Alphabet of the list string, in digit order 1, 2, 3.
constexpr char kSymbols[3] = {'0', '1', ','};

int symbol_digit(char c) {
  switch (c) {
    case '0': return 1;
    case '1': return 2;
    default: return 3;
  }
}

// Bijective base-3: string s_1..s_L  <->  sum d(s_j) 3^(L-j).
Natural string_to_number(const std::string& s) {
  Natural n = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t take = std::min<std::size_t>(kChunkDigits, s.size() - pos);
    std::uint64_t chunk = 0;
    std::uint64_t scale = 1;
    for (std::size_t k = 0; k < take; ++k) {
      chunk = chunk * 3 + static_cast<std::uint64_t>(symbol_digit(s[pos + k]));
      scale *= 3;
    }
    n = n * scale + chunk;
    pos += take;
  }
  return n;
}

std::string small_number_to_string(std::uint64_t n) {
  std::string out;
  while (n > 0) {
    const std::uint64_t d = (n - 1) % 3 + 1;
    out.push_back(kSymbols[d - 1]);
    n = (n - d) / 3;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string number_to_string(const Natural& n) {
  if (fits_u64(n)) return small_number_to_string(n.convert_to<std::uint64_t>());
  // Length L satisfies (3^L - 1)/2 <= n < (3^(L+1) - 1)/2; the string is the
  // L-digit standard base-3 expansion of n - (3^L - 1)/2 with digits shifted by one.
  auto offset = [](std::size_t len) { return (pow3(len) - 1) / 2; };
  auto len = static_cast<std::size_t>(static_cast<double>(msb(n)) * 0.6309297535714574);
  while (len > 0 && offset(len) > n) --len;
  while (offset(len + 1) <= n) ++len;
  Natural rest = n - offset(len);
  std::string out(len, kSymbols[0]);
  std::size_t pos = len;
  while (rest > 0) {
    Natural q;
    Natural r;
    divide_qr(rest, Natural{kPow3Chunk}, q, r);
    auto chunk = r.convert_to<std::uint64_t>();
    for (int k = 0; k < kChunkDigits && pos > 0; ++k) {
      out[--pos] = kSymbols[chunk % 3];
      chunk /= 3;
    }
    rest = std::move(q);
  }
  return out;
}

// Bijective binary: n <-> binary(n+1) without its leading 1.
std::string to_bijective_binary(const Natural& n) {
  const Natural m = n + 1;
  const std::size_t top = msb(m);
  std::string out;
  out.reserve(top);
  for (std::size_t k = top; k-- > 0;) out.push_back(bit_test(m, k) ? '1' : '0');
  return out;
}

Natural from_bijective_binary(std::string_view bits) {
  if (bits.size() < 63) {
    std::uint64_t v = 1;
    for (char c : bits) v = (v << 1U) | (c == '1' ? 1U : 0U);
    return Natural{v - 1};
  }
  Natural v = 1;
  std::size_t pos = 0;
  while (pos < bits.size()) {
    const std::size_t take = std::min<std::size_t>(60, bits.size() - pos);
    std::uint64_t chunk = 0;
    for (std::size_t k = 0; k < take; ++k) chunk = (chunk << 1U) | (bits[pos + k] == '1' ? 1U : 0U);
    v = (v << take) | chunk;
    pos += take;
  }
  return v - 1;
}

Natural parse_operand(std::string_view tok) { return parse_natural(std::string(tok)); }

}  // namespace

Natural encode_instruction(const Instruction& ins) {
  Natural payload;
  switch (ins.op) {
    case Opcode::kZero:
    case Opcode::kSucc: payload = ins.a; break;
    case Opcode::kTransfer: payload = pair(ins.a, ins.b); break;
    case Opcode::kJump: payload = pair(ins.a, pair(ins.b, ins.c)); break;
    case Opcode::kEval: payload = pair(ins.a, pair(ins.b, pair(ins.c, ins.d))); break;
  }
  return payload * 5 + static_cast<unsigned>(ins.op);
}

Instruction decode_instruction(const Natural& code) {
  const auto tag = static_cast<unsigned>(code % 5);
  const Natural payload = code / 5;
  Instruction ins;
  ins.op = static_cast<Opcode>(tag);
  switch (ins.op) {
    case Opcode::kZero:
    case Opcode::kSucc: ins.a = payload; break;
    case Opcode::kTransfer: std::tie(ins.a, ins.b) = unpair(payload); break;
    case Opcode::kJump: {
      Natural rest;
      std::tie(ins.a, rest) = unpair(payload);
      std::tie(ins.b, ins.c) = unpair(rest);
      break;
    }
    case Opcode::kEval: {
      Natural r1;
      Natural r2;
      std::tie(ins.a, r1) = unpair(payload);
      std::tie(ins.b, r2) = unpair(r1);
      std::tie(ins.c, ins.d) = unpair(r2);
      break;
    }
  }
  return ins;
}

Natural encode_list(const std::vector<Natural>& items) {
  if (items.empty()) return 0;
  std::string s;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k > 0) s.push_back(',');
    s += to_bijective_binary(items[k]);
  }
  return string_to_number(s) + 1;
}

std::vector<Natural> decode_list(const Natural& code) {
  if (code == 0) return {};
  const std::string s = number_to_string(code - 1);
  std::vector<Natural> items;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    const std::string_view part = std::string_view(s).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    items.push_back(from_bijective_binary(part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

Natural encode(const Program& program) {
  std::vector<Natural> codes;
  codes.reserve(program.size());
  for (const auto& ins : program) codes.push_back(encode_instruction(ins));
  return encode_list(codes);
}

Program decode(const Natural& index) {
  Program program;
  for (const auto& code : decode_list(index)) program.push_back(decode_instruction(code));
  return program;
}

Natural first_free_register(const Program& program) {
  Natural top = 0;
  for (const auto& ins : program) {
    switch (ins.op) {
      case Opcode::kZero:
      case Opcode::kSucc: top = std::max(top, ins.a); break;
      case Opcode::kTransfer:
      case Opcode::kJump: top = std::max({top, ins.a, ins.b}); break;
      case Opcode::kEval: top = std::max({top, ins.a, ins.b, ins.c, ins.d}); break;
    }
  }
  return top + 1;
}

std::string to_text(const Instruction& ins) {
  std::ostringstream out;
  switch (ins.op) {
    case Opcode::kZero: out << "Z " << ins.a; break;
    case Opcode::kSucc: out << "S " << ins.a; break;
    case Opcode::kTransfer: out << "T " << ins.a << ' ' << ins.b; break;
    case Opcode::kJump: out << "J " << ins.a << ' ' << ins.b << ' ' << ins.c; break;
    case Opcode::kEval: out << "EVB " << ins.a << ' ' << ins.b << ' ' << ins.c << ' ' << ins.d; break;
  }
  return out.str();
}

std::string to_text(const Program& program) {
  std::string out;
  for (const auto& ins : program) {
    out += to_text(ins);
    out.push_back('\n');
  }
  return out;
}

Instruction parse_instruction(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    toks.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  if (toks.empty()) throw std::invalid_argument("empty instruction");
  auto arity = [&](std::size_t n) {
    if (toks.size() != n + 1) {
      throw std::invalid_argument("instruction '" + std::string(toks[0]) + "' expects " +
                                  std::to_string(n) + " operands");
    }
  };
  const std::string_view op = toks[0];
  if (op == "Z") {
    arity(1);
    return Instruction::zero(parse_operand(toks[1]));
  }
  if (op == "S") {
    arity(1);
    return Instruction::succ(parse_operand(toks[1]));
  }
  if (op == "T") {
    arity(2);
    return Instruction::transfer(parse_operand(toks[1]), parse_operand(toks[2]));
  }
  if (op == "J") {
    arity(3);
    return Instruction::jump(parse_operand(toks[1]), parse_operand(toks[2]), parse_operand(toks[3]));
  }
  if (op == "EVB") {
    arity(4);
    return Instruction::eval(parse_operand(toks[1]), parse_operand(toks[2]), parse_operand(toks[3]),
                             parse_operand(toks[4]));
  }
  throw std::invalid_argument("unknown opcode '" + std::string(op) + "'");
}

Program parse_program(std::string_view text) {
  Program program;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      if (line.back() == '\r') line.remove_suffix(1);
      program.push_back(parse_instruction(line));
    }
    start = end + 1;
  }
  return program;
}

}  // namespace glab
