#include "glab/loop.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "glab/assembler.hpp"

namespace glab {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};

std::uint64_t max_register(const LoopBody& body) {
  std::uint64_t m = 0;
  for (const auto& s : body) {
    std::visit(Overloaded{
                   [&](const LoopInc& x) { m = std::max(m, x.reg); },
                   [&](const LoopZero& x) { m = std::max(m, x.reg); },
                   [&](const LoopCopy& x) { m = std::max({m, x.src, x.dst}); },
                   [&](const LoopRepeat& x) { m = std::max({m, x.reg, max_register(x.body)}); },
               },
               s.node);
  }
  return m;
}

using Regs = std::map<std::uint64_t, std::uint64_t>;

// Executes body and returns the number of machine steps its compiled form takes.
std::uint64_t exec(const LoopBody& body, Regs& r) {
  std::uint64_t steps = 0;
  for (const auto& s : body) {
    std::visit(Overloaded{
                   [&](const LoopInc& x) { ++r[x.reg], ++steps; },
                   [&](const LoopZero& x) { r[x.reg] = 0, ++steps; },
                   [&](const LoopCopy& x) { r[x.dst] = r[x.src], ++steps; },
                   [&](const LoopRepeat& x) {
                     const std::uint64_t count = r[x.reg];
                     steps += 3;
                     for (std::uint64_t k = 0; k < count; ++k) steps += 3 + exec(x.body, r);
                   },
               },
               s.node);
  }
  return steps;
}

void emit(Assembler& as, const LoopBody& body) {
  for (const auto& s : body) {
    std::visit(Overloaded{
                   [&](const LoopInc& x) { as.inc(x.reg); },
                   [&](const LoopZero& x) { as.zero(x.reg); },
                   [&](const LoopCopy& x) { as.copy(x.src, x.dst); },
                   [&](const LoopRepeat& x) {
                     const auto count = as.scratch();
                     const auto it = as.scratch();
                     const auto top = as.label();
                     const auto done = as.label();
                     as.copy(x.reg, count);
                     as.zero(it);
                     as.bind(top);
                     as.jump_if_equal(it, count, done);
                     emit(as, x.body);
                     as.inc(it);
                     as.jump(top);
                     as.bind(done);
                   },
               },
               s.node);
  }
}

void print(std::ostringstream& out, const LoopBody& body) {
  bool first = true;
  for (const auto& s : body) {
    if (!first) out << "; ";
    first = false;
    std::visit(Overloaded{
                   [&](const LoopInc& x) { out << "inc " << x.reg; },
                   [&](const LoopZero& x) { out << "zero " << x.reg; },
                   [&](const LoopCopy& x) { out << "copy " << x.src << ' ' << x.dst; },
                   [&](const LoopRepeat& x) {
                     out << "loop " << x.reg << " { ";
                     print(out, x.body);
                     out << " }";
                   },
               },
               s.node);
  }
}

// Every statement list over registers {0,1} whose size is exactly n.
std::vector<LoopBody> bodies_of_size(std::size_t n, std::map<std::size_t, std::vector<LoopBody>>& memo);

std::vector<LoopStmt> statements_of_size(std::size_t n,
                                         std::map<std::size_t, std::vector<LoopBody>>& memo) {
  std::vector<LoopStmt> out;
  if (n == 1) {
    for (std::uint64_t r : {0, 1}) {
      out.push_back(LoopProgram::inc(r));
      out.push_back(LoopProgram::zero(r));
    }
    out.push_back(LoopProgram::copy(0, 1));
    out.push_back(LoopProgram::copy(1, 0));
    return out;
  }
  for (const auto& inner : bodies_of_size(n - 1, memo)) {
    for (std::uint64_t r : {0, 1}) out.push_back(LoopProgram::repeat(r, inner));
  }
  return out;
}

std::vector<LoopBody> bodies_of_size(std::size_t n, std::map<std::size_t, std::vector<LoopBody>>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::vector<LoopBody> out;
  if (n == 0) {
    out.emplace_back();
  } else {
    for (std::size_t head = 1; head <= n; ++head) {
      const auto firsts = statements_of_size(head, memo);
      const auto rests = bodies_of_size(n - head, memo);
      for (const auto& f : firsts) {
        for (const auto& rest : rests) {
          LoopBody b{f};
          b.insert(b.end(), rest.begin(), rest.end());
          out.push_back(std::move(b));
        }
      }
    }
  }
  memo[n] = out;
  return out;
}

}  // namespace

std::uint64_t run_loop(const LoopProgram& lp, std::uint64_t input) {
  Regs r{{0, input}};
  exec(lp.body, r);
  return r[0];
}

std::uint64_t loop_step_bound(const LoopProgram& lp, std::uint64_t input) {
  Regs r{{0, input}};
  return exec(lp.body, r);
}

Program compile_loop_program(const LoopProgram& lp) {
  Assembler as(max_register(lp.body) + 1);
  emit(as, lp.body);
  return as.finish();
}

Natural compile_loop(const LoopProgram& lp) { return encode(compile_loop_program(lp)); }

std::string to_text(const LoopProgram& lp) {
  std::ostringstream out;
  print(out, lp.body);
  return out.str();
}

LoopRegistry LoopRegistry::small(std::size_t max_statements) {
  std::map<std::size_t, std::vector<LoopBody>> memo;
  std::map<Natural, LoopProgram> by_index;
  for (std::size_t n = 0; n <= max_statements; ++n) {
    for (auto& body : bodies_of_size(n, memo)) {
      LoopProgram lp{std::move(body)};
      by_index.emplace(compile_loop(lp), std::move(lp));
    }
  }
  LoopRegistry reg;
  for (auto& [index, lp] : by_index) reg.entries_.push_back({index, std::move(lp)});
  return reg;
}

bool LoopRegistry::contains(const Natural& index) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                                   [](const Entry& e, const Natural& v) { return e.index < v; });
  return it != entries_.end() && it->index == index;
}

}  // namespace glab
