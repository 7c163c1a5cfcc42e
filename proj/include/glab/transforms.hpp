#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "glab/literal.hpp"
#include "glab/natural.hpp"
#include "glab/program.hpp"

namespace glab {

/// smn: phi_{s_const(i,c)}(n) = phi_i(pair(c, n)). Realized by prepending a
/// macro that replaces R0 with pair(c, R0).
Natural s_const(const Natural& index, std::uint64_t c);

/// phi_{project_component(i,n)}(k) = phi_i(pair(n, k)): component n of a
/// countably tupled sequence.
Natural project_component(const Natural& index, std::uint64_t component);

/// phi_result(k) = phi_i(factor * k + offset).
Natural precompose_affine(const Natural& index, std::uint64_t factor, std::uint64_t offset);

/// A total program whose value at n is lit.at(n).
Program literal_program(const Literal& lit);
Natural compile_literal(const Literal& lit);

/// On input n, runs the members round-robin with budgets 1, 2, 3, ... via
/// EVB and returns the first value any member produces. Members are tried
/// in the given order within a round.
Program dovetail_program(std::span<const std::uint64_t> members);
Natural dovetail_index(std::span<const std::uint64_t> members);

/// Finite tupling with a length tag: t(0) = n and t(1 + k*n + j) = p_j(k),
/// where p_j is computed by components[j]. Needs at least one component.
Program finite_tuple_program(std::span<const Program> components);

/// m -> first coordinate of unpair(m). As a tupled family this is p_n = n^.
Program first_projection_program();
/// m -> second coordinate of unpair(m).
Program second_projection_program();

}  // namespace glab
