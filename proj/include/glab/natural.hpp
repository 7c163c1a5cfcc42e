#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace glab {

/// Arbitrary-precision natural number. Program indices and set codes live here;
/// machine registers are 64-bit.
using Natural = boost::multiprecision::cpp_int;

bool fits_u64(const Natural& n);

/// Throws std::overflow_error when `n` does not fit.
std::uint64_t to_u64(const Natural& n);

Natural parse_natural(const std::string& text);

/// Cantor pairing: pair(x,y) = (x+y)(x+y+1)/2 + y.
Natural pair(const Natural& x, const Natural& y);
std::pair<Natural, Natural> unpair(const Natural& n);

/// 64-bit variants. `pair_u64` throws std::overflow_error if the result
/// does not fit.
std::uint64_t pair_u64(std::uint64_t x, std::uint64_t y);
std::pair<std::uint64_t, std::uint64_t> unpair_u64(std::uint64_t n);

/// Largest w with w(w+1)/2 <= n.
std::uint64_t triangular_root(std::uint64_t n);

}  // namespace glab
