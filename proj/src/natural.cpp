#include "glab/natural.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace glab {

namespace {

const Natural kU64Max{std::numeric_limits<std::uint64_t>::max()};

}  // namespace

bool fits_u64(const Natural& n) { return n >= 0 && n <= kU64Max; }

std::uint64_t to_u64(const Natural& n) {
  if (!fits_u64(n)) {
    throw std::overflow_error("natural number does not fit in 64 bits");
  }
  return n.convert_to<std::uint64_t>();
}

Natural parse_natural(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty natural number");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("not a natural number: '" + text + "'");
    }
  }
  return Natural{text};
}

Natural pair(const Natural& x, const Natural& y) {
  const Natural s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<Natural, Natural> unpair(const Natural& n) {
  if (fits_u64(n)) {
    auto [x, y] = unpair_u64(n.convert_to<std::uint64_t>());
    return {Natural{x}, Natural{y}};
  }
  // w = floor((sqrt(8n+1) - 1) / 2)
  const Natural disc = 8 * n + 1;
  Natural w = (boost::multiprecision::sqrt(disc) - 1) / 2;
  const Natural t = w * (w + 1) / 2;
  const Natural y = n - t;
  return {w - y, y};
}

std::uint64_t triangular_root(std::uint64_t n) {
  // Float estimate, then exact correction in 128-bit arithmetic.
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(n) + 1.0L) - 1.0L) / 2.0L);
  auto tri = [](std::uint64_t v) {
    return static_cast<unsigned __int128>(v) * (v + 1) / 2;
  };
  while (w > 0 && tri(w) > n) --w;
  while (tri(w + 1) <= n) ++w;
  return w;
}

std::uint64_t pair_u64(std::uint64_t x, std::uint64_t y) {
  const unsigned __int128 s = static_cast<unsigned __int128>(x) + y;
  const unsigned __int128 r = s * (s + 1) / 2 + y;
  if (r > std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error("pair_u64 overflow");
  }
  return static_cast<std::uint64_t>(r);
}

std::pair<std::uint64_t, std::uint64_t> unpair_u64(std::uint64_t n) {
  const std::uint64_t w = triangular_root(n);
  const auto t = static_cast<std::uint64_t>(static_cast<unsigned __int128>(w) * (w + 1) / 2);
  const std::uint64_t y = n - t;
  return {w - y, y};
}

}  // namespace glab
