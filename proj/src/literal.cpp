#include "glab/literal.hpp"

#include <algorithm>
#include <stdexcept>

namespace glab {

void Literal::validate() const {
  if (const auto* p = std::get_if<PeriodicTail>(&tail); p != nullptr && p->word.empty()) {
    throw std::invalid_argument("periodic tail needs a nonempty word");
  }
}

std::uint64_t Literal::at(std::uint64_t n) const {
  if (n < prefix.size()) return prefix[n];
  const std::uint64_t k = n - prefix.size();
  if (const auto* c = std::get_if<ConstantTail>(&tail)) return c->value;
  const auto& word = std::get<PeriodicTail>(tail).word;
  return word[k % word.size()];
}

std::vector<std::uint64_t> Literal::tail_values() const {
  if (const auto* c = std::get_if<ConstantTail>(&tail)) return {c->value};
  return std::get<PeriodicTail>(tail).word;
}

std::size_t Literal::period() const {
  if (std::holds_alternative<ConstantTail>(tail)) return 1;
  return std::get<PeriodicTail>(tail).word.size();
}

std::set<std::uint64_t> Literal::range() const {
  std::set<std::uint64_t> out(prefix.begin(), prefix.end());
  for (auto v : tail_values()) out.insert(v);
  return out;
}

std::set<std::uint64_t> Literal::cluster_points() const {
  const auto tv = tail_values();
  return {tv.begin(), tv.end()};
}

bool Literal::converges() const { return cluster_points().size() == 1; }

std::uint64_t Literal::limit() const { return *cluster_points().begin(); }

bool Literal::is_zero() const {
  const auto r = range();
  return r.size() == 1 && *r.begin() == 0;
}

std::uint64_t Literal::max_value() const { return *range().rbegin(); }
std::uint64_t Literal::min_value() const { return *range().begin(); }

}  // namespace glab
