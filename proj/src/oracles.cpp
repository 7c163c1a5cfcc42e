#include "glab/oracles.hpp"

#include <limits>
#include <stdexcept>

namespace glab {

void OracleConfig::validate() const {
  if (cap == 0 || window == 0 || index_bound == 0) {
    throw std::invalid_argument("cap, window and index_bound must be positive");
  }
}

EvalOutcome halts(const Natural& i, std::uint64_t n, const OracleConfig& cfg) { return eval(i, n, cfg.cap); }

CompatibilityVerdict compatible(const Natural& i, const Natural& j, const OracleConfig& cfg) {
  Interpreter vm;
  for (std::uint64_t n = 0; n <= cfg.window; ++n) {
    const auto a = vm.run(i, n, cfg.cap);
    if (!a.is_halted()) continue;
    const auto b = vm.run(j, n, cfg.cap);
    if (b.is_halted() && a.value() != b.value()) return CompatibilityVerdict::no(n, a.value(), b.value());
  }
  return CompatibilityVerdict::yes();
}

bool in_R(std::uint64_t k, std::uint64_t n, const OracleConfig& cfg) {
  Interpreter vm;
  for (std::uint64_t i = 0; i < n && i <= cfg.index_bound; ++i) {
    if (vm.run(Natural{i}, k, cfg.cap).halted_with(n)) return false;
  }
  return true;
}

std::optional<std::uint64_t> search_R(std::uint64_t k, std::uint64_t lower, const OracleConfig& cfg,
                                      std::uint64_t search_limit) {
  for (std::uint64_t n = lower; n <= search_limit; ++n) {
    if (in_R(k, n, cfg)) return n;
  }
  return std::nullopt;
}

bool window_verifies(const Natural& i, const StreamView& d, const OracleConfig& cfg) {
  Interpreter vm;
  for (std::uint64_t n = 0; n <= cfg.window; ++n) {
    const auto expected = d.get(n);
    if (!expected || !vm.run(i, n, cfg.cap).halted_with(*expected)) return false;
  }
  return true;
}

std::optional<Natural> min_index(const StreamView& d, const OracleConfig& cfg) {
  if (!d.prefix(cfg.window)) return std::nullopt;
  for (std::uint64_t i = 0; i <= cfg.index_bound; ++i) {
    if (window_verifies(Natural{i}, d, cfg)) return Natural{i};
  }
  return std::nullopt;
}

std::size_t Oracle::VectorHash::operator()(const std::vector<std::uint64_t>& v) const {
  std::size_t h = 1469598103934665603ULL;
  for (auto x : v) h = (h ^ std::hash<std::uint64_t>{}(x)) * 1099511628211ULL;
  return h;
}

Oracle::Oracle(OracleConfig cfg) : cfg_(cfg) { cfg_.validate(); }

EvalOutcome Oracle::halts(const Natural& i, std::uint64_t n) const { return eval(i, n, cfg_.cap); }

CompatibilityVerdict Oracle::compatible(const Natural& i, const Natural& j) const {
  if (fits_u64(i) && fits_u64(j) && i <= cfg_.index_bound && j <= cfg_.index_bound) {
    build_table();
    const auto& a = values_[to_u64(i)];
    const auto& b = values_[to_u64(j)];
    // Fully total indices compare from the table; otherwise fall through.
    if (a && b) {
      for (std::uint64_t n = 0; n <= cfg_.window; ++n) {
        if ((*a)[n] != (*b)[n]) return CompatibilityVerdict::no(n, (*a)[n], (*b)[n]);
      }
      return CompatibilityVerdict::yes();
    }
  }
  return glab::compatible(i, j, cfg_);
}

const std::unordered_map<std::uint64_t, std::uint64_t>& Oracle::first_producers(std::uint64_t k) const {
  std::lock_guard lock(mu_);
  if (auto it = producers_.find(k); it != producers_.end()) return it->second;
  std::unordered_map<std::uint64_t, std::uint64_t> out;
  Interpreter vm;
  for (std::uint64_t i = 0; i <= cfg_.index_bound; ++i) {
    const auto r = vm.run(Natural{i}, k, cfg_.cap);
    if (r.is_halted()) out.emplace(r.value(), i);
  }
  return producers_.emplace(k, std::move(out)).first->second;
}

bool Oracle::in_R(std::uint64_t k, std::uint64_t n) const {
  const auto& p = first_producers(k);
  const auto it = p.find(n);
  return it == p.end() || it->second >= n;
}

std::optional<std::uint64_t> Oracle::search_R(std::uint64_t k, std::uint64_t lower,
                                              std::uint64_t search_limit) const {
  for (std::uint64_t n = lower; n <= search_limit; ++n) {
    if (in_R(k, n)) return n;
  }
  return std::nullopt;
}

void Oracle::build_table() const {
  std::lock_guard lock(mu_);
  if (table_built_) return;
  Interpreter vm;
  values_.resize(cfg_.index_bound + 1);
  for (std::uint64_t i = 0; i <= cfg_.index_bound; ++i) {
    std::vector<std::uint64_t> v;
    v.reserve(cfg_.window + 1);
    bool total = true;
    for (std::uint64_t n = 0; n <= cfg_.window; ++n) {
      const auto r = vm.run(Natural{i}, n, cfg_.cap);
      if (!r.is_halted()) {
        total = false;
        break;
      }
      v.push_back(r.value());
    }
    if (total) {
      by_values_[v].push_back(i);
      values_[i] = std::move(v);
    }
  }
  table_built_ = true;
}

const std::optional<std::vector<std::uint64_t>>& Oracle::window_values(std::uint64_t i) const {
  if (i > cfg_.index_bound) throw std::out_of_range("index outside the universe");
  build_table();
  return values_[i];
}

std::vector<MaybeValue> Oracle::window_outcomes(std::uint64_t i) const {
  if (const auto& v = window_values(i)) return {v->begin(), v->end()};
  std::lock_guard lock(mu_);
  if (auto it = outcomes_.find(i); it != outcomes_.end()) return it->second;
  std::vector<MaybeValue> out;
  Interpreter vm;
  for (std::uint64_t n = 0; n <= cfg_.window; ++n) {
    const auto r = vm.run(Natural{i}, n, cfg_.cap);
    out.push_back(r.is_halted() ? MaybeValue{r.value()} : std::nullopt);
  }
  return outcomes_.emplace(i, std::move(out)).first->second;
}

bool Oracle::window_verifies(const Natural& i, const StreamView& d) const {
  if (fits_u64(i) && i <= cfg_.index_bound) {
    const auto& v = window_values(to_u64(i));
    if (!v) return false;
    for (std::uint64_t n = 0; n <= cfg_.window; ++n) {
      const auto expected = d.get(n);
      if (!expected || *expected != (*v)[n]) return false;
    }
    return true;
  }
  return glab::window_verifies(i, d, cfg_);
}

std::vector<std::uint64_t> Oracle::window_matches(const StreamView& d) const {
  const auto target = d.prefix(cfg_.window);
  if (!target) return {};
  build_table();
  const auto it = by_values_.find(*target);
  return it == by_values_.end() ? std::vector<std::uint64_t>{} : it->second;
}

std::optional<Natural> Oracle::min_index(const StreamView& d) const {
  const auto m = window_matches(d);
  if (m.empty()) return std::nullopt;
  return Natural{m.front()};
}

}  // namespace glab
