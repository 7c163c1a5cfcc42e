#include "glab/learners.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "glab/machine.hpp"
#include "glab/program.hpp"
#include "glab/transforms.hpp"

namespace glab {

void LearnerConfig::validate() const {
  if (index_bound == 0 || window == 0 || cap == 0 || stability_window == 0 || max_steps == 0 || verify_budget == 0) {
    throw std::invalid_argument("learner configuration values must be positive");
  }
}

std::optional<Natural> GuessTrace::final_guess() const {
  if (guesses.empty()) return std::nullopt;
  return guesses.back();
}

GuessTrace GuessTrace::from_guesses(std::vector<Natural> guesses, std::uint64_t stability_window) {
  GuessTrace t;
  t.guesses = std::move(guesses);
  std::uint64_t run_start = 0;
  for (std::uint64_t s = 1; s < t.guesses.size(); ++s) {
    if (t.guesses[s] != t.guesses[s - 1]) {
      ++t.mind_changes;
      run_start = s;
    }
  }
  if (!t.guesses.empty() && t.guesses.size() - run_start >= stability_window) {
    t.converged = true;
    t.stabilized_at = run_start;
  }
  return t;
}

void write_trace_csv(std::ostream& out, const GuessTrace& trace) {
  out << "step,guess,mind_change_flag\n";
  for (std::size_t s = 0; s < trace.guesses.size(); ++s) {
    const bool changed = s > 0 && trace.guesses[s] != trace.guesses[s - 1];
    out << s << ',' << trace.guesses[s] << ',' << (changed ? 1 : 0) << '\n';
  }
}

bool verify_output(const Natural& index, const StreamView& p, std::uint64_t window, std::uint64_t budget) {
  const auto lowered = lower(decode(index));
  Interpreter vm;
  for (std::uint64_t n = 0; n <= window; ++n) {
    const auto expected = p.get(n);
    if (!expected || !vm.run(lowered, n, budget).halted_with(*expected)) return false;
  }
  return true;
}

GuessTrace run_to_limit(const std::function<std::optional<Natural>()>& next, std::uint64_t stability_window,
                        std::uint64_t max_steps) {
  std::vector<Natural> guesses;
  std::uint64_t run = 0;
  while (guesses.size() < max_steps && run < stability_window) {
    auto g = next();
    if (!g) break;
    run = (!guesses.empty() && guesses.back() == *g) ? run + 1 : 1;
    guesses.push_back(std::move(*g));
  }
  return GuessTrace::from_guesses(std::move(guesses), stability_window);
}

EnumResult enum_learner(const StreamView& p, ProgramClass cls, const LearnerConfig& cfg,
                        const LoopRegistry* registry) {
  cfg.validate();
  if (cfg.stability_window <= cfg.window + 1) {
    throw std::invalid_argument("stability window must exceed window + 1");
  }
  if (cls == ProgramClass::kTotal && registry == nullptr) {
    throw std::invalid_argument("total class needs a LOOP registry");
  }
  const auto expected = p.prefix(cfg.window);
  EnumResult result;
  if (!expected) {
    result.failure = "input is partial on the window";
    return result;
  }

  const std::uint64_t candidates = cls == ProgramClass::kFull ? cfg.index_bound + 1 : registry->entries().size();
  Interpreter vm;
  std::uint64_t c = 0;
  std::uint64_t n = 0;
  auto source = [&]() -> std::optional<Natural> {
    while (c < candidates) {
      const Natural index = cls == ProgramClass::kFull ? Natural{c} : registry->entries()[c].index;
      if (n > cfg.window) return index;
      const std::uint64_t budget =
          cls == ProgramClass::kFull ? cfg.cap : loop_step_bound(registry->entries()[c].source, n);
      const auto r = vm.run(index, n, budget);
      const std::uint64_t want = (*expected)[n];
      if (r.halted_with(want)) {
        ++n;
        return index;
      }
      result.refutations.push_back(
          Refutation{index, n, want, r.is_halted() ? std::optional<std::uint64_t>{r.value()} : std::nullopt});
      ++c;
      n = 0;
    }
    return std::nullopt;
  };
  result.trace = run_to_limit(source, cfg.stability_window, cfg.max_steps);
  if (result.trace.converged) {
    result.limit = result.trace.final_guess();
  } else if (c >= candidates) {
    result.failure = "no candidate verifies the window";
  } else {
    result.failure = "max_steps reached before stabilization";
  }
  return result;
}

namespace {

constexpr std::uint64_t kWordBits = 64;

std::uint64_t words_for(std::uint64_t bits) { return (bits + kWordBits - 1) / kWordBits; }

bool outcomes_compatible(const std::vector<MaybeValue>& a, const std::vector<MaybeValue>& b) {
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (a[n] && b[n] && *a[n] != *b[n]) return false;
  }
  return true;
}

using Bits = std::vector<std::uint64_t>;

}  // namespace

CompatMatrix::CompatMatrix(const Oracle& oracle, std::uint64_t m) {
  if (m > oracle.config().index_bound) throw std::invalid_argument("compatibility universe exceeds the oracle");
  // Indices with identical window outcomes share a row, so compare classes.
  std::map<std::vector<MaybeValue>, std::uint64_t> class_of;
  std::vector<std::vector<MaybeValue>> classes;
  std::vector<std::uint64_t> cls(m + 1);
  partial_.resize(m + 1);
  for (std::uint64_t i = 0; i <= m; ++i) {
    auto out = oracle.window_outcomes(i);
    partial_[i] = std::any_of(out.begin(), out.end(), [](const MaybeValue& v) { return !v; });
    auto [it, fresh] = class_of.emplace(std::move(out), classes.size());
    if (fresh) classes.push_back(it->first);
    cls[i] = it->second;
  }
  const std::uint64_t d = classes.size();
  std::vector<std::vector<bool>> class_compat(d, std::vector<bool>(d));
  for (std::uint64_t a = 0; a < d; ++a) {
    for (std::uint64_t b = a; b < d; ++b) {
      class_compat[a][b] = class_compat[b][a] = outcomes_compatible(classes[a], classes[b]);
    }
  }
  std::vector<Bits> class_rows(d, Bits(words_for(m + 1), 0));
  for (std::uint64_t a = 0; a < d; ++a) {
    for (std::uint64_t j = 0; j <= m; ++j) {
      if (class_compat[a][cls[j]]) class_rows[a][j / kWordBits] |= std::uint64_t{1} << (j % kWordBits);
    }
  }
  rows_.reserve(m + 1);
  for (std::uint64_t i = 0; i <= m; ++i) rows_.push_back(class_rows[cls[i]]);
}

bool CompatMatrix::compatible(std::uint64_t i, std::uint64_t j) const {
  return (rows_.at(i)[j / kWordBits] >> (j % kWordBits)) & 1;
}

std::vector<std::uint64_t> CompatMatrix::pocket(std::uint64_t i, std::uint64_t m) const {
  if (m >= size()) throw std::out_of_range("pocket universe exceeds the matrix");
  std::vector<std::uint64_t> out;
  for (std::uint64_t j = 0; j <= m; ++j) {
    if (compatible(i, j)) out.push_back(j);
  }
  return out;
}

double CompatMatrix::partial_fraction(std::uint64_t m) const {
  if (m >= size()) throw std::out_of_range("universe exceeds the matrix");
  const auto k = std::count(partial_.begin(), partial_.begin() + static_cast<std::ptrdiff_t>(m + 1), true);
  return static_cast<double>(k) / static_cast<double>(m + 1);
}

PocketTable build_pockets(std::uint64_t m, const CompatMatrix& compat) {
  PocketTable t;
  for (std::uint64_t i = 0; i <= m; ++i) t.pockets.push_back(Pocket{i, compat.pocket(i, m)});
  t.survivors = t.pockets;
  return t;
}

PocketTable prune_pockets(PocketTable t, const CompatMatrix& compat) {
  std::vector<Pocket> kept;
  std::set<std::vector<std::uint64_t>> seen;
  for (auto& pk : t.survivors) {
    if (seen.contains(pk.members)) continue;
    seen.insert(pk.members);
    bool internal = true;
    for (auto a = pk.members.begin(); internal && a != pk.members.end(); ++a) {
      for (auto b = std::next(a); b != pk.members.end(); ++b) {
        if (!compat.compatible(*a, *b)) {
          internal = false;
          break;
        }
      }
    }
    if (internal) kept.push_back(pk);
  }
  t.survivors = std::move(kept);
  return t;
}

bool is_antichain(const std::vector<Pocket>& pockets) {
  for (std::size_t a = 0; a < pockets.size(); ++a) {
    for (std::size_t b = 0; b < pockets.size(); ++b) {
      if (a == b) continue;
      const auto& x = pockets[a].members;
      const auto& y = pockets[b].members;
      if (std::includes(y.begin(), y.end(), x.begin(), x.end())) return false;
    }
  }
  return true;
}

AmalgamationResult amalgamation_learn(const StreamView& p, std::uint64_t m, const Oracle& oracle,
                                      const CompatMatrix& compat, const LearnerConfig& cfg) {
  cfg.validate();
  AmalgamationResult result;
  result.table = prune_pockets(build_pockets(m, compat), compat);
  const auto expected = p.prefix(oracle.config().window);
  if (!expected) {
    result.failure = "input is partial on the window";
    return result;
  }

  std::vector<Pocket> alive = result.table.survivors;
  std::map<std::uint64_t, Natural> emitted;  // anchor -> dovetail index
  std::vector<Natural> guesses;
  for (std::uint64_t n = 0; n < expected->size(); ++n) {
    std::erase_if(alive, [&](const Pocket& pk) {
      return std::any_of(pk.members.begin(), pk.members.end(), [&](std::uint64_t j) {
        const auto v = oracle.window_outcomes(j)[n];
        return v && *v != (*expected)[n];
      });
    });
    if (alive.empty()) break;
    const auto& first = alive.front();
    auto it = emitted.find(first.anchor);
    if (it == emitted.end()) it = emitted.emplace(first.anchor, dovetail_index(first.members)).first;
    guesses.push_back(it->second);
  }
  result.trace = GuessTrace::from_guesses(std::move(guesses), cfg.stability_window);
  result.p_compatible = alive;
  if (alive.size() != 1) {
    result.failure = "promise violation: " + std::to_string(alive.size()) + " p-compatible pockets";
    return result;
  }
  result.index = emitted.at(alive.front().anchor);
  return result;
}

Natural set_code(const std::vector<std::uint64_t>& members, std::uint64_t k) {
  Natural code = 0;
  for (auto i : members) {
    if (i > k) throw std::invalid_argument("set member exceeds k");
    bit_set(code, static_cast<unsigned>(k - i));
  }
  return code;
}

BoundedMinResult bounded_min_learner(const StreamView& p, std::uint64_t k, const Oracle& oracle,
                                     const LearnerConfig& cfg) {
  cfg.validate();
  BoundedMinResult result;
  if (k > oracle.config().index_bound) throw std::invalid_argument("k exceeds the oracle universe");
  const std::uint64_t window = oracle.config().window;
  const auto expected = p.prefix(window);
  if (!expected) {
    result.failure = "input is partial on the window";
    return result;
  }
  std::vector<bool> in_set(k + 1, true);
  std::vector<std::uint64_t> all(k + 1);
  for (std::uint64_t i = 0; i <= k; ++i) all[i] = i;
  Natural code = set_code(all, k);
  std::vector<Natural> codes{code};
  const std::uint64_t stages = (k + 1) * (window + 1);
  for (std::uint64_t s = 0; s < stages; ++s) {
    const std::uint64_t i = s % (k + 1);
    const std::uint64_t n = s / (k + 1);
    if (in_set[i]) {
      const auto v = oracle.window_outcomes(i)[n];
      if (v && *v != (*expected)[n]) {
        in_set[i] = false;
        bit_unset(code, static_cast<unsigned>(k - i));
      }
    }
    codes.push_back(code);
  }
  for (std::uint64_t i = 0; i <= k; ++i) {
    if (in_set[i]) result.final_set.push_back(i);
  }
  result.codes = GuessTrace::from_guesses(std::move(codes), cfg.stability_window);
  if (result.final_set.empty()) {
    result.failure = "promise violation: every candidate was refuted";
    return result;
  }
  result.index = dovetail_index(result.final_set);
  return result;
}

LiminfRun kol_liminf_enumerator(const StreamView& p, const Oracle& oracle) {
  const auto& cfg = oracle.config();
  const auto expected = p.prefix(cfg.window);
  if (!expected) throw std::invalid_argument("input is partial on the window");
  // validated[i]: length of the prefix of p that phi_i reproduces
  std::vector<std::uint64_t> validated(cfg.index_bound + 1, 0);
  for (std::uint64_t i = 0; i <= cfg.index_bound; ++i) {
    const auto out = oracle.window_outcomes(i);
    std::uint64_t len = 0;
    while (len < out.size() && out[len] && *out[len] == (*expected)[len]) ++len;
    validated[i] = len;
  }
  LiminfRun run;
  for (std::uint64_t t = 1; t <= cfg.window + 1; ++t) {
    std::vector<std::uint64_t> stage;
    for (std::uint64_t i = 0; i <= cfg.index_bound; ++i) {
      if (validated[i] >= t) {
        stage.push_back(i);
        run.stream.emplace_back(i);
      }
    }
    run.stages.push_back(std::move(stage));
  }
  return run;
}

}  // namespace glab
