#include "glab/corpus.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "glab/program.hpp"
#include "glab/transforms.hpp"

namespace glab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool takes_bound(const std::string& p) { return p == "k_n" || p == "g_geq"; }
bool takes_width(const std::string& p) { return p == "ghat"; }
bool takes_members(const std::string& p) { return p == "gstar" || p == "lim_minhat"; }

// Removes a trailing `key=<n>` token from `rest`.
std::uint64_t take_trailing(std::string& rest, const std::string& key) {
  const auto pos = rest.rfind(" " + key + "=");
  if (pos == std::string::npos) throw std::invalid_argument("missing " + key + "=");
  const auto value = rest.substr(pos + key.size() + 2);
  rest = trim(rest.substr(0, pos));
  std::size_t used = 0;
  const auto v = std::stoull(value, &used);
  if (used != value.size()) throw std::invalid_argument("bad " + key + " value '" + value + "'");
  return v;
}

std::string descriptor_text(const StreamView& s) {
  if (const auto* d = s.descriptor()) return to_text(*d);
  throw std::invalid_argument("stream '" + s.label() + "' has no descriptor");
}

StreamView stream(SeqDescriptor d) { return StreamView(std::move(d)); }

}  // namespace

CorpusEntry parse_entry(const std::string& line) {
  std::string rest = trim(line);
  if (rest.rfind("problem=", 0) != 0) throw std::invalid_argument("line must start with problem=");
  auto sp = rest.find(' ');
  CorpusEntry e;
  e.problem = rest.substr(8, sp == std::string::npos ? std::string::npos : sp - 8);
  const auto names = problem_names();
  if (std::find(names.begin(), names.end(), e.problem) == names.end()) {
    throw std::invalid_argument("unknown problem '" + e.problem + "'");
  }
  rest = sp == std::string::npos ? "" : trim(rest.substr(sp));
  if (rest.rfind("id=", 0) == 0) {
    sp = rest.find(' ');
    e.instance.id = rest.substr(3, sp == std::string::npos ? std::string::npos : sp - 3);
    rest = sp == std::string::npos ? "" : trim(rest.substr(sp));
  }
  if (rest.empty()) throw std::invalid_argument("missing payload");

  if (takes_bound(e.problem)) {
    const auto m = take_trailing(rest, "m");
    e.instance.payload = SeqBound{stream(parse_descriptor(rest)), m};
  } else if (takes_width(e.problem)) {
    const auto w = take_trailing(rest, "width");
    e.instance.payload = Family{stream(parse_descriptor(rest)), w};
  } else if (takes_members(e.problem)) {
    FiniteFamily fam;
    std::istringstream parts(rest);
    std::string part;
    while (std::getline(parts, part, '|')) fam.members.push_back(stream(parse_descriptor(trim(part))));
    e.instance.payload = std::move(fam);
  } else if (rest.rfind("stage@", 0) == 0) {
    e.instance.payload = parse_converging_name(rest);
  } else {
    e.instance.payload = stream(parse_descriptor(rest));
  }
  return e;
}

std::string format_entry(const CorpusEntry& e) {
  std::string out = "problem=" + e.problem;
  if (!e.instance.id.empty()) out += " id=" + e.instance.id;
  out += ' ';
  const auto& p = e.instance.payload;
  if (const auto* s = std::get_if<StreamView>(&p)) {
    out += descriptor_text(*s);
  } else if (const auto* sb = std::get_if<SeqBound>(&p)) {
    out += descriptor_text(sb->seq) + " m=" + std::to_string(sb->m);
  } else if (const auto* f = std::get_if<Family>(&p)) {
    out += descriptor_text(f->tupled) + " width=" + std::to_string(f->width);
  } else if (const auto* ff = std::get_if<FiniteFamily>(&p)) {
    for (std::size_t j = 0; j < ff->members.size(); ++j) out += (j ? " | " : "") + descriptor_text(ff->members[j]);
  } else {
    out += to_text(std::get<ConvergingName>(p));
  }
  return out;
}

std::vector<CorpusEntry> parse_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    try {
      auto e = parse_entry(t);
      if (e.instance.id.empty()) e.instance.id = "L" + std::to_string(no);
      out.push_back(std::move(e));
    } catch (const std::exception& ex) {
      throw CorpusError(no, ex.what());
    }
  }
  return out;
}

void write_corpus(std::ostream& out, const std::vector<CorpusEntry>& entries) {
  for (const auto& e : entries) out << format_entry(e) << '\n';
}

std::optional<CorpusKind> parse_corpus_kind(const std::string& s) {
  if (s == "total-programs") return CorpusKind::kTotalPrograms;
  if (s == "literal-sequences") return CorpusKind::kLiteralSequences;
  if (s == "bounded-monotone") return CorpusKind::kBoundedMonotone;
  if (s == "lpo-mixed") return CorpusKind::kLpoMixed;
  if (s == "families") return CorpusKind::kFamilies;
  return std::nullopt;
}

std::string to_string(CorpusKind k) {
  switch (k) {
    case CorpusKind::kTotalPrograms: return "total-programs";
    case CorpusKind::kLiteralSequences: return "literal-sequences";
    case CorpusKind::kBoundedMonotone: return "bounded-monotone";
    case CorpusKind::kLpoMixed: return "lpo-mixed";
    case CorpusKind::kFamilies: return "families";
  }
  return "?";
}

Literal random_literal(std::mt19937_64& rng, const LiteralShape& shape) {
  auto value = [&] { return rng() % (shape.max_value + 1); };
  std::vector<std::uint64_t> prefix(rng() % (shape.max_prefix + 1));
  for (auto& v : prefix) v = value();
  if (shape.converging || rng() % 2 == 0) return Literal::constant(value(), std::move(prefix));
  std::vector<std::uint64_t> word(1 + rng() % shape.max_period);
  for (auto& v : word) v = value();
  return Literal::periodic(std::move(word), std::move(prefix));
}

Literal random_monotone(std::mt19937_64& rng, std::size_t max_prefix, std::uint64_t max_value) {
  std::vector<std::uint64_t> prefix(rng() % (max_prefix + 1));
  std::uint64_t v = 0;
  for (auto& x : prefix) {
    v = std::min<std::uint64_t>(max_value, v + rng() % 3);
    x = v;
  }
  return Literal::constant(std::min<std::uint64_t>(max_value, v + rng() % 3), std::move(prefix));
}

Literal random_lpo_instance(std::mt19937_64& rng, bool zero) {
  if (zero) {
    std::vector<std::uint64_t> prefix(rng() % 4, 0);
    if (rng() % 2) return Literal::constant(0, std::move(prefix));
    return Literal::periodic(std::vector<std::uint64_t>(1 + rng() % 3, 0), std::move(prefix));
  }
  const std::size_t first = rng() % 2;
  std::vector<std::uint64_t> prefix(first, 0);
  prefix.push_back(1 + rng() % 5);
  const std::size_t extra = rng() % 3;
  for (std::size_t k = 0; k < extra; ++k) prefix.push_back(rng() % 4);
  if (rng() % 2) return Literal::constant(rng() % 3, std::move(prefix));
  return Literal::periodic({rng() % 3, rng() % 3}, std::move(prefix));
}

std::vector<CorpusEntry> generate_corpus(CorpusKind kind, std::size_t size, std::uint64_t seed,
                                         std::shared_ptr<const Oracle> oracle) {
  std::mt19937_64 rng(seed);
  const auto& cfg = oracle->config();
  std::vector<CorpusEntry> out;
  auto add = [&](std::string problem, Payload payload) {
    const std::string id = to_string(kind).substr(0, 1) + std::to_string(out.size());
    out.push_back(CorpusEntry{std::move(problem), Instance{id, std::move(payload)}});
  };

  switch (kind) {
    case CorpusKind::kTotalPrograms: {
      std::vector<std::uint64_t> totals;
      for (std::uint64_t i = 0; i <= cfg.index_bound; ++i) {
        if (oracle->window_values(i)) totals.push_back(i);
      }
      if (totals.empty()) throw std::runtime_error("no total programs in the universe");
      std::shuffle(totals.begin(), totals.end(), rng);
      for (std::size_t k = 0; k < size; ++k) {
        add("kol", stream(Generated{totals[k % totals.size()], cfg.cap}));
      }
      break;
    }
    case CorpusKind::kLiteralSequences:
      for (std::size_t k = 0; k < size; ++k) add("cl_n", stream(random_literal(rng, {})));
      break;
    case CorpusKind::kBoundedMonotone:
      for (std::size_t k = 0; k < size; ++k) add("b", stream(random_monotone(rng, 4, 5)));
      break;
    case CorpusKind::kLpoMixed:
      for (std::size_t k = 0; k < size; ++k) add("lpo", stream(random_lpo_instance(rng, k % 2 == 0)));
      break;
    case CorpusKind::kFamilies: {
      std::vector<std::uint64_t> totals;
      for (std::uint64_t i = 0; i <= std::min<std::uint64_t>(cfg.index_bound, 300); ++i) {
        if (oracle->window_values(i)) totals.push_back(i);
      }
      const auto ghat = make_ghat(oracle);
      const auto gstar = make_gstar(oracle);
      const Natural projections[] = {encode(first_projection_program()), encode(second_projection_program())};
      for (std::size_t attempts = 0; out.size() < size && attempts < 50 * size + 50; ++attempts) {
        if (out.size() % 2 == 0) {
          const std::uint64_t width = 1 + rng() % 3;
          const std::uint64_t pick = rng() % 4;
          const Natural q = pick < 2 ? projections[pick] : Natural{totals[rng() % totals.size()]};
          Instance x{"", Family{stream(Generated{q, cfg.cap}), width}};
          if (ghat.domain_check(x)) add("ghat", std::move(x.payload));
        } else {
          FiniteFamily fam;
          const std::size_t n = 1 + rng() % 3;
          for (std::size_t j = 0; j < n; ++j) {
            if (rng() % 2) {
              fam.members.push_back(stream(Generated{totals[rng() % totals.size()], cfg.cap}));
            } else {
              const auto lit = random_literal(rng, {3, 4, 2, false});
              fam.members.push_back(stream(Generated{compile_literal(lit), cfg.cap}));
            }
          }
          Instance x{"", std::move(fam)};
          if (gstar.domain_check(x)) add("gstar", std::move(x.payload));
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace glab
