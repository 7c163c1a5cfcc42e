#include "glab/spaces.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "glab/machine.hpp"

namespace glab {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::uint64_t parse_u64(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw std::invalid_argument("expected a natural number, got '" + s + "'");
  }
  return to_u64(parse_natural(s));
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  if (s.empty()) return out;
  for (const auto& item : split(s, ',')) out.push_back(parse_u64(item));
  return out;
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

Literal from_values(std::vector<std::uint64_t> prefix, std::vector<std::uint64_t> word) {
  if (std::all_of(word.begin(), word.end(), [&](auto v) { return v == word.front(); })) {
    return Literal::constant(word.front(), std::move(prefix));
  }
  return Literal::periodic(std::move(word), std::move(prefix));
}

// Generated streams share one interpreter per view.
struct GeneratedSource {
  Generated gen;
  mutable std::mutex mu;
  mutable Interpreter vm;

  MaybeValue get(std::uint64_t n) const {
    std::lock_guard lock(mu);
    const auto out = vm.run(gen.index, n, gen.budget);
    if (!out.is_halted()) return std::nullopt;
    return out.value();
  }
};

}  // namespace

SeqDescriptor parse_descriptor(std::string_view text) {
  const auto w = words(text);
  if (w.empty()) throw std::invalid_argument("empty descriptor");
  std::vector<std::pair<std::string, std::string>> fields;
  for (std::size_t k = 1; k < w.size(); ++k) {
    const auto eq = w[k].find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + w[k] + "'");
    fields.emplace_back(w[k].substr(0, eq), w[k].substr(eq + 1));
  }
  if (w[0] == "lit") {
    Literal lit = Literal::constant(0);
    bool have_tail = false;
    for (const auto& [key, value] : fields) {
      if (key == "prefix") {
        lit.prefix = parse_list(value);
      } else if (key == "tail") {
        const auto colon = value.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("tail needs const: or per:");
        const auto kind = value.substr(0, colon);
        const auto body = value.substr(colon + 1);
        if (kind == "const") {
          lit.tail = ConstantTail{parse_u64(body)};
        } else if (kind == "per") {
          lit.tail = PeriodicTail{parse_list(body)};
        } else {
          throw std::invalid_argument("unknown tail kind '" + kind + "'");
        }
        have_tail = true;
      } else {
        throw std::invalid_argument("unknown literal field '" + key + "'");
      }
    }
    if (!have_tail) throw std::invalid_argument("literal descriptor needs tail=");
    lit.validate();
    return lit;
  }
  if (w[0] == "gen") {
    Generated g;
    bool have_index = false, have_budget = false;
    for (const auto& [key, value] : fields) {
      if (key == "index") {
        g.index = parse_natural(value);
        have_index = true;
      } else if (key == "budget") {
        g.budget = parse_u64(value);
        have_budget = true;
      } else {
        throw std::invalid_argument("unknown generated field '" + key + "'");
      }
    }
    if (!have_index || !have_budget) throw std::invalid_argument("gen descriptor needs index= and budget=");
    return g;
  }
  throw std::invalid_argument("unknown descriptor kind '" + w[0] + "'");
}

std::string to_text(const SeqDescriptor& d) {
  if (const auto* g = std::get_if<Generated>(&d)) {
    return "gen index=" + g->index.str() + " budget=" + std::to_string(g->budget);
  }
  const auto& lit = std::get<Literal>(d);
  std::string out = "lit";
  if (!lit.prefix.empty()) out += " prefix=" + join(lit.prefix);
  if (const auto* c = std::get_if<ConstantTail>(&lit.tail)) {
    out += " tail=const:" + std::to_string(c->value);
  } else {
    out += " tail=per:" + join(std::get<PeriodicTail>(lit.tail).word);
  }
  return out;
}

StreamView::StreamView(SeqDescriptor d) : descriptor_(d) {
  if (const auto* lit = std::get_if<Literal>(&d)) {
    lit->validate();
    auto copy = std::make_shared<const Literal>(*lit);
    get_ = [copy](std::uint64_t n) -> MaybeValue { return copy->at(n); };
    in_range_ = [copy](std::uint64_t v) { return copy->range().contains(v); };
    label_ = to_text(d);
  } else {
    auto src = std::make_shared<GeneratedSource>();
    src->gen = std::get<Generated>(d);
    get_ = [src](std::uint64_t n) { return src->get(n); };
    label_ = to_text(d);
  }
}

StreamView::StreamView(Getter get, RangeOracle in_range, std::string label)
    : get_(std::move(get)), in_range_(std::move(in_range)), label_(std::move(label)) {}

MaybeValue StreamView::get(std::uint64_t n) const {
  if (!get_) throw std::logic_error("empty StreamView");
  return get_(n);
}

std::optional<std::vector<std::uint64_t>> StreamView::prefix(std::uint64_t n) const {
  std::vector<std::uint64_t> out;
  out.reserve(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k) {
    const auto v = get(k);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

const Literal* StreamView::literal() const {
  return descriptor_ ? std::get_if<Literal>(&*descriptor_) : nullptr;
}

bool StreamView::in_range(std::uint64_t v) const {
  if (!in_range_) throw std::logic_error("stream has no range oracle");
  return in_range_(v);
}

MaybeValue stream_get(const StreamView& s, std::uint64_t n) { return s.get(n); }

StreamView pair_streams(const StreamView& p, const StreamView& q) {
  if (p.literal() && q.literal()) return StreamView(SeqDescriptor{interleave(*p.literal(), *q.literal())});
  return StreamView([p, q](std::uint64_t n) { return n % 2 == 0 ? p.get(n / 2) : q.get(n / 2); }, nullptr,
                    "pair(" + p.label() + ", " + q.label() + ")");
}

StreamView tuple_streams(std::function<StreamView(std::uint64_t)> family) {
  return StreamView(
      [family = std::move(family)](std::uint64_t m) {
        const auto [n, k] = unpair_u64(m);
        return family(n).get(k);
      },
      nullptr, "tuple");
}

StreamView project_stream(const StreamView& s, std::uint64_t n) {
  return StreamView([s, n](std::uint64_t k) { return s.get(pair_u64(n, k)); }, nullptr,
                    "component " + std::to_string(n) + " of " + s.label());
}

StreamView decimate(const StreamView& s, std::uint64_t stride, std::uint64_t offset) {
  if (const auto* lit = s.literal()) return StreamView(SeqDescriptor{decimate(*lit, stride, offset)});
  return StreamView([s, stride, offset](std::uint64_t k) { return s.get(stride * k + offset); }, nullptr,
                    "decimate(" + s.label() + ")");
}

Literal interleave(const Literal& p, const Literal& q) {
  const std::uint64_t head = std::max(p.prefix.size(), q.prefix.size());
  const std::uint64_t period = std::lcm(p.period(), q.period());
  auto at = [&](std::uint64_t m) { return m % 2 == 0 ? p.at(m / 2) : q.at(m / 2); };
  std::vector<std::uint64_t> prefix, word;
  for (std::uint64_t m = 0; m < 2 * head; ++m) prefix.push_back(at(m));
  for (std::uint64_t m = 2 * head; m < 2 * head + 2 * period; ++m) word.push_back(at(m));
  return from_values(std::move(prefix), std::move(word));
}

Literal decimate(const Literal& p, std::uint64_t stride, std::uint64_t offset) {
  if (stride == 0) return Literal::constant(p.at(offset));
  const std::uint64_t len = p.prefix.size();
  const std::uint64_t head = offset >= len ? 0 : (len - offset + stride - 1) / stride;
  const std::uint64_t period = p.period() / std::gcd(p.period(), stride);
  auto at = [&](std::uint64_t k) { return p.at(stride * k + offset); };
  std::vector<std::uint64_t> prefix, word;
  for (std::uint64_t k = 0; k < head; ++k) prefix.push_back(at(k));
  for (std::uint64_t k = head; k < head + period; ++k) word.push_back(at(k));
  return from_values(std::move(prefix), std::move(word));
}

void ConvergingName::validate() const {
  if (stages.empty()) throw std::invalid_argument("converging name needs a stage");
  for (std::size_t j = 1; j < stages.size(); ++j) {
    if (stages[j].first <= stages[j - 1].first) {
      throw std::invalid_argument("switch times must increase strictly");
    }
  }
}

const SeqDescriptor& name_at_stage(const ConvergingName& c, std::uint64_t t) {
  c.validate();
  const SeqDescriptor* active = &c.stages.front().second;
  for (const auto& [time, d] : c.stages) {
    if (time <= t) active = &d;
  }
  return *active;
}

ConvergingName parse_converging_name(std::string_view text) {
  ConvergingName out;
  std::optional<std::uint64_t> time;
  std::string body;
  auto flush = [&] {
    if (time) out.stages.emplace_back(*time, parse_descriptor(body));
    body.clear();
  };
  for (const auto& w : words(text)) {
    if (w.rfind("stage@", 0) == 0) {
      flush();
      time = parse_u64(w.substr(6));
    } else {
      if (!time) throw std::invalid_argument("converging name must start with stage@<t>");
      body += w + ' ';
    }
  }
  flush();
  out.validate();
  return out;
}

std::string to_text(const ConvergingName& c) {
  std::string out;
  for (const auto& [t, d] : c.stages) {
    if (!out.empty()) out += ' ';
    out += "stage@" + std::to_string(t) + ' ' + to_text(d);
  }
  return out;
}

}  // namespace glab
