#include "glab/reductions.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

#include "glab/corpus.hpp"
#include "glab/machine.hpp"
#include "glab/program.hpp"
#include "glab/transforms.hpp"

namespace glab {

namespace {

constexpr std::size_t kMaxWitnesses = 20;

Instance seq_instance(std::string id, Literal l) { return Instance{std::move(id), StreamView(SeqDescriptor{std::move(l)})}; }

const Literal& require_literal(const Instance& x) {
  const auto* lit = literal_of(x);
  if (lit == nullptr) throw std::invalid_argument("instance " + x.id + " is not a literal");
  return *lit;
}

// Positions 0..prefix+period-1 already show every value the literal takes.
std::size_t settle_point(const Literal& l) { return l.prefix.size() + l.period(); }

std::uint64_t mex_of(const std::set<std::uint64_t>& s) {
  std::uint64_t n = 0;
  while (s.contains(n)) ++n;
  return n;
}

// t -> least value not among x(0..t); converges to the least non-enumerated value.
Literal mex_stream(const Literal& x) {
  const std::size_t t_end = settle_point(x);
  std::set<std::uint64_t> seen;
  std::vector<std::uint64_t> prefix;
  for (std::size_t t = 0; t < t_end; ++t) {
    seen.insert(x.at(t));
    prefix.push_back(mex_of(seen));
  }
  const auto last = prefix.back();
  return Literal::constant(last, std::move(prefix));
}

// Values of x at positions >= t.
std::set<std::uint64_t> values_from(const Literal& x, std::uint64_t t) {
  std::set<std::uint64_t> out;
  for (std::uint64_t s = t; s < x.prefix.size(); ++s) out.insert(x.prefix[s]);
  for (auto v : x.tail_values()) out.insert(v);
  return out;
}

// lim_n -> c_n: pair(n, t) is enumerated iff q(s) != n for some s >= t, so
// the non-enumerated codes are exactly pair(lim q, t) for t past the last change.
Instance limn_to_cn(const Instance& x) {
  const Literal q = require_literal(x);
  const std::uint64_t filler = pair_u64(q.at(0) + 1, 0);
  auto get = [q, filler](std::uint64_t pos) -> MaybeValue {
    const auto [s, r] = unpair_u64(pos);
    const auto [n, t] = unpair_u64(r);
    if (s >= t && q.at(s) != n) return r;
    return filler;
  };
  auto in_range = [q, filler](std::uint64_t v) {
    if (v == filler) return true;
    const auto [n, t] = unpair_u64(v);
    const auto vals = values_from(q, t);
    return vals.size() > 1 || !vals.contains(n);
  };
  return Instance{x.id, StreamView(get, in_range, "limn-to-cn")};
}

Answer first_coordinate(const Answer& a) {
  if (!fits_u64(a)) throw std::invalid_argument("answer out of range");
  return Answer{unpair_u64(to_u64(a)).first};
}

// p_n: the values occurring at least n times in x, as a periodic word.
FiniteFamily multiplicity_family(const Literal& x) {
  const auto tail = x.tail_values();
  const std::set<std::uint64_t> tail_set(tail.begin(), tail.end());
  std::map<std::uint64_t, std::uint64_t> count;
  for (auto v : x.prefix) ++count[v];
  const std::size_t horizon = x.prefix.size() + 2;
  FiniteFamily fam;
  for (std::size_t n = 0; n <= horizon; ++n) {
    std::set<std::uint64_t> s = tail_set;
    for (const auto& [v, c] : count) {
      if (c >= n) s.insert(v);
    }
    fam.members.push_back(StreamView(SeqDescriptor{Literal::periodic({s.begin(), s.end()})}));
  }
  return fam;
}

// Component programs for finite tupling.
Program component_program(const StreamView& s) {
  const auto* d = s.descriptor();
  if (d == nullptr) throw std::invalid_argument("family member has no descriptor");
  if (const auto* l = std::get_if<Literal>(d)) return literal_program(*l);
  return decode(std::get<Generated>(*d).index);
}

std::uint64_t saturate(const Natural& n) {
  return fits_u64(n) ? to_u64(n) : std::numeric_limits<std::uint64_t>::max();
}

ReductionPair identity_pair(std::string name) {
  return ReductionPair{std::move(name), [](const Instance& x) { return x; },
                       [](const Instance&, const Answer& a) { return a; }};
}

}  // namespace

std::size_t ReductionReport::witness_count() const {
  std::size_t n = 0;
  for (const auto& r : instances) n += r.witnesses.size();
  return n;
}

ReductionReport check_reduction(const ProblemSpec& f, const ProblemSpec& g, const ReductionPair& r,
                                const std::vector<Instance>& corpus, const std::string& corpus_name) {
  ReductionReport report;
  report.reduction = r.name;
  report.corpus = corpus_name;
  for (const auto& x : corpus) {
    InstanceRecord rec;
    rec.id = x.id;
    auto note = [&](Witness w) {
      if (rec.witnesses.size() < kMaxWitnesses) rec.witnesses.push_back(std::move(w));
    };
    try {
      if (!f.domain_check(x)) {
        note({"input-outside-domain", {}, {}, f.name + " rejects the instance"});
      } else {
        const Instance y = r.K(x);
        if (!g.domain_check(y)) {
          note({"domain-violation", {}, {}, "K output is outside the domain of " + g.name});
        } else {
          rec.g_answers = g.enumerate_answers(y);
          for (const auto& a : rec.g_answers) {
            try {
              const Answer b = r.H(x, a);
              rec.f_answers.push_back(b);
              if (!f.verify(x, b)) note({"verification-failure", a, b, f.name + " rejects H's answer"});
            } catch (const std::exception& e) {
              note({"error", a, {}, std::string("H: ") + e.what()});
            }
          }
        }
      }
    } catch (const std::exception& e) {
      note({"error", {}, {}, e.what()});
    }
    rec.pass = rec.witnesses.empty();
    report.instances.push_back(std::move(rec));
  }
  report.pass = std::all_of(report.instances.begin(), report.instances.end(), [](const auto& i) { return i.pass; });

  if (report.pass) {
    for (std::size_t k = 0; k < corpus.size(); ++k) {
      auto& rec = report.instances[k];
      for (const auto& b : rec.f_answers) {
        if (!f.verify(corpus[k], b)) {
          rec.witnesses.push_back({"reverification-failure", {}, b, "answer no longer verifies"});
          rec.pass = report.pass = false;
          break;
        }
      }
    }
  }
  return report;
}

ReductionPair mutate(const ReductionPair& r, const std::string& mode) {
  ReductionPair m = r;
  m.name = r.name + "/" + mode;
  if (mode == "constant-h") {
    m.H = [](const Instance&, const Answer&) { return Answer{0}; };
  } else if (mode == "shift-h") {
    m.H = [h = r.H](const Instance& x, const Answer& a) {
      const Answer b = h(x, a);
      return b == 0 ? Answer{1} : Answer{b - 1};
    };
  } else {
    throw std::invalid_argument("unknown mutant mode '" + mode + "'");
  }
  return m;
}

Catalog::Catalog(CatalogConfig cfg) : cfg_(cfg) {
  const auto& o = cfg_.oracle;
  oracle_ = std::make_shared<const Oracle>(o);
  b_oracle_ = std::make_shared<const Oracle>(OracleConfig{o.cap, o.window, cfg_.b_index_bound});
  const std::uint64_t w = cfg_.family_window;
  const std::uint64_t width = cfg_.max_family_width;
  family_oracle_ = std::make_shared<const Oracle>(OracleConfig{o.cap, w, o.index_bound});
  const std::uint64_t wide = std::max(pair_u64(width - 1, w), 1 + width * (w + 1));
  wide_oracle_ = std::make_shared<const Oracle>(OracleConfig{o.cap, wide, o.index_bound});

  const std::uint64_t ceiling = cfg_.answer_ceiling;
  LearnerConfig lcfg;
  lcfg.index_bound = o.index_bound;
  lcfg.window = o.window;
  lcfg.cap = o.cap;
  lcfg.stability_window = cfg_.stability_window;

  auto oracle = oracle_;
  auto literal_corpus = [](LiteralShape shape) {
    return [shape](std::size_t size, std::uint64_t seed) {
      std::mt19937_64 rng(seed);
      std::vector<Instance> out;
      for (std::size_t k = 0; k < size; ++k) out.push_back(seq_instance("s" + std::to_string(k), random_literal(rng, shape)));
      return out;
    };
  };
  const LiteralShape any_shape{4, 6, 3, false};
  const LiteralShape converging_shape{5, 5, 1, true};

  // Universe sequences: programs total on the window, plus a few literals.
  auto goedel_corpus = [oracle](std::size_t size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Instance> out;
    const Literal fixed[] = {Literal::constant(0), Literal::constant(1), Literal::constant(2),
                             Literal::constant(0, {1}), Literal::constant(1, {0})};
    for (const auto& l : fixed) {
      if (out.size() < size) out.push_back(seq_instance("l" + std::to_string(out.size()), l));
    }
    const auto& cfg = oracle->config();
    while (out.size() < size) {
      const std::uint64_t i = rng() % (cfg.index_bound + 1);
      if (!oracle->window_values(i)) continue;
      out.push_back(Instance{"i" + std::to_string(i), StreamView(SeqDescriptor{Generated{i, cfg.cap}})});
    }
    return out;
  };

  auto generic = [](const ReductionPair& base) {
    return [base](const std::string& mode) { return mutate(base, mode); };
  };

  {
    CatalogEntry e{"identity", make_lim_n(), make_lim_n(), identity_pair("identity"), {"constant-h", "shift-h"}, {},
                   literal_corpus(converging_shape)};
    e.mutant = generic(e.pair);
    add(std::move(e));
  }
  {
    ReductionPair p{"cn_limn",
                    [](const Instance& x) { return seq_instance(x.id, mex_stream(require_literal(x))); },
                    [](const Instance&, const Answer& a) { return a; }};
    CatalogEntry e{"cn_limn", make_cn(ceiling), make_lim_n(), p, {"constant-h", "shift-h"}, generic(p),
                   literal_corpus(any_shape)};
    add(std::move(e));
  }
  {
    ReductionPair p{"limn_cn", limn_to_cn, [](const Instance&, const Answer& a) { return first_coordinate(a); }};
    CatalogEntry e{"limn_cn", make_lim_n(), make_cn(ceiling), p, {"constant-h", "shift-h"}, generic(p),
                   literal_corpus(converging_shape)};
    add(std::move(e));
  }
  {
    ReductionPair p{"inf_cn",
                    [](const Instance& x) { return limn_to_cn(seq_instance(x.id, mex_stream(require_literal(x)))); },
                    [](const Instance&, const Answer& a) { return first_coordinate(a); }};
    CatalogEntry e{"inf_cn", make_inf(), make_cn(ceiling), p, {"constant-h", "shift-h"}, generic(p),
                   literal_corpus(any_shape)};
    add(std::move(e));
  }
  {
    ReductionPair p{"liminf_minhat",
                    [](const Instance& x) { return Instance{x.id, multiplicity_family(require_literal(x))}; },
                    [](const Instance&, const Answer& a) { return a; }};
    CatalogEntry e{"liminf_minhat", make_liminf_n(), make_lim_minhat(), p, {"constant-h", "shift-h"}, generic(p),
                   literal_corpus(any_shape)};
    add(std::move(e));
  }
  {
    auto k_of = [this](bool stop_early) {
      return [this, stop_early](const Instance& x) {
        return seq_instance(x.id, b_kolgeq_sequence(require_literal(x), stop_early));
      };
    };
    ReductionPair p{"b_kolgeq", k_of(false), [](const Instance&, const Answer& a) { return a; }};
    CatalogEntry e{"b_kolgeq", make_b(cfg_.b_index_bound), make_kol_geq(b_oracle_), p,
                   {"constant-h", "stop-early"}, {}, {}};
    e.mutant = [p, k_of](const std::string& mode) {
      if (mode != "stop-early") return mutate(p, mode);
      auto m = p;
      m.name += "/stop-early";
      m.K = k_of(true);
      return m;
    };
    // Monotone bounded q whose constructed sequence has a least index in the universe.
    auto g = e.g;
    e.corpus = [this, g](std::size_t size, std::uint64_t seed) {
      std::mt19937_64 rng(seed);
      std::vector<Instance> out;
      // q(0) = 0 with a larger limit: the only shape a stopped construction gets wrong
      for (const auto& q : {Literal::constant(3, {0}), Literal::constant(4, {0})}) {
        if (out.size() >= size) break;
        const auto x = seq_instance("q" + std::to_string(out.size()), q);
        if (g.domain_check(seq_instance(x.id, b_kolgeq_sequence(q)))) out.push_back(x);
      }
      for (std::size_t attempts = 0; out.size() < size && attempts < 40 * size; ++attempts) {
        auto q = random_monotone(rng, 2, 4);
        if (q.prefix.size() == 1 && rng() % 2) q.prefix.insert(q.prefix.begin(), 0);
        const auto x = seq_instance("q" + std::to_string(out.size()), q);
        if (g.domain_check(seq_instance(x.id, b_kolgeq_sequence(q)))) out.push_back(x);
      }
      return out;
    };
    add(std::move(e));
  }
  {
    ReductionPair p{"limn_g",
                    [this](const Instance& x) {
                      const auto seq = limn_g_sequence(require_literal(x));
                      return Instance{x.id, StreamView(SeqDescriptor{Generated{compile_literal(seq), cfg_.oracle.cap}})};
                    },
                    // phi_i(i); registers are 64 bits wide, so huge indices
                    // read the constant tail at the largest register value
                    [cap = o.cap](const Instance&, const Answer& i) {
                      const auto r = eval(i, saturate(i), cap);
                      if (!r.is_halted()) throw std::runtime_error("phi_i(i) did not halt within the cap");
                      return Answer{r.value()};
                    }};
    CatalogEntry e{"limn_g", make_lim_n(), make_g(oracle_), p, {"constant-h", "shift-h"}, generic(p),
                   literal_corpus(converging_shape)};
    add(std::move(e));
  }

  auto trace_literal = [oracle, lcfg](const Instance& x, bool stop_early) {
    const auto r = enum_learner(sequence_of(x), ProgramClass::kFull, lcfg);
    if (!r.limit) throw std::runtime_error("enumeration did not stabilize: " + r.failure);
    std::vector<std::uint64_t> guesses;
    for (const auto& gsz : r.trace.guesses) guesses.push_back(to_u64(gsz));
    if (stop_early) return seq_instance(x.id, Literal::constant(guesses.front()));
    return seq_instance(x.id, Literal::constant(to_u64(*r.limit), std::move(guesses)));
  };
  for (const auto& [name, f, g] : {std::tuple{std::string("kol_limn"), make_kol(oracle_), make_lim_n()},
                                   std::tuple{std::string("kolgeq_b"), make_kol_geq(oracle_), make_b(o.index_bound)}}) {
    ReductionPair p{name, [trace_literal](const Instance& x) { return trace_literal(x, false); },
                    [](const Instance&, const Answer& a) { return a; }};
    CatalogEntry e{name, f, g, p, {"constant-h", "shift-h", "stop-early"}, {}, goedel_corpus};
    e.mutant = [p, trace_literal](const std::string& mode) {
      if (mode != "stop-early") return mutate(p, mode);
      auto m = p;
      m.name += "/stop-early";
      m.K = [trace_literal](const Instance& x) { return trace_literal(x, true); };
      return m;
    };
    add(std::move(e));
  }
  {
    ReductionPair p{"lpo_kol",
                    [](const Instance& x) { return seq_instance(x.id, lpo_normalize(require_literal(x))); },
                    [oracle](const Instance&, const Answer& a) {
                      const auto zero_index = oracle->min_index(StreamView(SeqDescriptor{Literal::constant(0)}));
                      return Answer{zero_index && a == *zero_index ? 1 : 0};
                    }};
    CatalogEntry e{"lpo_kol", make_lpo(), make_kol(oracle_), p, {"drop-normalization", "constant-h", "shift-h"}, {}, {}};
    e.mutant = [p](const std::string& mode) {
      if (mode != "drop-normalization") return mutate(p, mode);
      auto m = p;
      m.name += "/drop-normalization";
      m.K = [](const Instance& x) { return x; };
      return m;
    };
    e.corpus = [](std::size_t size, std::uint64_t seed) {
      std::mt19937_64 rng(seed);
      std::vector<Instance> out;
      for (std::size_t k = 0; k < size; ++k) out.push_back(seq_instance("z" + std::to_string(k), random_lpo_instance(rng, k % 2 == 0)));
      return out;
    };
    add(std::move(e));
  }

  auto family_corpus = [this](const std::string& problem, ProblemSpec f, ProblemSpec g,
                              std::function<Instance(const Instance&)> K) {
    return [this, problem, f, g, K](std::size_t size, std::uint64_t seed) {
      std::vector<Instance> out;
      const auto pool = generate_corpus(CorpusKind::kFamilies, 6 * size, seed, family_oracle_);
      for (const auto& entry : pool) {
        if (out.size() == size) break;
        if (entry.problem != problem || !f.domain_check(entry.instance)) continue;
        if (g.domain_check(K(entry.instance))) out.push_back(entry.instance);
      }
      return out;
    };
  };
  {
    auto K = [](const Instance& x) { return Instance{x.id, std::get<Family>(x.payload).tupled}; };
    auto H_of = [](std::uint64_t shift) {
      return [shift](const Instance& x, const Answer& i) {
        std::vector<Natural> items;
        for (std::uint64_t n = 0; n < std::get<Family>(x.payload).width; ++n) items.push_back(project_component(i, n + shift));
        return encode_list(items);
      };
    };
    ReductionPair p{"ghat_g", K, H_of(0)};
    CatalogEntry e{"ghat_g", make_ghat(family_oracle_), make_g(wide_oracle_), p, {"constant-h", "wrong-component"}, {}, {}};
    e.mutant = [p, H_of](const std::string& mode) {
      if (mode != "wrong-component") return mutate(p, mode);
      auto m = p;
      m.name += "/wrong-component";
      m.H = H_of(1);
      return m;
    };
    e.corpus = family_corpus("ghat", e.f, e.g, K);
    add(std::move(e));
  }
  {
    auto K = [cap = o.cap](const Instance& x) {
      std::vector<Program> progs;
      for (const auto& s : std::get<FiniteFamily>(x.payload).members) progs.push_back(component_program(s));
      return Instance{x.id, StreamView(SeqDescriptor{Generated{encode(finite_tuple_program(progs)), 2 * cap}})};
    };
    auto H_of = [](std::uint64_t shift) {
      return [shift](const Instance& x, const Answer& i) {
        const std::uint64_t n = std::get<FiniteFamily>(x.payload).members.size();
        std::vector<Natural> items;
        for (std::uint64_t j = 0; j < n; ++j) items.push_back(precompose_affine(i, n, 1 + j + shift));
        return encode_list(items);
      };
    };
    ReductionPair p{"gstar_g", K, H_of(0)};
    CatalogEntry e{"gstar_g", make_gstar(family_oracle_), make_g(wide_oracle_), p, {"constant-h", "wrong-component"}, {}, {}};
    e.mutant = [p, H_of](const std::string& mode) {
      if (mode != "wrong-component") return mutate(p, mode);
      auto m = p;
      m.name += "/wrong-component";
      m.H = H_of(1);
      return m;
    };
    e.corpus = family_corpus("gstar", e.f, e.g, K);
    add(std::move(e));
  }
  {
    auto p = identity_pair("g_kol");
    add(CatalogEntry{"g_kol", make_g(oracle_), make_kol(oracle_), p, {"constant-h", "shift-h"}, generic(p), goedel_corpus});
  }
  {
    auto p = identity_pair("kolgeq_g");
    add(CatalogEntry{"kolgeq_g", make_kol_geq(oracle_), make_g(oracle_), p, {"constant-h", "shift-h"}, generic(p),
                     goedel_corpus});
  }
  {
    ReductionPair p{"ggeq_g", [](const Instance& x) { return Instance{x.id, std::get<SeqBound>(x.payload).seq}; },
                    [](const Instance&, const Answer& a) { return a; }};
    auto corpus = [oracle, goedel_corpus](std::size_t size, std::uint64_t seed) {
      std::mt19937_64 rng(seed ^ 0x5eed);
      std::vector<Instance> out;
      for (auto& x : goedel_corpus(size, seed)) {
        const auto s = sequence_of(x);
        const auto m = oracle->min_index(s);
        if (m) out.push_back(Instance{x.id, SeqBound{s, to_u64(*m) + rng() % 50}});
      }
      return out;
    };
    add(CatalogEntry{"ggeq_g", make_g_geq(oracle_), make_g(oracle_), p, {"constant-h", "shift-h"}, generic(p), corpus});
  }
}

void Catalog::add(CatalogEntry e) {
  order_.push_back(e.name);
  entries_.emplace(e.name, std::move(e));
}

std::vector<std::string> Catalog::names() const { return order_; }

const CatalogEntry& Catalog::get(const std::string& name) const {
  const auto it = entries_.find(name);
  if (it == entries_.end()) throw std::out_of_range("unknown reduction '" + name + "'");
  return it->second;
}

Literal Catalog::b_kolgeq_sequence(const Literal& q, bool stop_early) const {
  auto search = [this](std::uint64_t k, std::uint64_t lower) {
    const auto n = b_oracle_->search_R(k, lower, lower + 100000);
    if (!n) throw std::runtime_error("no R element found for k = " + std::to_string(k));
    return *n;
  };
  // Running maximum: the monotone sequence with the same bounds.
  const std::size_t t_end = settle_point(q);
  std::vector<std::uint64_t> qm;
  for (std::size_t k = 0; k <= t_end; ++k) qm.push_back(std::max(q.at(k), k ? qm.back() : 0));
  std::vector<std::uint64_t> p{search(0, qm[0])};
  if (stop_early) return Literal::constant(p[0]);
  for (std::size_t k = 1; k <= t_end; ++k) p.push_back(qm[k] > qm[k - 1] ? search(k, qm[k]) : p.back());
  const auto last = p.back();
  p.pop_back();
  return Literal::constant(last, std::move(p));
}

Literal Catalog::limn_g_sequence(const Literal& q) const {
  if (!q.converges()) throw std::invalid_argument("lim_n instance does not converge");
  auto search = [this](std::uint64_t k, std::uint64_t lower) {
    const auto n = oracle_->search_R(k, lower, lower + 100000);
    if (!n) throw std::runtime_error("no R element found for k = " + std::to_string(k));
    return *n;
  };
  std::vector<std::uint64_t> p{search(0, 1), q.at(0)};
  for (std::uint64_t k = 0; k < q.prefix.size(); ++k) {
    if (q.at(k + 1) != q.at(k)) {
      p.push_back(search(2 * k + 2, 2 * k + 3));
      p.push_back(q.at(k + 1));
    } else {
      p.push_back(q.at(k + 1));
      p.push_back(q.at(k + 1));
    }
  }
  return Literal::constant(q.limit(), std::move(p));
}

Literal Catalog::lpo_normalize(const Literal& p) {
  if (p.is_zero()) return Literal::constant(0);
  std::uint64_t n = 0;
  while (p.at(n) == 0) ++n;
  return Literal::constant(1, std::vector<std::uint64_t>(n, 0));
}

}  // namespace glab
