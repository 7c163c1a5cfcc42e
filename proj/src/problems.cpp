#include "glab/problems.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "glab/program.hpp"
#include "glab/transforms.hpp"

namespace glab {

namespace {

std::uint64_t mex(const std::set<std::uint64_t>& s) {
  std::uint64_t n = 0;
  while (s.contains(n)) ++n;
  return n;
}

bool is_sequence(const Instance& x) {
  return std::holds_alternative<StreamView>(x.payload) || std::holds_alternative<ConvergingName>(x.payload);
}

bool small(const Answer& a) { return fits_u64(a); }

// Wraps a total single-valued function of a Literal instance.
ProblemSpec literal_function(std::string name, std::function<bool(const Literal&)> domain,
                             std::function<std::uint64_t(const Literal&)> f) {
  ProblemSpec spec;
  spec.name = std::move(name);
  spec.domain_check = [domain](const Instance& x) {
    const auto* lit = literal_of(x);
    return lit != nullptr && domain(*lit);
  };
  spec.verify = [f](const Instance& x, const Answer& a) {
    const auto* lit = literal_of(x);
    return lit != nullptr && small(a) && to_u64(a) == f(*lit);
  };
  spec.enumerate_answers = [f](const Instance& x) { return std::vector<Answer>{f(*literal_of(x))}; };
  spec.solve_ref = [f](const Instance& x) { return Answer{f(*literal_of(x))}; };
  return spec;
}

// Wraps a multivalued problem on Literals whose answers form a finite set.
ProblemSpec literal_relation(std::string name, std::function<std::set<std::uint64_t>(const Literal&)> answers) {
  ProblemSpec spec;
  spec.name = std::move(name);
  spec.domain_check = [answers](const Instance& x) {
    const auto* lit = literal_of(x);
    return lit != nullptr && !answers(*lit).empty();
  };
  spec.verify = [answers](const Instance& x, const Answer& a) {
    const auto* lit = literal_of(x);
    return lit != nullptr && small(a) && answers(*lit).contains(to_u64(a));
  };
  spec.enumerate_answers = [answers](const Instance& x) {
    std::vector<Answer> out;
    for (auto v : answers(*literal_of(x))) out.emplace_back(v);
    return out;
  };
  spec.solve_ref = [answers](const Instance& x) { return Answer{*answers(*literal_of(x)).begin()}; };
  return spec;
}

std::vector<Answer> g_answers(const Oracle& oracle, const StreamView& s) {
  std::vector<Answer> out;
  for (auto i : oracle.window_matches(s)) out.emplace_back(i);
  if (const auto* d = s.descriptor()) {
    if (const auto* g = std::get_if<Generated>(d)) {
      if (g->index > oracle.config().index_bound && oracle.window_verifies(g->index, s)) out.push_back(g->index);
    }
  }
  return out;
}

// Cartesian product of per-component answers, each combination list-coded.
std::vector<Answer> product_answers(const std::vector<std::vector<Answer>>& per) {
  std::vector<std::vector<Natural>> acc{{}};
  for (const auto& options : per) {
    std::vector<std::vector<Natural>> next;
    for (const auto& prefix : acc) {
      for (const auto& o : options) {
        auto v = prefix;
        v.push_back(o);
        next.push_back(std::move(v));
      }
    }
    acc = std::move(next);
  }
  std::vector<Answer> out;
  for (const auto& v : acc) out.push_back(encode_list(v));
  return out;
}

Natural carried_component(const StreamView& tupled, std::uint64_t n) {
  if (const auto* d = tupled.descriptor()) {
    if (const auto* g = std::get_if<Generated>(d)) return project_component(g->index, n);
  }
  return Natural{-1};
}

}  // namespace

StreamView sequence_of(const Instance& x) {
  if (const auto* s = std::get_if<StreamView>(&x.payload)) return *s;
  if (const auto* c = std::get_if<ConvergingName>(&x.payload)) return StreamView(c->limit());
  throw std::invalid_argument("instance " + x.id + " is not a sequence");
}

const Literal* literal_of(const Instance& x) {
  if (const auto* s = std::get_if<StreamView>(&x.payload)) return s->literal();
  if (const auto* c = std::get_if<ConvergingName>(&x.payload)) return std::get_if<Literal>(&c->limit());
  return nullptr;
}

ProblemSpec make_lpo() {
  return literal_function(
      "lpo", [](const Literal&) { return true; }, [](const Literal& p) -> std::uint64_t { return p.is_zero(); });
}

ProblemSpec make_llpo() {
  return literal_relation("llpo", [](const Literal& p) {
    std::set<std::uint64_t> out;
    for (std::uint64_t i : {0, 1}) {
      if (!decimate(p, 2, i).is_zero()) out.insert(i);
    }
    return out;
  });
}

ProblemSpec make_lim_n() {
  return literal_function(
      "lim_n", [](const Literal& p) { return p.converges(); }, [](const Literal& p) { return p.limit(); });
}

ProblemSpec make_b(std::uint64_t ceiling) {
  ProblemSpec spec;
  spec.name = "b";
  spec.domain_check = [ceiling](const Instance& x) {
    const auto* lit = literal_of(x);
    return lit != nullptr && lit->max_value() <= ceiling;
  };
  // Any upper bound is an answer; the ceiling only limits the listing.
  spec.verify = [](const Instance& x, const Answer& a) {
    const auto* lit = literal_of(x);
    return lit != nullptr && a >= lit->max_value();
  };
  spec.enumerate_answers = [ceiling](const Instance& x) {
    std::vector<Answer> out;
    for (std::uint64_t m = literal_of(x)->max_value(); m <= ceiling; ++m) out.emplace_back(m);
    return out;
  };
  spec.solve_ref = [](const Instance& x) { return Answer{literal_of(x)->max_value()}; };
  return spec;
}

ProblemSpec make_inf() {
  return literal_function(
      "inf", [](const Literal&) { return true; }, [](const Literal& p) { return mex(p.range()); });
}

ProblemSpec make_min() {
  return literal_function(
      "min", [](const Literal&) { return true; }, [](const Literal& p) { return p.min_value(); });
}

ProblemSpec make_cn(std::uint64_t ceiling) {
  ProblemSpec spec;
  spec.name = "c_n";
  auto answers = [ceiling](const Instance& x) {
    std::vector<Answer> out;
    const auto s = sequence_of(x);
    for (std::uint64_t n = 0; n <= ceiling; ++n) {
      if (!s.in_range(n)) out.emplace_back(n);
    }
    return out;
  };
  spec.domain_check = [answers](const Instance& x) {
    if (!is_sequence(x) || !sequence_of(x).has_range_oracle()) return false;
    return !answers(x).empty();
  };
  spec.verify = [](const Instance& x, const Answer& a) {
    return is_sequence(x) && small(a) && !sequence_of(x).in_range(to_u64(a));
  };
  spec.enumerate_answers = answers;
  spec.solve_ref = [answers](const Instance& x) { return answers(x).front(); };
  return spec;
}

ProblemSpec make_kn() {
  ProblemSpec spec;
  spec.name = "k_n";
  auto answers = [](const Instance& x) {
    std::vector<Answer> out;
    const auto& sb = std::get<SeqBound>(x.payload);
    const auto range = sb.seq.literal()->range();
    for (std::uint64_t n = 0; n <= sb.m; ++n) {
      if (!range.contains(n)) out.emplace_back(n);
    }
    return out;
  };
  spec.domain_check = [answers](const Instance& x) {
    const auto* sb = std::get_if<SeqBound>(&x.payload);
    if (sb == nullptr || sb->seq.literal() == nullptr) return false;
    return sb->seq.literal()->max_value() <= sb->m && !answers(x).empty();
  };
  spec.verify = [](const Instance& x, const Answer& a) {
    const auto* sb = std::get_if<SeqBound>(&x.payload);
    if (sb == nullptr || sb->seq.literal() == nullptr || !small(a)) return false;
    const auto v = to_u64(a);
    return v <= sb->m && !sb->seq.literal()->range().contains(v);
  };
  spec.enumerate_answers = answers;
  spec.solve_ref = [answers](const Instance& x) { return answers(x).front(); };
  return spec;
}

ProblemSpec make_cl_n() {
  return literal_relation("cl_n", [](const Literal& p) { return p.cluster_points(); });
}

ProblemSpec make_bwt_n() {
  // Every Literal is bounded, so the restriction keeps the whole domain.
  auto spec = make_cl_n();
  spec.name = "bwt_n";
  return spec;
}

ProblemSpec make_liminf_n() {
  return literal_function(
      "liminf_n", [](const Literal&) { return true; },
      [](const Literal& p) { return *p.cluster_points().begin(); });
}

ProblemSpec make_lim_minhat() {
  ProblemSpec spec;
  spec.name = "lim_minhat";
  auto mins = [](const Instance& x) {
    std::vector<std::uint64_t> out;
    for (const auto& s : std::get<FiniteFamily>(x.payload).members) out.push_back(s.literal()->min_value());
    return out;
  };
  spec.domain_check = [mins](const Instance& x) {
    const auto* fam = std::get_if<FiniteFamily>(&x.payload);
    if (fam == nullptr || fam->members.size() < 2) return false;
    for (const auto& s : fam->members) {
      if (s.literal() == nullptr) return false;
    }
    const auto m = mins(x);
    return m[m.size() - 1] == m[m.size() - 2];
  };
  spec.verify = [mins](const Instance& x, const Answer& a) { return small(a) && to_u64(a) == mins(x).back(); };
  spec.enumerate_answers = [mins](const Instance& x) { return std::vector<Answer>{mins(x).back()}; };
  spec.solve_ref = [mins](const Instance& x) { return Answer{mins(x).back()}; };
  return spec;
}

ProblemSpec make_g(std::shared_ptr<const Oracle> oracle) {
  ProblemSpec spec;
  spec.name = "g";
  spec.domain_check = [oracle](const Instance& x) {
    return is_sequence(x) && !g_answers(*oracle, sequence_of(x)).empty();
  };
  spec.verify = [oracle](const Instance& x, const Answer& a) {
    return is_sequence(x) && oracle->window_verifies(a, sequence_of(x));
  };
  spec.enumerate_answers = [oracle](const Instance& x) { return g_answers(*oracle, sequence_of(x)); };
  spec.solve_ref = [oracle](const Instance& x) { return g_answers(*oracle, sequence_of(x)).front(); };
  return spec;
}

ProblemSpec make_kol(std::shared_ptr<const Oracle> oracle) {
  ProblemSpec spec;
  spec.name = "kol";
  spec.domain_check = [oracle](const Instance& x) {
    return is_sequence(x) && oracle->min_index(sequence_of(x)).has_value();
  };
  spec.verify = [oracle](const Instance& x, const Answer& a) {
    if (!is_sequence(x)) return false;
    const auto m = oracle->min_index(sequence_of(x));
    return m && *m == a;
  };
  spec.enumerate_answers = [oracle](const Instance& x) {
    return std::vector<Answer>{*oracle->min_index(sequence_of(x))};
  };
  spec.solve_ref = [oracle](const Instance& x) { return *oracle->min_index(sequence_of(x)); };
  return spec;
}

ProblemSpec make_g_geq(std::shared_ptr<const Oracle> oracle) {
  ProblemSpec spec;
  spec.name = "g_geq";
  spec.domain_check = [oracle](const Instance& x) {
    const auto* sb = std::get_if<SeqBound>(&x.payload);
    if (sb == nullptr) return false;
    const auto m = oracle->min_index(sb->seq);
    return m && *m <= sb->m;
  };
  spec.verify = [oracle](const Instance& x, const Answer& a) {
    const auto* sb = std::get_if<SeqBound>(&x.payload);
    return sb != nullptr && oracle->window_verifies(a, sb->seq);
  };
  spec.enumerate_answers = [oracle](const Instance& x) {
    return g_answers(*oracle, std::get<SeqBound>(x.payload).seq);
  };
  // Search below the given bound only.
  spec.solve_ref = [oracle](const Instance& x) {
    const auto& sb = std::get<SeqBound>(x.payload);
    for (std::uint64_t i = 0; i <= sb.m; ++i) {
      if (oracle->window_verifies(i, sb.seq)) return Answer{i};
    }
    throw std::domain_error("g_geq: bound below the minimal index");
  };
  return spec;
}

ProblemSpec make_kol_geq(std::shared_ptr<const Oracle> oracle) {
  ProblemSpec spec;
  spec.name = "kol_geq";
  spec.domain_check = [oracle](const Instance& x) {
    return is_sequence(x) && oracle->min_index(sequence_of(x)).has_value();
  };
  spec.verify = [oracle](const Instance& x, const Answer& a) {
    if (!is_sequence(x)) return false;
    const auto m = oracle->min_index(sequence_of(x));
    return m && a >= *m;
  };
  spec.enumerate_answers = [oracle](const Instance& x) {
    std::vector<Answer> out;
    const auto m = to_u64(*oracle->min_index(sequence_of(x)));
    for (std::uint64_t b = m; b <= oracle->config().index_bound; ++b) out.emplace_back(b);
    return out;
  };
  spec.solve_ref = [oracle](const Instance& x) { return *oracle->min_index(sequence_of(x)); };
  return spec;
}

ProblemSpec make_ghat(std::shared_ptr<const Oracle> oracle) {
  ProblemSpec spec;
  spec.name = "ghat";
  auto per_component = [oracle](const Instance& x) {
    const auto& fam = std::get<Family>(x.payload);
    std::vector<std::vector<Answer>> per;
    for (std::uint64_t n = 0; n < fam.width; ++n) {
      const auto comp = project_stream(fam.tupled, n);
      auto answers = g_answers(*oracle, comp);
      const auto carried = carried_component(fam.tupled, n);
      if (carried >= 0 && oracle->window_verifies(carried, comp)) answers.push_back(carried);
      per.push_back(std::move(answers));
    }
    return per;
  };
  spec.domain_check = [per_component](const Instance& x) {
    const auto* fam = std::get_if<Family>(&x.payload);
    if (fam == nullptr || fam->width == 0) return false;
    const auto per = per_component(x);
    return std::none_of(per.begin(), per.end(), [](const auto& v) { return v.empty(); });
  };
  spec.verify = [oracle](const Instance& x, const Answer& a) {
    const auto* fam = std::get_if<Family>(&x.payload);
    if (fam == nullptr) return false;
    const auto items = decode_list(a);
    if (items.size() != fam->width) return false;
    for (std::uint64_t n = 0; n < fam->width; ++n) {
      if (!oracle->window_verifies(items[n], project_stream(fam->tupled, n))) return false;
    }
    return true;
  };
  spec.enumerate_answers = [per_component](const Instance& x) { return product_answers(per_component(x)); };
  spec.solve_ref = [per_component](const Instance& x) {
    std::vector<Natural> pick;
    for (const auto& v : per_component(x)) pick.push_back(v.front());
    return encode_list(pick);
  };
  return spec;
}

ProblemSpec make_gstar(std::shared_ptr<const Oracle> oracle) {
  ProblemSpec spec;
  spec.name = "gstar";
  auto per_member = [oracle](const Instance& x) {
    std::vector<std::vector<Answer>> per;
    for (const auto& s : std::get<FiniteFamily>(x.payload).members) per.push_back(g_answers(*oracle, s));
    return per;
  };
  spec.domain_check = [per_member](const Instance& x) {
    const auto* fam = std::get_if<FiniteFamily>(&x.payload);
    if (fam == nullptr || fam->members.empty()) return false;
    const auto per = per_member(x);
    return std::none_of(per.begin(), per.end(), [](const auto& v) { return v.empty(); });
  };
  spec.verify = [oracle](const Instance& x, const Answer& a) {
    const auto* fam = std::get_if<FiniteFamily>(&x.payload);
    if (fam == nullptr) return false;
    const auto items = decode_list(a);
    if (items.size() != fam->members.size()) return false;
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (!oracle->window_verifies(items[j], fam->members[j])) return false;
    }
    return true;
  };
  spec.enumerate_answers = [per_member](const Instance& x) { return product_answers(per_member(x)); };
  spec.solve_ref = [per_member](const Instance& x) {
    std::vector<Natural> pick;
    for (const auto& v : per_member(x)) pick.push_back(v.front());
    return encode_list(pick);
  };
  return spec;
}

std::vector<std::string> problem_names() {
  return {"lpo", "llpo", "lim_n",      "b", "inf",  "min",     "c_n",  "k_n",   "cl_n",
          "bwt_n", "liminf_n", "lim_minhat", "g", "kol", "g_geq", "kol_geq", "ghat", "gstar"};
}

std::optional<ProblemSpec> make_problem(const std::string& name, std::shared_ptr<const Oracle> oracle,
                                        std::uint64_t ceiling) {
  if (name == "lpo") return make_lpo();
  if (name == "llpo") return make_llpo();
  if (name == "lim_n") return make_lim_n();
  if (name == "b") return make_b(ceiling);
  if (name == "inf") return make_inf();
  if (name == "min") return make_min();
  if (name == "c_n") return make_cn(ceiling);
  if (name == "k_n") return make_kn();
  if (name == "cl_n") return make_cl_n();
  if (name == "bwt_n") return make_bwt_n();
  if (name == "liminf_n") return make_liminf_n();
  if (name == "lim_minhat") return make_lim_minhat();
  if (name == "g") return make_g(oracle);
  if (name == "kol") return make_kol(oracle);
  if (name == "g_geq") return make_g_geq(oracle);
  if (name == "kol_geq") return make_kol_geq(oracle);
  if (name == "ghat") return make_ghat(oracle);
  if (name == "gstar") return make_gstar(oracle);
  return std::nullopt;
}

}  // namespace glab
