// glab: batch front end over the laboratory library.
//
// Exit codes: 0 when every check passes, 1 on a semantic failure, 2 on a
// usage or parse error.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "glab/corpus.hpp"
#include "glab/learners.hpp"
#include "glab/loop.hpp"
#include "glab/oracles.hpp"
#include "glab/problems.hpp"
#include "glab/program.hpp"
#include "glab/reductions.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace glab;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every tunable, in the order it is echoed.
struct Settings {
  std::map<std::string, std::uint64_t> values{
      {"index_bound", 2000},   {"cap", 10000},          {"window", 32},
      {"stability_window", 100}, {"max_steps", 1000000},  {"verify_budget", 200000000},
      {"seed", 1},             {"loop_statements", 3},  {"b_index_bound", 65000},
      {"family_window", 8},    {"corpus_size", 30},     {"answer_ceiling", 200},
  };

  std::uint64_t operator[](const std::string& k) const { return values.at(k); }

  LearnerConfig learner() const {
    LearnerConfig c;
    c.index_bound = values.at("index_bound");
    c.window = values.at("window");
    c.cap = values.at("cap");
    c.stability_window = values.at("stability_window");
    c.max_steps = values.at("max_steps");
    c.verify_budget = values.at("verify_budget");
    return c;
  }
  OracleConfig oracle() const { return learner().oracle(); }

  json echo() const {
    json j = json::object();
    for (const auto& [k, v] : values) j[k] = v;
    return j;
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

void load_config(const std::string& path, Settings& s) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    const auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(no) + ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    if (!s.values.count(key)) throw UsageError(path + ":" + std::to_string(no) + ": unknown key '" + key + "'");
    const auto value = trim(t.substr(eq + 1));
    std::size_t used = 0;
    try {
      s.values[key] = std::stoull(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) {
      throw UsageError(path + ":" + std::to_string(no) + ": bad value '" + value + "'");
    }
  }
}

// Flags shared by every subcommand. Values given on the command line win
// over the config file.
struct Common {
  std::string config;
  std::string out_dir;
  std::map<std::string, std::uint64_t> flags;
  std::map<std::string, CLI::Option*> opts;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config, "key=value config file");
    cmd->add_option("--out-dir", out_dir, "directory for result files");
    for (const char* name : {"index-bound", "cap", "window", "stability-window", "seed"}) {
      std::string key = name;
      std::replace(key.begin(), key.end(), '-', '_');
      opts[key] = cmd->add_option(std::string("--") + name, flags[key]);
    }
  }

  Settings resolve() const {
    Settings s;
    if (!config.empty()) load_config(config, s);
    for (const auto& [k, o] : opts) {
      if (o->count()) s.values[k] = flags.at(k);
    }
    s.learner().validate();
    return s;
  }
};

std::string str(const Natural& n) { return n.str(); }

json str_list(const std::vector<Natural>& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(str(x));
  return j;
}

class Outputs {
 public:
  explicit Outputs(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) fs::create_directories(dir_);
  }
  bool enabled() const { return !dir_.empty(); }

  // Written to a temporary name first so readers never see half a file.
  void write(const std::string& rel, const std::string& content) {
    const fs::path target = fs::path(dir_) / rel;
    fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      out << content;
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
    files_.push_back(rel);
  }

  const std::vector<std::string>& files() const { return files_; }

 private:
  std::string dir_;
  std::vector<std::string> files_;
};

struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  std::vector<std::string> inputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void finish(Outputs& out, const Settings& s, int exit_code) {
    if (!out.enabled()) return;
    json j;
    j["command"] = command;
    j["argv"] = argv;
    j["config"] = s.echo();
    j["seed"] = s["seed"];
    json in = json::array();
    for (const auto& p : inputs) {
      std::error_code ec;
      const auto size = fs::file_size(p, ec);
      in.push_back({{"path", p}, {"bytes", ec ? 0 : size}});
    }
    j["inputs"] = in;
    j["outputs"] = out.files();
    j["exit_code"] = exit_code;
    j["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    out.write("manifest.json", j.dump(2) + "\n");
  }
};

std::vector<CorpusEntry> read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read corpus " + path);
  try {
    return parse_corpus(in);
  } catch (const CorpusError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// enumerate ------------------------------------------------------------------

std::string behaviour(const Natural& i, const OracleConfig& cfg) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t n = 0; n <= cfg.window; ++n) {
    const auto r = halts(i, n, cfg);
    if (!r.is_halted()) return "partial, no halt at n=" + std::to_string(n);
    v.push_back(r.value());
  }
  if (std::all_of(v.begin(), v.end(), [&](auto x) { return x == v[0]; })) return "constant " + std::to_string(v[0]);
  bool id = true, succ = true;
  for (std::size_t n = 0; n < v.size(); ++n) {
    id = id && v[n] == n;
    succ = succ && v[n] == n + 1;
  }
  if (id) return "identity";
  if (succ) return "successor";
  std::string out = "values";
  for (std::size_t n = 0; n < std::min<std::size_t>(v.size(), 8); ++n) out += (n ? "," : " ") + std::to_string(v[n]);
  return out + ",...";
}

int cmd_enumerate(const Settings& s, const std::string& from, const std::string& to, Outputs& out) {
  const Natural a = parse_natural(from);
  const Natural b = to.empty() ? a : parse_natural(to);
  if (b < a) throw UsageError("--to is below --from");
  std::ostringstream csv;
  csv << "index,program,summary\n";
  for (Natural i = a; i <= b; ++i) {
    std::string text = to_text(decode(i));
    if (!text.empty() && text.back() == '\n') text.pop_back();
    const auto summary = behaviour(i, s.oracle());
    std::string one_line = text;
    std::replace(one_line.begin(), one_line.end(), '\n', ';');
    std::cout << i << ": " << (text.empty() ? "(empty)" : one_line) << " / " << summary << '\n';
    csv << i << ",\"" << one_line << "\"," << summary << '\n';
  }
  if (out.enabled()) out.write("enumerate.csv", csv.str());
  return kPass;
}

// learn ----------------------------------------------------------------------

struct LearnRow {
  std::string id;
  GuessTrace trace;
  std::optional<Natural> final_guess;
  bool converged = false;
  bool verified = false;
  std::string failure;
};

int cmd_learn(const Settings& s, const std::string& learner, const std::string& corpus_path, Outputs& out) {
  static const std::vector<std::string> learners{"enum", "enum-total", "amalgamation", "bounded-min", "liminf"};
  if (std::find(learners.begin(), learners.end(), learner) == learners.end()) {
    throw UsageError("unknown learner '" + learner + "'");
  }
  const auto corpus = read_corpus(corpus_path);
  const auto cfg = s.learner();
  const Oracle oracle(cfg.oracle());
  std::optional<LoopRegistry> registry;
  if (learner == "enum-total") registry = LoopRegistry::small(s["loop_statements"]);
  std::optional<CompatMatrix> compat;
  if (learner == "amalgamation") compat.emplace(oracle, cfg.index_bound);

  // Promise parameter of the bounded learners: an explicit m, else the least index.
  auto bound_of = [&](const Instance& x, const StreamView& p) -> std::optional<std::uint64_t> {
    if (const auto* sb = std::get_if<SeqBound>(&x.payload)) return sb->m;
    if (auto mi = oracle.min_index(p)) return to_u64(*mi);
    return std::nullopt;
  };

  std::vector<LearnRow> rows;
  for (const auto& e : corpus) {
    LearnRow r;
    r.id = e.instance.id;
    try {
      const auto p = sequence_of(e.instance);
      if (learner == "enum" || learner == "enum-total") {
        const auto res = enum_learner(p, registry ? ProgramClass::kTotal : ProgramClass::kFull, cfg,
                                      registry ? &*registry : nullptr);
        r.trace = res.trace;
        r.final_guess = res.limit;
        r.converged = res.trace.converged;
        r.failure = res.failure;
      } else if (learner == "amalgamation" || learner == "bounded-min") {
        const auto m = bound_of(e.instance, p);
        if (!m) {
          r.failure = "no index within the universe";
        } else if (learner == "amalgamation") {
          if (*m > cfg.index_bound) throw std::invalid_argument("m exceeds index_bound");
          const auto res = amalgamation_learn(p, *m, oracle, *compat, cfg);
          r.trace = res.trace;
          r.final_guess = res.index;
          r.converged = res.index.has_value();
          r.failure = res.failure;
        } else {
          const auto res = bounded_min_learner(p, *m, oracle, cfg);
          r.trace = res.codes;
          r.final_guess = res.index;
          r.converged = res.index.has_value();
          r.failure = res.failure;
        }
      } else {
        const auto run = kol_liminf_enumerator(p, oracle);
        r.trace = GuessTrace::from_guesses(run.stream, cfg.stability_window);
        if (!run.stages.empty() && !run.stages.back().empty()) {
          r.final_guess = Natural(run.stages.back().front());
          r.converged = true;
        } else {
          r.failure = "final stage is empty";
        }
      }
      if (r.final_guess) r.verified = verify_output(*r.final_guess, p, cfg.window, cfg.verify_budget);
    } catch (const std::exception& ex) {
      r.failure = ex.what();
    }
    rows.push_back(std::move(r));
  }

  json instances = json::array();
  std::size_t converged = 0, verified = 0;
  double mind_changes = 0;
  for (const auto& r : rows) {
    converged += r.converged;
    verified += r.verified;
    mind_changes += static_cast<double>(r.trace.mind_changes);
    json j;
    j["instance"] = r.id;
    j["learner"] = learner;
    j["converged"] = r.converged;
    j["stabilized_at"] = r.trace.stabilized_at ? json(*r.trace.stabilized_at) : json(nullptr);
    j["mind_changes"] = r.trace.mind_changes;
    j["final_guess"] = r.final_guess ? json(str(*r.final_guess)) : json(nullptr);
    j["verified"] = r.verified;
    if (!r.failure.empty()) j["failure"] = r.failure;
    instances.push_back(j);
    std::ostringstream csv;
    write_trace_csv(csv, r.trace);
    if (out.enabled()) out.write("traces/" + r.id + ".csv", csv.str());
  }
  const double n = rows.empty() ? 1.0 : static_cast<double>(rows.size());
  json summary;
  summary["learner"] = learner;
  summary["corpus"] = corpus_path;
  summary["config"] = s.echo();
  summary["instances"] = instances;
  summary["convergence_rate"] = converged / n;
  summary["mean_mind_changes"] = mind_changes / n;
  summary["verification_rate"] = verified / n;
  const auto text = summary.dump(2) + "\n";
  if (out.enabled()) out.write("summary.json", text);
  std::cout << "instances=" << rows.size() << " convergence_rate=" << converged / n
            << " verification_rate=" << verified / n << " mean_mind_changes=" << mind_changes / n << '\n';
  return verified == rows.size() ? kPass : kFail;
}

// kolmogorov -----------------------------------------------------------------

int cmd_kolmogorov(const Settings& s, const std::string& corpus_path, Outputs& out) {
  const auto corpus = read_corpus(corpus_path);
  const Oracle oracle(s.oracle());
  std::ostringstream csv;
  csv << "instance,min_index,verified\n";
  bool ok = true;
  for (const auto& e : corpus) {
    std::optional<Natural> mi;
    try {
      mi = oracle.min_index(sequence_of(e.instance));
    } catch (const std::exception&) {
    }
    const bool verified = mi && window_verifies(*mi, sequence_of(e.instance), s.oracle());
    ok = ok && verified;
    csv << e.instance.id << ',' << (mi ? str(*mi) : "not-found") << ',' << verified << '\n';
  }
  if (out.enabled()) {
    out.write("kolmogorov.csv", csv.str());
  } else {
    std::cout << csv.str();
  }
  return ok ? kPass : kFail;
}

// reduce-check ---------------------------------------------------------------

json report_json(const ReductionReport& r, const std::string& mutant) {
  json j;
  j["reduction"] = r.reduction;
  j["corpus"] = r.corpus;
  j["mutant"] = mutant.empty() ? json(nullptr) : json(mutant);
  json instances = json::array();
  for (const auto& rec : r.instances) {
    json w = json::array();
    for (const auto& x : rec.witnesses) {
      w.push_back({{"kind", x.kind},
                   {"g_answer", x.g_answer ? json(str(*x.g_answer)) : json(nullptr)},
                   {"f_answer", x.f_answer ? json(str(*x.f_answer)) : json(nullptr)},
                   {"detail", x.detail}});
    }
    instances.push_back({{"id", rec.id},
                         {"pass", rec.pass},
                         {"g_answers", str_list(rec.g_answers)},
                         {"f_answers", str_list(rec.f_answers)},
                         {"witnesses", w}});
  }
  j["instances"] = instances;
  j["witness_count"] = r.witness_count();
  j["pass"] = r.pass;
  return j;
}

int cmd_reduce_check(const Settings& s, const std::string& name, const std::string& corpus_path,
                     const std::string& mutant, Outputs& out) {
  CatalogConfig cc;
  cc.oracle = s.oracle();
  cc.b_index_bound = s["b_index_bound"];
  cc.family_window = s["family_window"];
  cc.answer_ceiling = s["answer_ceiling"];
  cc.stability_window = s["stability_window"];
  cc.corpus_size = s["corpus_size"];
  const Catalog catalog(cc);
  const auto names = catalog.names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string list;
    for (const auto& n : names) list += " " + n;
    throw UsageError("unknown reduction '" + name + "'; known:" + list);
  }
  const auto& e = catalog.get(name);
  if (!mutant.empty() && std::find(e.mutants.begin(), e.mutants.end(), mutant) == e.mutants.end()) {
    std::string list;
    for (const auto& m : e.mutants) list += " " + m;
    throw UsageError("unknown mutant '" + mutant + "' for " + name + "; known:" + list);
  }
  std::vector<Instance> corpus;
  std::string corpus_name;
  if (corpus_path.empty()) {
    corpus = e.corpus(cc.corpus_size, s["seed"]);
    corpus_name = "generated:seed=" + std::to_string(s["seed"]);
  } else {
    for (auto& entry : read_corpus(corpus_path)) corpus.push_back(std::move(entry.instance));
    corpus_name = corpus_path;
  }
  const auto r = check_reduction(e.f, e.g, mutant.empty() ? e.pair : e.mutant(mutant), corpus, corpus_name);
  const auto text = report_json(r, mutant).dump(2) + "\n";
  if (out.enabled()) {
    out.write("report.json", text);
  } else {
    std::cout << text;
  }
  std::cerr << name << (mutant.empty() ? "" : "/" + mutant) << ": " << (r.pass ? "pass" : "fail") << " ("
            << r.instances.size() << " instances, " << r.witness_count() << " witnesses)\n";
  return r.pass ? kPass : kFail;
}

// corpus-gen -----------------------------------------------------------------

int cmd_corpus_gen(const Settings& s, const std::string& kind_name, std::size_t size, Outputs& out) {
  const auto kind = parse_corpus_kind(kind_name);
  if (!kind) throw UsageError("unknown corpus kind '" + kind_name + "'");
  const auto oracle = std::make_shared<const Oracle>(s.oracle());
  std::ostringstream text;
  write_corpus(text, generate_corpus(*kind, size, s["seed"], oracle));
  if (out.enabled()) {
    out.write("corpus.txt", text.str());
  } else {
    std::cout << text.str();
  }
  return kPass;
}

// pockets --------------------------------------------------------------------

int cmd_pockets(const Settings& s, std::uint64_t m, Outputs& out) {
  if (m > s["index_bound"]) throw UsageError("--m exceeds index_bound");
  const Oracle oracle(s.oracle());
  const CompatMatrix compat(oracle, m);
  const auto table = prune_pockets(build_pockets(m, compat), compat);
  std::ostringstream csv;
  csv << "anchor,size,survivor,members\n";
  for (const auto& p : table.pockets) {
    const bool alive = std::any_of(table.survivors.begin(), table.survivors.end(),
                                   [&](const Pocket& q) { return q.anchor == p.anchor; });
    csv << p.anchor << ',' << p.members.size() << ',' << alive << ',';
    for (std::size_t k = 0; k < p.members.size(); ++k) csv << (k ? " " : "") << p.members[k];
    csv << '\n';
  }
  if (out.enabled()) {
    out.write("pockets.csv", csv.str());
  } else {
    std::cout << csv.str();
  }
  std::cerr << "pockets=" << table.pockets.size() << " survivors=" << table.survivors.size()
            << " partial_fraction=" << compat.partial_fraction(m) << '\n';
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glab: learning and reduction laboratory"};
  app.require_subcommand(1);

  Common common;
  std::string from, to, learner, corpus, reduction, mutant, kind;
  std::size_t size = 10;
  std::uint64_t m = 0;

  auto* enumerate = app.add_subcommand("enumerate", "list programs by index");
  enumerate->add_option("--from", from, "first index")->required();
  enumerate->add_option("--to", to, "last index (default: --from)");

  auto* learn = app.add_subcommand("learn", "run a learner over a corpus");
  learn->add_option("--learner", learner, "enum, enum-total, amalgamation, bounded-min or liminf")->required();
  learn->add_option("--corpus", corpus, "corpus file")->required();

  auto* kol = app.add_subcommand("kolmogorov", "least-index table of a corpus");
  kol->add_option("--corpus", corpus, "corpus file")->required();

  auto* reduce = app.add_subcommand("reduce-check", "check a catalog reduction");
  reduce->add_option("--reduction", reduction, "catalog name")->required();
  reduce->add_option("--corpus", corpus, "corpus file (default: generated)");
  reduce->add_option("--mutant", mutant, "deliberately broken variant");

  auto* gen = app.add_subcommand("corpus-gen", "generate a corpus");
  gen->add_option("--kind", kind, "total-programs, literal-sequences, bounded-monotone, lpo-mixed or families")
      ->required();
  gen->add_option("--size", size, "instances");

  auto* pockets = app.add_subcommand("pockets", "dump the pocket table over 0..m");
  pockets->add_option("--m", m, "universe bound")->required();

  for (auto* c : {enumerate, learn, kol, reduce, gen, pockets}) common.attach(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kPass : kUsage;
  }

  Manifest manifest;
  manifest.argv.assign(argv, argv + argc);
  try {
    const Settings s = common.resolve();
    Outputs out(common.out_dir);
    if (!common.config.empty()) manifest.inputs.push_back(common.config);
    if (!corpus.empty()) manifest.inputs.push_back(corpus);
    int code = kPass;
    if (*enumerate) {
      manifest.command = "enumerate";
      code = cmd_enumerate(s, from, to, out);
    } else if (*learn) {
      manifest.command = "learn";
      code = cmd_learn(s, learner, corpus, out);
    } else if (*kol) {
      manifest.command = "kolmogorov";
      code = cmd_kolmogorov(s, corpus, out);
    } else if (*reduce) {
      manifest.command = "reduce-check";
      code = cmd_reduce_check(s, reduction, corpus, mutant, out);
    } else if (*gen) {
      manifest.command = "corpus-gen";
      code = cmd_corpus_gen(s, kind, size, out);
    } else {
      manifest.command = "pockets";
      code = cmd_pockets(s, m, out);
    }
    manifest.finish(out, s, code);
    return code;
  } catch (const UsageError& e) {
    std::cerr << "glab: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "glab: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "glab: " << e.what() << '\n';
    return kFail;
  }
}
