// sqf -- command-line driver for squarefree-word and automatic-sequence
// experiments: generate words, scan subsequences, compile predicates to
// automata, and search for cyclic squarefree morphisms.

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sqf/compile.hpp"
#include "sqf/cyclic.hpp"
#include "sqf/dfao.hpp"
#include "sqf/kernel.hpp"
#include "sqf/morphism.hpp"
#include "sqf/predicate.hpp"
#include "sqf/progressions.hpp"
#include "sqf/squares.hpp"
#include "sqf/track_automaton.hpp"
#include "sqf/word.hpp"

namespace {

using nlohmann::json;

// exit codes: 0 confirmed/true, 1 refuted/false/inconclusive, 2 error
constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Reports print as "key: value" lines, or as one JSON object with --json.
// Timings are always reported but scripts comparing reports should ignore
// the elapsed-ms field.
struct Report {
  json data = json::object();
  std::vector<std::pair<std::string, std::string>> lines;

  void add(const std::string& key, const std::string& value) {
    lines.emplace_back(key, value);
    data[key] = value;
  }
  void add(const std::string& key, long long value) {
    lines.emplace_back(key, std::to_string(value));
    data[key] = value;
  }
  void add_json(const std::string& key, json value,
                const std::string& rendered) {
    lines.emplace_back(key, rendered);
    data[key] = std::move(value);
  }

  void emit(bool as_json) const {
    if (as_json) {
      std::cout << data.dump(2) << '\n';
    } else {
      for (const auto& [k, v] : lines) std::cout << k << ": " << v << '\n';
    }
  }
};

// vtm prefixes are memoized on disk, keyed by exact length, when
// SQF_CACHE_DIR is set; files are written to a temporary name first and
// renamed into place.
sqf::Word cached_vtm_prefix(std::size_t len) {
  const char* dir = std::getenv("SQF_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return sqf::vtm_prefix(len);
  namespace fs = std::filesystem;
  const fs::path path =
      fs::path(dir) / ("vtm_" + std::to_string(len) + ".txt");
  if (fs::exists(path)) {
    sqf::Word w = sqf::read_word_file(path, 3);
    if (w.size() == len) return w;
  }
  sqf::Word w = sqf::vtm_prefix(len);
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp" + std::to_string(::getpid());
  sqf::write_word_file(tmp, w);
  fs::rename(tmp, path);
  return w;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const std::size_t dots = text.find("..");
  if (dots == std::string::npos) {
    const std::size_t k = std::stoull(text);
    return {k, k};
  }
  const std::size_t a = std::stoull(text.substr(0, dots));
  const std::size_t b = std::stoull(text.substr(dots + 2));
  if (a > b) throw CLI::ValidationError("--k-range", "empty range");
  return {a, b};
}

std::map<std::string, std::uint64_t> parse_assignment(const std::string& text) {
  std::map<std::string, std::uint64_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw CLI::ValidationError("--member", "expected var=value pairs");
    values[item.substr(0, eq)] = std::stoull(item.substr(eq + 1));
  }
  return values;
}

sqf::Dfao builtin_vtm_dfao(std::size_t compare_len, std::uint64_t verify_len) {
  const std::size_t need = std::max<std::uint64_t>(verify_len, 1u << 21);
  const sqf::Word prefix = cached_vtm_prefix(need);
  return sqf::minimize(
      sqf::kernel_dfao(sqf::sequence_of(prefix), compare_len, verify_len));
}

// --- generate ---

struct GenerateArgs {
  bool vtm = false;
  std::string morphism_spec;
  std::size_t length = 0;
  int seed_letter = 0;
  std::string out;
};

int run_generate(const GenerateArgs& args) {
  sqf::Word w;
  if (args.vtm) {
    w = cached_vtm_prefix(args.length);
  } else {
    const sqf::Morphism m = sqf::Morphism::parse(args.morphism_spec);
    w = sqf::fixed_point_prefix(m, sqf::Letter(args.seed_letter), args.length);
  }
  if (args.out.empty()) {
    std::cout << w.to_digits() << '\n';
  } else {
    sqf::write_word_file(args.out, w);
  }
  return kExitTrue;
}

// --- check ---

struct CheckArgs {
  std::string squarefree_file;
  bool theorem1 = false;
  std::string k_range = "2..1000";
  std::size_t prefix_len = 10'000'000;
  bool residues = false;
  std::size_t k = 0;
  std::string factor;
  std::string word_file;
  bool as_json = false;
};

int run_check(const CheckArgs& args) {
  Timer timer;
  Report report;
  report.add("command", "check");
  int exit_code = kExitTrue;

  if (!args.squarefree_file.empty()) {
    const sqf::Word w = sqf::read_word_file(args.squarefree_file);
    report.add("mode", "squarefree");
    report.add("word-length", (long long)w.size());
    if (const auto sq = sqf::find_square(w)) {
      report.add("square-position", (long long)sq->position);
      report.add("square-period", (long long)sq->period);
      report.add("outcome", "refuted");
      exit_code = kExitFalse;
    } else {
      report.add("outcome", "confirmed");
    }
  } else if (args.theorem1) {
    report.add("mode", "theorem1");
    const auto [k_lo, k_hi] = parse_range(args.k_range);
    if (k_lo < 2) throw CLI::ValidationError("--k-range", "k must be >= 2");
    report.add("k-range",
               std::to_string(k_lo) + ".." + std::to_string(k_hi));
    report.add("prefix-length", (long long)args.prefix_len);
    const sqf::Word prefix = cached_vtm_prefix(args.prefix_len);
    std::size_t confirmed = 0;
    json details = json::array();
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
      const auto e = sqf::find_ap_square(prefix, k);
      if (e) {
        ++confirmed;
        report.add_json(
            "k=" + std::to_string(k),
            json{{"k", k}, {"n", e->n}, {"letter", e->letter}},
            "confirmed n=" + std::to_string(e->n) +
                " letter=" + std::to_string(int(e->letter)));
      } else {
        report.add("k=" + std::to_string(k), "inconclusive");
        exit_code = kExitFalse;
      }
    }
    report.add("confirmed",
               std::to_string(confirmed) + "/" +
                   std::to_string(k_hi - k_lo + 1));
    report.add("outcome", exit_code == kExitTrue ? "confirmed"
                                                 : "inconclusive");
  } else if (args.residues) {
    report.add("mode", "residues");
    if (args.k == 0) throw CLI::ValidationError("--k", "k must be >= 1");
    const sqf::Word w = args.word_file.empty()
                            ? cached_vtm_prefix(args.prefix_len)
                            : sqf::read_word_file(args.word_file);
    const sqf::Word factor = sqf::Word::from_digits(args.factor);
    const auto residues = sqf::occurrence_residues(w, factor, args.k);
    std::string rendered;
    json arr = json::array();
    for (std::size_t r : residues) {
      if (!rendered.empty()) rendered += ' ';
      rendered += std::to_string(r);
      arr.push_back(r);
    }
    report.add("k", (long long)args.k);
    report.add("factor", args.factor);
    report.add_json("residues", arr, rendered);
    const bool complete = residues.size() == args.k;
    report.add("coverage", complete ? "complete" : "incomplete");
    report.add("outcome", complete ? "confirmed" : "inconclusive");
    if (!complete) exit_code = kExitFalse;
  } else {
    throw CLI::ValidationError(
        "check", "pick one of --squarefree, --theorem1, --residues");
  }

  report.add("elapsed-ms", timer.ms());
  report.emit(args.as_json);
  return exit_code;
}

// --- predicate ---

struct PredicateArgs {
  std::string formula;
  std::vector<std::string> sequences;
  std::string member;
  std::size_t enumerate_limit = 0;
  std::string out;
  std::string dot;
  std::size_t compare_len = 1 << 12;
  std::uint64_t verify_len = 1 << 20;
  std::size_t state_ceiling = 1'000'000;
  bool as_json = false;
};

int run_predicate(const PredicateArgs& args) {
  Timer timer;
  Report report;
  report.add("command", "predicate");
  report.add("formula", args.formula);

  const sqf::FormulaPtr formula = sqf::parse_predicate(args.formula);

  std::map<std::string, sqf::Dfao> seqs;
  for (const std::string& entry : args.sequences) {
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--seq", "expected NAME=FILE or NAME=builtin");
    const std::string name = entry.substr(0, eq);
    const std::string source = entry.substr(eq + 1);
    seqs[name] = source == "builtin"
                     ? builtin_vtm_dfao(args.compare_len, args.verify_len)
                     : sqf::read_dfao_file(source);
  }
  std::set<std::string> names;
  sqf::collect_sequence_names(*formula, names);
  if (names.count("VTM") && !seqs.count("VTM"))
    seqs["VTM"] = builtin_vtm_dfao(args.compare_len, args.verify_len);

  sqf::CompileOptions options;
  options.state_ceiling = args.state_ceiling;
  const sqf::TrackAutomaton automaton =
      sqf::compile_predicate(*formula, seqs, options);

  {
    std::string tracks;
    for (const auto& t : automaton.tracks) {
      if (!tracks.empty()) tracks += ' ';
      tracks += t;
    }
    report.add("free-variables", tracks.empty() ? "(none)" : tracks);
    report.add("states", (long long)automaton.state_count());
  }
  if (!args.out.empty()) {
    sqf::write_track_automaton_file(args.out, automaton);
    report.add("out", args.out);
  }
  if (!args.dot.empty()) {
    std::ofstream dot(args.dot);
    if (!dot) throw std::runtime_error("cannot write dot file: " + args.dot);
    dot << sqf::to_dot(automaton);
    report.add("dot", args.dot);
  }

  int exit_code = kExitTrue;
  if (automaton.tracks.empty()) {
    const bool value = sqf::decide(automaton);
    report.add("decision", value ? "true" : "false");
    report.add("outcome", value ? "confirmed" : "refuted");
    exit_code = value ? kExitTrue : kExitFalse;
  } else {
    report.add("outcome", "confirmed");
  }

  if (!args.member.empty()) {
    const auto assignment = parse_assignment(args.member);
    const bool value = sqf::membership(automaton, assignment);
    report.add("member " + args.member, value ? "true" : "false");
    exit_code = value ? kExitTrue : kExitFalse;
  }

  if (args.enumerate_limit > 0) {
    const auto tuples =
        sqf::enumerate_accepted(automaton, args.enumerate_limit);
    std::string rendered;
    json arr = json::array();
    for (const auto& tuple : tuples) {
      std::string one;
      json jt = json::array();
      for (std::uint64_t v : tuple) {
        if (!one.empty()) one += ',';
        one += std::to_string(v);
        jt.push_back(v);
      }
      if (!rendered.empty()) rendered += ' ';
      rendered += one;
      arr.push_back(jt);
    }
    report.add_json("enumerate", arr, rendered);
  }

  report.add("elapsed-ms", timer.ms());
  report.emit(args.as_json);
  return exit_code;
}

// --- morphism ---

struct MorphismArgs {
  bool search = false;
  std::size_t k = 0;
  bool exhaustive = false;
  std::uint64_t budget = 500'000'000;
  bool embed = false;
  std::string word_file;
  std::string morphism_file;
  std::string out;
  bool as_json = false;
};

int run_morphism(const MorphismArgs& args) {
  Timer timer;
  Report report;
  report.add("command", "morphism");
  int exit_code = kExitTrue;

  if (args.search == args.embed)
    throw CLI::ValidationError("morphism", "pick one of --search, --embed");

  if (args.search) {
    report.add("mode", args.exhaustive ? "search-exhaustive" : "search-first");
    report.add("k", (long long)args.k);
    std::vector<sqf::CyclicUniformMorphism> found;
    if (args.exhaustive) {
      found = sqf::search_cyclic_squarefree_exhaustive(args.k);
      report.add("found", (long long)found.size());
      if (found.empty()) {
        report.add("outcome", "exhaustive: none");
        exit_code = kExitFalse;
      } else {
        report.add("outcome", "confirmed");
      }
    } else {
      const sqf::SearchOutcome outcome =
          sqf::search_cyclic_squarefree_first(args.k, args.budget);
      report.add("nodes", (long long)outcome.nodes);
      if (outcome.found) {
        found.push_back(*outcome.found);
        report.add("outcome", "confirmed");
      } else if (outcome.budget_exhausted) {
        report.add("outcome", "inconclusive: budget exhausted");
        exit_code = kExitFalse;
      } else {
        report.add("outcome", "exhaustive: none");
        exit_code = kExitFalse;
      }
    }
    json morphisms = json::array();
    for (const auto& c : found) morphisms.push_back(sqf::to_text(c));
    report.data["morphisms"] = morphisms;
    if (!found.empty() && !args.out.empty()) {
      sqf::write_morphism_file(args.out, found.front());
      report.add("out", args.out);
    }
    report.add("elapsed-ms", timer.ms());
    if (args.as_json) {
      report.emit(true);
    } else {
      report.emit(false);
      for (const auto& c : found) std::cout << sqf::to_text(c);
    }
    return exit_code;
  }

  // --embed
  report.add("mode", "embed");
  const sqf::Word w = sqf::read_word_file(args.word_file, 3);
  sqf::CyclicUniformMorphism c = sqf::read_morphism_file(args.morphism_file);
  if (!c.certified)
    throw std::runtime_error("embed: morphism file is not certified");
  c = sqf::certify(std::move(c), /*deep=*/false);
  if (!c.certified)
    throw std::runtime_error(
        "embed: morphism file claims certification but fails the squarefree "
        "criterion");
  const sqf::Word v = sqf::embed(w, c);
  // verify the output before reporting success
  if (!sqf::is_squarefree(v))
    throw std::runtime_error("embed: output failed the squarefree check");
  if (!(sqf::subsequence_ap(v, c.k) == w))
    throw std::runtime_error("embed: output failed the subsequence identity");
  report.add("k", (long long)c.k);
  report.add("input-length", (long long)w.size());
  report.add("output-length", (long long)v.size());
  report.add("verified", "squarefree + subsequence identity");
  report.add("outcome", "confirmed");
  if (!args.out.empty()) {
    sqf::write_word_file(args.out, v);
    report.add("out", args.out);
  } else {
    report.data["word"] = v.to_digits();
  }
  report.add("elapsed-ms", timer.ms());
  report.emit(args.as_json);
  if (args.out.empty() && !args.as_json) std::cout << v.to_digits() << '\n';
  return exit_code;
}

// --- dfao ---

struct DfaoArgs {
  std::size_t compare_len = 1 << 12;
  std::uint64_t verify_len = 1 << 20;
  std::string out;
  std::string dot;
  bool as_json = false;
};

int run_dfao(const DfaoArgs& args) {
  Timer timer;
  Report report;
  report.add("command", "dfao");
  const sqf::Dfao d = builtin_vtm_dfao(args.compare_len, args.verify_len);
  report.add("states", (long long)d.state_count());
  report.add("verified-upto", (long long)args.verify_len);
  if (!args.out.empty()) {
    sqf::write_dfao_file(args.out, d);
    report.add("out", args.out);
  }
  if (!args.dot.empty()) {
    std::ofstream dot(args.dot);
    if (!dot) throw std::runtime_error("cannot write dot file: " + args.dot);
    dot << sqf::to_dot(d);
    report.add("dot", args.dot);
  }
  report.add("outcome", "confirmed");
  report.add("elapsed-ms", timer.ms());
  report.data["automaton"] = sqf::to_text(d);
  report.emit(args.as_json);
  if (!args.as_json && args.out.empty()) std::cout << sqf::to_text(d);
  return kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sqf -- squarefree words, automatic sequences, predicate automata and "
      "cyclic squarefree morphisms"};
  app.require_subcommand(1);
  long long seed = 0;
  app.add_option("--seed", seed,
                 "reserved; all algorithms are deterministic")
      ->group("");

  int exit_code = kExitTrue;

  GenerateArgs gen;
  CLI::App* generate =
      app.add_subcommand("generate", "write a fixed-point prefix");
  generate->add_flag("--vtm", gen.vtm, "the ternary squarefree word vtm");
  generate->add_option("--morphism", gen.morphism_spec,
                       "morphism spec like \"0:01,1:10\"");
  generate->add_option("--length", gen.length, "prefix length")->required();
  generate->add_option("--seed-letter", gen.seed_letter,
                       "starting letter (default 0)");
  generate->add_option("--out", gen.out, "output word file (default stdout)");
  generate->callback([&] {
    if (gen.vtm == !gen.morphism_spec.empty())
      throw CLI::ValidationError("generate",
                                 "pick exactly one of --vtm, --morphism");
    exit_code = run_generate(gen);
  });

  CheckArgs chk;
  CLI::App* check = app.add_subcommand("check", "scan words for claims");
  check->add_option("--squarefree", chk.squarefree_file,
                    "word file to test for squares");
  check->add_flag("--theorem1", chk.theorem1,
                  "per k, find adjacent equal letters in {0,2} in the "
                  "subsequence (v_{kn}) of vtm");
  check->add_option("--k-range", chk.k_range, "K or A..B (default 2..1000)");
  check->add_option("--prefix", chk.prefix_len,
                    "vtm prefix length (default 10^7)");
  check->add_flag("--residues", chk.residues,
                  "occurrence residues of --factor mod --k");
  check->add_option("--k", chk.k, "modulus for --residues");
  check->add_option("--factor", chk.factor, "factor digits for --residues");
  check->add_option("--word", chk.word_file,
                    "word file to scan (default: vtm prefix)");
  check->add_flag("--json", chk.as_json, "emit a JSON report");
  check->callback([&, check] {
    // residue scans default to a 10^6 prefix unless --prefix was given
    if (chk.residues && chk.word_file.empty() && check->count("--prefix") == 0)
      chk.prefix_len = 1'000'000;
    exit_code = run_check(chk);
  });

  PredicateArgs pred;
  CLI::App* predicate = app.add_subcommand(
      "predicate", "compile a first-order predicate to an automaton");
  predicate->add_option("--eval", pred.formula, "the predicate text")
      ->required();
  predicate->add_option("--seq", pred.sequences,
                        "NAME=FILE or NAME=builtin (repeatable); VTM "
                        "defaults to builtin");
  predicate->add_option("--member", pred.member,
                        "assignment like k=5 or i=3,k=5");
  predicate->add_option("--enumerate", pred.enumerate_limit,
                        "list the first L accepted assignments");
  predicate->add_option("--out", pred.out, "write the automaton (text)");
  predicate->add_option("--dot", pred.dot, "write the automaton (DOT)");
  predicate->add_option("--compare-len", pred.compare_len,
                        "kernel fingerprint length for builtin sequences");
  predicate->add_option("--verify-len", pred.verify_len,
                        "verification bound for builtin sequences");
  predicate->add_option("--state-ceiling", pred.state_ceiling,
                        "abort constructions beyond this many states");
  predicate->add_flag("--json", pred.as_json, "emit a JSON report");
  predicate->callback([&] { exit_code = run_predicate(pred); });

  MorphismArgs mor;
  CLI::App* morphism = app.add_subcommand(
      "morphism", "search for cyclic squarefree uniform morphisms / embed");
  morphism->add_flag("--search", mor.search, "search at --k");
  morphism->add_option("--k", mor.k, "uniform image length");
  morphism->add_flag("--exhaustive", mor.exhaustive,
                     "enumerate all solutions (k <= 13)");
  morphism->add_option("--budget", mor.budget, "search node budget");
  morphism->add_flag("--embed", mor.embed,
                     "apply a certified morphism to --word");
  morphism->add_option("--word", mor.word_file, "squarefree ternary word file");
  morphism->add_option("--morphism", mor.morphism_file, "morphism file");
  morphism->add_option("--out", mor.out, "output file");
  morphism->add_flag("--json", mor.as_json, "emit a JSON report");
  morphism->callback([&] { exit_code = run_morphism(mor); });

  DfaoArgs dfa;
  CLI::App* dfao = app.add_subcommand(
      "dfao", "reconstruct, verify and export the vtm automaton");
  dfao->add_option("--compare-len", dfa.compare_len,
                   "kernel fingerprint length (default 4096)");
  dfao->add_option("--verify-len", dfa.verify_len,
                   "verification bound (default 2^20)");
  dfao->add_option("--out", dfa.out, "write the automaton (text)");
  dfao->add_option("--dot", dfa.dot, "write the automaton (DOT)");
  dfao->add_flag("--json", dfa.as_json, "emit a JSON report");
  dfao->callback([&] { exit_code = run_dfao(dfa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return exit_code;
}
