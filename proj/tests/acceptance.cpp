// acceptance -- end-to-end verification suite. Runs every headline claim at
// full scale and prints one pass/fail line per criterion.
//
// usage: acceptance [path-to-sqf-cli]

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "brute_force.hpp"
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

using namespace sqf;

std::string g_cli;
int g_failures = 0;

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  CliResult result;
  if (g_cli.empty()) throw std::runtime_error("no CLI path given");
  const std::string cmd = "\"" + g_cli + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed");
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    result.out.append(buf.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

void criterion(int number, const std::string& label,
               const std::function<bool()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string error;
  try {
    ok = body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  std::printf("[%s] criterion %2d: %s (%lld ms)%s%s\n", ok ? "PASS" : "FAIL",
              number, label.c_str(), static_cast<long long>(ms),
              error.empty() ? "" : " -- ", error.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

const Word& vtm_10m() {
  static const Word w = vtm_prefix(10'000'000);
  return w;
}

Word vtm_slice(std::size_t len) {
  Word w;
  w.alphabet_size = 3;
  w.letters.assign(vtm_10m().begin(), vtm_10m().begin() + len);
  return w;
}

const Dfao& vtm_dfao() {
  static const Dfao d = [] {
    const Word big = vtm_prefix(1 << 21);
    return minimize(kernel_dfao(sequence_of(big), 1 << 12, 1 << 20));
  }();
  return d;
}

const TrackAutomaton& gap_predicate() {
  static const TrackAutomaton a = compile_predicate(
      "Ei (VTM[i]=@0 & VTM[i+k]=@0)|(VTM[i]=@2 & VTM[i+k]=@2)",
      {{"VTM", vtm_dfao()}});
  return a;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("sqf_acceptance_" + std::to_string(::getpid()) + "_" + name);
}

bool criterion_golden_prefix() {
  const CliResult r = run_cli("generate --vtm --length 15");
  return r.exit_code == 0 && r.out == "012021012102012\n";
}

bool criterion_squarefree_vtm() {
  const Word million = vtm_slice(1'000'000);
  if (find_square(million)) return false;
  const Word small = vtm_slice(10'000);
  const auto fast = find_square(small);
  const auto naive = find_square_naive(small);
  return !fast && !naive;
}

bool criterion_theorem1_sweep() {
  const Word& p = vtm_10m();
  for (std::size_t k = 2; k <= 1000; ++k) {
    const auto e = find_ap_square(p, k);
    if (!e) return false;  // inconclusive entries fail the criterion
    if (!evidence_holds(p, *e)) return false;
  }
  return true;
}

bool criterion_dfao_fidelity() {
  const Dfao& d = vtm_dfao();
  const Word big = vtm_prefix(1 << 20);
  for (std::uint64_t n = 0; n < (1 << 20); ++n)
    if (run(d, n) != big[n]) return false;
  for (std::uint64_t n = 0; n < (1 << 14); ++n) {
    std::string bits;
    for (int b = (n == 0 ? -1 : std::bit_width(n) - 1); b >= 0; --b)
      bits.push_back(char('0' + ((n >> b) & 1)));
    const Letter expect = run(d, n);
    for (int pad = 1; pad <= 4; ++pad) {
      bits.insert(bits.begin(), '0');
      if (run_digits(d, bits) != expect) return false;
    }
  }
  return true;
}

bool criterion_doubling_and_powers() {
  return check_doubling(vtm_dfao(), 1'000'000) &&
         check_power_of_two(vtm_dfao(), 19);
}

bool criterion_gap_predicate() {
  const TrackAutomaton& a = gap_predicate();
  for (std::uint64_t k = 1; k <= (1 << 16); ++k) {
    const bool expect = k != 1;
    if (membership(a, std::vector<std::uint64_t>{k}) != expect) return false;
  }
  const Word& p = vtm_10m();
  for (std::uint64_t k = 1; k < (1 << 7); ++k) {
    bool direct = false;
    for (std::size_t i = 0; !direct && i + k < 1'000'000; ++i)
      direct = (p[i] == 0 || p[i] == 2) && p[i + k] == p[i];
    if (membership(a, std::vector<std::uint64_t>{k}) != direct) return false;
  }
  return true;
}

bool criterion_compiler_oracle_suite() {
  const Word prefix = vtm_slice(1 << 12);
  const std::map<std::string, Dfao> seqs{{"VTM", vtm_dfao()}};
  const auto& suite = sqf_test::oracle_formula_suite();
  if (suite.size() < 20) return false;
  for (const std::string& text : suite) {
    const FormulaPtr f = parse_predicate(text);
    const TrackAutomaton a = compile_predicate(*f, seqs);
    if (a.tracks.size() > 3) return false;
    const std::uint64_t range = 1 << 7;
    std::uint64_t combos = 1;
    for (std::size_t j = 0; j < a.tracks.size(); ++j) combos *= range;
    std::vector<std::uint64_t> values(a.tracks.size());
    for (std::uint64_t code = 0; code < combos; ++code) {
      std::uint64_t rest = code;
      std::map<char, std::uint64_t> env;
      for (std::size_t j = 0; j < a.tracks.size(); ++j) {
        values[j] = rest % range;
        rest /= range;
        env[a.tracks[j][0]] = values[j];
      }
      if (membership(a, values) != sqf_test::brute_eval(*f, env, prefix))
        return false;
    }
  }
  return true;
}

bool criterion_residue_coverage() {
  const Word p = vtm_slice(1'000'000);
  std::set<std::string> factors;
  {
    std::string cur;
    for (std::size_t len = 1; len <= 6; ++len)
      for (std::size_t i = 0; i + len <= p.size(); ++i) {
        cur.assign(len, '0');
        for (std::size_t j = 0; j < len; ++j) cur[j] = char('0' + p[i + j]);
        factors.insert(cur);
      }
  }
  for (std::size_t k = 3; k <= 25; k += 2)
    for (const std::string& f : factors)
      if (occurrence_residues(p, Word::from_digits(f, 3), k).size() != k)
        return false;
  return true;
}

bool criterion_morphism_search() {
  for (std::size_t k : {23u, 24u, 25u}) {
    const auto path = temp_file("morphism_" + std::to_string(k) + ".txt");
    const CliResult r = run_cli("morphism --search --k " + std::to_string(k) +
                                " --out " + path.string());
    if (r.exit_code != 0) return false;
    const CyclicUniformMorphism c = read_morphism_file(path);
    std::filesystem::remove(path);
    if (!c.certified || c.k != k || c.image0.size() != k) return false;
    // independent re-certification: finite criterion + exhaustive length-8
    if (!certify(c, /*deep=*/true).certified) return false;
  }
  return true;
}

bool criterion_embedding_identity() {
  const auto word_path = temp_file("word10k.txt");
  const auto morphism_path = temp_file("m23.txt");
  const auto out_path = temp_file("embedded.txt");
  if (run_cli("generate --vtm --length 10000 --out " + word_path.string())
          .exit_code != 0)
    return false;
  if (run_cli("morphism --search --k 23 --out " + morphism_path.string())
          .exit_code != 0)
    return false;
  if (run_cli("morphism --embed --word " + word_path.string() +
              " --morphism " + morphism_path.string() + " --out " +
              out_path.string())
          .exit_code != 0)
    return false;
  const Word w = read_word_file(word_path, 3);
  const Word v = read_word_file(out_path, 3);
  std::filesystem::remove(word_path);
  std::filesystem::remove(morphism_path);
  std::filesystem::remove(out_path);
  return v.size() == 23 * w.size() && is_squarefree(v) &&
         subsequence_ap(v, 23) == w && w == vtm_slice(10'000);
}

bool criterion_canonical_minimization() {
  const Dfao& d = vtm_dfao();
  if (minimize(d) != d) return false;
  const TrackAutomaton& a = gap_predicate();
  if (minimize(a) != a) return false;
  const TrackAutomaton doubled = compile_predicate(
      "~(~(Ei (VTM[i]=@0 & VTM[i+k]=@0)|(VTM[i]=@2 & VTM[i+k]=@2)))",
      {{"VTM", vtm_dfao()}});
  return doubled == a && isomorphic(doubled, a);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];

  criterion(1, "generate --vtm --length 15 prints 012021012102012",
            criterion_golden_prefix);
  criterion(2, "the 10^6 vtm prefix is squarefree; fast and naive agree",
            criterion_squarefree_vtm);
  criterion(3, "every k in 2..1000 yields 00 or 22 in (v_{kn}), 10^7 prefix",
            criterion_theorem1_sweep);
  criterion(4, "reconstructed automaton matches vtm below 2^20, zero-pad "
               "invariant",
            criterion_dfao_fidelity);
  criterion(5, "doubling preserves letters 0 and 2; powers of two output 2",
            criterion_doubling_and_powers);
  criterion(6, "compiled gap predicate accepts exactly {2..2^16} within "
               "[1,2^16]",
            criterion_gap_predicate);
  criterion(7, "automaton membership equals brute force for the formula "
               "suite below 2^7",
            criterion_compiler_oracle_suite);
  criterion(8, "odd k in 3..25: factor occurrences cover every residue "
               "class mod k",
            criterion_residue_coverage);
  criterion(9, "certified cyclic squarefree morphisms exist at k = 23, 24, "
               "25",
            criterion_morphism_search);
  criterion(10, "embedding a 10^4 prefix through h_23 keeps it squarefree "
                "and recoverable",
            criterion_embedding_identity);
  criterion(11, "minimization is idempotent; double negation compiles to an "
                "isomorphic automaton",
            criterion_canonical_minimization);

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return 1;
}
