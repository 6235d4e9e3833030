#include <map>
#include <random>

#include "brute_force.hpp"
#include "doctest.h"
#include "sqf/compile.hpp"
#include "sqf/kernel.hpp"
#include "sqf/morphism.hpp"
#include "sqf/progressions.hpp"
#include "sqf/track_automaton.hpp"

using namespace sqf;

namespace {

const char* kGapFormula =
    "Ei (VTM[i]=@0 & VTM[i+k]=@0)|(VTM[i]=@2 & VTM[i+k]=@2)";

const Word& prefix() {
  static const Word w = vtm_prefix(1 << 21);
  return w;
}

const std::map<std::string, Dfao>& sequences() {
  static const std::map<std::string, Dfao> seqs{
      {"VTM", minimize(kernel_dfao(sequence_of(prefix()), 1 << 12, 1 << 18))}};
  return seqs;
}

TrackAutomaton compiled(const std::string& text) {
  return compile_predicate(text, sequences());
}

bool member1(const TrackAutomaton& a, std::uint64_t v) {
  return membership(a, std::vector<std::uint64_t>{v});
}

}  // namespace

TEST_CASE("equality atom") {
  const TrackAutomaton a = eq_automaton("i", "j");
  for (std::uint64_t i = 0; i < 64; ++i)
    for (std::uint64_t j = 0; j < 64; ++j)
      CHECK(membership(a, {{"i", i}, {"j", j}}) == (i == j));
  CHECK(eq_automaton("i", "i") == universal_automaton({"i"}));
}

TEST_CASE("order atoms") {
  const TrackAutomaton lt = less_automaton("i", "j", false);
  const TrackAutomaton le = less_automaton("i", "j", true);
  for (std::uint64_t i = 0; i < 64; ++i)
    for (std::uint64_t j = 0; j < 64; ++j) {
      CHECK(membership(lt, {{"i", i}, {"j", j}}) == (i < j));
      CHECK(membership(le, {{"i", i}, {"j", j}}) == (i <= j));
    }
  CHECK(less_automaton("i", "i", false) == empty_automaton({"i"}));
  CHECK(less_automaton("i", "i", true) == universal_automaton({"i"}));
}

TEST_CASE("addition relation, including repeated tracks") {
  const TrackAutomaton add = add_automaton("i", "j", "m");
  for (std::uint64_t i = 0; i < 48; ++i)
    for (std::uint64_t j = 0; j < 48; ++j)
      for (std::uint64_t m = 0; m < 96; ++m)
        CHECK(membership(add, {{"i", i}, {"j", j}, {"m", m}}) == (i + j == m));

  const TrackAutomaton twice = add_automaton("i", "i", "m");
  for (std::uint64_t i = 0; i < 64; ++i)
    for (std::uint64_t m = 0; m < 128; ++m)
      CHECK(membership(twice, {{"i", i}, {"m", m}}) == (2 * i == m));

  const TrackAutomaton zero = add_automaton("i", "j", "i");
  for (std::uint64_t i = 0; i < 32; ++i)
    for (std::uint64_t j = 0; j < 32; ++j)
      CHECK(membership(zero, {{"i", i}, {"j", j}}) == (j == 0));

  // wide values stress the carry chain
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::uint64_t i = rng() >> 24, j = rng() >> 24;
    CHECK(membership(add, {{"i", i}, {"j", j}, {"m", i + j}}));
    CHECK(!membership(add, {{"i", i}, {"j", j}, {"m", i + j + 1}}));
    if (i + j > 0)
      CHECK(!membership(add, {{"i", i}, {"j", j}, {"m", i + j - 1}}));
  }
}

TEST_CASE("constant atoms") {
  for (std::uint64_t c : {0ull, 1ull, 2ull, 5ull, 12ull, 100ull, 4097ull}) {
    const TrackAutomaton a = const_automaton("k", c);
    for (std::uint64_t k = 0; k < 256; ++k) CHECK(member1(a, k) == (k == c));
    CHECK(member1(a, c));
  }
}

TEST_CASE("sequence atom agrees with the morphic prefix") {
  const TrackAutomaton a = compiled("VTM[i]=@0");
  const Word& p = prefix();
  for (std::uint64_t i = 0; i < (1 << 14); ++i)
    CHECK(member1(a, i) == (p[i] == 0));
}

TEST_CASE("sequence atoms with far index offsets") {
  // the bound sum needs many more digits than the free track, exercising
  // the leading-column closure of projection through the adder chain
  const TrackAutomaton a = compiled("VTM[k+65536]=@2");
  const Word& p = prefix();
  for (std::uint64_t k = 0; k < 512; ++k)
    CHECK(member1(a, k) == (p[k + 65536] == 2));

  CHECK(compiled("Et t=k+1000000") == universal_automaton({"k"}));
}

TEST_CASE("sequence atom rejects letters outside the output alphabet") {
  CHECK_THROWS_AS(compiled("VTM[i]=@3"), CompileError);
  CHECK_THROWS_AS(compiled("TM[i]=@0"), CompileError);  // unregistered name
}

TEST_CASE("boolean algebra on automata") {
  const TrackAutomaton a = compiled("VTM[i]=@0");
  CHECK(product(Connective::And, a, complement(a)) == empty_automaton({"i"}));
  CHECK(product(Connective::Or, a, complement(a)) ==
        universal_automaton({"i"}));
  CHECK(complement(complement(a)) == a);
  CHECK(product(Connective::Implies, a, a) == universal_automaton({"i"}));
}

TEST_CASE("projection basics") {
  CHECK(project(universal_automaton({"i"}), "i") == universal_automaton({}));
  CHECK(decide(project(universal_automaton({"i"}), "i")));

  // every k has a witness i with i = k
  CHECK(project(eq_automaton("i", "k"), "i") == universal_automaton({"k"}));
  CHECK_THROWS_AS(project(eq_automaton("i", "k"), "z"), std::invalid_argument);
}

TEST_CASE("padding closure holds after every construction") {
  for (const std::string& text : sqf_test::oracle_formula_suite()) {
    CAPTURE(text);
    CHECK(is_padding_closed(compiled(text)));
  }
}

TEST_CASE("the compiled gap-repeat predicate matches prefix scans") {
  const TrackAutomaton a = compiled(kGapFormula);
  CHECK(a.tracks == std::vector<std::string>{"k"});
  CHECK(!member1(a, 1));  // a squarefree word has no 00 or 22 factor
  CHECK(member1(a, 0));   // i = 0 pairs v_0 with itself
  for (std::uint64_t k = 2; k <= 4096; ++k) CHECK(member1(a, k));

  const Word& p = prefix();
  for (std::uint64_t k = 2; k < 128; ++k)
    CHECK(member1(a, k) == find_gap_repeat(p, k).has_value());

  const auto first = enumerate_accepted(a, 10);
  std::vector<std::vector<std::uint64_t>> expect{
      {0}, {2}, {3}, {4}, {5}, {6}, {7}, {8}, {9}, {10}};
  CHECK(first == expect);
}

TEST_CASE("the quantifier-free body matches a direct scan") {
  const TrackAutomaton body = compiled(
      "(VTM[i]=@0 & VTM[i+k]=@0)|(VTM[i]=@2 & VTM[i+k]=@2)");
  const Word& p = prefix();
  for (std::uint64_t i = 0; i < 64; ++i)
    for (std::uint64_t k = 0; k < 64; ++k) {
      const bool direct = (p[i] == 0 || p[i] == 2) && p[i + k] == p[i];
      CHECK(membership(body, {{"i", i}, {"k", k}}) == direct);
    }
}

TEST_CASE("decide") {
  CHECK(decide(compiled("Ei VTM[i]=@1")));
  CHECK(decide(compiled("Ei i=i")));
  CHECK(decide(compiled("Ai Ej j=i+1")));
  CHECK(!decide(compiled("Ei (VTM[i]=@0 & VTM[i]=@2)")));
  CHECK_THROWS_AS(decide(compiled("VTM[k]=@0")), std::invalid_argument);
}

TEST_CASE("vacuous quantifiers do not disturb the body") {
  CHECK(compiled("Ei k=k") == universal_automaton({"k"}));
  CHECK(compiled("Ai k=5") == compiled("k=5"));
}

TEST_CASE("membership arity is checked") {
  const TrackAutomaton a = compiled("i<j");
  CHECK_THROWS_AS(membership(a, std::vector<std::uint64_t>{1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(membership(a, {{"i", 1ull}, {"z", 2ull}}),
                  std::invalid_argument);
}

TEST_CASE("canonical minimization: equivalent pipelines coincide") {
  const TrackAutomaton a = compiled(kGapFormula);
  const TrackAutomaton b = compiled("~(~(" + std::string(kGapFormula) + "))");
  CHECK(a == b);
  CHECK(isomorphic(a, b));
  const TrackAutomaton parenthesized = compiled(
      "Ei ((VTM[i]=@0 & VTM[i+k]=@0)|(VTM[i]=@2 & VTM[i+k]=@2))");
  CHECK(a == parenthesized);
  CHECK(minimize(a) == a);

  // different pipelines, same languages
  CHECK(compiled("i<j") == compiled("~(j<=i)"));
  CHECK(compiled("i=j") == compiled("i<=j & j<=i"));
  CHECK(compiled("i<=j") == compiled("i<j | i=j"));
  CHECK(compiled("Ei i+i=k") == compiled("Ej j+j=k"));
}

TEST_CASE("state ceiling failures name the subformula") {
  CompileOptions tight;
  tight.state_ceiling = 2;
  try {
    compile_predicate("Ei i+i=k", sequences(), tight);
    FAIL("expected CompileError");
  } catch (const CompileError& e) {
    CHECK(std::string(e.what()).find("state ceiling") != std::string::npos);
    CHECK(std::string(e.what()).find("while compiling") != std::string::npos);
  }
}

TEST_CASE("membership equals brute force on the oracle suite (small range)") {
  const Word& p = prefix();
  for (const std::string& text : sqf_test::oracle_formula_suite()) {
    CAPTURE(text);
    const FormulaPtr f = parse_predicate(text);
    const TrackAutomaton a = compile_predicate(*f, sequences());
    const std::vector<std::string> tracks = a.tracks;
    REQUIRE(tracks.size() <= 3);

    const std::uint64_t range = 32;
    std::vector<std::uint64_t> values(tracks.size(), 0);
    std::uint64_t combos = 1;
    for (std::size_t j = 0; j < tracks.size(); ++j) combos *= range;
    for (std::uint64_t code = 0; code < combos; ++code) {
      std::uint64_t rest = code;
      std::map<char, std::uint64_t> env;
      for (std::size_t j = 0; j < tracks.size(); ++j) {
        values[j] = rest % range;
        rest /= range;
        env[tracks[j][0]] = values[j];
      }
      const bool automaton_says = membership(a, values);
      const bool brute_says = sqf_test::brute_eval(*f, env, p);
      if (automaton_says != brute_says) {
        CAPTURE(code);
        REQUIRE(automaton_says == brute_says);
      }
    }
  }
}

TEST_CASE("track automaton text format round-trips") {
  const TrackAutomaton a = compiled(kGapFormula);
  CHECK(track_automaton_from_text(to_text(a)) == a);
  const TrackAutomaton closed = compiled("Ei VTM[i]=@1");
  CHECK(track_automaton_from_text(to_text(closed)) == closed);
  CHECK_THROWS_AS(track_automaton_from_text("nonsense"),
                  std::invalid_argument);
}

TEST_CASE("dot export labels columns with track tuples") {
  const TrackAutomaton body = compiled("i<k");
  const std::string dot = to_dot(body);
  CHECK(dot.find("(i,k)") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);
}
