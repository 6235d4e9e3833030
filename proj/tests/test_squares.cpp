#include <random>

#include "doctest.h"
#include "sqf/morphism.hpp"
#include "sqf/squares.hpp"

using namespace sqf;

TEST_CASE("known small cases") {
  // "tartar" coded over its own letters: t=0, a=1, r=2
  const Word tartar = Word::from_digits("012012", 3);
  const auto w = find_square(tartar);
  REQUIRE(w.has_value());
  CHECK(w->position == 0);
  CHECK(w->period == 3);
  CHECK(witness_holds(tartar, *w));

  CHECK(!find_square(Word::from_digits("012")).has_value());
  CHECK(!is_squarefree(Word::from_digits("00")));
  CHECK(is_squarefree(Word::from_digits("012021012102012")));
  CHECK(is_squarefree(Word{}));
  CHECK(is_squarefree(Word::from_digits("0")));
  CHECK(!is_squarefree(Word::from_digits("11")));
}

TEST_CASE("agrees with the reference scanner on a fixed example") {
  const Word w = Word::from_digits("0120210121");
  CHECK(find_square(w) == find_square_naive(w));
}

TEST_CASE("agrees with the reference scanner on random words") {
  std::mt19937 rng(20240517);
  for (int trial = 0; trial < 1000; ++trial) {
    const int alphabet = 2 + int(rng() % 3);
    const std::size_t len = 1 + rng() % 200;
    Word w;
    w.alphabet_size = Letter(alphabet);
    for (std::size_t i = 0; i < len; ++i)
      w.letters.push_back(Letter(rng() % alphabet));
    const auto fast = find_square(w);
    const auto naive = find_square_naive(w);
    REQUIRE(fast.has_value() == naive.has_value());
    if (fast) {
      CHECK(fast->position == naive->position);
      CHECK(fast->period == naive->period);
      CHECK(witness_holds(w, *fast));
    }
  }
}

TEST_CASE("agrees with the reference scanner on every small word") {
  // every binary word up to length 14 and every ternary word up to length 8
  std::uint64_t checked = 0;
  for (int alphabet : {2, 3}) {
    const std::size_t max_len = alphabet == 2 ? 14 : 8;
    for (std::size_t len = 1; len <= max_len; ++len) {
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < len; ++i) count *= alphabet;
      Word w;
      w.alphabet_size = Letter(alphabet);
      w.letters.resize(len);
      for (std::uint64_t code = 0; code < count; ++code) {
        std::uint64_t rest = code;
        for (std::size_t i = 0; i < len; ++i) {
          w.letters[i] = Letter(rest % alphabet);
          rest /= alphabet;
        }
        const auto fast = find_square(w);
        const auto naive = find_square_naive(w);
        if (fast != naive) {
          CAPTURE(w.to_digits());
          REQUIRE(fast == naive);
        }
        ++checked;
      }
    }
  }
  CHECK(checked == 32766 + 9840);
}

TEST_CASE("degenerate periodic words") {
  for (const char* digits :
       {"0000000000", "0101010101", "0011001100", "1001001001", "2102102102"}) {
    const Word w = Word::from_digits(digits);
    CHECK(find_square(w) == find_square_naive(w));
  }
}

TEST_CASE("vtm prefixes are squarefree") {
  const Word p = vtm_prefix(100'000);
  CHECK(!find_square(p).has_value());

  Word small = p;
  small.letters.resize(10'000);
  CHECK(!find_square_naive(small).has_value());
}
