#include <stdexcept>

#include "doctest.h"
#include "sqf/morphism.hpp"
#include "sqf/word.hpp"

using namespace sqf;

TEST_CASE("digit strings round-trip") {
  const Word w = Word::from_digits("012021");
  CHECK(w.size() == 6);
  CHECK(w.alphabet_size == 3);
  CHECK(w.to_digits() == "012021");
  CHECK(Word::from_digits("") == Word{});
  CHECK_THROWS_AS(Word::from_digits("01a2"), std::invalid_argument);
  CHECK_THROWS_AS(Word::from_digits("03", 3), std::invalid_argument);
}

TEST_CASE("morphism application concatenates images in order") {
  const Morphism& m = vtm_morphism();
  CHECK(apply_morphism(m, Word::from_digits("0", 3)).to_digits() == "012");
  CHECK(apply_morphism(m, Word{}).empty());
  CHECK(apply_morphism(m, Word::from_digits("012", 3)).to_digits() ==
        "012021");
  CHECK_THROWS_AS(apply_morphism(m, Word::from_digits("3")),
                  std::invalid_argument);
}

TEST_CASE("morphism spec parsing") {
  const Morphism m = Morphism::parse("0:01,1:10");
  CHECK(m.alphabet_size == 2);
  CHECK(m.images[0].to_digits() == "01");
  CHECK(m.images[1].to_digits() == "10");
  CHECK_THROWS_AS(Morphism::parse("0:01"), std::invalid_argument);
  CHECK_THROWS_AS(Morphism::parse("0:01,0:10"), std::invalid_argument);
  CHECK_THROWS_AS(Morphism::parse("junk"), std::invalid_argument);
}

TEST_CASE("fixed point prefixes") {
  CHECK(vtm_prefix(15).to_digits() == "012021012102012");
  CHECK(vtm_prefix(1).to_digits() == "0");
  CHECK(vtm_prefix(0).empty());
  CHECK(fixed_point_prefix(thue_morse_morphism(), 0, 8).to_digits() ==
        "01101001");

  // not prolongable: image of 1 does not start with 1
  CHECK_THROWS_AS(fixed_point_prefix(vtm_morphism(), 1, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(fixed_point_prefix(Morphism::parse("0:00,1:1"), 1, 4),
                  std::invalid_argument);
}

TEST_CASE("fixed point property: the prefix is invariant under the morphism") {
  for (std::size_t len : {1u, 2u, 10u, 100u, 5000u}) {
    const Word p = vtm_prefix(len);
    const Word image = apply_morphism(vtm_morphism(), p);
    REQUIRE(image.size() >= p.size());
    CHECK(std::equal(p.begin(), p.end(), image.begin()));
  }
}

TEST_CASE("thue-morse prefix letters equal bit-count parity") {
  const Word tm = fixed_point_prefix(thue_morse_morphism(), 0, 1 << 12);
  for (std::size_t n = 0; n < tm.size(); ++n)
    CHECK(tm[n] == Letter(__builtin_popcountll(n) & 1));
}
