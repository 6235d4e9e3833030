// morphism.hpp -- letter-to-word maps and fixed-point generation
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sqf/word.hpp"

namespace sqf {

/// A morphism on words, given by one image word per letter.
struct Morphism {
  Letter alphabet_size = 0;
  std::vector<Word> images;

  /// True iff iterating from `a` converges to a unique infinite fixed point:
  /// images[a] must start with `a` and have length at least 2.
  bool prolongable_at(Letter a) const {
    return a < alphabet_size && images[a].size() >= 2 && images[a][0] == a;
  }

  /// Parses a spec like "0:012,1:02,2:1". Every letter 0..n-1 must be given
  /// exactly once, where n is the number of entries.
  static Morphism parse(std::string_view spec);
};

inline void validate(const Morphism& m) {
  if (m.images.size() != m.alphabet_size)
    throw std::invalid_argument("morphism: need one image per letter");
  for (const Word& im : m.images) {
    for (std::size_t i = 0; i < im.size(); ++i)
      if (im[i] >= m.alphabet_size)
        throw std::invalid_argument("morphism image letter out of alphabet");
  }
}

inline Morphism Morphism::parse(std::string_view spec) {
  std::vector<std::pair<Letter, Word>> entries;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string_view entry = spec.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    std::size_t colon = entry.find(':');
    if (colon != 1 || entry.empty() || entry[0] < '0' || entry[0] > '9')
      throw std::invalid_argument(
          "morphism spec: expected \"L:digits\" entries separated by commas");
    entries.emplace_back(Letter(entry[0] - '0'),
                         Word::from_digits(entry.substr(2)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  Morphism m;
  m.alphabet_size = Letter(entries.size());
  m.images.resize(entries.size());
  std::vector<bool> seen(entries.size(), false);
  for (auto& [letter, image] : entries) {
    if (letter >= m.alphabet_size || seen[letter])
      throw std::invalid_argument(
          "morphism spec: letters must be 0..n-1, each exactly once");
    seen[letter] = true;
    image.alphabet_size = m.alphabet_size;
    m.images[letter] = std::move(image);
  }
  validate(m);
  return m;
}

/// Image of w under m: the concatenation of the images of w's letters.
inline Word apply_morphism(const Morphism& m, const Word& w) {
  std::size_t total = 0;
  for (Letter l : w.letters) {
    if (l >= m.alphabet_size)
      throw std::invalid_argument("apply_morphism: letter " +
                                  std::to_string(int(l)) +
                                  " outside morphism alphabet");
    total += m.images[l].size();
  }
  Word out;
  out.alphabet_size = m.alphabet_size;
  out.letters.reserve(total);
  for (Letter l : w.letters)
    out.letters.insert(out.letters.end(), m.images[l].begin(),
                       m.images[l].end());
  return out;
}

/// First min_len letters of the fixed point of m starting with seed.
///
/// The fixed point is grown in place: starting from m(seed), the image of
/// the letter at the read cursor is appended until enough letters exist,
/// then the buffer is truncated to exactly min_len letters.
inline Word fixed_point_prefix(const Morphism& m, Letter seed,
                               std::size_t min_len) {
  validate(m);
  if (!m.prolongable_at(seed))
    throw std::invalid_argument(
        "fixed_point_prefix: morphism is not prolongable at seed letter " +
        std::to_string(int(seed)));
  Word w;
  w.alphabet_size = m.alphabet_size;
  if (min_len == 0) return w;
  w.letters = m.images[seed].letters;
  w.letters.reserve(min_len + 8);
  std::size_t cursor = 1;
  while (w.letters.size() < min_len) {
    if (cursor >= w.letters.size())
      throw std::runtime_error(
          "fixed_point_prefix: generation stalled (erasing morphism)");
    const Word& im = m.images[w.letters[cursor++]];
    w.letters.insert(w.letters.end(), im.begin(), im.end());
  }
  w.letters.resize(min_len);
  return w;
}

/// The ternary morphism 0 -> 012, 1 -> 02, 2 -> 1 whose fixed point from 0
/// is the squarefree word vtm = 012021012102012...
inline const Morphism& vtm_morphism() {
  static const Morphism m = Morphism::parse("0:012,1:02,2:1");
  return m;
}

/// The binary morphism 0 -> 01, 1 -> 10 (Thue-Morse).
inline const Morphism& thue_morse_morphism() {
  static const Morphism m = Morphism::parse("0:01,1:10");
  return m;
}

inline Word vtm_prefix(std::size_t len) {
  return fixed_point_prefix(vtm_morphism(), 0, len);
}

}  // namespace sqf
