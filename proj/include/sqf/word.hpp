// word.hpp -- finite words over small integer-coded alphabets
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sqf {

using Letter = std::uint8_t;

/// A finite word over the alphabet {0, 1, ..., alphabet_size - 1}.
///
/// Words compare equal by letter content alone; alphabet_size is context
/// (the domain a morphism or scanner expects), not part of the value.
struct Word {
  std::vector<Letter> letters;
  Letter alphabet_size = 0;

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  Letter operator[](std::size_t i) const { return letters[i]; }

  const Letter* data() const noexcept { return letters.data(); }
  auto begin() const noexcept { return letters.begin(); }
  auto end() const noexcept { return letters.end(); }

  bool operator==(const Word& other) const { return letters == other.letters; }

  /// Parses a digit string, one character per letter ('0' -> 0, ...).
  /// With alphabet = 0 the alphabet size is deduced as max letter + 1.
  static Word from_digits(std::string_view digits, Letter alphabet = 0);

  std::string to_digits() const;
};

inline Word Word::from_digits(std::string_view digits, Letter alphabet) {
  Word w;
  w.letters.reserve(digits.size());
  Letter max_letter = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const char c = digits[i];
    if (c < '0' || c > '9')
      throw std::invalid_argument("word digit string: unexpected character '" +
                                  std::string(1, c) + "' at offset " +
                                  std::to_string(i));
    const Letter l = static_cast<Letter>(c - '0');
    if (alphabet != 0 && l >= alphabet)
      throw std::invalid_argument("word digit string: letter " +
                                  std::to_string(int(l)) +
                                  " outside alphabet of size " +
                                  std::to_string(int(alphabet)));
    max_letter = std::max(max_letter, l);
    w.letters.push_back(l);
  }
  w.alphabet_size =
      alphabet != 0 ? alphabet
                    : (w.letters.empty() ? Letter{0} : Letter(max_letter + 1));
  return w;
}

inline std::string Word::to_digits() const {
  std::string s;
  s.reserve(letters.size());
  for (Letter l : letters) {
    if (l > 9)
      throw std::invalid_argument("word letter " + std::to_string(int(l)) +
                                  " has no single-digit form");
    s.push_back(static_cast<char>('0' + l));
  }
  return s;
}

/// Checks the letter-range invariant; throws std::invalid_argument on breach.
inline void validate(const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] >= w.alphabet_size)
      throw std::invalid_argument("word letter at position " +
                                  std::to_string(i) + " out of alphabet");
}

// Word files are a single newline-terminated digit string.

inline Word read_word_file(const std::filesystem::path& path,
                           Letter alphabet = 0) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word file: " + path.string());
  std::string line;
  std::getline(in, line);
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
    line.pop_back();
  return Word::from_digits(line, alphabet);
}

inline void write_word_file(const std::filesystem::path& path, const Word& w) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write word file: " + path.string());
  out << w.to_digits() << '\n';
}

}  // namespace sqf
