// cyclic.hpp -- cyclic squarefree uniform morphisms on the ternary alphabet
#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sqf/morphism.hpp"
#include "sqf/progressions.hpp"
#include "sqf/squares.hpp"
#include "sqf/word.hpp"

namespace sqf {

/// Letterwise application of the alphabet rotation 0 -> 1 -> 2 -> 0, `power`
/// times.
inline Word sigma(const Word& w, unsigned power = 1) {
  Word out;
  out.alphabet_size = 3;
  out.letters.reserve(w.size());
  for (Letter l : w.letters) {
    if (l > 2) throw std::invalid_argument("sigma: word is not ternary");
    out.letters.push_back(Letter((l + power) % 3));
  }
  return out;
}

/// A k-uniform ternary morphism h with h(i) = sigma^i(h(0)) and h(0)
/// beginning with 0, so h(i) begins with i and (h(w))_{kn} = w_n.
struct CyclicUniformMorphism {
  std::size_t k = 0;
  Word image0;
  bool certified = false;

  bool operator==(const CyclicUniformMorphism& o) const {
    return k == o.k && image0 == o.image0;
  }
};

inline CyclicUniformMorphism make_cyclic(Word image0) {
  if (image0.empty() || image0[0] != 0)
    throw std::invalid_argument("cyclic morphism: image0 must start with 0");
  for (Letter l : image0.letters)
    if (l > 2)
      throw std::invalid_argument("cyclic morphism: image0 must be ternary");
  CyclicUniformMorphism c;
  c.k = image0.size();
  image0.alphabet_size = 3;
  c.image0 = std::move(image0);
  return c;
}

inline Morphism as_morphism(const CyclicUniformMorphism& c) {
  Morphism m;
  m.alphabet_size = 3;
  m.images = {c.image0, sigma(c.image0, 1), sigma(c.image0, 2)};
  return m;
}

/// All squarefree ternary words of exactly the given length.
inline std::vector<Word> squarefree_words(std::size_t length) {
  std::vector<Word> out;
  Word w;
  w.alphabet_size = 3;
  const auto extends_squarefree = [&](Letter l) {
    w.letters.push_back(l);
    // only squares ending at the new last position can be new
    bool ok = true;
    const std::size_t n = w.size();
    for (std::size_t per = 1; ok && 2 * per <= n; ++per)
      ok = !std::equal(w.begin() + (n - 2 * per), w.begin() + (n - per),
                       w.begin() + (n - per));
    if (!ok) w.letters.pop_back();
    return ok;
  };
  const std::function<void()> grow = [&]() {
    if (w.size() == length) {
      out.push_back(w);
      return;
    }
    for (Letter l = 0; l < 3; ++l)
      if (extends_squarefree(l)) {
        grow();
        w.letters.pop_back();
      }
  };
  if (length == 0) return out;
  grow();
  return out;
}

inline std::vector<Word> squarefree_words_up_to(std::size_t max_length) {
  std::vector<Word> out;
  for (std::size_t len = 1; len <= max_length; ++len) {
    auto batch = squarefree_words(len);
    out.insert(out.end(), std::make_move_iterator(batch.begin()),
               std::make_move_iterator(batch.end()));
  }
  return out;
}

namespace detail {

inline void require_uniform_ternary(const Morphism& m) {
  if (m.alphabet_size != 3)
    throw std::invalid_argument("squarefree-morphism test needs a ternary "
                                "morphism");
  if (m.images[1].size() != m.images[0].size() ||
      m.images[2].size() != m.images[0].size() || m.images[0].empty())
    throw std::invalid_argument("squarefree-morphism test needs a uniform "
                                "morphism with nonempty images");
}

}  // namespace detail

/// True iff every image of a squarefree word of length at most max_length is
/// squarefree. Exhaustive; the reference check for the finite criterion.
inline bool squarefree_preserving_up_to(const Morphism& m,
                                        std::size_t max_length) {
  detail::require_uniform_ternary(m);
  for (std::size_t len = 1; len <= max_length; ++len)
    for (const Word& w : squarefree_words(len))
      if (!is_squarefree(apply_morphism(m, w))) return false;
  return true;
}

/// Decides whether a uniform ternary morphism maps every squarefree word to
/// a squarefree word, by the finite criterion: it suffices that the images
/// of all squarefree words of length at most 3 are squarefree. The test
/// suite cross-validates this criterion against the exhaustive length-8
/// check; certify() enforces their agreement at runtime.
inline bool is_squarefree_morphism(const Morphism& m) {
  return squarefree_preserving_up_to(m, 3);
}

/// Runs the finite criterion and, when deep is set, the exhaustive length-8
/// cross-check. Returns the morphism with `certified` set on success; throws
/// std::logic_error if the two checks ever disagree.
inline CyclicUniformMorphism certify(CyclicUniformMorphism c,
                                     bool deep = true) {
  const Morphism m = as_morphism(c);
  const bool criterion = is_squarefree_morphism(m);
  if (deep) {
    const bool exhaustive = squarefree_preserving_up_to(m, 8);
    if (criterion != exhaustive)
      throw std::logic_error(
          "finite squarefree-morphism criterion disagrees with the "
          "exhaustive length-8 check for k=" +
          std::to_string(c.k));
  }
  c.certified = criterion;
  return c;
}

struct SearchOutcome {
  std::optional<CyclicUniformMorphism> found;
  bool budget_exhausted = false;
  std::uint64_t nodes = 0;
};

namespace detail {

// Lexicographic depth-first search over image0 in {0,1,2}^k with
// image0[0] = 0. A prefix containing a square is pruned (a square inside
// h(0) already breaks the criterion; the sigma-rotated images need no
// separate pruning since squares are invariant under letter permutations).
// Complete candidates are accepted by the finite criterion.
template <typename OnFound>
inline SearchOutcome search_cyclic(std::size_t k, std::uint64_t node_budget,
                                   OnFound&& on_found) {
  SearchOutcome outcome;
  if (k == 0) return outcome;
  Word image0;
  image0.alphabet_size = 3;
  image0.letters.push_back(0);

  const auto suffix_square = [&]() {
    const std::size_t n = image0.size();
    for (std::size_t per = 1; 2 * per <= n; ++per)
      if (std::equal(image0.begin() + (n - 2 * per),
                     image0.begin() + (n - per), image0.begin() + (n - per)))
        return true;
    return false;
  };

  // returns false when the search should stop
  const std::function<bool()> descend = [&]() -> bool {
    if (++outcome.nodes > node_budget) {
      outcome.budget_exhausted = true;
      return false;
    }
    if (image0.size() == k) {
      CyclicUniformMorphism c = make_cyclic(image0);
      if (is_squarefree_morphism(as_morphism(c))) {
        if (!on_found(std::move(c))) return false;
      }
      return true;
    }
    for (Letter l = 0; l < 3; ++l) {
      image0.letters.push_back(l);
      const bool viable = !suffix_square();
      if (viable && !descend()) return false;
      image0.letters.pop_back();
    }
    return true;
  };

  descend();
  return outcome;
}

}  // namespace detail

/// Finds the lexicographically least certified cyclic squarefree k-uniform
/// morphism, if the search completes within the node budget. A missing
/// result with budget_exhausted set is never a nonexistence claim.
inline SearchOutcome search_cyclic_squarefree_first(
    std::size_t k, std::uint64_t node_budget = 500'000'000) {
  if (k == 0) throw std::invalid_argument("morphism search: k must be >= 1");
  std::optional<CyclicUniformMorphism> found;
  SearchOutcome outcome =
      detail::search_cyclic(k, node_budget, [&](CyclicUniformMorphism c) {
        found = certify(std::move(c));
        return false;  // stop at the first hit
      });
  outcome.found = std::move(found);
  return outcome;
}

/// All certified cyclic squarefree k-uniform morphisms, in lexicographic
/// order of image0. Exhaustive enumeration is capped at k <= 13.
inline std::vector<CyclicUniformMorphism> search_cyclic_squarefree_exhaustive(
    std::size_t k) {
  if (k == 0) throw std::invalid_argument("morphism search: k must be >= 1");
  if (k > 13)
    throw std::invalid_argument(
        "exhaustive cyclic-morphism search is capped at k <= 13 (3^(k-1) "
        "candidates); use the first-match search beyond");
  std::vector<CyclicUniformMorphism> all;
  detail::search_cyclic(k, std::uint64_t(-1), [&](CyclicUniformMorphism c) {
    all.push_back(certify(std::move(c)));
    return true;
  });
  return all;
}

/// v = h(w) for certified h: v is squarefree whenever w is, and the letters
/// of v at indices k*n reproduce w exactly.
inline Word embed(const Word& w, const CyclicUniformMorphism& c) {
  if (!c.certified)
    throw std::invalid_argument("embed: morphism is not certified squarefree");
  for (Letter l : w.letters)
    if (l > 2) throw std::invalid_argument("embed: word is not ternary");
  if (auto sq = find_square(w))
    throw std::invalid_argument(
        "embed: input word contains the square at position " +
        std::to_string(sq->position) + " with period " +
        std::to_string(sq->period));
  return apply_morphism(as_morphism(c), w);
}

// --- morphism file format ---
//
//   k K
//   image0 DIGITS
//   certified yes|no

inline std::string to_text(const CyclicUniformMorphism& c) {
  std::ostringstream out;
  out << "k " << c.k << '\n';
  out << "image0 " << c.image0.to_digits() << '\n';
  out << "certified " << (c.certified ? "yes" : "no") << '\n';
  return out.str();
}

inline CyclicUniformMorphism cyclic_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string kw, digits, status;
  std::size_t k = 0;
  if (!(in >> kw >> k) || kw != "k")
    throw std::invalid_argument("morphism file: expected \"k K\"");
  if (!(in >> kw >> digits) || kw != "image0")
    throw std::invalid_argument("morphism file: expected \"image0 <digits>\"");
  if (!(in >> kw >> status) || kw != "certified" ||
      (status != "yes" && status != "no"))
    throw std::invalid_argument(
        "morphism file: expected \"certified yes|no\"");
  CyclicUniformMorphism c = make_cyclic(Word::from_digits(digits, 3));
  if (c.k != k)
    throw std::invalid_argument("morphism file: k does not match image0");
  c.certified = status == "yes";
  return c;
}

inline CyclicUniformMorphism read_morphism_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open morphism file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return cyclic_from_text(buf.str());
}

inline void write_morphism_file(const std::filesystem::path& path,
                                const CyclicUniformMorphism& c) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write morphism file: " + path.string());
  out << to_text(c);
}

}  // namespace sqf
