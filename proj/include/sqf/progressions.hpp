// progressions.hpp -- arithmetic-progression subsequences and occurrence
// statistics
#pragma once

#include <optional>
#include <set>
#include <stdexcept>

#include "sqf/morphism.hpp"
#include "sqf/word.hpp"

namespace sqf {

/// The word whose n-th letter is w[offset + k*n], for all n in range.
inline Word subsequence_ap(const Word& w, std::size_t k,
                           std::size_t offset = 0) {
  if (k == 0) throw std::invalid_argument("subsequence_ap: k must be >= 1");
  Word out;
  out.alphabet_size = w.alphabet_size;
  for (std::size_t i = offset; i < w.size(); i += k)
    out.letters.push_back(w[i]);
  return out;
}

/// Evidence that the subsequence (v_{kn}) of a ternary word has two adjacent
/// equal letters drawn from {0, 2}: v_{kn} = v_{k(n+1)} = letter.
struct ApSquareEvidence {
  std::size_t k = 0;
  std::size_t n = 0;
  Letter letter = 0;

  bool operator==(const ApSquareEvidence&) const = default;
};

inline bool evidence_holds(const Word& w, const ApSquareEvidence& e) {
  const std::size_t i1 = e.k * e.n, i2 = e.k * (e.n + 1);
  if (e.k < 2 || i2 >= w.size()) return false;
  return w[i1] == e.letter && w[i2] == e.letter &&
         (e.letter == 0 || e.letter == 2);
}

/// Scans (w_{kn}) for the first n with w_{kn} = w_{k(n+1)} in {0, 2}.
/// Absence within a finite prefix is inconclusive, never a refutation.
inline std::optional<ApSquareEvidence> find_ap_square(const Word& w,
                                                      std::size_t k) {
  if (k < 2) throw std::invalid_argument("find_ap_square: k must be >= 2");
  std::size_t n = 0;
  for (std::size_t i1 = 0, i2 = k; i2 < w.size(); i1 = i2, i2 += k, ++n) {
    const Letter a = w[i1];
    if (a == w[i2] && (a == 0 || a == 2)) return ApSquareEvidence{k, n, a};
  }
  return std::nullopt;
}

/// Convenience overload generating the vtm prefix itself.
inline std::optional<ApSquareEvidence> find_ap_square(std::size_t k,
                                                      std::size_t prefix_len) {
  return find_ap_square(vtm_prefix(prefix_len), k);
}

/// The set { i mod k : factor occurs in w at position i }. Stops scanning
/// early once all k residues are covered.
inline std::set<std::size_t> occurrence_residues(const Word& w,
                                                 const Word& factor,
                                                 std::size_t k) {
  if (k == 0) throw std::invalid_argument("occurrence_residues: k must be >= 1");
  if (factor.empty())
    throw std::invalid_argument("occurrence_residues: factor must be nonempty");
  std::set<std::size_t> residues;
  if (factor.size() > w.size()) return residues;
  const std::size_t last = w.size() - factor.size();
  for (std::size_t i = 0; i <= last; ++i) {
    if (std::equal(factor.begin(), factor.end(), w.begin() + i)) {
      residues.insert(i % k);
      if (residues.size() == k) break;
    }
  }
  return residues;
}

/// Least i with w[i] = w[i+k] and w[i] in {0, 2}; i.e. the start of a
/// length-(k+1) factor of the form 0u0 or 2u2.
inline std::optional<std::size_t> find_gap_repeat(const Word& w,
                                                  std::size_t k) {
  if (k < 2) throw std::invalid_argument("find_gap_repeat: k must be >= 2");
  if (w.size() <= k) return std::nullopt;
  for (std::size_t i = 0; i + k < w.size(); ++i) {
    const Letter a = w[i];
    if ((a == 0 || a == 2) && w[i + k] == a) return i;
  }
  return std::nullopt;
}

}  // namespace sqf
