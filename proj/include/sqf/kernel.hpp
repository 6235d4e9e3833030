// kernel.hpp -- reconstructing a base-2 DFAO from a sequence oracle
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sqf/dfao.hpp"
#include "sqf/word.hpp"

namespace sqf {

/// Random-access view of a sequence; `at` must be valid for indices < size.
struct IndexedSequence {
  std::uint64_t size = 0;
  std::function<Letter(std::uint64_t)> at;
};

/// View of a generated prefix. The word must outlive the sequence.
inline IndexedSequence sequence_of(const Word& w) {
  return IndexedSequence{w.size(),
                         [&w](std::uint64_t i) { return w.letters[i]; }};
}

/// Verification failure: the reconstructed automaton disagrees with the
/// oracle, meaning compare_len was too small to separate kernel states.
struct KernelMismatchError : std::runtime_error {
  std::uint64_t index;
  explicit KernelMismatchError(std::uint64_t i)
      : std::runtime_error(
            "kernel_dfao: verification failed at index " + std::to_string(i) +
            " (compare_len too small)"),
        index(i) {}
};

namespace detail {

// Kernel state during exploration: reached after reading a binary prefix of
// length `depth` and value `value` (value < 2^depth).
struct KernelElement {
  unsigned depth = 0;
  std::uint64_t value = 0;
};

}  // namespace detail

/// Builds a DFAO computing seq(n) from n's binary digits (MSD first) by
/// breadth-first kernel exploration.
///
/// Reading bit b after a prefix of value r leads to the prefix of value
/// 2r + b; the state for value r denotes the function taking any suffix of
/// length t and value v to seq(r * 2^t + v). Two values are provisionally
/// merged when those functions agree on their first compare_len entries,
/// enumerated level by level (t = 0, 1, 2, ...). Bounded comparison is a
/// semi-decision, so the result is certified by checking run(n) = seq(n)
/// for every n < verify_len; a mismatch raises KernelMismatchError with the
/// offending index, and the caller should retry with a larger compare_len.
inline Dfao kernel_dfao(const IndexedSequence& seq, std::size_t compare_len,
                        std::uint64_t verify_len,
                        std::size_t max_states = 4096) {
  if (compare_len == 0)
    throw std::invalid_argument("kernel_dfao: compare_len must be >= 1");
  if (verify_len == 0 || verify_len > seq.size)
    throw std::invalid_argument(
        "kernel_dfao: verify_len must be >= 1 and within the oracle");

  const auto fingerprint = [&](std::uint64_t value) {
    std::string fp;
    fp.reserve(compare_len);
    for (unsigned t = 0; fp.size() < compare_len; ++t) {
      if (t >= 63)
        throw std::invalid_argument("kernel_dfao: compare_len too large");
      const std::uint64_t base = value << t;
      const std::uint64_t level = std::uint64_t(1) << t;
      for (std::uint64_t v = 0; v < level && fp.size() < compare_len; ++v) {
        const std::uint64_t idx = base | v;
        if (idx >= seq.size)
          throw std::invalid_argument(
              "kernel_dfao: sequence oracle too short (needs index " +
              std::to_string(idx) + ")");
        fp.push_back(char('0' + seq.at(idx)));
      }
    }
    return fp;
  };

  std::unordered_map<std::string, int> state_of;
  std::vector<detail::KernelElement> elems;
  std::vector<std::array<int, 2>> next;
  std::vector<Letter> output;

  const auto intern = [&](detail::KernelElement e) {
    auto [it, inserted] = state_of.try_emplace(fingerprint(e.value), -1);
    if (inserted) {
      it->second = int(elems.size());
      elems.push_back(e);
      next.push_back({-1, -1});
      output.push_back(seq.at(e.value));
      if (elems.size() > max_states)
        throw std::runtime_error(
            "kernel_dfao: state limit exceeded; sequence may not be "
            "2-automatic");
    }
    return it->second;
  };

  intern(detail::KernelElement{0, 0});
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const detail::KernelElement e = elems[i];
    if (e.depth >= 60)
      throw std::runtime_error(
          "kernel_dfao: exploration too deep; sequence may not be "
          "2-automatic");
    for (int b = 0; b < 2; ++b)
      next[i][b] = intern(
          detail::KernelElement{e.depth + 1, 2 * e.value + std::uint64_t(b)});
  }

  Dfao d;
  d.initial = 0;
  d.next = std::move(next);
  d.output = std::move(output);
  validate(d);

  for (std::uint64_t n = 0; n < verify_len; ++n)
    if (run(d, n) != seq.at(n)) throw KernelMismatchError(n);
  return d;
}

}  // namespace sqf
