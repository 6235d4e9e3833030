// dfao.hpp -- deterministic finite automata with output over binary digits
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sqf/word.hpp"

namespace sqf {

/// A DFAO reading the binary digits of n most-significant-first; the output
/// letter of the final state is the n-th term of the computed sequence.
/// n = 0 is canonically the empty digit string, and automata built here are
/// leading-zero invariant, so feeding "0" agrees.
struct Dfao {
  int initial = 0;
  std::vector<std::array<int, 2>> next;
  std::vector<Letter> output;

  int state_count() const { return int(next.size()); }

  bool operator==(const Dfao&) const = default;
};

inline void validate(const Dfao& d) {
  const int n = d.state_count();
  if (n == 0 || d.output.size() != d.next.size())
    throw std::invalid_argument("dfao: empty or inconsistent tables");
  if (d.initial < 0 || d.initial >= n)
    throw std::invalid_argument("dfao: initial state out of range");
  for (const auto& t : d.next)
    if (t[0] < 0 || t[0] >= n || t[1] < 0 || t[1] >= n)
      throw std::invalid_argument("dfao: transition out of range");
}

/// Runs d on an explicit digit string of '0'/'1' characters.
inline Letter run_digits(const Dfao& d, std::string_view bits) {
  int state = d.initial;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("run_digits: digits must be 0 or 1");
    state = d.next[state][c - '0'];
  }
  return d.output[state];
}

/// Runs d on the binary representation of n, most significant bit first.
inline Letter run(const Dfao& d, std::uint64_t n) {
  int state = d.initial;
  if (n != 0) {
    for (int b = std::bit_width(n) - 1; b >= 0; --b)
      state = d.next[state][(n >> b) & 1];
  }
  return d.output[state];
}

/// Minimizes d: trims unreachable states, merges output-equivalent ones
/// (Moore partition refinement), and renumbers states canonically in
/// breadth-first order (0-edge before 1-edge). Equivalent DFAOs minimize to
/// identical structs, so equality after minimize is an isomorphism test.
inline Dfao minimize(const Dfao& d) {
  validate(d);

  // Reachable trim.
  std::vector<int> order;
  std::vector<int> index(d.next.size(), -1);
  order.push_back(d.initial);
  index[d.initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int b = 0; b < 2; ++b) {
      const int t = d.next[order[i]][b];
      if (index[t] < 0) {
        index[t] = int(order.size());
        order.push_back(t);
      }
    }
  const int n = int(order.size());
  std::vector<std::array<int, 2>> next(n);
  std::vector<Letter> output(n);
  for (int i = 0; i < n; ++i) {
    output[i] = d.output[order[i]];
    for (int b = 0; b < 2; ++b) next[i][b] = index[d.next[order[i]][b]];
  }

  // Partition refinement seeded by output letters.
  std::vector<int> part(n);
  {
    std::map<Letter, int> cls;
    for (int i = 0; i < n; ++i) {
      auto [it, _] = cls.try_emplace(output[i], int(cls.size()));
      part[i] = it->second;
    }
  }
  for (;;) {
    std::map<std::array<int, 3>, int> sig;
    std::vector<int> refined(n);
    for (int i = 0; i < n; ++i) {
      std::array<int, 3> key{part[i], part[next[i][0]], part[next[i][1]]};
      auto [it, _] = sig.try_emplace(key, int(sig.size()));
      refined[i] = it->second;
    }
    bool stable = int(sig.size()) ==
                  1 + *std::max_element(part.begin(), part.end());
    part.swap(refined);
    if (stable) break;
  }

  // Canonical breadth-first numbering of classes.
  const int classes = 1 + *std::max_element(part.begin(), part.end());
  std::vector<int> repr(classes, -1);
  for (int i = n - 1; i >= 0; --i) repr[part[i]] = i;
  std::vector<int> renumber(classes, -1);
  std::vector<int> bfs;
  renumber[part[0]] = 0;
  bfs.push_back(part[0]);
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (int b = 0; b < 2; ++b) {
      const int c = part[next[repr[bfs[i]]][b]];
      if (renumber[c] < 0) {
        renumber[c] = int(bfs.size());
        bfs.push_back(c);
      }
    }

  Dfao out;
  out.initial = 0;
  out.next.resize(bfs.size());
  out.output.resize(bfs.size());
  for (int c : bfs) {
    const int id = renumber[c];
    const int r = repr[c];
    out.output[id] = output[r];
    for (int b = 0; b < 2; ++b) out.next[id][b] = renumber[part[next[r][b]]];
  }
  return out;
}

/// True iff for all i < bound, an output of 0 (resp. 2) at i forces the same
/// output at 2i.
inline bool check_doubling(const Dfao& d, std::uint64_t bound) {
  for (std::uint64_t i = 0; i < bound; ++i) {
    const Letter a = run(d, i);
    if ((a == 0 || a == 2) && run(d, 2 * i) != a) return false;
  }
  return true;
}

/// True iff d outputs 2 at every power 2^l, 1 <= l <= max_exp.
inline bool check_power_of_two(const Dfao& d, unsigned max_exp) {
  if (max_exp > 62)
    throw std::invalid_argument("check_power_of_two: max_exp too large");
  for (unsigned l = 1; l <= max_exp; ++l)
    if (run(d, std::uint64_t(1) << l) != 2) return false;
  return true;
}

struct EvenDecomposition {
  unsigned exponent = 0;
  std::uint64_t odd = 0;

  bool operator==(const EvenDecomposition&) const = default;
};

/// Writes k = 2^exponent * odd with odd ... odd.
inline EvenDecomposition decompose_even(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("decompose_even: k must be >= 1");
  const unsigned a = unsigned(std::countr_zero(k));
  return EvenDecomposition{a, k >> a};
}

// --- text format ---
//
//   states N initial I
//   state OUTPUT T0 T1     (one line per state, in id order 0..N-1)

inline std::string to_text(const Dfao& d) {
  std::ostringstream out;
  out << "states " << d.state_count() << " initial " << d.initial << '\n';
  for (int i = 0; i < d.state_count(); ++i)
    out << "state " << int(d.output[i]) << ' ' << d.next[i][0] << ' '
        << d.next[i][1] << '\n';
  return out.str();
}

inline Dfao dfao_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string kw;
  int n = 0;
  Dfao d;
  if (!(in >> kw >> n) || kw != "states" || n <= 0)
    throw std::invalid_argument("dfao text: expected \"states N\"");
  if (!(in >> kw >> d.initial) || kw != "initial")
    throw std::invalid_argument("dfao text: expected \"initial I\"");
  d.next.resize(n);
  d.output.resize(n);
  for (int i = 0; i < n; ++i) {
    int out_letter = 0;
    if (!(in >> kw >> out_letter >> d.next[i][0] >> d.next[i][1]) ||
        kw != "state")
      throw std::invalid_argument("dfao text: bad state line " +
                                  std::to_string(i));
    if (out_letter < 0 || out_letter > 255)
      throw std::invalid_argument("dfao text: output letter out of range");
    d.output[i] = Letter(out_letter);
  }
  validate(d);
  return d;
}

inline std::string to_dot(const Dfao& d) {
  std::ostringstream out;
  out << "digraph dfao {\n  rankdir=LR;\n  init [shape=point];\n";
  for (int i = 0; i < d.state_count(); ++i)
    out << "  s" << i << " [shape=circle, label=\"" << i << "/"
        << int(d.output[i]) << "\"];\n";
  out << "  init -> s" << d.initial << ";\n";
  for (int i = 0; i < d.state_count(); ++i)
    for (int b = 0; b < 2; ++b)
      out << "  s" << i << " -> s" << d.next[i][b] << " [label=\"" << b
          << "\"];\n";
  out << "}\n";
  return out.str();
}

inline Dfao read_dfao_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dfao file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return dfao_from_text(buf.str());
}

inline void write_dfao_file(const std::filesystem::path& path, const Dfao& d) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write dfao file: " + path.string());
  out << to_text(d);
}

}  // namespace sqf
