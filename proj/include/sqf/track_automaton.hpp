// track_automaton.hpp -- deterministic automata over tuples of binary digits,
// one named track per variable; MSD first, shorter values left-padded with 0
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sqf/dfao.hpp"
#include "sqf/word.hpp"

namespace sqf {

struct StateLimitError : std::runtime_error {
  explicit StateLimitError(std::size_t limit)
      : std::runtime_error("automaton construction exceeded the state ceiling "
                           "of " +
                           std::to_string(limit) + " states") {}
};

/// Deterministic complete automaton over columns of bits, one bit per track.
/// A word of columns encodes one natural number per track (MSD first); the
/// automaton accepts a set of assignments. Tracks are kept sorted by name;
/// bit j of a symbol belongs to tracks[j].
///
/// All constructors here return canonical minimal automata, so equality of
/// structs is language equality (isomorphism).
struct TrackAutomaton {
  std::vector<std::string> tracks;
  int initial = 0;
  std::vector<char> accepting;
  std::vector<std::vector<int>> next;

  int state_count() const { return int(next.size()); }
  int symbol_count() const { return 1 << tracks.size(); }

  bool operator==(const TrackAutomaton&) const = default;
};

inline void validate(const TrackAutomaton& a) {
  const int n = a.state_count();
  if (n == 0 || a.accepting.size() != a.next.size())
    throw std::invalid_argument("track automaton: inconsistent tables");
  if (a.initial < 0 || a.initial >= n)
    throw std::invalid_argument("track automaton: initial state out of range");
  if (!std::is_sorted(a.tracks.begin(), a.tracks.end()) ||
      std::adjacent_find(a.tracks.begin(), a.tracks.end()) != a.tracks.end())
    throw std::invalid_argument("track automaton: tracks must be sorted and "
                                "unique");
  if (a.tracks.size() > 20)
    throw std::invalid_argument("track automaton: too many tracks");
  for (const auto& row : a.next) {
    if (int(row.size()) != a.symbol_count())
      throw std::invalid_argument("track automaton: incomplete transitions");
    for (int t : row)
      if (t < 0 || t >= n)
        throw std::invalid_argument("track automaton: transition out of range");
  }
}

/// Padding closure, structurally: in a canonical minimal automaton the
/// initial state must loop to itself on the all-zero column.
inline bool is_padding_closed(const TrackAutomaton& a) {
  return a.next[a.initial][0] == a.initial;
}

inline void check_padding_closed(const TrackAutomaton& a) {
  if (!is_padding_closed(a))
    throw std::logic_error(
        "track automaton is not closed under leading zero columns");
}

/// Minimizes: trims unreachable states, merges Nerode-equivalent ones, and
/// renumbers canonically in breadth-first order (symbols ascending).
inline TrackAutomaton minimize(const TrackAutomaton& a) {
  validate(a);
  const int symbols = a.symbol_count();

  std::vector<int> order;
  std::vector<int> index(a.next.size(), -1);
  order.push_back(a.initial);
  index[a.initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int s = 0; s < symbols; ++s) {
      const int t = a.next[order[i]][s];
      if (index[t] < 0) {
        index[t] = int(order.size());
        order.push_back(t);
      }
    }
  const int n = int(order.size());
  std::vector<std::vector<int>> next(n, std::vector<int>(symbols));
  std::vector<char> accepting(n);
  for (int i = 0; i < n; ++i) {
    accepting[i] = a.accepting[order[i]];
    for (int s = 0; s < symbols; ++s) next[i][s] = index[a.next[order[i]][s]];
  }

  std::vector<int> part(n);
  for (int i = 0; i < n; ++i) part[i] = accepting[i] ? 1 : 0;
  int classes = 2;
  for (;;) {
    std::map<std::vector<int>, int> sig;
    std::vector<int> refined(n);
    std::vector<int> key(symbols + 1);
    for (int i = 0; i < n; ++i) {
      key[0] = part[i];
      for (int s = 0; s < symbols; ++s) key[s + 1] = part[next[i][s]];
      auto [it, _] = sig.try_emplace(key, int(sig.size()));
      refined[i] = it->second;
    }
    const bool stable = int(sig.size()) == classes;
    classes = int(sig.size());
    part.swap(refined);
    if (stable) break;
  }

  std::vector<int> repr(classes, -1);
  for (int i = n - 1; i >= 0; --i) repr[part[i]] = i;
  std::vector<int> renumber(classes, -1);
  std::vector<int> bfs;
  renumber[part[0]] = 0;
  bfs.push_back(part[0]);
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (int s = 0; s < symbols; ++s) {
      const int c = part[next[repr[bfs[i]]][s]];
      if (renumber[c] < 0) {
        renumber[c] = int(bfs.size());
        bfs.push_back(c);
      }
    }

  TrackAutomaton out;
  out.tracks = a.tracks;
  out.initial = 0;
  out.next.resize(bfs.size(), std::vector<int>(symbols));
  out.accepting.resize(bfs.size());
  for (int c : bfs) {
    const int id = renumber[c];
    out.accepting[id] = accepting[repr[c]];
    for (int s = 0; s < symbols; ++s)
      out.next[id][s] = renumber[part[next[repr[c]][s]]];
  }
  return out;
}

inline bool isomorphic(const TrackAutomaton& a, const TrackAutomaton& b) {
  return minimize(a) == minimize(b);
}

namespace detail {

inline std::vector<std::string> sorted_tracks(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

inline int track_index(const TrackAutomaton& a, const std::string& name) {
  const auto it = std::lower_bound(a.tracks.begin(), a.tracks.end(), name);
  if (it == a.tracks.end() || *it != name) return -1;
  return int(it - a.tracks.begin());
}

// Maps each symbol over `target` tracks to the corresponding symbol over the
// (sub)set `own` by dropping the extra bits.
inline std::vector<int> restriction_map(const std::vector<std::string>& own,
                                        const std::vector<std::string>& target) {
  std::vector<int> bit_of(own.size(), -1);
  for (std::size_t j = 0; j < own.size(); ++j) {
    const auto it = std::lower_bound(target.begin(), target.end(), own[j]);
    if (it == target.end() || *it != own[j])
      throw std::logic_error("restriction_map: track missing from target");
    bit_of[j] = int(it - target.begin());
  }
  std::vector<int> map(std::size_t(1) << target.size());
  for (std::size_t sym = 0; sym < map.size(); ++sym) {
    int sub = 0;
    for (std::size_t j = 0; j < own.size(); ++j)
      sub |= int((sym >> bit_of[j]) & 1) << j;
    map[sym] = sub;
  }
  return map;
}

// Same states, transitions indexed by symbols over a superset of tracks
// (the new tracks' bits are ignored).
inline TrackAutomaton cylindrify(const TrackAutomaton& a,
                                 const std::vector<std::string>& target) {
  if (a.tracks == target) return a;
  const auto map = restriction_map(a.tracks, target);
  TrackAutomaton out;
  out.tracks = target;
  out.initial = a.initial;
  out.accepting = a.accepting;
  out.next.resize(a.next.size(), std::vector<int>(map.size()));
  for (std::size_t q = 0; q < a.next.size(); ++q)
    for (std::size_t sym = 0; sym < map.size(); ++sym)
      out.next[q][sym] = a.next[q][map[sym]];
  return out;
}

// Nondeterministic form used between projection and determinization.
struct Nfa {
  std::vector<std::string> tracks;
  std::vector<int> initial;                        // sorted set
  std::vector<char> accepting;
  std::vector<std::vector<std::vector<int>>> next; // [state][symbol], sorted
};

inline TrackAutomaton determinize(const Nfa& nfa, std::size_t state_ceiling) {
  const int symbols = 1 << nfa.tracks.size();
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> subsets;
  const auto intern = [&](std::vector<int> subset) {
    auto [it, inserted] = ids.try_emplace(std::move(subset), int(ids.size()));
    if (inserted) {
      subsets.push_back(it->first);
      if (ids.size() > state_ceiling) throw StateLimitError(state_ceiling);
    }
    return it->second;
  };

  TrackAutomaton out;
  out.tracks = nfa.tracks;
  out.initial = intern(nfa.initial);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const std::vector<int> subset = subsets[i];
    out.next.emplace_back(symbols);
    bool acc = false;
    for (int q : subset) acc = acc || nfa.accepting[q];
    out.accepting.push_back(acc);
    for (int s = 0; s < symbols; ++s) {
      std::vector<int> image;
      for (int q : subset)
        image.insert(image.end(), nfa.next[q][s].begin(), nfa.next[q][s].end());
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      out.next[i][s] = intern(std::move(image));
    }
  }
  return out;
}

}  // namespace detail

/// Accepts every assignment over the given tracks.
inline TrackAutomaton universal_automaton(std::vector<std::string> tracks) {
  TrackAutomaton a;
  a.tracks = detail::sorted_tracks(std::move(tracks));
  a.initial = 0;
  a.accepting = {1};
  a.next = {std::vector<int>(a.symbol_count(), 0)};
  return a;
}

/// Accepts nothing.
inline TrackAutomaton empty_automaton(std::vector<std::string> tracks) {
  TrackAutomaton a = universal_automaton(std::move(tracks));
  a.accepting = {0};
  return a;
}

/// x = y: tracks stay bitwise equal.
inline TrackAutomaton eq_automaton(const std::string& x, const std::string& y) {
  if (x == y) return universal_automaton({x});
  TrackAutomaton a;
  a.tracks = detail::sorted_tracks({x, y});
  a.initial = 0;
  a.accepting = {1, 0};
  a.next.assign(2, std::vector<int>(4));
  for (int sym = 0; sym < 4; ++sym) {
    const int bx = sym & 1, by = (sym >> 1) & 1;
    a.next[0][sym] = (bx == by) ? 0 : 1;
    a.next[1][sym] = 1;
  }
  return minimize(a);
}

/// x < y (or x <= y): decided by the most significant differing bit.
inline TrackAutomaton less_automaton(const std::string& x, const std::string& y,
                                     bool or_equal) {
  if (x == y)
    return or_equal ? universal_automaton({x}) : empty_automaton({x});
  TrackAutomaton a;
  a.tracks = detail::sorted_tracks({x, y});
  const int ix = detail::track_index(a, x);
  const int iy = detail::track_index(a, y);
  a.initial = 0;
  // states: 0 = still equal, 1 = x < y, 2 = x > y
  a.accepting = {char(or_equal), 1, 0};
  a.next.assign(3, std::vector<int>(4));
  for (int sym = 0; sym < 4; ++sym) {
    const int bx = (sym >> ix) & 1, by = (sym >> iy) & 1;
    a.next[0][sym] = (bx == by) ? 0 : (bx < by ? 1 : 2);
    a.next[1][sym] = 1;
    a.next[2][sym] = 2;
  }
  return minimize(a);
}

/// x + y = z over MSD digits. Built as a carry-guessing NFA and determinized:
/// a state expects a given carry out of the next (less significant) column,
/// starting from carry 0 out of the most significant one and requiring carry
/// 0 into the last.
inline TrackAutomaton add_automaton(const std::string& x, const std::string& y,
                                    const std::string& z,
                                    std::size_t state_ceiling = 1u << 20) {
  detail::Nfa nfa;
  nfa.tracks = detail::sorted_tracks({x, y, z});
  const int symbols = 1 << nfa.tracks.size();
  const auto bit_of = [&](const std::string& name) {
    return int(std::lower_bound(nfa.tracks.begin(), nfa.tracks.end(), name) -
               nfa.tracks.begin());
  };
  const int ix = bit_of(x), iy = bit_of(y), iz = bit_of(z);
  nfa.initial = {0};
  nfa.accepting = {1, 0};
  nfa.next.assign(2, std::vector<std::vector<int>>(symbols));
  for (int carry_out = 0; carry_out < 2; ++carry_out)
    for (int sym = 0; sym < symbols; ++sym) {
      const int a = (sym >> ix) & 1, b = (sym >> iy) & 1, s = (sym >> iz) & 1;
      const int carry_in = s + 2 * carry_out - a - b;
      if (carry_in == 0 || carry_in == 1)
        nfa.next[carry_out][sym].push_back(carry_in);
    }
  return minimize(detail::determinize(nfa, state_ceiling));
}

/// x = c for a constant c: after any leading zeros the input must spell c's
/// binary digits exactly.
inline TrackAutomaton const_automaton(const std::string& x, std::uint64_t c) {
  TrackAutomaton a;
  a.tracks = {x};
  const int len = c == 0 ? 0 : std::bit_width(c);
  // states: 0 = leading zeros, 1..len = digits matched, len+1 = dead
  const int dead = len + 1;
  a.initial = 0;
  a.accepting.assign(len + 2, 0);
  a.accepting[len] = 1;  // for c = 0 this is the leading-zeros state itself
  a.next.assign(len + 2, std::vector<int>(2, dead));
  a.next[0][0] = 0;
  if (len > 0) a.next[0][1] = (((c >> (len - 1)) & 1) == 1) ? 1 : dead;
  for (int matched = 1; matched < len; ++matched) {
    const int bit = int((c >> (len - 1 - matched)) & 1);
    a.next[matched][bit] = matched + 1;
  }
  return minimize(a);
}

/// SEQ[x] = letter: runs the sequence's DFAO on track x and accepts when the
/// final output equals `letter`. The DFAO must be leading-zero invariant.
inline TrackAutomaton seq_letter_automaton(const std::string& x, const Dfao& d,
                                           Letter letter) {
  validate(d);
  if (d.next[d.initial][0] != d.initial)
    throw std::invalid_argument(
        "seq_letter_automaton: sequence DFAO is not leading-zero invariant; "
        "minimize it first");
  TrackAutomaton a;
  a.tracks = {x};
  a.initial = d.initial;
  a.accepting.resize(d.state_count());
  a.next.resize(d.state_count(), std::vector<int>(2));
  for (int q = 0; q < d.state_count(); ++q) {
    a.accepting[q] = d.output[q] == letter;
    a.next[q][0] = d.next[q][0];
    a.next[q][1] = d.next[q][1];
  }
  return minimize(a);
}

inline TrackAutomaton complement(const TrackAutomaton& a) {
  TrackAutomaton out = a;
  for (auto& acc : out.accepting) acc = !acc;
  return minimize(out);
}

enum class Connective { And, Or, Implies };

/// Product construction after aligning both operands to the union of their
/// track sets.
inline TrackAutomaton product(Connective op, const TrackAutomaton& a,
                              const TrackAutomaton& b,
                              std::size_t state_ceiling = 1u << 20) {
  std::vector<std::string> tracks = a.tracks;
  tracks.insert(tracks.end(), b.tracks.begin(), b.tracks.end());
  tracks = detail::sorted_tracks(std::move(tracks));
  const TrackAutomaton A = detail::cylindrify(a, tracks);
  const TrackAutomaton B = detail::cylindrify(b, tracks);
  const int symbols = A.symbol_count();

  const auto combine = [op](bool x, bool y) {
    switch (op) {
      case Connective::And: return x && y;
      case Connective::Or: return x || y;
      default: return !x || y;
    }
  };

  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pairs;
  const auto intern = [&](std::pair<int, int> p) {
    auto [it, inserted] = ids.try_emplace(p, int(ids.size()));
    if (inserted) {
      pairs.push_back(p);
      if (ids.size() > state_ceiling) throw StateLimitError(state_ceiling);
    }
    return it->second;
  };

  TrackAutomaton out;
  out.tracks = tracks;
  out.initial = intern({A.initial, B.initial});
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [qa, qb] = pairs[i];
    out.accepting.push_back(combine(A.accepting[qa], B.accepting[qb]));
    out.next.emplace_back(symbols);
    for (int s = 0; s < symbols; ++s)
      out.next[i][s] = intern({A.next[qa][s], B.next[qb][s]});
  }
  return minimize(out);
}

/// Existential projection: erases the named track. The erased variable may
/// need more significant digits than the remaining tracks, which appear as
/// leading all-zero columns on the kept tracks, so the initial state set is
/// closed under zero columns with the erased bit left free before
/// determinizing. The result is padding-closed again.
inline TrackAutomaton project(const TrackAutomaton& a, const std::string& track,
                              std::size_t state_ceiling = 1u << 20) {
  const int idx = detail::track_index(a, track);
  if (idx < 0)
    throw std::invalid_argument("project: variable \"" + track +
                                "\" is not a track of the automaton");
  detail::Nfa nfa;
  nfa.tracks = a.tracks;
  nfa.tracks.erase(nfa.tracks.begin() + idx);
  const int symbols = 1 << nfa.tracks.size();
  const auto embed = [&](int sym, int bit) {
    const int low = sym & ((1 << idx) - 1);
    const int high = sym >> idx;
    return (high << (idx + 1)) | (bit << idx) | low;
  };
  nfa.accepting.assign(a.accepting.begin(), a.accepting.end());
  nfa.next.assign(a.next.size(), std::vector<std::vector<int>>(symbols));
  for (std::size_t q = 0; q < a.next.size(); ++q)
    for (int s = 0; s < symbols; ++s) {
      std::vector<int>& targets = nfa.next[q][s];
      targets = {a.next[q][embed(s, 0)], a.next[q][embed(s, 1)]};
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()),
                    targets.end());
    }

  std::vector<char> in_initial(a.next.size(), 0);
  std::vector<int> stack = {a.initial};
  in_initial[a.initial] = 1;
  while (!stack.empty()) {
    const int q = stack.back();
    stack.pop_back();
    for (int t : nfa.next[q][0])
      if (!in_initial[t]) {
        in_initial[t] = 1;
        stack.push_back(t);
      }
  }
  for (std::size_t q = 0; q < in_initial.size(); ++q)
    if (in_initial[q]) nfa.initial.push_back(int(q));

  return minimize(detail::determinize(nfa, state_ceiling));
}

/// Truth value of a closed (zero-track) automaton.
inline bool decide(const TrackAutomaton& a) {
  if (!a.tracks.empty())
    throw std::invalid_argument("decide: automaton still has free tracks");
  return a.accepting[a.initial];
}

/// Membership of one assignment, given as values in track order.
inline bool membership(const TrackAutomaton& a,
                       const std::vector<std::uint64_t>& values) {
  if (values.size() != a.tracks.size())
    throw std::invalid_argument("membership: expected " +
                                std::to_string(a.tracks.size()) +
                                " values, got " +
                                std::to_string(values.size()));
  int width = 0;
  for (std::uint64_t v : values) width = std::max(width, int(std::bit_width(v)));
  int state = a.initial;
  for (int b = width - 1; b >= 0; --b) {
    int sym = 0;
    for (std::size_t j = 0; j < values.size(); ++j)
      sym |= int((values[j] >> b) & 1) << j;
    state = a.next[state][sym];
  }
  return a.accepting[state];
}

inline bool membership(const TrackAutomaton& a,
                       const std::map<std::string, std::uint64_t>& assignment) {
  if (assignment.size() != a.tracks.size())
    throw std::invalid_argument("membership: assignment arity mismatch");
  std::vector<std::uint64_t> values;
  for (const std::string& t : a.tracks) {
    const auto it = assignment.find(t);
    if (it == assignment.end())
      throw std::invalid_argument("membership: missing value for track " + t);
    values.push_back(it->second);
  }
  return membership(a, values);
}

/// Accepted assignments in shortlex order of their canonical encodings
/// (no leading all-zero column except for the all-zeros assignment itself).
/// Returns up to `limit` tuples of values in track order.
inline std::vector<std::vector<std::uint64_t>> enumerate_accepted(
    const TrackAutomaton& a, std::size_t limit, int max_columns = 62) {
  std::vector<std::vector<std::uint64_t>> out;
  if (limit == 0) return out;

  // Distance from each state to the nearest accepting state.
  const int inf = 1 << 30;
  std::vector<int> dist(a.next.size(), inf);
  for (;;) {
    bool changed = false;
    for (std::size_t q = 0; q < a.next.size(); ++q) {
      int best = a.accepting[q] ? 0 : inf;
      for (int t : a.next[q])
        if (dist[t] != inf) best = std::min(best, dist[t] + 1);
      if (best < dist[q]) {
        dist[q] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }

  if (a.accepting[a.initial]) {
    out.emplace_back(a.tracks.size(), 0);
    if (out.size() >= limit) return out;
  }
  if (dist[a.initial] == inf) return out;

  std::vector<int> columns;
  const auto decode = [&]() {
    std::vector<std::uint64_t> values(a.tracks.size(), 0);
    for (int sym : columns)
      for (std::size_t j = 0; j < a.tracks.size(); ++j)
        values[j] = (values[j] << 1) | std::uint64_t((sym >> j) & 1);
    return values;
  };

  for (int len = 1; len <= max_columns && out.size() < limit; ++len) {
    // Depth-first in symbol order enumerates this length in lex order.
    const std::function<void(int, int)> walk = [&](int state, int depth) {
      if (out.size() >= limit) return;
      if (depth == len) {
        if (a.accepting[state]) out.push_back(decode());
        return;
      }
      for (int sym = depth == 0 ? 1 : 0; sym < a.symbol_count(); ++sym) {
        const int t = a.next[state][sym];
        if (dist[t] > len - depth - 1) continue;
        columns.push_back(sym);
        walk(t, depth + 1);
        columns.pop_back();
      }
    };
    walk(a.initial, 0);
  }
  return out;
}

// --- text and DOT formats ---
//
//   tracks k i ...
//   states N initial I
//   state ACC T0 T1 ... T(2^m - 1)

inline std::string to_text(const TrackAutomaton& a) {
  std::ostringstream out;
  out << "tracks";
  for (const auto& t : a.tracks) out << ' ' << t;
  out << '\n';
  out << "states " << a.state_count() << " initial " << a.initial << '\n';
  for (int q = 0; q < a.state_count(); ++q) {
    out << "state " << int(a.accepting[q]);
    for (int s = 0; s < a.symbol_count(); ++s) out << ' ' << a.next[q][s];
    out << '\n';
  }
  return out.str();
}

inline TrackAutomaton track_automaton_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("tracks", 0) != 0)
    throw std::invalid_argument("track automaton text: expected tracks line");
  TrackAutomaton a;
  {
    std::istringstream ls(line.substr(6));
    std::string name;
    while (ls >> name) a.tracks.push_back(name);
  }
  std::string kw;
  int n = 0;
  if (!(in >> kw >> n) || kw != "states" || n <= 0)
    throw std::invalid_argument("track automaton text: expected \"states N\"");
  if (!(in >> kw >> a.initial) || kw != "initial")
    throw std::invalid_argument("track automaton text: expected initial");
  const int symbols = a.symbol_count();
  a.accepting.resize(n);
  a.next.assign(n, std::vector<int>(symbols));
  for (int q = 0; q < n; ++q) {
    int acc = 0;
    if (!(in >> kw >> acc) || kw != "state")
      throw std::invalid_argument("track automaton text: bad state line");
    a.accepting[q] = char(acc != 0);
    for (int s = 0; s < symbols; ++s)
      if (!(in >> a.next[q][s]))
        throw std::invalid_argument("track automaton text: bad transitions");
  }
  validate(a);
  return a;
}

inline std::string to_dot(const TrackAutomaton& a) {
  std::ostringstream out;
  out << "digraph predicate {\n  rankdir=LR;\n  init [shape=point];\n";
  out << "  // column order: (";
  for (std::size_t j = 0; j < a.tracks.size(); ++j)
    out << (j ? "," : "") << a.tracks[j];
  out << ")\n";
  for (int q = 0; q < a.state_count(); ++q)
    out << "  s" << q << " [shape="
        << (a.accepting[q] ? "doublecircle" : "circle") << ", label=\"" << q
        << "\"];\n";
  out << "  init -> s" << a.initial << ";\n";
  for (int q = 0; q < a.state_count(); ++q)
    for (int s = 0; s < a.symbol_count(); ++s) {
      out << "  s" << q << " -> s" << a.next[q][s] << " [label=\"(";
      for (std::size_t j = 0; j < a.tracks.size(); ++j)
        out << (j ? "," : "") << ((s >> j) & 1);
      out << ")\"];\n";
    }
  out << "}\n";
  return out.str();
}

inline void write_track_automaton_file(const std::filesystem::path& path,
                                       const TrackAutomaton& a) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write automaton file: " + path.string());
  out << to_text(a);
}

}  // namespace sqf
