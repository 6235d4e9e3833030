// squares.hpp -- square (xx factor) detection in words
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "sqf/word.hpp"

namespace sqf {

/// A square occurrence: word[position .. position+period) equals
/// word[position+period .. position+2*period).
struct SquareWitness {
  std::size_t position = 0;
  std::size_t period = 0;

  bool operator==(const SquareWitness&) const = default;
};

/// Checks the witness invariant directly against w.
inline bool witness_holds(const Word& w, const SquareWitness& s) {
  if (s.period < 1 || s.position + 2 * s.period > w.size()) return false;
  return std::equal(w.begin() + s.position, w.begin() + s.position + s.period,
                    w.begin() + s.position + s.period);
}

/// Reference scanner: tries every (position, period) pair in order.
/// Quadratic-ish; intended as the oracle for the divide-and-conquer finder
/// and for desk-scale certification (prefixes up to ~10^4).
inline std::optional<SquareWitness> find_square_naive(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t pos = 0; pos < n; ++pos)
    for (std::size_t per = 1; pos + 2 * per <= n; ++per)
      if (std::equal(w.begin() + pos, w.begin() + pos + per,
                     w.begin() + pos + per))
        return SquareWitness{pos, per};
  return std::nullopt;
}

namespace detail {

inline std::vector<std::uint32_t> z_function(const std::vector<Letter>& s) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> z(n, 0);
  std::size_t l = 0, r = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (i < r) z[i] = std::uint32_t(std::min(r - i, std::size_t(z[i - l])));
    while (i + z[i] < n && s[z[i]] == s[i + z[i]]) ++z[i];
    if (i + z[i] > r) {
      l = i;
      r = i + z[i];
    }
  }
  return z;
}

struct SquareBest {
  bool found = false;
  std::size_t pos = 0;
  std::size_t period = 0;

  void offer(std::size_t p, std::size_t per) {
    if (!found || p < pos || (p == pos && per < period)) {
      found = true;
      pos = p;
      period = per;
    }
  }
};

constexpr Letter kZSeparator = 0xFF;

// Divide and conquer over [s, s+n): recurse on both halves, then find all
// squares crossing the midpoint with four z-arrays. Each crossing family is
// a run of equal-period squares over a contiguous start range; only the
// leftmost start matters for the minimal witness.
inline void ml_scan(const Letter* s, std::size_t n, std::size_t shift,
                    SquareBest& best) {
  if (n < 2) return;
  const std::size_t nu = n / 2, nv = n - nu;
  const Letter* u = s;
  const Letter* v = s + nu;
  ml_scan(u, nu, shift, best);
  ml_scan(v, nv, shift + nu, best);

  std::vector<Letter> ru(u, u + nu);
  std::reverse(ru.begin(), ru.end());
  std::vector<Letter> rv(v, v + nv);
  std::reverse(rv.begin(), rv.end());

  std::vector<Letter> v_sep_u;
  v_sep_u.reserve(n + 1);
  v_sep_u.insert(v_sep_u.end(), v, v + nv);
  v_sep_u.push_back(kZSeparator);
  v_sep_u.insert(v_sep_u.end(), u, u + nu);

  std::vector<Letter> ru_sep_rv;
  ru_sep_rv.reserve(n + 1);
  ru_sep_rv.insert(ru_sep_rv.end(), ru.begin(), ru.end());
  ru_sep_rv.push_back(kZSeparator);
  ru_sep_rv.insert(ru_sep_rv.end(), rv.begin(), rv.end());

  std::vector<Letter> v_only(v, v + nv);

  const auto z_ru = z_function(ru);
  const auto z_vu = z_function(v_sep_u);
  const auto z_uv = z_function(ru_sep_rv);
  const auto z_v = z_function(v_only);

  const auto zat = [](const std::vector<std::uint32_t>& z, std::size_t i) {
    return i < z.size() ? std::int64_t(z[i]) : std::int64_t(0);
  };

  const std::int64_t N_u = std::int64_t(nu);

  // Squares whose first copy lies inside u and which end past the midpoint.
  // Anchor pair (nu-p, nu): e1 extends it backward inside u, e2 forward
  // across the boundary.
  for (std::int64_t p = 1; p <= N_u; ++p) {
    const std::int64_t e1 = zat(z_ru, std::size_t(p));
    const std::int64_t e2 = zat(z_vu, nv + 1 + std::size_t(N_u - p));
    const std::int64_t lo = std::max<std::int64_t>(
        0, std::max(N_u - p - e1, N_u - 2 * p + 1));
    const std::int64_t hi = std::min(N_u - p, N_u - 2 * p + e2);
    if (lo <= hi) best.offer(shift + std::size_t(lo), std::size_t(p));
  }

  // Squares whose second copy lies inside v while the first straddles the
  // midpoint. Anchor pair (nu, nu+p): e1 extends backward into u, e2
  // forward inside v.
  const std::int64_t N_v = std::int64_t(nv);
  for (std::int64_t p = 1; p <= N_v; ++p) {
    const std::int64_t e1 = zat(z_uv, nu + 1 + std::size_t(N_v - p));
    const std::int64_t e2 = zat(z_v, std::size_t(p));
    const std::int64_t lo =
        std::max<std::int64_t>(0, std::max(N_u - e1, N_u - p + 1));
    const std::int64_t hi = std::min(N_u - 1, N_u - p + e2);
    if (lo <= hi) best.offer(shift + std::size_t(lo), std::size_t(p));
  }
}

}  // namespace detail

/// Finds the square with minimal position (ties broken by minimal period),
/// or nothing if w is squarefree. O(n log n) divide and conquer, suitable
/// for million-letter words.
inline std::optional<SquareWitness> find_square(const Word& w) {
  detail::SquareBest best;
  detail::ml_scan(w.data(), w.size(), 0, best);
  if (!best.found) return std::nullopt;
  return SquareWitness{best.pos, best.period};
}

inline bool is_squarefree(const Word& w) { return !find_square(w).has_value(); }

}  // namespace sqf
