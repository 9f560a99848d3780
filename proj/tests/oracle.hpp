#pragma once

// Brute-force reference computations shared by the unit tests. Nothing here
// calls into the library beyond plain table accessors.

#include <algorithm>
#include <filesystem>
#include <set>
#include <vector>

#include "omloq/oml.hpp"

namespace oracle {

using omloq::Elem;
using omloq::Oml;

inline std::filesystem::path data(const char* name) {
  return std::filesystem::path(OMLOQ_DATA_DIR) / name;
}

// Greatest common lower bound by exhaustive search; -1 when none is unique.
inline int glb(const Oml& l, Elem a, Elem b) {
  const int n = static_cast<int>(l.size());
  int best = -1;
  for (int c = 0; c < n; ++c) {
    if (!l.leq(c, a) || !l.leq(c, b)) continue;
    bool greatest = true;
    for (int d = 0; d < n; ++d) {
      if (l.leq(d, a) && l.leq(d, b) && !l.leq(d, c)) greatest = false;
    }
    if (greatest) best = c;
  }
  return best;
}

inline int lub(const Oml& l, Elem a, Elem b) {
  const int n = static_cast<int>(l.size());
  int best = -1;
  for (int c = 0; c < n; ++c) {
    if (!l.leq(a, c) || !l.leq(b, c)) continue;
    bool least = true;
    for (int d = 0; d < n; ++d) {
      if (l.leq(a, d) && l.leq(b, d) && !l.leq(c, d)) least = false;
    }
    if (least) best = c;
  }
  return best;
}

// Evaluates the Sasaki projection with the oracle's own meet and join.
inline Elem pi(const Oml& l, Elem m, Elem x) {
  return static_cast<Elem>(glb(l, m, static_cast<Elem>(lub(l, l.perp(m), x))));
}

// Every ortholattice automorphism, by trying all n! permutations.
inline std::vector<std::vector<Elem>> automorphisms(const Oml& l) {
  std::vector<Elem> p(l.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<Elem>(i);
  std::vector<std::vector<Elem>> out;
  do {
    bool ok = true;
    for (std::size_t a = 0; a < p.size() && ok; ++a) {
      if (p[l.perp(a)] != l.perp(p[a])) ok = false;
      for (std::size_t b = 0; b < p.size() && ok; ++b) {
        if (l.leq(a, b) != l.leq(p[a], p[b])) ok = false;
      }
    }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Closure of the Sasaki tables under composition, iterated to a fixpoint
// over all pairs.
inline std::set<std::vector<Elem>> sasaki_closure(const Oml& l) {
  const std::size_t n = l.size();
  std::set<std::vector<Elem>> s;
  for (std::size_t m = 0; m < n; ++m) {
    std::vector<Elem> t(n);
    for (std::size_t x = 0; x < n; ++x) {
      t[x] = pi(l, static_cast<Elem>(m), static_cast<Elem>(x));
    }
    s.insert(t);
  }
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<std::vector<Elem>> cur(s.begin(), s.end());
    for (const auto& f : cur) {
      for (const auto& g : cur) {
        std::vector<Elem> h(n);
        for (std::size_t x = 0; x < n; ++x) h[x] = f[g[x]];
        grew = s.insert(h).second || grew;
      }
    }
  }
  return s;
}

inline bool orth(const Oml& l, Elem a, Elem b) { return l.leq(a, l.perp(b)); }

// |Lin(M)| by running through all n^n tables: f qualifies when some g
// satisfies f(x) ⊥ y <=> x ⊥ g(y), searched one y at a time.
inline std::size_t lin_count(const Oml& l) {
  const std::size_t n = l.size();
  std::vector<Elem> f(n, 0);
  std::size_t count = 0;
  for (;;) {
    bool linear = true;
    for (std::size_t y = 0; y < n && linear; ++y) {
      bool found = false;
      for (std::size_t g = 0; g < n && !found; ++g) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x) {
          ok = orth(l, f[x], static_cast<Elem>(y)) ==
               orth(l, static_cast<Elem>(x), static_cast<Elem>(g));
        }
        found = ok;
      }
      linear = found;
    }
    if (linear) ++count;
    std::size_t i = 0;
    while (i < n && ++f[i] == n) f[i++] = 0;
    if (i == n) return count;
  }
}

}  // namespace oracle
