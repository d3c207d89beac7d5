#pragma once

// Brute-force models of the boolean / identity case: finite posets and
// monotone maps, computed without the engine.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tvcat/category.hpp"
#include "tvcat/monad.hpp"

namespace oracle {

struct Poset {
  std::size_t n = 0;
  std::vector<std::vector<bool>> le;
  bool operator()(std::size_t a, std::size_t b) const { return le[a][b]; }
};

using Map = std::vector<std::size_t>;

inline bool is_poset(const Poset& p) {
  for (std::size_t a = 0; a < p.n; ++a) {
    if (!p(a, a)) return false;
    for (std::size_t b = 0; b < p.n; ++b) {
      if (a != b && p(a, b) && p(b, a)) return false;
      for (std::size_t c = 0; c < p.n; ++c)
        if (p(a, b) && p(b, c) && !p(a, c)) return false;
    }
  }
  return true;
}

inline std::vector<bool> code(const Poset& p, const std::vector<std::size_t>& perm) {
  std::vector<bool> out;
  for (std::size_t a = 0; a < p.n; ++a)
    for (std::size_t b = 0; b < p.n; ++b) out.push_back(p(perm[a], perm[b]));
  return out;
}

inline std::vector<bool> canonical(const Poset& p) {
  std::vector<std::size_t> perm(p.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<bool> best = code(p, perm);
  while (std::next_permutation(perm.begin(), perm.end())) best = std::min(best, code(p, perm));
  return best;
}

/// Posets on 1..max_n points, one per isomorphism class.
inline std::vector<Poset> posets(std::size_t max_n) {
  std::vector<Poset> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::set<std::vector<bool>> seen;
    const std::size_t offdiag = n * n - n;
    for (std::uint32_t bits = 0; bits < (1u << offdiag); ++bits) {
      Poset p{n, std::vector<std::vector<bool>>(n, std::vector<bool>(n, false))};
      std::size_t k = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          p.le[a][b] = a == b ? true : ((bits >> k++) & 1u) != 0;
      if (is_poset(p) && seen.insert(canonical(p)).second) out.push_back(p);
    }
  }
  return out;
}

inline bool monotone(const Poset& x, const Poset& y, const Map& f) {
  for (std::size_t a = 0; a < x.n; ++a)
    for (std::size_t b = 0; b < x.n; ++b)
      if (x(a, b) && !y(f[a], f[b])) return false;
  return true;
}

inline std::vector<Map> all_maps(std::size_t n, std::size_t m) {
  std::vector<Map> out;
  if (m == 0) return out;
  Map f(n, 0);
  while (true) {
    out.push_back(f);
    std::size_t i = 0;
    while (i < n && ++f[i] == m) f[i++] = 0;
    if (i == n) break;
  }
  return out;
}

inline std::vector<Map> monotone_maps(const Poset& x, const Poset& y) {
  std::vector<Map> out;
  for (const Map& f : all_maps(x.n, y.n))
    if (monotone(x, y, f)) out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool order_embedding(const Poset& x, const Poset& y, const Map& f) {
  for (std::size_t a = 0; a < x.n; ++a)
    for (std::size_t b = 0; b < x.n; ++b)
      if (x(a, b) != y(f[a], f[b])) return false;
  return true;
}

/// Down-closed subsets as indicator vectors.
inline std::vector<std::vector<bool>> down_sets(const Poset& p) {
  std::vector<std::vector<bool>> out;
  for (std::uint32_t bits = 0; bits < (1u << p.n); ++bits) {
    std::vector<bool> d(p.n);
    for (std::size_t a = 0; a < p.n; ++a) d[a] = ((bits >> a) & 1u) != 0;
    bool closed = true;
    for (std::size_t a = 0; a < p.n; ++a)
      for (std::size_t b = 0; b < p.n; ++b)
        if (d[b] && p(a, b) && !d[a]) closed = false;
    if (closed) out.push_back(d);
  }
  return out;
}

/// Every down-set has a supremum.
inline bool complete_lattice(const Poset& p) {
  for (const auto& d : down_sets(p)) {
    std::size_t sups = 0;
    for (std::size_t s = 0; s < p.n; ++s) {
      bool upper = true, least = true;
      for (std::size_t a = 0; a < p.n; ++a)
        if (d[a] && !p(a, s)) upper = false;
      if (!upper) continue;
      for (std::size_t t = 0; t < p.n; ++t) {
        bool ub = true;
        for (std::size_t a = 0; a < p.n; ++a)
          if (d[a] && !p(a, t)) ub = false;
        if (ub && !p(s, t)) least = false;
      }
      if (least) ++sups;
    }
    if (sups != 1) return false;
  }
  return true;
}

/// g: Z -> X carries an algebra for the comma factorisation over all
/// presheaves iff, for every down-set D of Z and every x above g(D), the set
/// {z | D <= down(z), x <= g z} has a least element lying over x.
inline bool right_class(const Poset& z, const Poset& x, const Map& g) {
  for (const auto& d : down_sets(z)) {
    for (std::size_t t = 0; t < x.n; ++t) {
      bool below = true;
      for (std::size_t a = 0; a < z.n; ++a)
        if (d[a] && !x(g[a], t)) below = false;
      if (!below) continue;
      std::vector<std::size_t> cands;
      for (std::size_t c = 0; c < z.n; ++c) {
        bool ok = x(t, g[c]);
        for (std::size_t a = 0; a < z.n; ++a)
          if (d[a] && !z(a, c)) ok = false;
        if (ok) cands.push_back(c);
      }
      std::vector<std::size_t> least;
      for (std::size_t c : cands)
        if (std::all_of(cands.begin(), cands.end(), [&](std::size_t e) { return z(c, e); }))
          least.push_back(c);
      if (least.size() != 1 || g[least[0]] != t) return false;
    }
  }
  return true;
}

/// The poset as a boolean / identity category: a(x, y) = 1 iff x <= y.
inline tvcat::CategoryPtr category(const tvcat::MonadPtr& m, const Poset& p,
                                   const std::string& name) {
  const tvcat::Quantale& q = *m->quantale();
  tvcat::VRelation a(m->quantale(), p.n, p.n, q.bottom());
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < p.n; ++x) {
    labels.push_back(std::to_string(x));
    for (std::size_t y = 0; y < p.n; ++y)
      if (p(x, y)) a.set(x, y, q.unit());
  }
  return tvcat::make_category(m, labels, a, name);
}

inline Poset chain(std::size_t n) {
  Poset p{n, std::vector<std::vector<bool>>(n, std::vector<bool>(n, false))};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) p.le[a][b] = true;
  return p;
}

inline Poset discrete(std::size_t n) {
  Poset p{n, std::vector<std::vector<bool>>(n, std::vector<bool>(n, false))};
  for (std::size_t a = 0; a < n; ++a) p.le[a][a] = true;
  return p;
}

/// The poset underlying a boolean / identity category.
inline Poset poset_of(const tvcat::Category& c) {
  Poset p{c.size(), std::vector<std::vector<bool>>(c.size(), std::vector<bool>(c.size()))};
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b) p.le[a][b] = c(a, b) == c.q().unit();
  return p;
}

}  // namespace oracle
