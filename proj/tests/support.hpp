#pragma once

// Small tables and brute-force oracles shared by the unit tests. Nothing here
// calls into the analysis code it is used to check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "loops/loop_table.hpp"

namespace loops::testing {

inline LoopTable table_from(std::size_t n, const std::vector<Elem>& flat) {
  return LoopTable::validate(n, flat);
}

inline LoopTable cyclic(std::size_t n) {
  std::vector<Elem> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Elem>((a + b) % n);
  return table_from(n, t);
}

/// r^a s^b indexed a + n b.
inline LoopTable dihedral(std::size_t n) {
  const std::size_t m = 2 * n;
  std::vector<Elem> t(m * m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      std::size_t a = x % n, b = x / n, c = y % n, d = y / n;
      std::size_t r = b ? (a + n - c) % n : (a + c) % n;
      t[x * m + y] = static_cast<Elem>(r + n * ((b + d) % 2));
    }
  return table_from(m, t);
}

/// (a, b) indexed a + |A| b.
inline LoopTable direct_product(const LoopTable& a, const LoopTable& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Elem> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      t[x * n + y] = static_cast<Elem>(a.mul(x % na, y % na) + na * b.mul(x / na, y / na));
  return table_from(n, t);
}

inline std::uint64_t naive_mu_count(const LoopTable& q) {
  const Elem n = static_cast<Elem>(q.order());
  std::uint64_t c = 0;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (q.mul(q.mul(x, y), z) != q.mul(x, q.mul(y, z))) ++c;
  return c;
}

struct NaiveNuclei {
  std::vector<Elem> left, middle, right, nucleus, center;
};

inline NaiveNuclei naive_nuclei(const LoopTable& q) {
  const Elem n = static_cast<Elem>(q.order());
  auto assoc = [&](Elem x, Elem y, Elem z) { return q.mul(q.mul(x, y), z) == q.mul(x, q.mul(y, z)); };
  NaiveNuclei r;
  for (Elem a = 0; a < n; ++a) {
    bool l = true, m = true, rr = true, comm = true;
    for (Elem x = 0; x < n; ++x) {
      if (q.mul(a, x) != q.mul(x, a)) comm = false;
      for (Elem y = 0; y < n; ++y) {
        l = l && assoc(a, x, y);
        m = m && assoc(x, a, y);
        rr = rr && assoc(x, y, a);
      }
    }
    if (l) r.left.push_back(a);
    if (m) r.middle.push_back(a);
    if (rr) r.right.push_back(a);
    if (l && m && rr) {
      r.nucleus.push_back(a);
      if (comm) r.center.push_back(a);
    }
  }
  return r;
}

/// Group inverse by search.
inline Elem inv(const LoopTable& g, Elem x) {
  for (Elem y = 0; y < g.order(); ++y)
    if (g.mul(x, y) == 0) return y;
  return 0;
}

/// Group commutator a^-1 b^-1 a b.
inline Elem gcomm(const LoopTable& g, Elem a, Elem b) {
  return g.mul(g.mul(inv(g, a), inv(g, b)), g.mul(a, b));
}

/// Closure of a set of permutations under composition, by breadth-first search.
inline std::size_t naive_closure_size(const std::vector<std::vector<std::uint16_t>>& gens,
                                      std::size_t degree, std::size_t cap) {
  std::vector<std::uint16_t> id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<std::uint16_t>(i);
  std::set<std::vector<std::uint16_t>> seen{id};
  std::vector<std::vector<std::uint16_t>> frontier{id};
  while (!frontier.empty() && seen.size() <= cap) {
    std::vector<std::vector<std::uint16_t>> next;
    for (const auto& p : frontier)
      for (const auto& g : gens) {
        std::vector<std::uint16_t> r(degree);
        for (std::size_t i = 0; i < degree; ++i) r[i] = g[p[i]];
        if (seen.insert(r).second) next.push_back(std::move(r));
      }
    frontier = std::move(next);
  }
  return seen.size();
}

/// Random loop of order n (small n): rows and columns 0 are the identity, the
/// rest is filled cell by cell in random order with backtracking.
inline LoopTable random_loop(std::size_t n, std::mt19937_64& rng) {
  std::vector<Elem> t(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) t[i] = t[i * n] = static_cast<Elem>(i);
  auto fill = [&](auto&& self, std::size_t cell) -> bool {
    if (cell == n * n) return true;
    const std::size_t x = cell / n, y = cell % n;
    if (x == 0 || y == 0) return self(self, cell + 1);
    std::vector<Elem> cand(n);
    for (std::size_t i = 0; i < n; ++i) cand[i] = static_cast<Elem>(i);
    std::shuffle(cand.begin(), cand.end(), rng);
    for (Elem v : cand) {
      bool ok = true;
      for (std::size_t k = 0; k < y && ok; ++k) ok = t[x * n + k] != v;
      for (std::size_t k = 0; k < x && ok; ++k) ok = t[k * n + y] != v;
      if (!ok) continue;
      t[cell] = v;
      if (self(self, cell + 1)) return true;
    }
    return false;
  };
  fill(fill, 0);
  return table_from(n, t);
}

inline std::vector<Elem> random_relabeling(std::size_t n, std::mt19937_64& rng) {
  std::vector<Elem> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Elem>(i);
  std::shuffle(p.begin() + 1, p.end(), rng);
  return p;
}

inline Bitset mask_of(std::size_t n, std::initializer_list<Elem> elems) {
  Bitset b(n);
  for (Elem e : elems) b.set(e);
  return b;
}

}  // namespace loops::testing
