#pragma once

// Conditions C1-C3 on mu: G/K x G/K -> Z are linear over F_2 when |Z| = 2.
// This builds the system directly from the group table and samples solutions,
// giving contexts with prescribed conditions without going through the
// library's own condition checker.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "loops/loop_table.hpp"
#include "support.hpp"

namespace loops::testing {

class MuSampler {
public:
  /// z = {0, zgen}; k, n as element lists of G.
  MuSampler(LoopTable g, Elem zgen, std::vector<Elem> k, std::vector<Elem> n)
      : g_(std::move(g)), zgen_(zgen), n_(g_.order(), 0) {
    const Elem order = static_cast<Elem>(g_.order());
    coset_.assign(order, -1);
    for (Elem x = 0; x < order; ++x)
      if (coset_[x] < 0) {
        const int c = static_cast<int>(reps_.size());
        reps_.push_back(x);
        for (Elem a : k) coset_[g_.mul(x, a)] = c;
      }
    for (Elem e : n) n_[e] = 1;
    m_ = reps_.size();
  }

  std::size_t unknowns() const { return (m_ - 1) * (m_ - 1); }
  const std::vector<int>& coset() const { return coset_; }

  /// Adds C1, C2 and/or C3 over all triples of G. Returns false when C3 has
  /// no solution because z^{yx} (z^{xy})^{-1} leaves Z.
  bool add(bool c1, bool c2, bool c3) {
    const Elem n = static_cast<Elem>(g_.order());
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        for (Elem z = 0; z < n; ++z) {
          const bool meets = n_[x] || n_[y] || n_[z];
          if (c1 && meets) push(var(g_.mul(x, y), z) ^ var(x, z) ^ var(y, z), 0);
          if (c2 && meets) push(var(x, g_.mul(y, z)) ^ var(x, y) ^ var(x, z), 0);
          if (c3) {
            // z^{yx} delta([z,y],x) = z^{xy} delta([z,x],y)
            const Elem a = conjugate(z, g_.mul(y, x)), b = conjugate(z, g_.mul(x, y));
            const Elem d = g_.mul(a, inv(g_, b));
            if (d != 0 && d != zgen_) return false;
            push(delta(gcomm(g_, z, y), x) ^ delta(gcomm(g_, z, x), y), d == zgen_);
          }
        }
    return consistent_;
  }

  /// A uniformly random solution as a full |G| x |G| table, or nullopt.
  std::optional<std::vector<Elem>> sample(std::mt19937_64& rng) const {
    if (!consistent_) return std::nullopt;
    const std::size_t u = unknowns();
    std::vector<std::uint8_t> val(u);
    std::vector<int> pivot_of(u, -1);
    for (std::size_t r = 0; r < rows_.size(); ++r) pivot_of[lowest(rows_[r].first)] = static_cast<int>(r);
    for (std::size_t v = 0; v < u; ++v)
      if (pivot_of[v] < 0) val[v] = rng() & 1u;
    // rows are fully reduced, so each pivot depends on free variables only
    for (std::size_t v = 0; v < u; ++v)
      if (pivot_of[v] >= 0) {
        const auto& [mask, rhs] = rows_[pivot_of[v]];
        std::uint8_t s = rhs;
        for (std::size_t w = 0; w < u; ++w)
          if (w != v && ((mask >> w) & 1u)) s ^= val[w];
        val[v] = s;
      }
    const Elem n = static_cast<Elem>(g_.order());
    std::vector<Elem> mu(std::size_t{n} * n, 0);
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        const int a = coset_[x], b = coset_[y];
        if (a && b && val[(a - 1) * (m_ - 1) + (b - 1)]) mu[x * n + y] = zgen_;
      }
    return mu;
  }

  std::size_t rank() const { return rows_.size(); }

private:
  using Row = std::pair<std::uint64_t, std::uint8_t>;

  std::uint64_t var(Elem x, Elem y) const {
    const int a = coset_[x], b = coset_[y];
    if (!a || !b) return 0;
    return std::uint64_t{1} << ((a - 1) * (m_ - 1) + (b - 1));
  }
  std::uint64_t delta(Elem x, Elem y) const { return var(x, y) ^ var(y, x); }
  Elem conjugate(Elem z, Elem w) const { return g_.mul(g_.mul(inv(g_, w), z), w); }

  static std::size_t lowest(std::uint64_t m) { return static_cast<std::size_t>(__builtin_ctzll(m)); }

  void push(std::uint64_t mask, std::uint8_t rhs) {
    for (const auto& [m, r] : rows_)
      if ((mask >> lowest(m)) & 1u) {
        mask ^= m;
        rhs ^= r;
      }
    if (!mask) {
      if (rhs) consistent_ = false;
      return;
    }
    const std::size_t p = lowest(mask);
    for (auto& [m, r] : rows_)
      if ((m >> p) & 1u) {
        m ^= mask;
        r ^= rhs;
      }
    rows_.emplace_back(mask, rhs);
  }

  LoopTable g_;
  Elem zgen_;
  std::vector<std::uint8_t> n_;
  std::vector<int> coset_;
  std::vector<Elem> reps_;
  std::size_t m_ = 0;
  std::vector<Row> rows_;
  bool consistent_ = true;
};

}  // namespace loops::testing
