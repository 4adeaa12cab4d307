#include "loops/analysis.hpp"

#include "loops/error.hpp"

namespace loops {

std::uint64_t mu_count(const LoopTable& q) {
  const std::size_t n = q.order();
  std::uint64_t count = 0;
  for (Elem a = 0; a < n; ++a) {
    const auto ra = q.row(a);
    for (Elem b = 0; b < n; ++b) {
      const auto rb = q.row(b);
      const auto rab = q.row(ra[b]);
      for (Elem c = 0; c < n; ++c) count += (rab[c] != ra[rb[c]]);
    }
  }
  return count;
}

bool is_associative(const LoopTable& q) {
  const std::size_t n = q.order();
  for (Elem a = 1; a < n; ++a) {
    const auto ra = q.row(a);
    for (Elem b = 1; b < n; ++b) {
      const auto rb = q.row(b);
      const auto rab = q.row(ra[b]);
      for (Elem c = 1; c < n; ++c)
        if (rab[c] != ra[rb[c]]) return false;
    }
  }
  return true;
}

bool is_commutative(const LoopTable& q) {
  for (Elem x = 0; x < q.order(); ++x)
    for (Elem y = x + 1; y < q.order(); ++y)
      if (q.mul(x, y) != q.mul(y, x)) return false;
  return true;
}

Nuclei nuclei(const LoopTable& q) {
  const std::size_t n = q.order();
  Bitset left(n), middle(n), right(n);
  left.set();
  middle.set();
  right.set();
  for (Elem x = 0; x < n; ++x) {
    const auto rx = q.row(x);
    for (Elem y = 0; y < n; ++y) {
      const auto ry = q.row(y);
      const auto rxy = q.row(rx[y]);
      for (Elem z = 0; z < n; ++z) {
        if (rxy[z] != rx[ry[z]]) {
          left.reset(x);
          middle.reset(y);
          right.reset(z);
        }
      }
    }
  }
  Bitset all = left & middle & right;
  return Nuclei{make_subloop(q, std::move(left)), make_subloop(q, std::move(middle)),
                make_subloop(q, std::move(right)), make_subloop(q, std::move(all))};
}

SubloopMask center(const LoopTable& q, const SubloopMask& nucleus) {
  Bitset z = nucleus.members;
  for (Elem x : nucleus.elements()) {
    for (Elem y = 0; y < q.order(); ++y) {
      if (q.mul(x, y) != q.mul(y, x)) {
        z.reset(x);
        break;
      }
    }
  }
  return make_subloop(q, std::move(z));
}

SubloopMask center(const LoopTable& q) { return center(q, nuclei(q).nucleus); }

namespace {

// L(x,y) = L_{yx}^{-1} L_y L_x
inline Elem left_inner(const LoopTable& q, Elem x, Elem y, Elem s) {
  return q.ldiv(q.mul(y, x), q.mul(y, q.mul(x, s)));
}
// R(x,y) = R_{xy}^{-1} R_y R_x
inline Elem right_inner(const LoopTable& q, Elem x, Elem y, Elem s) {
  return q.rdiv(q.mul(q.mul(s, x), y), q.mul(x, y));
}
// T(x) = R_x^{-1} L_x
inline Elem middle_inner(const LoopTable& q, Elem x, Elem s) {
  return q.rdiv(q.mul(x, s), x);
}

}  // namespace

SubloopMask subloop_generated(const LoopTable& q, std::span<const Elem> seed, bool normal) {
  const std::size_t n = q.order();
  Bitset in(n);
  std::vector<Elem> list;
  list.reserve(n);
  auto add = [&](Elem e) {
    if (!in.test(e)) {
      in.set(e);
      list.push_back(e);
    }
  };
  add(0);
  for (Elem s : seed) {
    if (s >= n) throw Error(Errc::InvalidArgument, "seed element out of range");
    add(s);
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Elem s = list[i];
    for (std::size_t j = 0; j <= i; ++j) {
      const Elem t = list[j];
      add(q.mul(s, t));
      add(q.mul(t, s));
      add(q.ldiv(s, t));
      add(q.ldiv(t, s));
      add(q.rdiv(s, t));
      add(q.rdiv(t, s));
    }
    if (normal) {
      for (Elem x = 0; x < n; ++x) {
        add(middle_inner(q, x, s));
        for (Elem y = 0; y < n; ++y) {
          add(left_inner(q, x, y, s));
          add(right_inner(q, x, y, s));
        }
      }
    }
  }
  return make_subloop(q, std::move(in));
}

bool is_normal(const LoopTable& q, const Bitset& s) {
  if (!is_subloop(q, s)) return false;
  const std::size_t n = q.order();
  for (auto i = s.find_first(); i != Bitset::npos; i = s.find_next(i)) {
    const auto e = static_cast<Elem>(i);
    for (Elem x = 0; x < n; ++x) {
      if (!s.test(middle_inner(q, x, e))) return false;
      for (Elem y = 0; y < n; ++y)
        if (!s.test(left_inner(q, x, y, e)) || !s.test(right_inner(q, x, y, e))) return false;
    }
  }
  return true;
}

QuotientLoop quotient(const LoopTable& q, const SubloopMask& s) {
  if (!is_normal(q, s.members)) throw Error(Errc::NotNormal, "subloop is not normal");
  const std::size_t n = q.order();
  const auto members = s.elements();
  constexpr Elem unset = ~Elem{0};
  std::vector<Elem> coset_of(n, unset);
  std::vector<Elem> reps;
  for (Elem x = 0; x < n; ++x) {
    if (coset_of[x] != unset) continue;
    const auto c = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem m : members) {
      auto& slot = coset_of[q.mul(x, m)];
      if (slot != unset) throw Error(Errc::NotNormal, "cosets overlap");
      slot = c;
    }
  }
  const std::size_t k = reps.size();
  std::vector<Elem> flat(k * k);
  for (Elem a = 0; a < k; ++a)
    for (Elem b = 0; b < k; ++b) flat[a * k + b] = coset_of[q.mul(reps[a], reps[b])];
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (coset_of[q.mul(x, y)] != flat[coset_of[x] * k + coset_of[y]])
        throw Error(Errc::NotNormal, "coset product is not well defined");
  return QuotientLoop{LoopTable::validate(k, flat), std::move(coset_of), std::move(reps)};
}

std::optional<int> nilpotency_class(const LoopTable& q) {
  LoopTable cur = q;
  int steps = 0;
  while (cur.order() > 1) {
    const auto z = center(cur);
    if (z.size() == 1) return std::nullopt;
    cur = quotient(cur, z).table;
    ++steps;
  }
  return steps;
}

SubloopMask associator_subloop(const LoopTable& q) {
  const std::size_t n = q.order();
  std::vector<Elem> seed;
  {
    Bitset seen(n);
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        for (Elem z = 0; z < n; ++z) seen.set(associator(q, x, y, z));
    for (auto i = seen.find_first(); i != Bitset::npos; i = seen.find_next(i))
      seed.push_back(static_cast<Elem>(i));
  }
  SubloopMask s = subloop_generated(q, seed, true);
  for (;;) {
    const auto quo = quotient(q, s);
    const std::size_t k = quo.table.order();
    Bitset lifted(k);
    for (Elem a = 0; a < k; ++a)
      for (Elem b = 0; b < k; ++b)
        for (Elem c = 0; c < k; ++c) lifted.set(associator(quo.table, a, b, c));
    lifted.reset(0);
    if (lifted.none()) return s;
    seed = s.elements();
    for (Elem x = 0; x < n; ++x)
      if (lifted.test(quo.coset_of[x])) seed.push_back(x);
    s = subloop_generated(q, seed, true);
  }
}

bool is_power_associative(const LoopTable& q) {
  const std::size_t n = q.order();
  Bitset done(n);
  for (Elem x = 0; x < n; ++x) {
    if (done.test(x)) continue;
    const Elem seed[] = {x};
    const auto s = subloop_generated(q, seed);
    const auto el = s.elements();
    for (Elem a : el)
      for (Elem b : el)
        for (Elem c : el)
          if (q.mul(q.mul(a, b), c) != q.mul(a, q.mul(b, c))) return false;
    // every element of an associative cyclic subloop generates a subgroup of it
    done |= s.members;
  }
  return true;
}

bool is_elementary_abelian_2(const LoopTable& q, const SubloopMask& s) {
  const auto el = s.elements();
  for (Elem a : el) {
    if (q.mul(a, a) != 0) return false;
    for (Elem b : el) {
      if (q.mul(a, b) != q.mul(b, a)) return false;
      for (Elem c : el)
        if (q.mul(q.mul(a, b), c) != q.mul(a, q.mul(b, c))) return false;
    }
  }
  return true;
}

}  // namespace loops
