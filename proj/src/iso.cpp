#include "loops/iso.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "loops/analysis.hpp"
#include "loops/error.hpp"

namespace loops {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t h, std::uint64_t v) { return mix64(h ^ mix64(v + 0x51ed27ull)); }

using Colors = std::vector<std::uint64_t>;

std::uint64_t cycle_type_hash(const LoopTable& q, Elem x, bool left) {
  const std::size_t n = q.order();
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> lens;
  for (Elem p = 0; p < n; ++p) {
    if (seen[p]) continue;
    std::uint32_t len = 0;
    for (Elem c = p; !seen[c]; c = left ? q.mul(x, c) : q.mul(c, x)) {
      seen[c] = 1;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  std::uint64_t h = left ? 11 : 13;
  for (auto l : lens) h = combine(h, l);
  return h;
}

Colors base_signatures(const LoopTable& q, std::vector<std::uint64_t>& globals) {
  const std::size_t n = q.order();
  const auto nu = nuclei(q);
  const auto z = center(q, nu.nucleus);
  std::vector<std::uint64_t> cnt1(n, 0), cnt2(n, 0), cnt3(n, 0);
  std::uint64_t mu = 0;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      const Elem xy = q.mul(x, y);
      const auto yrow = q.row(y);
      const auto xyrow = q.row(xy);
      for (Elem w = 0; w < n; ++w)
        if (xyrow[w] != q.mul(x, yrow[w])) {
          ++cnt1[x];
          ++cnt2[y];
          ++cnt3[w];
          ++mu;
        }
    }
  globals = {n,
             nu.left.size(),
             nu.middle.size(),
             nu.right.size(),
             nu.nucleus.size(),
             z.size(),
             mu,
             is_commutative(q) ? 1u : 0u};
  Colors c(n);
  for (Elem x = 0; x < n; ++x) {
    std::uint64_t centralizer = 0;
    for (Elem y = 0; y < n; ++y) centralizer += q.mul(x, y) == q.mul(y, x);
    std::uint64_t h = 0x1234;
    h = combine(h, cycle_type_hash(q, x, true));
    h = combine(h, cycle_type_hash(q, x, false));
    h = combine(h, (nu.left.contains(x) ? 1u : 0u) | (nu.middle.contains(x) ? 2u : 0u) |
                       (nu.right.contains(x) ? 4u : 0u) | (nu.nucleus.contains(x) ? 8u : 0u) |
                       (z.contains(x) ? 16u : 0u));
    h = combine(h, centralizer);
    h = combine(h, cnt1[x]);
    h = combine(h, cnt2[x]);
    h = combine(h, cnt3[x]);
    c[x] = h;
  }
  return c;
}

Colors refine_round(const LoopTable& q, const Colors& c) {
  const std::size_t n = q.order();
  Colors out(n);
  std::vector<std::uint64_t> buf(n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      std::uint64_t h = c[y];
      h = combine(h, c[q.mul(x, y)]);
      h = combine(h, c[q.mul(y, x)]);
      h = combine(h, c[q.ldiv(x, y)]);
      h = combine(h, c[q.rdiv(y, x)]);
      buf[y] = h;
    }
    std::sort(buf.begin(), buf.end());
    std::uint64_t h = c[x];
    for (auto v : buf) h = combine(h, v);
    out[x] = h;
  }
  return out;
}

std::size_t num_classes(const Colors& c) {
  Colors s = c;
  std::sort(s.begin(), s.end());
  return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
}

Colors sorted(Colors c) {
  std::sort(c.begin(), c.end());
  return c;
}

void refine_single(const LoopTable& q, Colors& c) {
  std::size_t k = num_classes(c);
  for (std::size_t r = 0; r < q.order(); ++r) {
    c = refine_round(q, c);
    const std::size_t k2 = num_classes(c);
    if (k2 == k) break;
    k = k2;
  }
}

/// Refines both colourings in lockstep; false when they diverge.
bool refine_jointly(const LoopTable& qa, Colors& ca, const LoopTable& qb, Colors& cb) {
  std::size_t k = num_classes(ca);
  if (k != num_classes(cb)) return false;
  for (std::size_t r = 0; r < qa.order(); ++r) {
    ca = refine_round(qa, ca);
    cb = refine_round(qb, cb);
    const std::size_t ka = num_classes(ca), kb = num_classes(cb);
    if (ka != kb) return false;
    if (ka == k) break;
    k = ka;
  }
  return sorted(ca) == sorted(cb);
}

constexpr Elem kUnmapped = ~Elem{0};

struct SearchState {
  Colors ca, cb;
  std::vector<Elem> f, g;
  std::vector<std::pair<Elem, Elem>> mapped;
};

class Searcher {
public:
  Searcher(const LoopTable& a, const LoopTable& b, IsoOptions opt, IsoStats* stats)
      : a_(a), b_(b), opt_(opt), stats_(stats) {}

  std::optional<std::vector<Elem>> run(Colors ca, Colors cb) {
    SearchState st;
    st.ca = std::move(ca);
    st.cb = std::move(cb);
    st.f.assign(a_.order(), kUnmapped);
    st.g.assign(b_.order(), kUnmapped);
    if (!extend(st, 0, 0)) return std::nullopt;
    if (search(st, 0)) return result_;
    return std::nullopt;
  }

private:
  bool assign(SearchState& st, std::vector<std::pair<Elem, Elem>>& queue, Elem u, Elem v) {
    if (st.f[u] != kUnmapped) return st.f[u] == v;
    if (st.g[v] != kUnmapped) return false;
    if (st.ca[u] != st.cb[v]) return false;
    st.f[u] = v;
    st.g[v] = u;
    st.mapped.emplace_back(u, v);
    queue.emplace_back(u, v);
    return true;
  }

  /// Adds (x,y) and closes the partial map under products and divisions.
  bool extend(SearchState& st, Elem x, Elem y) {
    std::vector<std::pair<Elem, Elem>> queue;
    if (!assign(st, queue, x, y)) return false;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const auto [u, v] = queue[qi];
      for (std::size_t i = 0; i < st.mapped.size(); ++i) {
        const auto [w, z] = st.mapped[i];
        if (!assign(st, queue, a_.mul(u, w), b_.mul(v, z)) ||
            !assign(st, queue, a_.mul(w, u), b_.mul(z, v)) ||
            !assign(st, queue, a_.ldiv(u, w), b_.ldiv(v, z)) ||
            !assign(st, queue, a_.ldiv(w, u), b_.ldiv(z, v)) ||
            !assign(st, queue, a_.rdiv(u, w), b_.rdiv(v, z)) ||
            !assign(st, queue, a_.rdiv(w, u), b_.rdiv(z, v)))
          return false;
      }
    }
    return true;
  }

  bool finish(const std::vector<Elem>& f) {
    if (!is_isomorphism(a_, b_, f)) return false;
    result_ = f;
    return true;
  }

  bool search(SearchState& st, unsigned depth) {
    if (stats_) ++stats_->nodes;
    if (opt_.node_limit && stats_ && stats_->nodes > opt_.node_limit)
      throw Error(Errc::TooLarge, "isomorphism search exceeded its node limit");
    const std::size_t n = a_.order();
    if (st.mapped.size() == n) return finish(st.f);

    std::unordered_map<std::uint64_t, std::size_t> cell_size;
    for (Elem x = 0; x < n; ++x) ++cell_size[st.ca[x]];
    if (cell_size.size() == n) {
      std::unordered_map<std::uint64_t, Elem> where;
      for (Elem y = 0; y < n; ++y) where[st.cb[y]] = y;
      std::vector<Elem> f(n);
      for (Elem x = 0; x < n; ++x) {
        const auto it = where.find(st.ca[x]);
        if (it == where.end()) return false;
        f[x] = it->second;
        if (st.f[x] != kUnmapped && st.f[x] != f[x]) return false;
      }
      return finish(f);
    }

    Elem target = kUnmapped;
    std::size_t best = n + 1;
    for (Elem x = 0; x < n; ++x)
      if (st.f[x] == kUnmapped && cell_size[st.ca[x]] < best) {
        best = cell_size[st.ca[x]];
        target = x;
      }
    const std::uint64_t salt = combine(0xfeedull + depth, st.ca[target]);
    for (Elem y = 0; y < n; ++y) {
      if (st.g[y] != kUnmapped || st.cb[y] != st.ca[target]) continue;
      SearchState next = st;
      next.ca[target] = combine(next.ca[target], salt);
      next.cb[y] = combine(next.cb[y], salt);
      if (!refine_jointly(a_, next.ca, b_, next.cb)) continue;
      bool ok = true;
      for (auto [u, v] : next.mapped)
        if (next.ca[u] != next.cb[v]) {
          ok = false;
          break;
        }
      if (!ok || !extend(next, target, y)) continue;
      if (search(next, depth + 1)) return true;
    }
    return false;
  }

  const LoopTable& a_;
  const LoopTable& b_;
  IsoOptions opt_;
  IsoStats* stats_;
  std::vector<Elem> result_;
};

}  // namespace

LoopProfile profile(const LoopTable& q) {
  LoopProfile p;
  p.colors = base_signatures(q, p.globals);
  refine_single(q, p.colors);
  std::uint64_t h = 0xabcdef;
  for (auto g : p.globals) h = combine(h, g);
  for (auto c : sorted(p.colors)) h = combine(h, c);
  p.digest = h;
  return p;
}

std::uint64_t canonical_fingerprint(const LoopTable& q) { return profile(q).digest; }

bool is_isomorphism(const LoopTable& a, const LoopTable& b, std::span<const Elem> map) {
  const std::size_t n = a.order();
  if (b.order() != n || map.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (Elem x : map) {
    if (x >= n || hit[x]) return false;
    hit[x] = 1;
  }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (map[a.mul(x, y)] != b.mul(map[x], map[y])) return false;
  return true;
}

std::optional<std::vector<Elem>> are_isomorphic(const LoopTable& a, const LoopProfile& pa,
                                                const LoopTable& b, const LoopProfile& pb,
                                                IsoOptions opt, IsoStats* stats) {
  IsoStats local;
  if (!stats) stats = &local;
  if (a.order() != b.order() || pa.digest != pb.digest || pa.globals != pb.globals ||
      sorted(pa.colors) != sorted(pb.colors)) {
    stats->rejected_by_invariants = true;
    return std::nullopt;
  }
  Searcher s(a, b, opt, stats);
  return s.run(pa.colors, pb.colors);
}

std::optional<std::vector<Elem>> are_isomorphic(const LoopTable& a, const LoopTable& b,
                                                IsoOptions opt, IsoStats* stats) {
  if (a.order() != b.order()) {
    if (stats) stats->rejected_by_invariants = true;
    return std::nullopt;
  }
  return are_isomorphic(a, profile(a), b, profile(b), opt, stats);
}

std::vector<std::vector<std::size_t>> isomorphism_classes(std::span<const LoopTable> tables,
                                                          IsoOptions opt) {
  std::vector<LoopProfile> prof;
  prof.reserve(tables.size());
  for (const auto& t : tables) prof.push_back(profile(t));
  std::vector<std::vector<std::size_t>> classes;
  std::map<std::uint64_t, std::vector<std::size_t>> by_digest;  // digest -> class ids
  for (std::size_t i = 0; i < tables.size(); ++i) {
    auto& ids = by_digest[prof[i].digest];
    bool placed = false;
    for (std::size_t cid : ids) {
      const std::size_t r = classes[cid].front();
      if (are_isomorphic(tables[r], prof[r], tables[i], prof[i], opt)) {
        classes[cid].push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      ids.push_back(classes.size());
      classes.push_back({i});
    }
  }
  return classes;
}

}  // namespace loops
