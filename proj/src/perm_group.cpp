#include "loops/perm_group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "loops/error.hpp"

namespace loops {

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<std::uint16_t> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (auto v : img_) {
    if (v >= img_.size() || seen[v]) throw Error(Errc::NotBijection, "image list is not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  Permutation p;
  p.img_.resize(degree);
  std::iota(p.img_.begin(), p.img_.end(), std::uint16_t{0});
  return p;
}

Permutation Permutation::from_images(std::span<const Elem> images) {
  std::vector<std::uint16_t> v;
  v.reserve(images.size());
  for (Elem e : images) {
    if (e > 0xFFFF) throw Error(Errc::NotBijection, "image out of range");
    v.push_back(static_cast<std::uint16_t>(e));
  }
  return Permutation(std::move(v));
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  Permutation r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) r.img_[i] = rhs.img_[img_[i]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<std::uint16_t>(i);
  return r;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Elem Permutation::first_moved() const noexcept {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return static_cast<Elem>(i);
  return static_cast<Elem>(img_.size());
}

std::vector<std::uint32_t> Permutation::cycle_type() const {
  std::vector<std::uint32_t> out;
  std::vector<char> seen(img_.size(), 0);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::uint32_t len = 0;
    for (std::size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = 1;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t Permutation::order() const {
  std::uint64_t l = 1;
  for (auto c : cycle_type()) l = std::lcm(l, std::uint64_t{c});
  return l;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < img_.size(); ++i) os << (i ? " " : "") << img_[i];
  return os.str();
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto v : p.images()) h = (h ^ v) * 1099511628211ull;
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------- PermGroup

PermGroup PermGroup::generate(std::vector<Permutation> gens, std::size_t degree,
                              std::span<const Elem> base_prefix) {
  if (!gens.empty()) {
    if (degree != 0 && degree != gens.front().degree())
      throw Error(Errc::DegreeMismatch, "generator degree differs from requested degree");
    degree = gens.front().degree();
  }
  for (const auto& g : gens)
    if (g.degree() != degree) throw Error(Errc::DegreeMismatch, "generators of unequal degree");

  PermGroup G;
  G.degree_ = degree;
  for (Elem b : base_prefix) {
    if (b >= degree) throw Error(Errc::InvalidArgument, "base point out of range");
    G.push_level(b);
  }
  for (const auto& g : gens) G.add_generator(g);
  G.gens_ = std::move(gens);
  return G;
}

std::vector<Elem> PermGroup::base() const {
  std::vector<Elem> b;
  for (const auto& l : levels_) b.push_back(l.base_point);
  return b;
}

std::vector<Permutation> PermGroup::strong_generators() const {
  std::vector<Permutation> out;
  std::unordered_set<Permutation, PermutationHash> seen;
  for (const auto& l : levels_)
    for (const auto& g : l.gens)
      if (seen.insert(g).second) out.push_back(g);
  return out;
}

BigInt PermGroup::order() const {
  BigInt o = 1;
  for (const auto& l : levels_) o *= l.orbit.size();
  return o;
}

std::pair<Permutation, std::size_t> PermGroup::strip(Permutation g, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const auto& l = levels_[i];
    const int w = l.where[g[l.base_point]];
    if (w < 0) return {std::move(g), i};
    g = g * l.transversal_inv[w];
  }
  return {std::move(g), levels_.size()};
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  auto [res, lvl] = strip(g, 0);
  return lvl == levels_.size() && res.is_identity();
}

void PermGroup::push_level(Elem point) {
  Level l;
  l.base_point = point;
  l.where.assign(degree_, -1);
  l.where[point] = 0;
  l.orbit.push_back(point);
  l.transversal.push_back(Permutation::identity(degree_));
  l.transversal_inv.push_back(Permutation::identity(degree_));
  l.checked.push_back(0);
  levels_.push_back(std::move(l));
}

void PermGroup::add_to_level(std::size_t idx, const Permutation& g) {
  auto& l = levels_[idx];
  l.gens.push_back(g);
  for (std::size_t i = 0; i < l.orbit.size(); ++i) {
    const Elem p = l.orbit[i];
    for (const auto& s : l.gens) {
      const Elem q = s[p];
      if (l.where[q] >= 0) continue;
      l.where[q] = static_cast<int>(l.orbit.size());
      l.orbit.push_back(q);
      Permutation u = l.transversal[i] * s;
      l.transversal_inv.push_back(u.inverse());
      l.transversal.push_back(std::move(u));
      l.checked.push_back(0);
    }
  }
}

void PermGroup::complete(std::size_t from) {
  auto i = static_cast<std::ptrdiff_t>(from);
  while (i >= 0) {
    auto& l = levels_[i];
    std::size_t oi = 0;
    while (oi < l.orbit.size() && l.checked[oi] >= l.gens.size()) ++oi;
    if (oi == l.orbit.size()) {
      --i;
      continue;
    }
    const Permutation& s = l.gens[l.checked[oi]++];
    const Elem p = l.orbit[oi];
    Permutation h = l.transversal[oi] * s * l.transversal_inv[l.where[s[p]]];
    if (h.is_identity()) continue;
    auto [res, j] = strip(std::move(h), static_cast<std::size_t>(i) + 1);
    if (res.is_identity()) continue;
    if (j == levels_.size()) push_level(res.first_moved());
    for (std::size_t k = static_cast<std::size_t>(i) + 1; k <= j; ++k) add_to_level(k, res);
    i = static_cast<std::ptrdiff_t>(j);
  }
}

bool PermGroup::add_generator(const Permutation& g) {
  if (g.degree() != degree_) throw Error(Errc::DegreeMismatch, "generator degree mismatch");
  auto [res, j] = strip(g, 0);
  if (res.is_identity()) return false;
  if (j == levels_.size()) push_level(res.first_moved());
  for (std::size_t k = 0; k <= j; ++k) add_to_level(k, res);
  complete(j);
  gens_.push_back(g);
  return true;
}

PermGroup PermGroup::stabilizer_tail(std::size_t k) const {
  PermGroup t;
  t.degree_ = degree_;
  if (k < levels_.size()) {
    t.levels_.assign(levels_.begin() + static_cast<std::ptrdiff_t>(k), levels_.end());
    t.gens_ = levels_[k].gens;
  }
  return t;
}

Permutation PermGroup::canonical_coset_rep(const Permutation& g) const {
  Permutation cur = g;
  for (const auto& l : levels_) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < l.orbit.size(); ++i)
      if (cur[l.orbit[i]] < cur[l.orbit[best]]) best = i;
    if (best != 0) cur = l.transversal[best] * cur;
  }
  return cur;
}

bool PermGroup::verify() const {
  for (const auto& l : levels_) {
    for (std::size_t i = 0; i < l.orbit.size(); ++i) {
      if (l.transversal[i][l.base_point] != l.orbit[i]) return false;
      for (const auto& s : l.gens)
        if (l.where[s[l.orbit[i]]] < 0) return false;
    }
  }
  for (std::size_t i = 0; i < levels_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      for (const auto& s : levels_[i].gens)
        if (s[levels_[j].base_point] != levels_[j].base_point) return false;
  return std::all_of(gens_.begin(), gens_.end(), [&](const auto& g) { return contains(g); });
}

// ---------------------------------------------------------------- predicates

bool is_abelian(const PermGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
  return true;
}

bool is_elementary_abelian_2(const PermGroup& g) {
  if (!is_abelian(g)) return false;
  return std::all_of(g.generators().begin(), g.generators().end(),
                     [](const Permutation& p) { return (p * p).is_identity(); });
}

// ---------------------------------------------------------------- loops

Permutation left_translation(const LoopTable& q, Elem x) {
  std::vector<std::uint16_t> v(q.row(x).begin(), q.row(x).end());
  return Permutation(std::move(v));
}

Permutation right_translation(const LoopTable& q, Elem x) {
  std::vector<std::uint16_t> v(q.order());
  for (Elem y = 0; y < q.order(); ++y) v[y] = static_cast<std::uint16_t>(q.mul(y, x));
  return Permutation(std::move(v));
}

PermGroup multiplication_group(const LoopTable& q) {
  std::vector<Permutation> gens;
  gens.reserve(2 * q.order());
  for (Elem x = 1; x < q.order(); ++x) {
    gens.push_back(left_translation(q, x));
    gens.push_back(right_translation(q, x));
  }
  const Elem base[] = {0};
  return PermGroup::generate(std::move(gens), q.order(), base);
}

PermGroup inner_mapping_group(const PermGroup& mlt, std::size_t loop_order) {
  if (mlt.depth() == 0 || mlt.base().front() != 0)
    throw Error(Errc::InvalidArgument, "multiplication group must have base starting at 0");
  if (mlt.basic_orbit(0).size() != loop_order)
    throw Error(Errc::InvalidArgument, "multiplication group is not transitive");
  PermGroup inn = mlt.stabilizer_tail(1);
  if (inn.order() * loop_order != mlt.order())
    throw Error(Errc::InvalidArgument, "orbit-stabilizer check failed");
  return inn;
}

PermGroup inner_mapping_group(const LoopTable& q) {
  return inner_mapping_group(multiplication_group(q), q.order());
}

namespace {
template <class F>
Permutation make_perm(std::size_t n, F&& f) {
  std::vector<std::uint16_t> v(n);
  for (Elem s = 0; s < n; ++s) v[s] = static_cast<std::uint16_t>(f(s));
  return Permutation(std::move(v));
}
}  // namespace

Permutation left_inner_mapping(const LoopTable& q, Elem x, Elem y) {
  return make_perm(q.order(), [&](Elem s) { return q.ldiv(q.mul(y, x), q.mul(y, q.mul(x, s))); });
}

Permutation right_inner_mapping(const LoopTable& q, Elem x, Elem y) {
  return make_perm(q.order(), [&](Elem s) { return q.rdiv(q.mul(q.mul(s, x), y), q.mul(x, y)); });
}

Permutation middle_inner_mapping(const LoopTable& q, Elem x) {
  return make_perm(q.order(), [&](Elem s) { return q.rdiv(q.mul(x, s), x); });
}

Permutation left_inner_mapping_alt(const LoopTable& q, Elem x, Elem y) {
  return make_perm(q.order(), [&](Elem s) { return q.ldiv(y, q.ldiv(x, q.mul(q.mul(x, y), s))); });
}

Permutation middle_inner_mapping_alt(const LoopTable& q, Elem x) {
  return make_perm(q.order(), [&](Elem s) { return q.ldiv(x, q.mul(s, x)); });
}

std::vector<Permutation> inner_mapping_generators(const LoopTable& q) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> out;
  auto add = [&](Permutation p) {
    if (!p.is_identity() && seen.insert(p).second) out.push_back(std::move(p));
  };
  for (Elem x = 1; x < q.order(); ++x) {
    add(middle_inner_mapping(q, x));
    for (Elem y = 1; y < q.order(); ++y) {
      add(left_inner_mapping(q, x, y));
      add(right_inner_mapping(q, x, y));
    }
  }
  return out;
}

// ---------------------------------------------------------------- fingerprints

PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& seeds) {
  PermGroup n = PermGroup::generate({}, g.degree());
  std::vector<Permutation> queue;
  for (const auto& s : seeds)
    if (n.add_generator(s)) queue.push_back(s);
  std::vector<Permutation> ginv;
  for (const auto& s : g.generators()) ginv.push_back(s.inverse());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::size_t k = 0; k < g.generators().size(); ++k) {
      Permutation c = ginv[k] * queue[i] * g.generators()[k];
      if (n.add_generator(c)) queue.push_back(std::move(c));
    }
  }
  return n;
}

PermGroup derived_subgroup(const PermGroup& g) {
  const auto& gens = g.generators();
  std::vector<Permutation> comms;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j];
      if (!c.is_identity()) comms.push_back(std::move(c));
    }
  return normal_closure(g, comms);
}

std::optional<BigInt> center_order(const PermGroup& g) {
  const std::size_t n = g.degree();
  const auto& gens = g.generators();
  if (g.depth() > 0 && g.basic_orbit(0).size() == n) {
    // Transitive: a centralizing permutation is fixed by its value at the
    // first base point, which must be a fixed point of the stabilizer.
    const Elem b = g.base().front();
    std::vector<Permutation> stab_gens;
    if (g.depth() > 1) stab_gens = g.level_generators(1);
    BigInt count = 0;
    for (Elem q = 0; q < n; ++q) {
      bool fixed = std::all_of(stab_gens.begin(), stab_gens.end(),
                               [&](const Permutation& s) { return s[q] == q; });
      if (!fixed) continue;
      std::vector<int> c(n, -1);
      c[b] = static_cast<int>(q);
      std::vector<Elem> stack{b};
      bool ok = true;
      while (!stack.empty() && ok) {
        const Elem p = stack.back();
        stack.pop_back();
        for (const auto& s : gens) {
          const Elem sp = s[p];
          const int want = static_cast<int>(s[static_cast<Elem>(c[p])]);
          if (c[sp] < 0) {
            c[sp] = want;
            stack.push_back(sp);
          } else if (c[sp] != want) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
      std::vector<Elem> img(c.begin(), c.end());
      Permutation cp;
      try {
        cp = Permutation::from_images(img);
      } catch (const Error&) {
        continue;
      }
      if (g.contains(cp)) ++count;
    }
    return count;
  }
  if (g.order() > kEnumerationLimit) return std::nullopt;
  BigInt count = 0;
  g.for_each_element([&](const Permutation& e) {
    for (const auto& s : gens)
      if (e * s != s * e) return;
    ++count;
  });
  return count;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    ps.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) ps.push_back(m);
  return ps;
}

std::optional<std::vector<BigInt>> abelian_invariants(const PermGroup& g, const PermGroup& d) {
  constexpr std::size_t kCosetLimit = std::size_t{1} << 16;
  if (g.order() / d.order() > kCosetLimit) return std::nullopt;
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> reps{d.canonical_coset_rep(Permutation::identity(g.degree()))};
  seen.insert(reps.front());
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (const auto& s : g.generators()) {
      Permutation r = d.canonical_coset_rep(reps[i] * s);
      if (seen.insert(r).second) reps.push_back(std::move(r));
    }
  const std::uint64_t m = reps.size();
  std::vector<std::uint64_t> orders;
  orders.reserve(m);
  for (const auto& r : reps) {
    std::uint64_t k = 1;
    Permutation p = r;
    while (!d.contains(p)) {
      p = p * r;
      ++k;
    }
    orders.push_back(k);
  }
  std::vector<BigInt> inv;
  for (std::uint64_t p : prime_factors(m)) {
    // d_k = number of cyclic factors of order >= p^k, from |Omega_k|
    std::vector<int> d_k;
    int prev_log = 0;
    for (std::uint64_t pk = p;; pk *= p) {
      std::uint64_t cnt = std::count_if(orders.begin(), orders.end(),
                                        [&](std::uint64_t o) { return pk % o == 0; });
      int lg = 0;
      for (std::uint64_t c = cnt; c > 1; c /= p) ++lg;
      if (lg == prev_log) break;
      d_k.push_back(lg - prev_log);
      prev_log = lg;
    }
    BigInt pk = 1;
    for (std::size_t k = 0; k < d_k.size(); ++k) {
      pk *= p;
      const int next = k + 1 < d_k.size() ? d_k[k + 1] : 0;
      for (int c = 0; c < d_k[k] - next; ++c) inv.push_back(pk);
    }
  }
  std::sort(inv.begin(), inv.end());
  return inv;
}

}  // namespace

GroupFingerprint fingerprint(const PermGroup& g) {
  GroupFingerprint fp;
  fp.order = g.order();
  fp.center_order = center_order(g);

  PermGroup cur = g;
  fp.derived_series_orders.push_back(cur.order());
  std::optional<PermGroup> first_derived;
  for (;;) {
    PermGroup next = derived_subgroup(cur);
    if (!first_derived) first_derived = next;
    if (next.order() == cur.order()) break;
    fp.derived_series_orders.push_back(next.order());
    if (next.order() == 1) break;
    cur = std::move(next);
  }
  fp.abelian_invariants = abelian_invariants(g, *first_derived);

  if (g.order() <= kEnumerationLimit) {
    std::map<std::uint64_t, std::uint64_t> hist;
    g.for_each_element([&](const Permutation& e) { ++hist[e.order()]; });
    fp.order_histogram = std::move(hist);
  } else {
    fp.histogram_skipped = true;
  }
  return fp;
}

}  // namespace loops
