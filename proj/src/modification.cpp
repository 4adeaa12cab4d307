#include "loops/modification.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>

#include "loops/error.hpp"
#include "loops/extensions.hpp"
#include "loops/perm_group.hpp"

namespace loops {

namespace {

bool subset(const SubloopMask& a, const SubloopMask& b) { return a.members.is_subset_of(b.members); }

[[noreturn]] void chain(const std::string& what) { throw Error(Errc::ChainViolation, what); }

}  // namespace

// ---------------------------------------------------------------- context

ModificationContext ModificationContext::create(LoopTable g, SubloopMask z, SubloopMask k,
                                                SubloopMask n, std::span<const Elem> mu_full) {
  const std::size_t ord = g.order();
  if (!is_associative(g)) chain("G is not a group");
  for (const auto* s : {&z, &k, &n})
    if (s->members.size() != ord || !is_subloop(g, s->members))
      chain("chain member is not a subgroup of G");
  if (!subset(z, k) || !subset(k, n)) chain("need Z <= K <= N");
  if (!is_normal(g, k.members)) chain("K is not normal in G");
  if (!is_normal(g, n.members)) chain("N is not normal in G");

  const auto nel = n.elements();
  for (Elem a : nel)
    for (Elem b : nel)
      if (g.mul(a, b) != g.mul(b, a)) chain("N is not abelian");
  for (Elem x = 0; x < ord; ++x)
    for (Elem y = 0; y < ord; ++y)
      if (!n.contains(commutator(g, x, y))) chain("G/N is not abelian");
  for (Elem a : z.elements())
    for (Elem x = 0; x < ord; ++x)
      if (g.mul(a, x) != g.mul(x, a)) chain("Z is not central in G");
  for (Elem a : nel)
    for (Elem x = 0; x < ord; ++x)
      if (!k.contains(commutator(g, a, x))) chain("N/K is not central in G/K");

  if (mu_full.size() != ord * ord) chain("mu table has the wrong shape");
  auto quo = quotient(g, k);

  ModificationContext ctx;
  ctx.coset_ = quo.coset_of;
  ctx.reps_ = quo.representative;
  const std::size_t c = ctx.reps_.size();
  ctx.inv_.resize(ord);
  for (Elem x = 0; x < ord; ++x) ctx.inv_[x] = g.ldiv(x, 0);
  ctx.mu_.resize(c * c);
  for (Elem a = 0; a < c; ++a)
    for (Elem b = 0; b < c; ++b) ctx.mu_[a * c + b] = mu_full[ctx.reps_[a] * ord + ctx.reps_[b]];
  for (Elem x = 0; x < ord; ++x)
    for (Elem y = 0; y < ord; ++y) {
      const Elem v = mu_full[x * ord + y];
      if (v >= ord || !z.contains(v)) chain("mu takes a value outside Z");
      if (v != ctx.mu_[ctx.coset_[x] * c + ctx.coset_[y]])
        throw Error(Errc::NotNormalizedMu, "mu is not constant on K-cosets");
      if ((k.contains(x) || k.contains(y)) && v != 0)
        throw Error(Errc::NotNormalizedMu, "mu(xK,K) or mu(K,xK) is not 1");
    }
  ctx.g_ = std::move(g);
  ctx.z_ = std::move(z);
  ctx.k_ = std::move(k);
  ctx.n_ = std::move(n);
  return ctx;
}

LoopTable modify(const ModificationContext& ctx) {
  const LoopTable& g = ctx.group();
  const std::size_t n = g.order();
  std::vector<Elem> flat(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) flat[x * n + y] = g.mul(g.mul(x, y), ctx.mu(x, y));
  LoopTable q = LoopTable::validate(n, flat);

  for (Elem a : ctx.z().elements())
    for (Elem x = 0; x < n; ++x) {
      if (q.mul(a, x) != q.mul(x, a)) chain("Z is not central in Q");
      for (Elem y = 0; y < n; ++y)
        if (associator(q, a, x, y) != 0 || associator(q, x, a, y) != 0 ||
            associator(q, x, y, a) != 0)
          chain("Z is not nuclear in Q");
    }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (!ctx.z().contains(g.ldiv(g.mul(x, y), q.mul(x, y)))) chain("Q/Z differs from G/Z");
  return q;
}

Conditions check_conditions(const ModificationContext& ctx) {
  const LoopTable& g = ctx.group();
  const std::size_t n = g.order();
  const std::size_t c = ctx.num_cosets();
  std::vector<Elem> rep(c);
  std::vector<char> in_n(c);
  for (Elem a = 0; a < c; ++a) {
    rep[a] = ctx.coset_rep(a);
    in_n[a] = ctx.n().contains(rep[a]);
  }

  Conditions out{true, true, true};
  for (Elem a = 0; a < c && (out.c1 || out.c2); ++a)
    for (Elem b = 0; b < c; ++b)
      for (Elem d = 0; d < c; ++d) {
        if (!in_n[a] && !in_n[b] && !in_n[d]) continue;
        const Elem x = rep[a], y = rep[b], z = rep[d];
        if (ctx.mu(g.mul(x, y), z) != g.mul(ctx.mu(x, z), ctx.mu(y, z))) out.c1 = false;
        if (ctx.mu(x, g.mul(y, z)) != g.mul(ctx.mu(x, y), ctx.mu(x, z))) out.c2 = false;
      }

  auto conj = [&](Elem z, Elem x) { return g.mul(g.mul(ctx.inverse(x), z), x); };
  for (Elem x = 0; x < n && out.c3; ++x)
    for (Elem y = 0; y < n && out.c3; ++y) {
      const Elem xy = g.mul(x, y), yx = g.mul(y, x);
      for (Elem z = 0; z < n; ++z) {
        const Elem lhs = g.mul(conj(z, yx), ctx.delta(commutator(g, z, y), x));
        const Elem rhs = g.mul(conj(z, xy), ctx.delta(commutator(g, z, x), y));
        if (lhs != rhs) {
          out.c3 = false;
          break;
        }
      }
    }
  return out;
}

bool inn_abelian_equivalence(const ModificationContext& ctx) {
  const auto cond = check_conditions(ctx);
  if (!cond.c1 || !cond.c2) throw Error(Errc::PreconditionFailed, "C1 and C2 must hold");
  const LoopTable q = modify(ctx);
  return cond.c3 == is_abelian(inner_mapping_group(q));
}

FormTable extract_form(const ModificationContext& ctx) {
  const auto cond = check_conditions(ctx);
  if (!cond.c1 || !cond.c2 || !cond.c3)
    throw Error(Errc::PreconditionFailed, "C1, C2 and C3 must hold");
  const LoopTable& g = ctx.group();
  if (nilpotency_class(g) != 2) throw Error(Errc::ClassMismatch, "G is not of class 2");
  if (nilpotency_class(modify(ctx)) != 3)
    throw Error(Errc::ClassMismatch, "the modified loop is not of class 3");

  FormTable f{quotient(g, ctx.n()), {}};
  const std::size_t m = f.factor.table.order();
  const auto& rep = f.factor.representative;
  f.values.resize(m * m * m);
  for (Elem a = 0; a < m; ++a)
    for (Elem b = 0; b < m; ++b)
      for (Elem c = 0; c < m; ++c)
        f.values[(a * m + b) * m + c] = ctx.delta(commutator(g, rep[a], rep[b]), rep[c]);

  auto fail = [](const char* what) { throw Error(Errc::InvalidArgument, what); };
  const std::size_t n = g.order();
  const auto& cos = f.factor.coset_of;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      const Elem comm = commutator(g, x, y);
      for (Elem z = 0; z < n; ++z)
        if (ctx.delta(comm, z) != f(cos[x], cos[y], cos[z]))
          fail("form is not constant on N-cosets");
    }
  bool nontrivial = false;
  const auto& ft = f.factor.table;
  for (Elem a = 0; a < m; ++a)
    for (Elem b = 0; b < m; ++b)
      for (Elem c = 0; c < m; ++c) {
        const Elem v = f(a, b, c);
        nontrivial |= v != 0;
        if (g.mul(v, v) != 0) fail("form value of order > 2");
        if (v != f(b, a, c) || v != f(a, c, b) || v != f(c, b, a)) fail("form is not symmetric");
        for (Elem d = 0; d < m; ++d)
          if (f(ft.mul(a, d), b, c) != g.mul(v, f(d, b, c))) fail("form is not triadditive");
      }
  if (!nontrivial) fail("form is trivial");
  return f;
}

// ---------------------------------------------------------------- block modification

LoopTable block_modify(const LoopTable& q, const SubloopMask& k,
                       std::span<const std::pair<Elem, Elem>> pattern, Elem h) {
  const std::size_t n = q.order();
  if (!is_normal(q, k.members)) throw Error(Errc::NotNormal, "block subloop is not normal");
  if (h == 0 || h >= n || q.mul(h, h) != 0)
    throw Error(Errc::NotCentralInvolution, "h is not an involution");
  if (!center(q).contains(h)) throw Error(Errc::NotCentralInvolution, "h is not central");
  if (!k.contains(h)) throw Error(Errc::InvalidArgument, "h must lie in the block subloop");

  const auto quo = quotient(q, k);
  const std::size_t c = quo.table.order();
  std::vector<char> flip(c * c, 0);
  for (auto [i, j] : pattern) {
    if (i >= c || j >= c) throw Error(Errc::InvalidArgument, "block index out of range");
    flip[i * c + j] = 1;
  }
  std::vector<Elem> flat(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      const Elem p = q.mul(x, y);
      flat[x * n + y] = flip[quo.coset_of[x] * c + quo.coset_of[y]] ? q.mul(p, h) : p;
    }
  return LoopTable::validate(n, flat);
}

std::vector<std::pair<Elem, Elem>> gbar_block_pattern() {
  std::vector<std::pair<Elem, Elem>> p;
  for (Elem x = 0; x < 16; ++x)
    for (Elem y = 0; y < 16; ++y)
      if (decode_f2d8(x).i == 1 && decode_f2d8(y).l == 1) p.emplace_back(x, y);
  return p;
}

// ---------------------------------------------------------------- Group64

Group64 group64(std::array<std::uint8_t, 3> s) {
  for (auto si : s)
    if (si > 7) throw Error(Errc::InvalidArgument, "squaring vector entries are 3-bit");
  auto bit = [](unsigned v, unsigned i) { return (v >> (2 - i)) & 1u; };  // coordinate of e_{i+1}
  std::vector<Elem> flat(64 * 64);
  for (Elem x = 0; x < 64; ++x)
    for (Elem y = 0; y < 64; ++y) {
      const unsigned v = Group64::vpart(x), w = Group64::vpart(y);
      unsigned m = Group64::mpart(x) ^ Group64::mpart(y);
      m ^= (bit(v, 1) & bit(w, 0)) | ((bit(v, 2) & bit(w, 0)) << 1) | ((bit(v, 2) & bit(w, 1)) << 2);
      for (unsigned i = 0; i < 3; ++i)
        if (bit(v, i) & bit(w, i)) m ^= s[i];
      flat[x * 64 + y] = Group64::element(v ^ w, m);
    }
  Group64 h{s, LoopTable::validate(64, flat)};
  if (!is_associative(h.table)) throw Error(Errc::InvalidArgument, "Group64 table is not associative");
  return h;
}

Group64 group64(unsigned index) {
  if (index >= 512) throw Error(Errc::InvalidArgument, "squaring vector index must be < 512");
  return group64({static_cast<std::uint8_t>(index & 7u), static_cast<std::uint8_t>((index >> 3) & 7u),
                  static_cast<std::uint8_t>((index >> 6) & 7u)});
}

// ---------------------------------------------------------------- forms and parameters

TrilinearForm TrilinearForm::determinant(bool nontrivial) {
  std::array<bool, 27> b{};
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j)
      for (unsigned k = 0; k < 3; ++k) b[9 * i + 3 * j + k] = nontrivial && i != j && j != k && i != k;
  return from_basis(b);
}

TrilinearForm TrilinearForm::from_basis(std::array<bool, 27> values) {
  TrilinearForm f;
  f.b_ = values;
  return f;
}

bool TrilinearForm::operator()(unsigned u, unsigned v, unsigned w) const {
  auto c = [](unsigned x, unsigned i) { return (x >> (2 - i)) & 1u; };
  unsigned r = 0;
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j)
      for (unsigned k = 0; k < 3; ++k) r ^= c(u, i) & c(v, j) & c(w, k) & basis(i, j, k);
  return r;
}

bool TrilinearForm::is_symmetric() const {
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j)
      for (unsigned k = 0; k < 3; ++k) {
        const bool v = basis(i, j, k);
        if (v != basis(j, i, k) || v != basis(i, k, j) || v != basis(k, j, i)) return false;
      }
  return true;
}

bool TrilinearForm::is_alternating() const {
  for (unsigned x = 0; x < 8; ++x)
    for (unsigned y = 0; y < 8; ++y)
      if ((*this)(x, x, y) || (*this)(x, y, x) || (*this)(y, x, x)) return false;
  return true;
}

bool TrilinearForm::is_trivial() const {
  return std::none_of(b_.begin(), b_.end(), [](bool v) { return v; });
}

unsigned DeltaMuParams::pair_index(unsigned i, unsigned j) {
  if (i < 2 || j <= i || j > 8) throw Error(Errc::InvalidArgument, "pair must satisfy 1 < i < j <= 8");
  unsigned idx = 0;
  for (unsigned a = 2; a < i; ++a) idx += 8 - a;
  return idx + (j - i - 1);
}

namespace {
std::uint32_t parse_hex(std::string_view s, unsigned bits, const char* what) {
  if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw Error(Errc::ParseError, std::string("bad hex for ") + what + ": '" + std::string(s) + "'");
  if (v >> bits) throw Error(Errc::ParseError, std::string(what) + " has more than " +
                                                   std::to_string(bits) + " bits");
  return static_cast<std::uint32_t>(v);
}

std::string to_hex(std::uint32_t v, int width) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%0*x", width, v);
  return buf;
}
}  // namespace

DeltaMuParams DeltaMuParams::from_hex(std::string_view delta_hex, std::string_view mu_hex) {
  return {parse_hex(delta_hex, kDeltaCount, "delta"), parse_hex(mu_hex, kMuCount, "mu")};
}

std::string DeltaMuParams::delta_hex() const { return to_hex(delta_bits, 6); }
std::string DeltaMuParams::mu_hex() const { return to_hex(mu_bits, 2); }

// ---------------------------------------------------------------- delta and mu

namespace {

// delta([e_i,e_j], v) extended linearly over m
bool delta_mh(const TrilinearForm& f, unsigned m, unsigned v) {
  static constexpr unsigned pairs[3][2] = {{4, 2}, {4, 1}, {2, 1}};
  bool r = false;
  for (unsigned b = 0; b < 3; ++b)
    if ((m >> b) & 1u) r ^= f(pairs[b][0], pairs[b][1], v);
  return r;
}

}  // namespace

SignTable build_delta(const Group64&, const TrilinearForm& f, std::uint32_t delta_bits) {
  if (delta_bits >> DeltaMuParams::kDeltaCount)
    throw Error(Errc::InvalidArgument, "too many delta parameters");
  const DeltaMuParams p{delta_bits, 0};
  auto dt = [&](unsigned a, unsigned b) -> bool {  // transversal indices 1..8
    if (a == 1 || b == 1 || a == b) return false;
    return a < b ? p.delta(a, b) : p.delta(b, a);
  };
  SignTable d;
  for (Elem x = 0; x < 64; ++x)
    for (Elem y = 0; y < 64; ++y) {
      const unsigned v = Group64::vpart(x), m = Group64::mpart(x);
      const unsigned w = Group64::vpart(y), n = Group64::mpart(y);
      d.set(x, y, delta_mh(f, m, w) ^ delta_mh(f, n, v) ^ dt(v + 1, w + 1));
    }
  return d;
}

SignTable build_mu(const Group64&, const SignTable& delta, std::uint32_t mu_bits) {
  if (mu_bits >> DeltaMuParams::kMuCount) throw Error(Errc::InvalidArgument, "too many mu parameters");
  const DeltaMuParams p{0, mu_bits};
  auto mt = [&](unsigned a, unsigned b) -> bool {
    if (a == b) return a > 1 && p.mu(a);
    if (a < b) return delta(Group64::transversal(a), Group64::transversal(b));
    return false;
  };
  SignTable mu;
  for (Elem x = 0; x < 64; ++x)
    for (Elem y = 0; y < 64; ++y) {
      const unsigned v = Group64::vpart(x), m = Group64::mpart(x), w = Group64::vpart(y);
      const bool mpart = delta(Group64::element(0, m), Group64::element(w, 0));
      mu.set(x, y, mpart ^ mt(v + 1, w + 1));
    }
  return mu;
}

LoopTable a_times_h(const Group64& h) {
  std::vector<Elem> flat(128 * 128);
  for (Elem x = 0; x < 128; ++x)
    for (Elem y = 0; y < 128; ++y)
      flat[x * 128 + y] = ((x ^ y) & 1u) | (h.table.mul(x >> 1, y >> 1) << 1);
  return LoopTable::validate(128, flat);
}

ModificationContext chmu_context(const Group64& h, const SignTable& mu) {
  LoopTable g = a_times_h(h);
  Bitset zk(128), nb(128);
  zk.set(0);
  zk.set(1);
  for (Elem x = 0; x < 16; ++x) nb.set(x);
  std::vector<Elem> mu_full(128 * 128);
  for (Elem x = 0; x < 128; ++x)
    for (Elem y = 0; y < 128; ++y) mu_full[x * 128 + y] = mu(x >> 1, y >> 1) ? 1 : 0;
  SubloopMask z = make_subloop(g, zk);
  SubloopMask n = make_subloop(g, nb);
  return ModificationContext::create(std::move(g), z, z, std::move(n), mu_full);
}

ModificationContext chmu_context(const Group64& h, const TrilinearForm& f, const DeltaMuParams& p) {
  return chmu_context(h, build_mu(h, build_delta(h, f, p.delta_bits), p.mu_bits));
}

LoopTable build_CHmu(const Group64& h, const TrilinearForm& f, const DeltaMuParams& p) {
  return modify(chmu_context(h, f, p));
}

}  // namespace loops
