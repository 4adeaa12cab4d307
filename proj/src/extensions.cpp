#include "loops/extensions.hpp"

#include <array>

#include "loops/analysis.hpp"
#include "loops/error.hpp"
#include "loops/perm_group.hpp"

namespace loops {

// ---------------------------------------------------------------- KernelMap

KernelMap KernelMap::identity(unsigned rank) {
  std::vector<KVec> c(rank);
  for (unsigned i = 0; i < rank; ++i) c[i] = KVec{1} << i;
  return KernelMap(std::move(c));
}

KernelMap KernelMap::zero(unsigned rank) { return KernelMap(std::vector<KVec>(rank, 0)); }

KernelMap KernelMap::from_basis_images(unsigned rank, std::span<const KVec> sources,
                                       std::span<const KVec> images) {
  if (sources.size() != rank || images.size() != rank)
    throw Error(Errc::BadAction, "need exactly rank source/image pairs");
  const std::size_t size = std::size_t{1} << rank;
  // combination mask over the sources -> value; invert by table lookup
  std::vector<int> combo_of(size, -1);
  for (std::size_t mask = 0; mask < size; ++mask) {
    KVec v = 0;
    for (unsigned i = 0; i < rank; ++i)
      if ((mask >> i) & 1u) v ^= sources[i];
    if (combo_of[v] >= 0) throw Error(Errc::BadAction, "source vectors are not a basis");
    combo_of[v] = static_cast<int>(mask);
  }
  std::vector<KVec> cols(rank);
  for (unsigned j = 0; j < rank; ++j) {
    const auto mask = static_cast<unsigned>(combo_of[KVec{1} << j]);
    KVec img = 0;
    for (unsigned i = 0; i < rank; ++i)
      if ((mask >> i) & 1u) img ^= images[i];
    cols[j] = img;
  }
  return KernelMap(std::move(cols));
}

KernelMap KernelMap::after(const KernelMap& other) const {
  std::vector<KVec> c(other.cols_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = apply(other.cols_[i]);
  return KernelMap(std::move(c));
}

bool KernelMap::is_invertible() const {
  const std::size_t size = std::size_t{1} << cols_.size();
  std::vector<char> hit(size, 0);
  for (std::size_t v = 0; v < size; ++v) {
    const KVec w = apply(static_cast<KVec>(v));
    if (w >= size || hit[w]) return false;
    hit[w] = 1;
  }
  return true;
}

// ---------------------------------------------------------------- checks

void check_action(const AbelianKernel& k, const FactorLoop& f, const Action& phi) {
  const std::size_t n = f.table.order();
  if (phi.maps.size() != n) throw Error(Errc::BadAction, "action must cover every factor element");
  for (const auto& m : phi.maps) {
    if (m.rank() != k.rank) throw Error(Errc::BadAction, "action map has wrong rank");
    for (KVec c : m.columns())
      if (c >= k.size()) throw Error(Errc::BadAction, "action map leaves the kernel");
    if (!m.is_invertible()) throw Error(Errc::BadAction, "action map is not an automorphism");
  }
  if (!(phi[0] == KernelMap::identity(k.rank)))
    throw Error(Errc::BadAction, "identity does not act trivially");
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (!(phi[f.table.mul(x, y)] == phi[x].after(phi[y])))
        throw Error(Errc::BadAction, "action is not a homomorphism at (" + std::to_string(x) +
                                         "," + std::to_string(y) + ")");
}

void check_cocycle(const AbelianKernel& k, const FactorLoop& f, const Cocycle& theta) {
  const std::size_t n = f.table.order();
  if (theta.factor_order != n || theta.values.size() != n * n)
    throw Error(Errc::BadCocycle, "cocycle table has wrong shape");
  for (KVec v : theta.values)
    if (v >= k.size()) throw Error(Errc::BadCocycle, "cocycle value outside the kernel");
  for (Elem x = 0; x < n; ++x)
    if (theta(x, 0) != 0 || theta(0, x) != 0)
      throw Error(Errc::BadCocycle, "cocycle is not normalized at " + std::to_string(x));
}

// ---------------------------------------------------------------- extension

LoopTable nuclear_extension(const AbelianKernel& k, const FactorLoop& f, const Action& phi,
                            const Cocycle& theta) {
  check_action(k, f, phi);
  check_cocycle(k, f, theta);
  const std::size_t nk = k.size();
  const std::size_t nf = f.table.order();
  const std::size_t n = nk * nf;
  if (n > kMaxOrder) throw Error(Errc::BadShape, "extension too large");

  std::vector<Elem> flat(n * n);
  for (Elem x = 0; x < nf; ++x)
    for (KVec a = 0; a < nk; ++a)
      for (Elem y = 0; y < nf; ++y)
        for (KVec b = 0; b < nk; ++b) {
          const KVec c = a ^ phi[x].apply(b) ^ theta(x, y);
          flat[extension_index(k, a, x) * n + extension_index(k, b, y)] =
              extension_index(k, c, f.table.mul(x, y));
        }
  LoopTable q = LoopTable::validate(n, flat);

  for (Elem a = 0; a < nk; ++a)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (associator(q, a, y, z) != 0 || associator(q, y, a, z) != 0 ||
            associator(q, y, z, a) != 0)
          throw Error(Errc::BadCocycle, "kernel is not nuclear in the extension");
  Bitset kmask(n);
  for (Elem a = 0; a < nk; ++a) kmask.set(a);
  if (!is_normal(q, kmask)) throw Error(Errc::BadCocycle, "kernel is not normal in the extension");
  return q;
}

LoopTable nuclear_extension(const ExtensionData& d) {
  return nuclear_extension(d.kernel, d.factor, d.action, d.cocycle);
}

// ---------------------------------------------------------------- decomposition

Decomposition decompose_nuclear(const LoopTable& q, const SubloopMask& k,
                                std::optional<std::vector<Elem>> section) {
  const std::size_t n = q.order();
  const auto kel = k.elements();
  for (Elem a : kel)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (associator(q, a, y, z) != 0 || associator(q, y, a, z) != 0 ||
            associator(q, y, z, a) != 0)
          throw Error(Errc::KernelNotNuclear, "kernel element " + std::to_string(a) +
                                                  " is not in the nucleus");
  if (!is_normal(q, k.members)) throw Error(Errc::KernelNotNormal, "kernel is not normal");
  for (Elem a : kel) {
    if (q.mul(a, a) != 0)
      throw Error(Errc::InvalidArgument, "kernel is not an elementary abelian 2-group");
    for (Elem b : kel)
      if (q.mul(a, b) != q.mul(b, a))
        throw Error(Errc::InvalidArgument, "kernel is not abelian");
  }

  // basis of K and coordinates of every kernel element
  std::vector<Elem> basis;
  std::vector<int> coord(n, -1);
  coord[0] = 0;
  std::vector<Elem> span{0};
  for (Elem a : kel) {
    if (coord[a] >= 0) continue;
    const auto bit = static_cast<KVec>(1u << basis.size());
    basis.push_back(a);
    const std::size_t old = span.size();
    for (std::size_t i = 0; i < old; ++i) {
      const Elem e = q.mul(span[i], a);
      coord[e] = static_cast<int>(static_cast<KVec>(coord[span[i]]) | bit);
      span.push_back(e);
    }
  }
  AbelianKernel kernel{static_cast<unsigned>(basis.size())};
  if (kernel.size() != kel.size())
    throw Error(Errc::InvalidArgument, "kernel coordinates are inconsistent");

  auto quo = quotient(q, k);
  const std::size_t nf = quo.table.order();
  std::vector<Elem> sec = section ? std::move(*section) : quo.representative;
  if (sec.size() != nf || sec[0] != 0) throw Error(Errc::BadSection, "section must start at 0");
  for (Elem x = 0; x < nf; ++x)
    if (sec[x] >= n || quo.coset_of[sec[x]] != x)
      throw Error(Errc::BadSection, "section element outside its coset");

  auto kvec = [&](Elem e) -> KVec {
    if (coord[e] < 0) throw Error(Errc::InvalidArgument, "value outside the kernel");
    return static_cast<KVec>(coord[e]);
  };

  Action phi;
  for (Elem x = 0; x < nf; ++x) {
    std::vector<KVec> cols;
    for (Elem b : basis) cols.push_back(kvec(q.rdiv(q.mul(sec[x], b), sec[x])));
    phi.maps.emplace_back(std::move(cols));
  }
  Cocycle theta{nf, std::vector<KVec>(nf * nf)};
  for (Elem x = 0; x < nf; ++x)
    for (Elem y = 0; y < nf; ++y)
      theta.values[x * nf + y] =
          kvec(q.rdiv(q.mul(sec[x], sec[y]), sec[quo.table.mul(x, y)]));

  std::vector<Elem> psi(n);
  for (Elem x = 0; x < nf; ++x)
    for (Elem a : kel) psi[q.mul(a, sec[x])] = extension_index(kernel, kvec(a), x);

  std::vector<std::string> labels;
  for (Elem x = 0; x < nf; ++x) labels.push_back(std::to_string(quo.representative[x]) + "K");
  Decomposition d{ExtensionData{kernel, FactorLoop{quo.table, std::move(labels)}, std::move(phi),
                                std::move(theta)},
                  std::move(basis), std::move(sec), std::move(psi)};

  const LoopTable rebuilt = nuclear_extension(d.data);
  for (Elem u = 0; u < n; ++u)
    for (Elem v = 0; v < n; ++v)
      if (d.psi[q.mul(u, v)] != rebuilt.mul(d.psi[u], d.psi[v]))
        throw Error(Errc::InvalidArgument, "reconstruction is not isomorphic via psi");
  return d;
}

// ---------------------------------------------------------------- crosshomomorphisms

bool is_crosshomomorphism(const LoopTable& f, std::span<const KVec> gamma, const Action& phi) {
  if (gamma.size() != f.order() || gamma[0] != 0) return false;
  for (Elem x = 0; x < f.order(); ++x)
    for (Elem y = 0; y < f.order(); ++y)
      if (gamma[f.mul(x, y)] != (gamma[x] ^ phi[x].apply(gamma[y]))) return false;
  return true;
}

namespace {
LoopTable direct_product(const LoopTable& a, const LoopTable& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Elem> flat(n * n);
  for (Elem x1 = 0; x1 < na; ++x1)
    for (Elem x2 = 0; x2 < nb; ++x2)
      for (Elem y1 = 0; y1 < na; ++y1)
        for (Elem y2 = 0; y2 < nb; ++y2)
          flat[(x1 * nb + x2) * n + (y1 * nb + y2)] =
              static_cast<Elem>(a.mul(x1, y1) * nb + b.mul(x2, y2));
  return LoopTable::validate(n, flat);
}
}  // namespace

ExtensionData cocycle_from_crosshom(const Crosshom& c) {
  const std::size_t n1 = c.f1.order(), n2 = c.f2.order();
  if (c.psi.size() != n1 || c.phi.maps.size() != n2 || c.gamma.size() != n2)
    throw Error(Errc::InvalidArgument, "crosshomomorphism data has wrong sizes");
  if (c.gamma[0] != 0) throw Error(Errc::BadCocycle, "gamma(1) must vanish");
  for (const auto& p : c.psi)
    for (const auto& f : c.phi.maps)
      if (!(p.after(f) == f.after(p)))
        throw Error(Errc::ActionsDoNotCommute, "psi and phi do not commute");

  ExtensionData d;
  d.kernel = c.kernel;
  d.factor.table = direct_product(c.f1, c.f2);
  for (Elem x1 = 0; x1 < n1; ++x1)
    for (Elem x2 = 0; x2 < n2; ++x2) {
      d.factor.labels.push_back("(" + std::to_string(x1) + "," + std::to_string(x2) + ")");
      d.action.maps.push_back(c.phi[x2]);
    }
  const std::size_t n = n1 * n2;
  d.cocycle = Cocycle{n, std::vector<KVec>(n * n)};
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      d.cocycle.values[x * n + y] = c.psi[y / n2].apply(c.gamma[x % n2]);
  return d;
}

// ---------------------------------------------------------------- named data

KVec parse_kernel_word(std::string_view word) {
  if (word == "1") return 0;
  constexpr KVec a = 0b0111, b = 0b1000;
  KVec v = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const char ch = word[i];
    if (ch == 'b') {
      v ^= b;
    } else if (ch == 'a') {
      if (i + 1 < word.size() && word[i + 1] >= '1' && word[i + 1] <= '4') {
        v ^= KVec{1} << (word[i + 1] - '1');
        ++i;
      } else {
        v ^= a;
      }
    } else {
      throw Error(Errc::ParseError, "bad kernel word '" + std::string(word) + "'");
    }
  }
  return v;
}

namespace {

LoopTable xor_group(unsigned bits) {
  const std::size_t n = std::size_t{1} << bits;
  std::vector<Elem> flat(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) flat[x * n + y] = x ^ y;
  return LoopTable::validate(n, flat);
}

Cocycle parse_cocycle(std::size_t nf, std::initializer_list<const char*> words) {
  Cocycle c{nf, {}};
  for (const char* w : words) c.values.push_back(parse_kernel_word(w));
  if (c.values.size() != nf * nf) throw Error(Errc::BadCocycle, "cocycle literal has wrong size");
  return c;
}

}  // namespace

ExtensionData c_data() {
  ExtensionData d;
  d.kernel = AbelianKernel{4};
  d.factor.table = xor_group(3);
  d.factor.labels = {"1", "x1", "x2", "x1x2", "x3", "x1x3", "x2x3", "x1x2x3"};

  const KVec a = parse_kernel_word("a"), b = parse_kernel_word("b");
  std::array<KernelMap, 3> gen;
  for (unsigned i = 0; i < 3; ++i) {
    // x_i swaps a and b and fixes a_{i+1}, a_{i+2} (indices mod {1,2,3})
    const KVec ai1 = KVec{1} << ((i + 1) % 3), ai2 = KVec{1} << ((i + 2) % 3);
    const KVec src[] = {a, b, ai1, ai2};
    const KVec img[] = {b, a, ai1, ai2};
    gen[i] = KernelMap::from_basis_images(4, src, img);
  }
  for (Elem x = 0; x < 8; ++x) {
    KernelMap m = KernelMap::identity(4);
    for (unsigned i = 0; i < 3; ++i)
      if ((x >> i) & 1u) m = m.after(gen[i]);
    d.action.maps.push_back(std::move(m));
  }
  d.cocycle = parse_cocycle(8, {
      "1", "1",    "1", "1",    "1",   "1",   "1",    "1",
      "1", "1",    "1", "1",    "a2",  "a2",  "aba2", "aba2",
      "1", "a3",   "1", "a3",   "a1",  "aa2", "a1",   "aa2",
      "1", "a3",   "1", "a3",   "aa3", "a",   "a3b",  "b",
      "1", "1",    "1", "1",    "1",   "1",   "1",    "1",
      "1", "1",    "1", "1",    "a2",  "a2",  "aba2", "aba2",
      "1", "aba3", "1", "aba3", "a1",  "a2b", "a1",   "a2b",
      "1", "aba3", "1", "aba3", "aa3", "b",   "a3b",  "a",
  });
  return d;
}

FactorLoop dihedral8() {
  // rho and sigma acting on the corners of a square
  const Permutation rho(std::vector<std::uint16_t>{1, 2, 3, 0});
  const Permutation sigma(std::vector<std::uint16_t>{0, 3, 2, 1});
  const Permutation sr = sigma * rho;
  std::vector<Permutation> elems;
  std::vector<std::string> labels;
  for (unsigned idx = 0; idx < 8; ++idx) {
    const unsigned i = (idx >> 2) & 1u, j = (idx >> 1) & 1u, k = idx & 1u;
    Permutation p = Permutation::identity(4);
    if (i) p = p * rho * rho;
    if (j) p = p * sigma;
    if (k) p = p * sr;
    elems.push_back(p);
    labels.push_back(std::string(i ? "r2" : "") + (j ? "s" : "") + (k ? "(sr)" : ""));
  }
  labels[0] = "1";
  std::vector<Elem> flat(64);
  for (unsigned x = 0; x < 8; ++x)
    for (unsigned y = 0; y < 8; ++y) {
      const Permutation p = elems[x] * elems[y];
      unsigned z = 0;
      while (z < 8 && !(elems[z] == p)) ++z;
      if (z == 8) throw Error(Errc::InvalidArgument, "dihedral normal form is incomplete");
      flat[x * 8 + y] = z;
    }
  return FactorLoop{LoopTable::validate(8, flat), std::move(labels)};
}

FactorLoop f2_times_d8() {
  const auto d8 = dihedral8();
  std::vector<Elem> flat(256);
  for (Elem x = 0; x < 16; ++x)
    for (Elem y = 0; y < 16; ++y)
      flat[x * 16 + y] = (((x >> 3) ^ (y >> 3)) << 3) | d8.table.mul(x & 7u, y & 7u);
  std::vector<std::string> labels;
  for (Elem x = 0; x < 16; ++x)
    labels.push_back("(" + std::to_string(x >> 3) + "," + d8.labels[x & 7u] + ")");
  return FactorLoop{LoopTable::validate(16, flat), std::move(labels)};
}

Action f2_times_d8_action() {
  Action phi;
  for (Elem x = 0; x < 16; ++x) {
    const auto c = decode_f2d8(x);
    phi.maps.emplace_back(std::vector<KVec>{0b001, 0b010 | c.k, 0b100 | c.j});
  }
  return phi;
}

LoopTable klein_group() { return xor_group(2); }

Action klein_action() {
  Action phi;
  for (Elem x = 0; x < 4; ++x) {
    const KVec c1 = x & 1u, c2 = (x >> 1) & 1u;
    // (a0,a1,a2) -> (a0 + c2 a1 + c1 a2, a1, a2)
    phi.maps.emplace_back(std::vector<KVec>{0b001, 0b010 | c2, 0b100 | c1});
  }
  return phi;
}

std::vector<KVec> klein_crosshom() {
  std::vector<KVec> g;
  for (Elem x = 0; x < 4; ++x) {
    const KVec c1 = x & 1u, c2 = (x >> 1) & 1u;
    g.push_back(((c1 ^ c2 ^ (c1 & c2)) << 0) | (c1 << 1) | (c2 << 2));
  }
  return g;
}

namespace {

template <class F>
ExtensionData dihedral_extension(F&& first_coordinate) {
  ExtensionData d;
  d.kernel = AbelianKernel{3};
  d.factor = f2_times_d8();
  d.action = f2_times_d8_action();
  d.cocycle = Cocycle{16, std::vector<KVec>(256)};
  for (Elem x = 0; x < 16; ++x)
    for (Elem y = 0; y < 16; ++y) {
      const auto cx = decode_f2d8(x), cy = decode_f2d8(y);
      const unsigned lp = cy.l;
      const KVec first = lp & first_coordinate(cx, cy) & 1u;
      d.cocycle.values[x * 16 + y] = first | ((lp & cx.j) << 1) | ((lp & cx.k) << 2);
    }
  return d;
}

}  // namespace

ExtensionData theta_t_data(unsigned t) {
  if (t > 127) throw Error(Errc::InvalidArgument, "t must lie in 0..127");
  auto bit = [t](unsigned i) { return (t >> i) & 1u; };
  return dihedral_extension([&](DihedralCoords x, DihedralCoords) {
    const unsigned i = x.i, j = x.j, k = x.k;
    return (bit(0) & i) ^ (bit(1) & j) ^ (bit(2) & i & j) ^ (bit(3) & k) ^ (bit(4) & i & k) ^
           (bit(5) & j & k) ^ (bit(6) & i & j & k);
  });
}

ExtensionData theta_doubleprime_data() {
  // i + (k - k') j, computed mod 2
  return dihedral_extension(
      [](DihedralCoords x, DihedralCoords y) { return x.i ^ ((x.k ^ y.k) & x.j); });
}

ExtensionData pa64_data() {
  ExtensionData d;
  d.kernel = AbelianKernel{4};
  d.factor.table = xor_group(2);
  d.factor.labels = {"1", "x1", "x2", "x1x2"};
  const KVec a = parse_kernel_word("a"), b = parse_kernel_word("b");
  const KVec a3 = parse_kernel_word("a3"), aba3 = parse_kernel_word("aba3");
  std::array<KernelMap, 2> gen;
  for (unsigned i = 0; i < 2; ++i) {
    const KVec ai = KVec{1} << i;
    const KVec src[] = {a, b, ai, a3};
    const KVec img[] = {a, b, ai, aba3};
    gen[i] = KernelMap::from_basis_images(4, src, img);
  }
  for (Elem x = 0; x < 4; ++x) {
    KernelMap m = KernelMap::identity(4);
    for (unsigned i = 0; i < 2; ++i)
      if ((x >> i) & 1u) m = m.after(gen[i]);
    d.action.maps.push_back(std::move(m));
  }
  d.cocycle = parse_cocycle(4, {
      "1", "1",    "1",   "1",
      "1", "a1",   "a2b", "a3",
      "1", "aba2", "a2",  "1",
      "1", "aa3",  "a",   "a3",
  });
  return d;
}

LoopTable build_C() { return nuclear_extension(c_data()); }
LoopTable build_theta_t(unsigned t) { return nuclear_extension(theta_t_data(t)); }
LoopTable build_Cbar() { return build_theta_t(1); }
LoopTable build_Gbar() { return build_theta_t(42); }
LoopTable build_theta_doubleprime() { return nuclear_extension(theta_doubleprime_data()); }
LoopTable build_pa64() { return nuclear_extension(pa64_data()); }

}  // namespace loops
