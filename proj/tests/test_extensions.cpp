#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "loops/analysis.hpp"
#include "loops/error.hpp"
#include "loops/extensions.hpp"
#include "loops/iso.hpp"
#include "loops/perm_group.hpp"
#include "support.hpp"

using namespace loops;
using namespace loops::testing;

namespace {

Errc error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::InvalidArgument;
}

bool inn_abelian(const LoopTable& q) { return is_abelian(inner_mapping_group(q)); }

/// T_x(a) = (xa)/x, so that xa = T_x(a) x.
Elem conj(const LoopTable& q, Elem x, Elem a) { return q.rdiv(q.mul(x, a), x); }

/// On a normal subloop K of the nucleus: every T_x|K is an
/// automorphism of K and T_{xy}|K = T_x T_y|K.
bool conj_restricts(const LoopTable& q, const SubloopMask& k) {
  const auto ks = k.elements();
  const Elem n = static_cast<Elem>(q.order());
  for (Elem x = 0; x < n; ++x) {
    std::set<Elem> image;
    for (Elem a : ks) {
      const Elem t = conj(q, x, a);
      if (!k.contains(t)) return false;
      image.insert(t);
      for (Elem b : ks)
        if (conj(q, x, q.mul(a, b)) != q.mul(t, conj(q, x, b))) return false;
    }
    if (image.size() != ks.size()) return false;
    for (Elem y = 0; y < n; ++y)
      for (Elem a : ks)
        if (conj(q, q.mul(x, y), a) != conj(q, x, conj(q, y, a))) return false;
  }
  return true;
}

std::vector<LoopTable> corpus() {
  return {build_C(), build_Cbar(), build_Gbar(), build_theta_doubleprime(), build_pa64(),
          build_theta_t(0)};
}

Crosshom klein_data(std::vector<KVec> gamma) {
  Crosshom c;
  c.kernel.rank = 3;
  c.f1 = cyclic(2);
  c.psi = {KernelMap::zero(3), KernelMap::identity(3)};
  c.f2 = klein_group();
  c.phi = klein_action();
  c.gamma = std::move(gamma);
  return c;
}

/// gamma(xy) = gamma(x) + phi_x gamma(y) on V4 = {b1^c1 b2^c2} (index c1 + 2c2)
/// acting by (a0,a1,a2) -> (a0 + c2 a1 + c1 a2, a1, a2); bit i holds a_i.
bool explicit_crosshom(const std::vector<KVec>& g) {
  auto act = [](unsigned x, KVec v) {
    const unsigned c1 = x & 1u, c2 = x >> 1;
    const KVec a1 = (v >> 1) & 1u, a2 = (v >> 2) & 1u;
    return v ^ ((c2 & a1) ^ (c1 & a2));
  };
  for (unsigned x = 0; x < 4; ++x)
    for (unsigned y = 0; y < 4; ++y)
      if (g[x ^ y] != (g[x] ^ act(x, g[y]))) return false;
  return true;
}

}  // namespace

TEST_CASE("kernel maps") {
  const KVec src[] = {0b0111, 0b1000, 0b0010, 0b0100};
  const KVec img[] = {0b1000, 0b0111, 0b0010, 0b0100};
  const KernelMap m = KernelMap::from_basis_images(4, src, img);
  CHECK(m.apply(0b0111) == 0b1000);
  CHECK(m.apply(0b1000) == 0b0111);
  CHECK(m.after(m) == KernelMap::identity(4));
  CHECK(m.is_invertible());
  CHECK_FALSE(KernelMap::zero(2).is_invertible());

  const KVec dependent[] = {0b01, 0b01};
  const KVec any[] = {0b01, 0b10};
  CHECK(error_of([&] { KernelMap::from_basis_images(2, dependent, any); }) == Errc::BadAction);

  CHECK(parse_kernel_word("1") == 0);
  CHECK(parse_kernel_word("a") == 0b0111);
  CHECK(parse_kernel_word("b") == 0b1000);
  CHECK(parse_kernel_word("aa2") == 0b0101);
  CHECK(parse_kernel_word("a1a2a3") == parse_kernel_word("a"));
  CHECK(error_of([] { parse_kernel_word("x"); }) == Errc::ParseError);
}

TEST_CASE("action and cocycle validation") {
  const AbelianKernel k{2};
  FactorLoop f{cyclic(2), {"1", "x"}};
  Cocycle zero{2, {0, 0, 0, 0}};

  Action singular{{KernelMap::identity(2), KernelMap::zero(2)}};
  CHECK(error_of([&] { nuclear_extension(k, f, singular, zero); }) == Errc::BadAction);
  // swapping the coordinates is an involution, so a valid action of Z2
  Action swap{{KernelMap::identity(2), KernelMap({0b10, 0b01})}};
  CHECK_NOTHROW(check_action(k, f, swap));
  // but not an action of Z4, whose generator would need order dividing 2
  FactorLoop z4{cyclic(4), {"1", "g", "g2", "g3"}};
  Action bad{{KernelMap::identity(2), KernelMap({0b10, 0b01}), KernelMap({0b10, 0b01}),
              KernelMap({0b10, 0b01})}};
  CHECK(error_of([&] { check_action(k, z4, bad); }) == Errc::BadAction);

  Cocycle unnormalised{2, {0, 1, 0, 0}};
  CHECK(error_of([&] { check_cocycle(k, f, unnormalised); }) == Errc::BadCocycle);
  Cocycle too_big{2, {0, 0, 0, 4}};
  CHECK(error_of([&] { check_cocycle(k, f, too_big); }) == Errc::BadCocycle);

  // Z2 acting by swap with theta(x,x) = (1,1), which swap fixes: D8
  Cocycle t{2, {0, 0, 0, 3}};
  const LoopTable q = nuclear_extension(k, f, swap, t);
  CHECK(q.order() == 8);
  CHECK(is_associative(q));
  CHECK_FALSE(is_commutative(q));
}

TEST_CASE("named loops") {
  const LoopTable c = build_C();
  CHECK(c.order() == 128);
  CHECK(nilpotency_class(c) == 3);
  CHECK(inn_abelian(c));

  const Nuclei cb = nuclei(build_Cbar());
  CHECK(cb.left.size() == 64);
  CHECK(cb.middle.size() == 64);
  CHECK(cb.right.size() == 64);

  const LoopTable t2 = build_theta_doubleprime();
  CHECK(nilpotency_class(t2) == 3);
  CHECK(inn_abelian(t2));
  CHECK_FALSE(are_isomorphic(t2, c).has_value());
  CHECK_FALSE(are_isomorphic(t2, build_Cbar()).has_value());

  const LoopTable pa = build_pa64();
  CHECK(pa.order() == 64);
  CHECK_FALSE(is_associative(pa));
  CHECK(is_power_associative(pa));
  const Nuclei np = nuclei(pa);
  CHECK(np.left.size() == 32);
  CHECK(np.middle.size() == 32);
  CHECK(np.right.size() == 32);
  CHECK(np.nucleus.size() == 16);
  CHECK((np.left.members | np.middle.members | np.right.members).count() == 64);
}

TEST_CASE("the theta_t family") {
  const std::set<unsigned> groups{32, 34, 40, 42};
  const std::set<unsigned> family{1, 3, 9, 11, 33, 35, 41, 43};
  const LoopTable gbar = build_Gbar();
  const LoopTable cbar = build_Cbar();
  CHECK(build_theta_t(42) == gbar);
  CHECK(build_theta_t(1) == cbar);
  for (unsigned t = 0; t < 128; ++t) {
    const LoopTable q = build_theta_t(t);
    CAPTURE(t);
    CHECK(is_associative(q) == (groups.count(t) > 0));
    if (groups.count(t)) CHECK(are_isomorphic(q, gbar).has_value());
    if (family.count(t)) {
      CHECK(nilpotency_class(q) == 3);
      CHECK(inn_abelian(q));
      CHECK(are_isomorphic(q, cbar).has_value());
    }
  }
  const LoopTable t0 = build_theta_t(0);
  CHECK_FALSE(is_associative(t0));
  CHECK_FALSE((nilpotency_class(t0) == 3 && inn_abelian(t0)));
  CHECK(error_of([] { build_theta_t(128); }) == Errc::InvalidArgument);
}

TEST_CASE("inner maps restrict to automorphisms of nuclear normal subloops") {
  for (const auto& q : corpus()) {
    const auto nu = nuclei(q).nucleus;
    REQUIRE(is_normal(q, nu.members));
    CHECK(conj_restricts(q, nu));
  }
  // the extension kernel K x 1 of C (rank 4 inside the nucleus)
  const LoopTable c = build_C();
  Bitset k(128);
  for (Elem a = 0; a < 16; ++a) k.set(a);
  CHECK(conj_restricts(c, make_subloop(c, k)));
}

TEST_CASE("decomposition and extension are inverse") {
  for (const auto& q : corpus()) {
    auto nu = nuclei(q).nucleus;
    if (is_associative(q)) {
      // the nucleus of Gbar is all of it; use the kernel K x 1 instead
      Bitset k(q.order());
      for (Elem a = 0; a < 8; ++a) k.set(a);
      nu = make_subloop(q, k);
    }
    const Decomposition d = decompose_nuclear(q, nu);
    CHECK_NOTHROW(check_action(d.data.kernel, d.data.factor, d.data.action));
    const LoopTable back = nuclear_extension(d.data);
    CHECK(is_isomorphism(q, back, d.psi));
    CHECK(are_isomorphic(q, back).has_value());
  }

  // extension first: the data of C survives a round trip up to isomorphism
  const ExtensionData cd = c_data();
  const LoopTable c = nuclear_extension(cd);
  Bitset k(128);
  for (Elem a = 0; a < cd.kernel.size(); ++a) k.set(a);
  const Decomposition d = decompose_nuclear(c, make_subloop(c, k));
  CHECK(d.data.kernel.rank == 4);
  CHECK(d.data.factor.table.order() == 8);
  CHECK(are_isomorphic(nuclear_extension(d.data), c).has_value());

  // a group with a central kernel: trivial action, group cocycle
  const LoopTable d8 = dihedral(4);
  const Decomposition dd = decompose_nuclear(d8, make_subloop(d8, mask_of(8, {0, 2})));
  for (const auto& m : dd.data.action.maps) CHECK(m == KernelMap::identity(1));
  CHECK(is_associative(nuclear_extension(dd.data)));
  CHECK(is_isomorphism(d8, nuclear_extension(dd.data), dd.psi));

  // an explicit section
  std::vector<Elem> section{0, 3, 6, 7};
  const Decomposition ds = decompose_nuclear(d8, make_subloop(d8, mask_of(8, {0, 2})), section);
  CHECK(ds.section == section);
  CHECK(is_isomorphism(d8, nuclear_extension(ds.data), ds.psi));
}

TEST_CASE("decomposition errors") {
  const LoopTable d8 = dihedral(4);
  CHECK(error_of([&] { decompose_nuclear(d8, make_subloop(d8, mask_of(8, {0, 4}))); }) ==
        Errc::KernelNotNormal);

  const LoopTable c = build_C();
  const auto left = nuclei(c).left;
  const auto nu = nuclei(c).nucleus;
  Elem outside = 0;
  for (Elem x : left.elements())
    if (!nu.contains(x)) outside = x;
  REQUIRE(outside != 0);
  const Elem seed[] = {outside};
  CHECK(error_of([&] { decompose_nuclear(c, subloop_generated(c, seed, true)); }) ==
        Errc::KernelNotNuclear);

  const auto k = make_subloop(d8, mask_of(8, {0, 2}));
  CHECK(error_of([&] { decompose_nuclear(d8, k, std::vector<Elem>{1, 1, 4, 5}); }) ==
        Errc::BadSection);
  // cosets are {0,2}, {1,3}, {4,6}, {5,7}; 3 is not in the last one
  CHECK(error_of([&] { decompose_nuclear(d8, k, std::vector<Elem>{0, 3, 4, 3}); }) ==
        Errc::BadSection);
}

TEST_CASE("crosshomomorphisms on V4") {
  const LoopTable v4 = klein_group();
  const Action phi = klein_action();
  const auto gamma = klein_crosshom();
  CHECK(is_crosshomomorphism(v4, gamma, phi));
  CHECK(is_crosshomomorphism(v4, std::vector<KVec>(4, 0), phi));
  for (Elem x = 1; x < 4; ++x)
    for (unsigned bit = 0; bit < 3; ++bit) {
      auto g = gamma;
      g[x] ^= KVec{1} << bit;
      CHECK_FALSE(is_crosshomomorphism(v4, g, phi));
    }
}

TEST_CASE("group iff crosshomomorphism, all 2^9 maps") {
  const LoopTable v4 = klein_group();
  const Action phi = klein_action();
  int groups = 0;
  for (unsigned bits = 0; bits < 512; ++bits) {
    std::vector<KVec> g{0, bits & 7u, (bits >> 3) & 7u, (bits >> 6) & 7u};
    const LoopTable q = nuclear_extension(cocycle_from_crosshom(klein_data(g)));
    const bool group = is_associative(q);
    CAPTURE(bits);
    CHECK(group == is_crosshomomorphism(v4, g, phi));
    CHECK(group == explicit_crosshom(g));
    groups += group;
  }
  int expected = 0;
  for (unsigned bits = 0; bits < 512; ++bits)
    expected += explicit_crosshom({0, bits & 7u, (bits >> 3) & 7u, (bits >> 6) & 7u});
  CHECK(groups == expected);
  CHECK(groups == 8);

  const LoopTable zero = nuclear_extension(cocycle_from_crosshom(klein_data({0, 0, 0, 0})));
  CHECK(is_associative(zero));
}

TEST_CASE("cocycle from the dihedral crosshomomorphism is theta_42") {
  Crosshom c;
  c.kernel.rank = 3;
  c.f1 = cyclic(2);
  c.psi = {KernelMap::zero(3), KernelMap::identity(3)};
  c.f2 = dihedral8().table;
  // pi(rho^{2i} sigma^j (sigma rho)^k) = b1^j b2^k
  const Action v4 = klein_action();
  const auto gv = klein_crosshom();
  for (Elem x = 0; x < 8; ++x) {
    const Elem j = (x >> 1) & 1u, k = x & 1u;
    c.phi.maps.push_back(v4[j + 2 * k]);
    c.gamma.push_back(gv[j + 2 * k]);
  }
  const ExtensionData d = cocycle_from_crosshom(c);
  const ExtensionData t42 = theta_t_data(42);
  CHECK(d.cocycle.values == t42.cocycle.values);
  CHECK(d.action.maps == t42.action.maps);
  const LoopTable g = nuclear_extension(d);
  CHECK(is_associative(g));
  CHECK(nilpotency_class(g) == 3);
  CHECK(g == build_Gbar());

  // psi must commute with phi
  Crosshom bad = c;
  bad.psi[1] = KernelMap({0b010, 0b001, 0b100});
  CHECK(error_of([&] { cocycle_from_crosshom(bad); }) == Errc::ActionsDoNotCommute);
}

TEST_CASE("dihedral group data") {
  const FactorLoop d8 = dihedral8();
  CHECK(d8.table.order() == 8);
  CHECK(is_associative(d8.table));
  CHECK(center(d8.table).size() == 2);
  const FactorLoop f = f2_times_d8();
  CHECK(f.table.order() == 16);
  CHECK(f.labels.size() == 16);
  for (Elem x = 0; x < 16; ++x) CHECK(encode_f2d8(decode_f2d8(x)) == x);
  CHECK_NOTHROW(check_action(AbelianKernel{3}, f, f2_times_d8_action()));
}
