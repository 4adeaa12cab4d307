#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "loops/analysis.hpp"
#include "loops/error.hpp"
#include "loops/extensions.hpp"
#include "loops/iso.hpp"
#include "loops/modification.hpp"
#include "support.hpp"

using namespace loops;
using namespace loops::testing;

namespace {

/// m is a bijection a -> b preserving every product.
bool preserves(const LoopTable& a, const LoopTable& b, const std::vector<Elem>& m) {
  std::vector<bool> hit(b.order(), false);
  for (Elem x : m) {
    if (x >= b.order() || hit[x]) return false;
    hit[x] = true;
  }
  for (Elem x = 0; x < a.order(); ++x)
    for (Elem y = 0; y < a.order(); ++y)
      if (m[a.mul(x, y)] != b.mul(m[x], m[y])) return false;
  return true;
}

}  // namespace

TEST_CASE("relabelled copies are found") {
  std::mt19937_64 rng(11);
  std::vector<LoopTable> corpus{build_C(), build_Cbar(), build_pa64(), dihedral(8), cyclic(12)};
  for (int i = 0; i < 6; ++i) corpus.push_back(random_loop(6 + i % 3, rng));
  for (const auto& q : corpus) {
    const auto perm = random_relabeling(q.order(), rng);
    const LoopTable r = relabel(q, perm);
    const auto m = are_isomorphic(q, r);
    REQUIRE(m.has_value());
    CHECK(preserves(q, r, *m));
    CHECK(is_isomorphism(q, r, *m));
    CHECK(is_isomorphism(q, r, perm));
    CHECK(are_isomorphic(q, q).has_value());
    CHECK(are_isomorphic(r, q).has_value());
    CHECK(canonical_fingerprint(q) == canonical_fingerprint(r));
    CHECK(profile(q).digest == profile(r).digest);
  }
}

TEST_CASE("nonisomorphic pairs") {
  CHECK_FALSE(are_isomorphic(build_C(), build_Cbar()).has_value());
  CHECK_FALSE(are_isomorphic(build_Cbar(), build_C()).has_value());
  CHECK_FALSE(are_isomorphic(cyclic(4), direct_product(cyclic(2), cyclic(2))).has_value());
  CHECK_FALSE(are_isomorphic(dihedral(4), cyclic(8)).has_value());
  CHECK_FALSE(are_isomorphic(cyclic(4), cyclic(5)).has_value());
  IsoStats st;
  CHECK_FALSE(are_isomorphic(build_C(), build_theta_doubleprime(), {}, &st).has_value());
}

TEST_CASE("isomorphism agrees with brute force on order 5") {
  // there are 6 loops of order 5 up to isomorphism
  std::mt19937_64 rng(3);
  std::vector<LoopTable> ls;
  for (int i = 0; i < 60; ++i) ls.push_back(random_loop(5, rng));
  std::vector<Elem> p{0, 1, 2, 3, 4};
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i + 1; j < ls.size(); j += 7) {
      bool brute = false;
      std::vector<Elem> q(p);
      do brute = brute || preserves(ls[i], ls[j], q);
      while (!brute && std::next_permutation(q.begin() + 1, q.end()));
      CHECK(are_isomorphic(ls[i], ls[j]).has_value() == brute);
    }
  const auto classes = isomorphism_classes(ls);
  CHECK(classes.size() <= 6);
  std::size_t total = 0;
  for (const auto& c : classes) total += c.size();
  CHECK(total == ls.size());
}

TEST_CASE("is_isomorphism rejects bad maps") {
  const LoopTable c = build_C();
  std::vector<Elem> id(128);
  for (Elem x = 0; x < 128; ++x) id[x] = x;
  CHECK(is_isomorphism(c, c, id));
  std::swap(id[3], id[4]);
  CHECK_FALSE(is_isomorphism(c, c, id));
  id[3] = id[4];
  CHECK_FALSE(is_isomorphism(c, c, id));
  CHECK_FALSE(is_isomorphism(c, c, std::vector<Elem>(5, 0)));
}

TEST_CASE("node limit") {
  // every invariant is constant on V2^4, so the search has to branch
  const LoopTable v2 = direct_product(cyclic(2), cyclic(2));
  const LoopTable v = direct_product(v2, v2);
  std::mt19937_64 rng(2);
  const LoopTable r = relabel(v, random_relabeling(16, rng));
  bool limited = false;
  try {
    are_isomorphic(v, r, IsoOptions{1});
  } catch (const Error& e) {
    limited = e.code() == Errc::TooLarge;
  }
  CHECK(limited);
  IsoStats st;
  CHECK(are_isomorphic(v, r, {}, &st).has_value());
  CHECK(st.nodes > 1);
}

TEST_CASE("C(H, mu) isomorphism across suitable groups") {
  const auto det = TrilinearForm::determinant();
  // members of one class give isomorphic groups A x H
  const auto& cls = suitable_group_classes()[1];
  REQUIRE(cls.members.size() >= 2);
  const LoopTable a = a_times_h(group64(cls.members[0]));
  const LoopTable b = a_times_h(group64(cls.members[1]));
  CHECK(are_isomorphic(a, b).has_value());
  // nonisomorphic H give nonisomorphic C(H, mu)
  CHECK_FALSE(are_isomorphic(build_CHmu(group64(0u), det, {}), build_CHmu(suitable_group(2), det, {})).has_value());
}
