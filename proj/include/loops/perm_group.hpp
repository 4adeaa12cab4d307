#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "loops/loop_table.hpp"

namespace loops {

using BigInt = boost::multiprecision::cpp_int;

/// A bijection of {0,...,n-1} stored by images. Products compose left to
/// right: (a * b)(p) = b(a(p)).
class Permutation {
public:
  Permutation() = default;
  /// Throws Error{NotBijection}.
  explicit Permutation(std::vector<std::uint16_t> images);
  static Permutation identity(std::size_t degree);
  static Permutation from_images(std::span<const Elem> images);

  std::size_t degree() const noexcept { return img_.size(); }
  Elem operator[](Elem p) const noexcept { return img_[p]; }
  std::span<const std::uint16_t> images() const noexcept { return img_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_identity() const noexcept;
  /// Least moved point, or degree() for the identity.
  Elem first_moved() const noexcept;
  std::uint64_t order() const;
  /// Sorted cycle lengths, fixed points included.
  std::vector<std::uint32_t> cycle_type() const;
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  std::vector<std::uint16_t> img_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// Permutation group with a base and strong generating set built by the
/// deterministic incremental Schreier-Sims algorithm. New base points are
/// the least point moved by the residue that needs them.
class PermGroup {
public:
  /// Throws Error{DegreeMismatch}. With no generators the degree must be given.
  static PermGroup generate(std::vector<Permutation> gens, std::size_t degree = 0,
                            std::span<const Elem> base_prefix = {});

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }
  std::vector<Elem> base() const;
  /// Union of the per-level strong generators, without repetition.
  std::vector<Permutation> strong_generators() const;
  std::size_t depth() const noexcept { return levels_.size(); }
  const std::vector<Permutation>& level_generators(std::size_t i) const {
    return levels_[i].gens;
  }
  const std::vector<Elem>& basic_orbit(std::size_t i) const { return levels_[i].orbit; }

  BigInt order() const;
  bool contains(const Permutation& g) const;

  /// Adds a generator; returns false when it is already a member.
  bool add_generator(const Permutation& g);

  /// The stabilizer of the first `k` base points, reusing this chain.
  PermGroup stabilizer_tail(std::size_t k) const;

  /// Canonical element of the right coset (this group) * g.
  Permutation canonical_coset_rep(const Permutation& g) const;

  template <class F>
  void for_each_element(F&& f) const {
    Permutation acc = Permutation::identity(degree_);
    enumerate(static_cast<int>(levels_.size()) - 1, acc, f);
  }

  /// Certificate check: order equals the product of orbit sizes and every
  /// original generator sifts.
  bool verify() const;

private:
  struct Level {
    Elem base_point = 0;
    std::vector<Permutation> gens;
    std::vector<Elem> orbit;
    std::vector<int> where;
    std::vector<Permutation> transversal;
    std::vector<Permutation> transversal_inv;
    std::vector<std::size_t> checked;
  };

  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from) const;
  void push_level(Elem point);
  void add_to_level(std::size_t l, const Permutation& g);
  void complete(std::size_t from);

  template <class F>
  void enumerate(int level, const Permutation& acc, F& f) const {
    if (level < 0) {
      f(acc);
      return;
    }
    for (const auto& t : levels_[level].transversal) enumerate(level - 1, acc * t, f);
  }

  std::size_t degree_ = 0;
  std::vector<Permutation> gens_;
  std::vector<Level> levels_;
};

bool is_abelian(const PermGroup& g);
bool is_elementary_abelian_2(const PermGroup& g);

/// Mlt(Q), generated by all left and right translations.
PermGroup multiplication_group(const LoopTable& q);

/// Inn(Q) as the stabilizer of the identity in Mlt(Q). Also checks that
/// |Mlt Q| = |Q| * |Inn Q|.
PermGroup inner_mapping_group(const LoopTable& q);
PermGroup inner_mapping_group(const PermGroup& mlt, std::size_t loop_order);

Permutation left_translation(const LoopTable& q, Elem x);
Permutation right_translation(const LoopTable& q, Elem x);

/// Inner mappings with the classical conventions
/// L(x,y) = L_{yx}^{-1} L_y L_x, R(x,y) = R_{xy}^{-1} R_y R_x, T(x) = R_x^{-1} L_x.
Permutation left_inner_mapping(const LoopTable& q, Elem x, Elem y);
Permutation right_inner_mapping(const LoopTable& q, Elem x, Elem y);
Permutation middle_inner_mapping(const LoopTable& q, Elem x);

/// The same maps with the modified-product conventions
/// L(x,y) = L_y^{-1} L_x^{-1} L_{xy}, R(x,y) = R_{xy}^{-1} R_y R_x, T(x) = L_x^{-1} R_x.
Permutation left_inner_mapping_alt(const LoopTable& q, Elem x, Elem y);
Permutation middle_inner_mapping_alt(const LoopTable& q, Elem x);

/// All distinct classical inner mappings of q.
std::vector<Permutation> inner_mapping_generators(const LoopTable& q);

struct GroupFingerprint {
  BigInt order;
  std::optional<BigInt> center_order;
  std::vector<BigInt> derived_series_orders;
  /// elementary divisors of G/G', ascending
  std::optional<std::vector<BigInt>> abelian_invariants;
  /// element order -> count; absent when the group is too large to list
  std::optional<std::map<std::uint64_t, std::uint64_t>> order_histogram;
  bool histogram_skipped = false;

  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
};

inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 20;

GroupFingerprint fingerprint(const PermGroup& g);

/// Smallest normal subgroup of `g` containing `seeds`.
PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& seeds);
PermGroup derived_subgroup(const PermGroup& g);
std::optional<BigInt> center_order(const PermGroup& g);

}  // namespace loops
