#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "loops/loop_table.hpp"

namespace loops {

/// Isomorphism invariants of a loop: the stable element colouring obtained by
/// refining per-element signatures, and a digest of it plus global data.
struct LoopProfile {
  std::vector<std::uint64_t> colors;
  std::vector<std::uint64_t> globals;
  std::uint64_t digest = 0;
};

/// Signatures: cycle types of L_x and R_x, nucleus and center membership,
/// centralizer size and nonassociative-triple counts per position. They are
/// refined by the multiset {(c(y), c(xy), c(yx), c(x\y), c(y/x))} until stable.
LoopProfile profile(const LoopTable& q);

/// Sorted-multiset digest; equal for isomorphic loops.
std::uint64_t canonical_fingerprint(const LoopTable& q);

struct IsoOptions {
  /// 0 = unlimited; otherwise Error{TooLarge} once exceeded.
  std::uint64_t node_limit = 0;
};

struct IsoStats {
  std::uint64_t nodes = 0;
  bool rejected_by_invariants = false;
};

/// A product-preserving bijection a -> b (verified on all n^2 products), or
/// nullopt.
std::optional<std::vector<Elem>> are_isomorphic(const LoopTable& a, const LoopTable& b,
                                                IsoOptions opt = {}, IsoStats* stats = nullptr);
std::optional<std::vector<Elem>> are_isomorphic(const LoopTable& a, const LoopProfile& pa,
                                                const LoopTable& b, const LoopProfile& pb,
                                                IsoOptions opt = {}, IsoStats* stats = nullptr);

/// True iff `map` is a bijection preserving every product.
bool is_isomorphism(const LoopTable& a, const LoopTable& b, std::span<const Elem> map);

/// Isomorphism classes of `tables` as index lists, ordered by first member.
std::vector<std::vector<std::size_t>> isomorphism_classes(std::span<const LoopTable> tables,
                                                          IsoOptions opt = {});

}  // namespace loops
