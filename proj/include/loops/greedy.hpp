#pragma once

#include <cstdint>
#include <vector>

#include "loops/loop_table.hpp"

namespace loops {

/// One accepted move: blocks (s,t) and (t,s) multiplied by h. Coset indices
/// are 1-based, the coset of the identity being 1.
struct GreedyStep {
  unsigned s = 0;
  unsigned t = 0;
  std::uint64_t mu_before = 0;
  std::uint64_t mu_after = 0;
};

struct GreedyResult {
  LoopTable result;
  std::uint64_t baseline = 0;
  std::vector<GreedyStep> history;
  /// least element of every coset, in coset order
  std::vector<Elem> coset_min;
};

/// Repeatedly flips the pair of blocks that minimizes the number of
/// nonassociative triples and stops when no flip strictly lowers it. Ties go
/// to the lexicographically least (s,t).
/// Throws Error{NotCentralInvolution|BadCosetStructure}.
GreedyResult greedy_minimize(const LoopTable& q, const SubloopMask& n, Elem h);

}  // namespace loops
