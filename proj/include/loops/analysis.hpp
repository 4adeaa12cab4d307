#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "loops/loop_table.hpp"

namespace loops {

/// The unique c with x*y = (y*x)*c.
inline Elem commutator(const LoopTable& q, Elem x, Elem y) {
  return q.ldiv(q.mul(y, x), q.mul(x, y));
}

/// The unique a with (x*y)*z = (x*(y*z))*a.
inline Elem associator(const LoopTable& q, Elem x, Elem y, Elem z) {
  return q.ldiv(q.mul(x, q.mul(y, z)), q.mul(q.mul(x, y), z));
}

/// Number of triples (a,b,c) with a(bc) != (ab)c.
std::uint64_t mu_count(const LoopTable& q);

bool is_associative(const LoopTable& q);
bool is_commutative(const LoopTable& q);

struct Nuclei {
  SubloopMask left;
  SubloopMask middle;
  SubloopMask right;
  SubloopMask nucleus;
};

Nuclei nuclei(const LoopTable& q);

/// Center computed from an already known nucleus.
SubloopMask center(const LoopTable& q, const SubloopMask& nucleus);
SubloopMask center(const LoopTable& q);

/// Smallest subloop containing `seed`; with `normal`, also closed under the
/// inner mappings L(x,y), R(x,y), T(x).
SubloopMask subloop_generated(const LoopTable& q, std::span<const Elem> seed,
                              bool normal = false);

/// S is normal iff it is a subloop invariant under every inner mapping.
bool is_normal(const LoopTable& q, const Bitset& s);

SubloopMask associator_subloop(const LoopTable& q);

struct QuotientLoop {
  LoopTable table;
  /// coset index of every element of the parent loop
  std::vector<Elem> coset_of;
  /// least element of every coset; representative[0] == 0
  std::vector<Elem> representative;
};

/// Cosets are numbered by increasing least element. Throws Error{NotNormal}.
QuotientLoop quotient(const LoopTable& q, const SubloopMask& s);

/// Length of the upper central series; nullopt when it stalls.
std::optional<int> nilpotency_class(const LoopTable& q);

bool is_power_associative(const LoopTable& q);

/// Subloop whose elements form an elementary abelian 2-group.
bool is_elementary_abelian_2(const LoopTable& q, const SubloopMask& s);

}  // namespace loops
