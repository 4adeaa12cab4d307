#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loops/analysis.hpp"
#include "loops/loop_table.hpp"

namespace loops {

// -- group modifications x*y = xy mu(x,y) ---------------------------------------

/// A group G with a chain Z <= K <= N of subgroups and mu: G/K x G/K -> Z.
/// K-cosets are numbered by increasing least element.
class ModificationContext {
public:
  /// `mu_full` is |G| x |G| row-major with values in Z; it must be constant
  /// on K-cosets and vanish when either argument lies in K.
  /// Throws Error{ChainViolation|NotNormalizedMu}.
  static ModificationContext create(LoopTable g, SubloopMask z, SubloopMask k, SubloopMask n,
                                    std::span<const Elem> mu_full);

  const LoopTable& group() const { return g_; }
  const SubloopMask& z() const { return z_; }
  const SubloopMask& k() const { return k_; }
  const SubloopMask& n() const { return n_; }
  std::size_t num_cosets() const { return reps_.size(); }
  Elem coset_of(Elem x) const { return coset_[x]; }
  Elem coset_rep(Elem c) const { return reps_[c]; }
  Elem inverse(Elem x) const { return inv_[x]; }

  Elem mu(Elem x, Elem y) const { return mu_[coset_[x] * reps_.size() + coset_[y]]; }
  /// mu(x,y) mu(y,x)^{-1}
  Elem delta(Elem x, Elem y) const { return g_.mul(mu(x, y), inv_[mu(y, x)]); }

private:
  LoopTable g_;
  SubloopMask z_, k_, n_;
  std::vector<Elem> coset_;
  std::vector<Elem> reps_;
  std::vector<Elem> inv_;
  std::vector<Elem> mu_;
};

/// The loop (G,*). Re-validates the table, Z <= Z(Q) and xy = x*y mod Z.
LoopTable modify(const ModificationContext& ctx);

struct Conditions {
  bool c1 = false;
  bool c2 = false;
  bool c3 = false;
};

/// C1, C2 over K-coset triples meeting N; C3 over all triples of G.
Conditions check_conditions(const ModificationContext& ctx);

/// C3 == (Inn of the modified loop is abelian). Throws
/// Error{PreconditionFailed} unless C1 and C2 hold.
bool inn_abelian_equivalence(const ModificationContext& ctx);

/// f(xN,yN,zN) = delta([x,y],z) on (G/N)^3, values in Z.
struct FormTable {
  QuotientLoop factor;
  std::vector<Elem> values;
  Elem operator()(Elem a, Elem b, Elem c) const {
    const std::size_t m = factor.table.order();
    return values[(a * m + b) * m + c];
  }
};

/// Throws Error{PreconditionFailed} unless C1-C3 hold, Error{ClassMismatch}
/// unless G has class 2 and the modified loop class 3.
FormTable extract_form(const ModificationContext& ctx);

/// Multiplies every product x*y with xK = cosets[i], yK = cosets[j] by h on
/// the right, for each (i,j) in `pattern`; cosets are numbered by least element.
/// Throws Error{NotCentralInvolution|NotNormal}.
LoopTable block_modify(const LoopTable& q, const SubloopMask& k,
                       std::span<const std::pair<Elem, Elem>> pattern, Elem h);

/// Block pattern turning the group Gbar into Cbar: rows with i = 1 against
/// columns with l' = 1, over the cosets of the order-8 kernel.
std::vector<std::pair<Elem, Elem>> gbar_block_pattern();

// -- class-two groups of order 64 -----------------------------------------------

/// Element (v, m), v in F_2^3 read big-endian (bit 2 is the e1 coordinate),
/// m in the basis [e1,e2] (bit 0), [e1,e3] (bit 1), [e2,e3] (bit 2).
struct Group64 {
  std::array<std::uint8_t, 3> s{};  ///< s[i] = e_{i+1}^2 in commutator coordinates
  LoopTable table;

  static Elem element(unsigned v, unsigned m) { return static_cast<Elem>(m + 8 * v); }
  static unsigned vpart(Elem x) { return x >> 3; }
  static unsigned mpart(Elem x) { return x & 7u; }
  /// e_i for i = 1, 2, 3
  static Elem generator(unsigned i) { return element(4u >> (i - 1), 0); }
  /// transversal element t_j = (j-1, 0), j = 1..8
  static Elem transversal(unsigned j) { return element(j - 1, 0); }
  /// squaring vectors are numbered s1 + 8 s2 + 64 s3
  unsigned index() const { return s[0] + 8u * s[1] + 64u * s[2]; }
};

Group64 group64(std::array<std::uint8_t, 3> s);
Group64 group64(unsigned index);

/// f: (F_2^3)^3 -> {1,-1}, stored by its values on basis triples; true = -1.
class TrilinearForm {
public:
  /// f(e_i,e_j,e_k) = -1 iff nontrivial and i, j, k are distinct.
  static TrilinearForm determinant(bool nontrivial = true);
  /// values[9i + 3j + k] = f(e_{i+1}, e_{j+1}, e_{k+1})
  static TrilinearForm from_basis(std::array<bool, 27> values);

  bool basis(unsigned i, unsigned j, unsigned k) const { return b_[9 * i + 3 * j + k]; }
  /// Arguments are big-endian coordinate vectors as in Group64.
  bool operator()(unsigned u, unsigned v, unsigned w) const;

  bool is_symmetric() const;
  bool is_alternating() const;
  bool is_trivial() const;

private:
  std::array<bool, 27> b_{};
};

/// 21 delta parameters over pairs 1 < i < j <= 8 (lexicographic, bit 0 first)
/// and 7 mu parameters over i = 2..8; a set bit means -1.
struct DeltaMuParams {
  std::uint32_t delta_bits = 0;
  std::uint32_t mu_bits = 0;

  static constexpr unsigned kDeltaCount = 21;
  static constexpr unsigned kMuCount = 7;

  /// Bit position of the pair (i,j), 2 <= i < j <= 8.
  static unsigned pair_index(unsigned i, unsigned j);
  bool delta(unsigned i, unsigned j) const { return (delta_bits >> pair_index(i, j)) & 1u; }
  bool mu(unsigned i) const { return (mu_bits >> (i - 2)) & 1u; }

  /// Throws Error{ParseError} on bad hex or out-of-range values.
  static DeltaMuParams from_hex(std::string_view delta_hex, std::string_view mu_hex);
  std::string delta_hex() const;
  std::string mu_hex() const;

  friend bool operator==(const DeltaMuParams&, const DeltaMuParams&) = default;
};

/// 64 x 64 table of signs, true = -1.
struct SignTable {
  std::vector<std::uint8_t> v = std::vector<std::uint8_t>(64 * 64, 0);
  bool operator()(Elem x, Elem y) const { return v[x * 64 + y]; }
  void set(Elem x, Elem y, bool b) { v[x * 64 + y] = b; }
  friend bool operator==(const SignTable&, const SignTable&) = default;
};

/// delta on H x H from f and the transversal parameters.
SignTable build_delta(const Group64& h, const TrilinearForm& f, std::uint32_t delta_bits);
/// mu on H x H from delta and the diagonal parameters.
SignTable build_mu(const Group64& h, const SignTable& delta, std::uint32_t mu_bits);

/// G = A x H indexed a + 2h, with Z = K = A x 1 and N = A x H'.
LoopTable a_times_h(const Group64& h);
ModificationContext chmu_context(const Group64& h, const TrilinearForm& f,
                                 const DeltaMuParams& p);
ModificationContext chmu_context(const Group64& h, const SignTable& mu);
LoopTable build_CHmu(const Group64& h, const TrilinearForm& f, const DeltaMuParams& p);

// -- the ten suitable groups ----------------------------------------------------

struct SuitableGroupClass {
  unsigned class_index;              ///< 1..10
  unsigned representative;           ///< least squaring-vector index in the class
  std::vector<unsigned> members;     ///< all squaring-vector indices, ascending
};

/// All 512 squaring vectors sorted into isomorphism classes; class 1 holds
/// s = 0, the rest are ordered by least member. Computed once and cached.
const std::vector<SuitableGroupClass>& suitable_group_classes();
Group64 suitable_group(unsigned class_index);

}  // namespace loops
