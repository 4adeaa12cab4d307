#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loops/loop_table.hpp"

namespace loops {

/// Kernel vectors: elements of an elementary abelian 2-group of rank r,
/// coordinates packed into the low r bits.
using KVec = std::uint32_t;

struct AbelianKernel {
  unsigned rank = 0;
  std::size_t size() const { return std::size_t{1} << rank; }
};

/// Endomorphism of F_2^r given by the images of the unit vectors.
class KernelMap {
public:
  KernelMap() = default;
  explicit KernelMap(std::vector<KVec> columns) : cols_(std::move(columns)) {}
  static KernelMap identity(unsigned rank);
  static KernelMap zero(unsigned rank);
  /// The linear map sending sources[i] to images[i]; the sources must form a
  /// basis. Throws Error{BadAction} otherwise.
  static KernelMap from_basis_images(unsigned rank, std::span<const KVec> sources,
                                     std::span<const KVec> images);

  unsigned rank() const { return static_cast<unsigned>(cols_.size()); }
  KVec apply(KVec v) const {
    KVec r = 0;
    for (unsigned i = 0; i < cols_.size(); ++i)
      if ((v >> i) & 1u) r ^= cols_[i];
    return r;
  }
  /// (this ∘ other)(v) = this(other(v))
  KernelMap after(const KernelMap& other) const;
  bool is_invertible() const;
  const std::vector<KVec>& columns() const { return cols_; }

  friend bool operator==(const KernelMap&, const KernelMap&) = default;

private:
  std::vector<KVec> cols_;
};

struct FactorLoop {
  LoopTable table;
  std::vector<std::string> labels;
};

/// x -> phi_x, indexed by factor element.
struct Action {
  std::vector<KernelMap> maps;
  const KernelMap& operator[](Elem x) const { return maps[x]; }
};

/// theta: F x F -> K as a row-major |F| x |F| table.
struct Cocycle {
  std::size_t factor_order = 0;
  std::vector<KVec> values;
  KVec operator()(Elem x, Elem y) const { return values[x * factor_order + y]; }
};

struct ExtensionData {
  AbelianKernel kernel;
  FactorLoop factor;
  Action action;
  Cocycle cocycle;
};

/// Throws Error{BadAction} unless phi_1 = id, each phi_x is invertible and
/// phi_{xy} = phi_x phi_y.
void check_action(const AbelianKernel& k, const FactorLoop& f, const Action& phi);
/// Throws Error{BadCocycle} unless theta(x,1) = theta(1,x) = 0 and values fit K.
void check_cocycle(const AbelianKernel& k, const FactorLoop& f, const Cocycle& theta);

/// Index of (a, x) in K x F: kernel coordinate varies fastest.
inline Elem extension_index(const AbelianKernel& k, KVec a, Elem x) {
  return static_cast<Elem>(x * k.size() + a);
}

/// (a,x)(b,y) = (a + phi_x(b) + theta(x,y), xy). Validates the inputs and
/// that K x {1} is a normal subloop of the nucleus of the result.
LoopTable nuclear_extension(const AbelianKernel& k, const FactorLoop& f, const Action& phi,
                            const Cocycle& theta);
LoopTable nuclear_extension(const ExtensionData& d);

struct Decomposition {
  ExtensionData data;
  /// coordinates of the kernel: kernel_basis[i] is the element for bit i
  std::vector<Elem> kernel_basis;
  /// section: factor element -> chosen representative in Q
  std::vector<Elem> section;
  /// u = a * section(x)  ->  extension_index(a, x)
  std::vector<Elem> psi;
};

/// Inverse of nuclear_extension for a normal, nuclear, elementary abelian
/// 2-subgroup K. The default section picks the least element of each coset.
/// Throws Error{KernelNotNuclear|KernelNotNormal|BadSection|InvalidArgument}.
Decomposition decompose_nuclear(const LoopTable& q, const SubloopMask& k,
                                std::optional<std::vector<Elem>> section = std::nullopt);

/// gamma(xy) = gamma(x) + phi_x gamma(y) for all x, y in the group f.
bool is_crosshomomorphism(const LoopTable& f, std::span<const KVec> gamma, const Action& phi);

/// Data for a cocycle built from a crosshomomorphism-like map.
struct Crosshom {
  AbelianKernel kernel;
  LoopTable f1;                 ///< group acting through psi
  std::vector<KernelMap> psi;   ///< F1 -> End K
  LoopTable f2;                 ///< group acting through phi
  Action phi;                   ///< F2 -> Aut K
  std::vector<KVec> gamma;      ///< F2 -> K, gamma(1) = 0
};

/// theta((x1,x2),(y1,y2)) = psi_{y1} gamma(x2) on F = F1 x F2 with
/// phi_{(x1,x2)} = phi_{x2}; F indexed as x1 * |F2| + x2.
/// Throws Error{ActionsDoNotCommute|BadCocycle}.
ExtensionData cocycle_from_crosshom(const Crosshom& c);

// -- named constructions ------------------------------------------------------

/// Element (l, rho^{2i} sigma^j (sigma rho)^k) of F2 x D8.
struct DihedralCoords {
  unsigned l, i, j, k;
};
inline DihedralCoords decode_f2d8(Elem x) {
  return {(x >> 3) & 1u, (x >> 2) & 1u, (x >> 1) & 1u, x & 1u};
}
inline Elem encode_f2d8(DihedralCoords c) { return (c.l << 3) | (c.i << 2) | (c.j << 1) | c.k; }

/// D8 in normal form rho^{2i} sigma^j (sigma rho)^k, indexed 4i + 2j + k.
FactorLoop dihedral8();
/// F2 x D8 indexed 8l + 4i + 2j + k.
FactorLoop f2_times_d8();
/// phi_{(l,i,j,k)}(a,b,c) = (a + kb + jc, b, c), kernel bits a=0, b=1, c=2.
Action f2_times_d8_action();

/// Klein group {b1^c1 b2^c2} indexed c1 + 2 c2, with its action on F_2^3
/// and the crosshomomorphism gamma(b1^c1 b2^c2) = (c1+c2+c1c2, c1, c2).
LoopTable klein_group();
Action klein_action();
std::vector<KVec> klein_crosshom();

ExtensionData c_data();
ExtensionData theta_t_data(unsigned t);
ExtensionData theta_doubleprime_data();
ExtensionData pa64_data();

LoopTable build_C();
/// theta_t for 0 <= t <= 127; throws Error{InvalidArgument} otherwise.
LoopTable build_theta_t(unsigned t);
/// theta_1
LoopTable build_Cbar();
/// theta_42, the crosshomomorphism group
LoopTable build_Gbar();
LoopTable build_theta_doubleprime();
LoopTable build_pa64();

/// Parses kernel words such as "aba2" over a1..a4, a = a1a2a3, b = a4.
KVec parse_kernel_word(std::string_view word);

}  // namespace loops
