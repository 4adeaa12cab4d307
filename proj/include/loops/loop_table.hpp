#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace loops {

using Elem = std::uint32_t;

inline constexpr std::size_t kMaxOrder = 512;

/// A finite loop stored as its multiplication table, element 0 being the
/// identity. Immutable once validated; both division tables are cached.
class LoopTable {
public:
  /// Checks shape, range, the Latin property and identity-at-0.
  /// Throws Error{BadShape|NotLatin|NoIdentity}.
  static LoopTable validate(std::size_t n, std::span<const Elem> flat);
  static LoopTable validate(const std::vector<std::vector<Elem>>& rows);
  /// Empty placeholder of order 0.
  LoopTable() = default;

  std::size_t order() const noexcept { return n_; }

  Elem mul(Elem x, Elem y) const noexcept { return mul_[x * n_ + y]; }
  /// The unique y with x*y = z.
  Elem ldiv(Elem x, Elem z) const noexcept { return ldiv_[x * n_ + z]; }
  /// The unique x with x*y = z.
  Elem rdiv(Elem z, Elem y) const noexcept { return rdiv_[z * n_ + y]; }

  std::span<const std::uint16_t> row(Elem x) const noexcept {
    return {mul_.data() + x * n_, n_};
  }
  std::vector<Elem> flat() const { return {mul_.begin(), mul_.end()}; }

  friend bool operator==(const LoopTable& a, const LoopTable& b) {
    return a.n_ == b.n_ && a.mul_ == b.mul_;
  }

private:
  std::size_t n_ = 0;
  std::vector<std::uint16_t> mul_;
  std::vector<std::uint16_t> ldiv_;
  std::vector<std::uint16_t> rdiv_;
};

/// Relabels `q` by the bijection `perm` (old element -> new element);
/// perm[0] must be 0.
LoopTable relabel(const LoopTable& q, std::span<const Elem> perm);

using Bitset = boost::dynamic_bitset<>;

/// A subset of a loop's elements that has been checked to be a subloop.
struct SubloopMask {
  Bitset members;

  std::size_t size() const { return members.count(); }
  bool contains(Elem x) const { return members.test(x); }
  std::vector<Elem> elements() const;

  friend bool operator==(const SubloopMask&, const SubloopMask&) = default;
};

bool is_subloop(const LoopTable& q, const Bitset& s);

/// Wraps `s` after checking closure; throws Error{InvalidArgument} otherwise.
SubloopMask make_subloop(const LoopTable& q, Bitset s);

// LOOPTAB v1 text format.
LoopTable read_looptab(std::istream& in);
void write_looptab(std::ostream& out, const LoopTable& q);
LoopTable load_looptab(const std::string& path);
void save_looptab(const std::string& path, const LoopTable& q);

}  // namespace loops
