#include "loops/loop_table.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "loops/error.hpp"

namespace loops {

LoopTable LoopTable::validate(std::size_t n, std::span<const Elem> flat) {
  if (n == 0 || n > kMaxOrder)
    throw Error(Errc::BadShape, "order " + std::to_string(n) + " outside 1.." +
                                    std::to_string(kMaxOrder));
  if (flat.size() != n * n)
    throw Error(Errc::BadShape, "expected " + std::to_string(n * n) + " entries, got " +
                                    std::to_string(flat.size()));
  for (Elem v : flat)
    if (v >= n) throw Error(Errc::BadShape, "entry " + std::to_string(v) + " out of range");

  for (Elem x = 0; x < n; ++x) {
    if (flat[x] != x || flat[x * n] != x)
      throw Error(Errc::NoIdentity, "row/column 0 is not the identity at " + std::to_string(x));
  }

  LoopTable q;
  q.n_ = n;
  q.mul_.assign(flat.begin(), flat.end());
  constexpr std::uint16_t unset = 0xFFFF;
  q.ldiv_.assign(n * n, unset);
  q.rdiv_.assign(n * n, unset);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      const Elem z = flat[x * n + y];
      auto& l = q.ldiv_[x * n + z];
      if (l != unset)
        throw Error(Errc::NotLatin, "row " + std::to_string(x) + " repeats " + std::to_string(z));
      l = static_cast<std::uint16_t>(y);
      auto& r = q.rdiv_[z * n + y];
      if (r != unset)
        throw Error(Errc::NotLatin,
                    "column " + std::to_string(y) + " repeats " + std::to_string(z));
      r = static_cast<std::uint16_t>(x);
    }
  }
  return q;
}

LoopTable LoopTable::validate(const std::vector<std::vector<Elem>>& rows) {
  const std::size_t n = rows.size();
  std::vector<Elem> flat;
  flat.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw Error(Errc::BadShape, "table is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return validate(n, flat);
}

LoopTable relabel(const LoopTable& q, std::span<const Elem> perm) {
  const std::size_t n = q.order();
  if (perm.size() != n || perm[0] != 0)
    throw Error(Errc::InvalidArgument, "relabeling must be a bijection fixing 0");
  std::vector<Elem> flat(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) flat[perm[x] * n + perm[y]] = perm[q.mul(x, y)];
  return LoopTable::validate(n, flat);
}

std::vector<Elem> SubloopMask::elements() const {
  std::vector<Elem> out;
  out.reserve(members.count());
  for (auto i = members.find_first(); i != Bitset::npos; i = members.find_next(i))
    out.push_back(static_cast<Elem>(i));
  return out;
}

bool is_subloop(const LoopTable& q, const Bitset& s) {
  if (s.size() != q.order() || !s.test(0)) return false;
  std::vector<Elem> el;
  for (auto i = s.find_first(); i != Bitset::npos; i = s.find_next(i))
    el.push_back(static_cast<Elem>(i));
  for (Elem x : el)
    for (Elem y : el)
      if (!s.test(q.mul(x, y)) || !s.test(q.ldiv(x, y)) || !s.test(q.rdiv(x, y))) return false;
  return true;
}

SubloopMask make_subloop(const LoopTable& q, Bitset s) {
  if (!is_subloop(q, s)) throw Error(Errc::InvalidArgument, "subset is not a subloop");
  return SubloopMask{std::move(s)};
}

LoopTable read_looptab(std::istream& in) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (!out.empty() && out[0] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_line(line) || line != "LOOPTAB 1")
    throw Error(Errc::ParseError, "missing 'LOOPTAB 1' header");
  if (!next_line(line) || line.rfind("n=", 0) != 0)
    throw Error(Errc::ParseError, "missing 'n=<order>' line");
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoul(line.substr(2), &used);
    if (used != line.size() - 2) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "bad order line '" + line + "'");
  }
  if (n == 0 || n > kMaxOrder) throw Error(Errc::BadShape, "order out of range");

  std::vector<Elem> flat;
  flat.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!next_line(line)) throw Error(Errc::ParseError, "table ends after row " + std::to_string(r));
    std::istringstream ls(line);
    long long v;
    std::size_t count = 0;
    while (ls >> v) {
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw Error(Errc::BadShape, "entry out of range in row " + std::to_string(r));
      flat.push_back(static_cast<Elem>(v));
      ++count;
    }
    if (!ls.eof()) throw Error(Errc::ParseError, "non-numeric entry in row " + std::to_string(r));
    if (count != n) throw Error(Errc::BadShape, "row " + std::to_string(r) + " has wrong length");
  }
  return LoopTable::validate(n, flat);
}

void write_looptab(std::ostream& out, const LoopTable& q) {
  const std::size_t n = q.order();
  out << "LOOPTAB 1\n" << "n=" << n << '\n';
  for (Elem x = 0; x < n; ++x) {
    auto r = q.row(x);
    for (std::size_t y = 0; y < n; ++y) {
      if (y) out << ' ';
      out << r[y];
    }
    out << '\n';
  }
}

LoopTable load_looptab(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  return read_looptab(in);
}

void save_looptab(const std::string& path, const LoopTable& q) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path);
  write_looptab(out, q);
}

}  // namespace loops
