#include "loops/greedy.hpp"

#include "loops/analysis.hpp"
#include "loops/error.hpp"

namespace loops {

namespace {

LoopTable flip_blocks(const LoopTable& q, const std::vector<Elem>& coset_of, Elem s, Elem t, Elem h) {
  const std::size_t n = q.order();
  std::vector<Elem> flat = q.flat();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      const Elem a = coset_of[x], b = coset_of[y];
      if ((a == s && b == t) || (a == t && b == s)) flat[x * n + y] = q.mul(flat[x * n + y], h);
    }
  return LoopTable::validate(n, flat);
}

}  // namespace

GreedyResult greedy_minimize(const LoopTable& q, const SubloopMask& n, Elem h) {
  if (h == 0 || h >= q.order() || q.mul(h, h) != 0)
    throw Error(Errc::NotCentralInvolution, "h is not an involution");
  if (!center(q).contains(h)) throw Error(Errc::NotCentralInvolution, "h is not central");
  if (n.members.size() != q.order() || !is_subloop(q, n.members))
    throw Error(Errc::BadCosetStructure, "N is not a subloop");
  QuotientLoop quo;
  try {
    quo = quotient(q, n);
  } catch (const Error&) {
    throw Error(Errc::BadCosetStructure, "N is not normal");
  }
  if (!is_associative(quo.table)) throw Error(Errc::BadCosetStructure, "Q/N is not a group");

  GreedyResult r;
  r.result = q;
  r.coset_min = quo.representative;
  r.baseline = mu_count(q);
  const std::size_t c = quo.table.order();
  std::uint64_t current = r.baseline;
  while (current > 0) {
    GreedyStep best{0, 0, current, current};
    LoopTable best_table;
    for (Elem s = 1; s < c; ++s)
      for (Elem t = s + 1; t < c; ++t) {
        LoopTable cand = flip_blocks(r.result, quo.coset_of, s, t, h);
        const std::uint64_t m = mu_count(cand);
        if (best.s == 0 || m < best.mu_after) {
          best = {s + 1, t + 1, current, m};
          best_table = std::move(cand);
        }
      }
    if (best.s == 0 || best.mu_after >= current) break;
    r.history.push_back(best);
    r.result = std::move(best_table);
    current = best.mu_after;
  }
  return r;
}

}  // namespace loops
