#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "loops/analysis.hpp"
#include "loops/error.hpp"
#include "loops/extensions.hpp"
#include "loops/greedy.hpp"
#include "loops/iso.hpp"
#include "loops/modification.hpp"
#include "loops/report.hpp"

namespace loops::cli {

namespace {

using json = nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << v;
  return s.str();
}

/// Runs fn(i) for i < n on `workers` threads. Returns which items finished;
/// stops handing out work once interrupted.
std::vector<char> parallel_for(std::size_t n, unsigned workers,
                               const std::function<void(std::size_t)>& fn) {
  std::vector<char> done(n, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      if (interrupted().load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
      done[i] = 1;
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return done;
}

json header(const ExperimentSpec& s) {
  json j;
  j["tool"] = "loops";
  j["version"] = kToolVersion;
  j["experiment"] = s.name;
  j["rng"] = "mt19937_64";
  j["spec"] = {{"seed", s.seed}, {"pairs", s.pairs}, {"h_class", s.h_class},
               {"workers", s.workers}, {"mlt", s.mlt}};
  return j;
}

json finish(json j, const std::vector<char>& done) {
  const bool all = std::all_of(done.begin(), done.end(), [](char c) { return c != 0; });
  j["interrupted"] = !all;
  j["completed_items"] = std::count(done.begin(), done.end(), 1);
  return j;
}

// ---------------------------------------------------------------- theta-family

json theta_family(const ExperimentSpec& spec) {
  json j = header(spec);
  std::vector<json> items(128);
  std::vector<std::string> category(128);
  std::vector<LoopTable> tables(128);
  const auto done = parallel_for(128, spec.workers, [&](std::size_t t) {
    tables[t] = build_theta_t(static_cast<unsigned>(t));
    const auto r = analyze(tables[t], true);
    const bool class3 = !r.is_associative && r.nilpotency_class == 3 && *r.inn_abelian;
    category[t] = r.is_associative ? "group" : class3 ? "class3-abelian-inn" : "other";
    json e = to_json(r);
    e["t"] = t;
    e["category"] = category[t];
    items[t] = std::move(e);
  });

  const LoopTable cbar = build_Cbar();
  const auto pcbar = profile(cbar);
  std::vector<unsigned> groups, class3, other;
  for (unsigned t = 0; t < 128; ++t) {
    if (!done[t]) continue;
    (category[t] == "group" ? groups : category[t] == "class3-abelian-inn" ? class3 : other).push_back(t);
  }
  bool groups_iso = true, class3_iso = true;
  for (unsigned t : groups) {
    const bool iso = are_isomorphic(tables[groups.front()], tables[t]).has_value();
    items[t]["isomorphic_to_first_group"] = iso;
    groups_iso = groups_iso && iso;
  }
  for (unsigned t : class3) {
    const bool iso = are_isomorphic(tables[t], profile(tables[t]), cbar, pcbar).has_value();
    items[t]["isomorphic_to_cbar"] = iso;
    class3_iso = class3_iso && iso;
  }
  auto& arr = j["items"] = json::array();
  for (unsigned t = 0; t < 128; ++t)
    if (done[t]) arr.push_back(items[t]);
  j["summary"] = {{"group", groups},
                  {"class3_abelian_inn", class3},
                  {"other_count", other.size()},
                  {"groups_pairwise_isomorphic", groups_iso},
                  {"class3_all_isomorphic_to_cbar", class3_iso}};
  return finish(std::move(j), done);
}

// ---------------------------------------------------------------- single-delta-params

json single_delta_params(const ExperimentSpec& spec) {
  json j = header(spec);
  const Group64 h = suitable_group(spec.h_class);
  const auto f = TrilinearForm::determinant();
  constexpr unsigned k = DeltaMuParams::kDeltaCount;
  std::vector<LoopTable> tables(k);
  std::vector<LoopProfile> prof(k);
  std::vector<json> items(k);
  auto done = parallel_for(k, spec.workers, [&](std::size_t b) {
    const DeltaMuParams p{1u << b, 0};
    tables[b] = build_CHmu(h, f, p);
    prof[b] = profile(tables[b]);
    json e;
    e["bit"] = b;
    e["delta_hex"] = p.delta_hex();
    e["mu_hex"] = p.mu_hex();
    e["analysis"] = to_json(analyze(tables[b], spec.mlt));
    e["digest"] = hex64(prof[b].digest);
    items[b] = std::move(e);
  });
  // pair (i,j) of every bit
  for (unsigned i = 2, b = 0; i <= 8; ++i)
    for (unsigned jj = i + 1; jj <= 8; ++jj, ++b) items[b]["pair"] = {i, jj};

  const bool all = std::all_of(done.begin(), done.end(), [](char c) { return c != 0; });
  json matrix = json::array();
  unsigned iso_pairs = 0;
  bool pairs_done = all;
  if (all) {
    std::vector<std::vector<int>> m(k, std::vector<int>(k, 0));
    std::vector<std::pair<unsigned, unsigned>> pairs;
    for (unsigned a = 0; a < k; ++a) {
      m[a][a] = 1;
      for (unsigned b = a + 1; b < k; ++b) pairs.emplace_back(a, b);
    }
    std::vector<int> res(pairs.size(), 0);
    const auto pd = parallel_for(pairs.size(), spec.workers, [&](std::size_t i) {
      const auto [a, b] = pairs[i];
      res[i] = are_isomorphic(tables[a], prof[a], tables[b], prof[b]).has_value();
    });
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      pairs_done = pairs_done && pd[i];
      m[pairs[i].first][pairs[i].second] = m[pairs[i].second][pairs[i].first] = res[i];
      iso_pairs += res[i];
    }
    for (const auto& row : m) matrix.push_back(row);
  }
  auto& arr = j["items"] = json::array();
  for (unsigned b = 0; b < k; ++b)
    if (done[b]) arr.push_back(items[b]);
  j["isomorphism_matrix"] = matrix;
  j["summary"] = {{"loops", k}, {"isomorphic_pairs", iso_pairs},
                  {"pairwise_nonisomorphic", pairs_done && iso_pairs == 0}};
  j = finish(std::move(j), done);
  if (!pairs_done) j["interrupted"] = true;
  return j;
}

// ---------------------------------------------------------------- random-mu-pairs

json random_mu_pairs(const ExperimentSpec& spec) {
  json j = header(spec);
  const Group64 h = suitable_group(spec.h_class);
  const auto f = TrilinearForm::determinant();
  std::mt19937_64 rng(spec.seed);
  std::vector<std::pair<DeltaMuParams, DeltaMuParams>> params(spec.pairs);
  for (auto& [p1, p2] : params) {
    p1.delta_bits = static_cast<std::uint32_t>(rng() & 0x1fffffu);
    p1.mu_bits = static_cast<std::uint32_t>(rng() & 0x7fu);
    p2.delta_bits = static_cast<std::uint32_t>(rng() & 0x1fffffu);
    p2.mu_bits = static_cast<std::uint32_t>(rng() & 0x7fu);
  }
  std::vector<json> items(spec.pairs);
  std::vector<int> iso(spec.pairs, 0);
  std::vector<std::string> mlt1(spec.pairs), mlt2(spec.pairs);
  const auto done = parallel_for(spec.pairs, spec.workers, [&](std::size_t i) {
    const auto& [p1, p2] = params[i];
    const LoopTable a = build_CHmu(h, f, p1), b = build_CHmu(h, f, p2);
    IsoStats st;
    iso[i] = are_isomorphic(a, b, {}, &st).has_value();
    json e;
    e["pair"] = i;
    e["first"] = {{"delta_hex", p1.delta_hex()}, {"mu_hex", p1.mu_hex()}};
    e["second"] = {{"delta_hex", p2.delta_hex()}, {"mu_hex", p2.mu_hex()}};
    e["isomorphic"] = iso[i] != 0;
    e["rejected_by_invariants"] = st.rejected_by_invariants;
    if (spec.mlt) {
      mlt1[i] = multiplication_group(a).order().str();
      mlt2[i] = multiplication_group(b).order().str();
      e["first"]["mlt_order"] = mlt1[i];
      e["second"]["mlt_order"] = mlt2[i];
    }
    items[i] = std::move(e);
  });
  auto& arr = j["items"] = json::array();
  unsigned count = 0;
  std::map<std::string, unsigned> orders;
  for (unsigned i = 0; i < spec.pairs; ++i) {
    if (!done[i]) continue;
    arr.push_back(items[i]);
    count += iso[i];
    if (spec.mlt) {
      ++orders[mlt1[i]];
      ++orders[mlt2[i]];
    }
  }
  j["summary"] = {{"pairs", spec.pairs}, {"isomorphic_pairs", count}};
  if (spec.mlt) j["summary"]["mlt_order_counts"] = orders;
  return finish(std::move(j), done);
}

// ---------------------------------------------------------------- greedy-descent

json greedy_descent(const ExperimentSpec& spec) {
  json j = header(spec);
  const LoopTable c = build_C();
  const auto nu = nuclei(c);
  const auto z = center(c, nu.nucleus);
  Elem h = 0;
  for (Elem x : z.elements())
    if (x != 0) h = x;
  const auto r = greedy_minimize(c, nu.nucleus, h);
  j["h"] = h;
  j["baseline_mu_count"] = r.baseline;
  auto& hist = j["history"] = json::array();
  for (const auto& s : r.history)
    hist.push_back({{"s", s.s}, {"t", s.t}, {"mu_before", s.mu_before}, {"mu_after", s.mu_after}});
  j["final"] = to_json(analyze(r.result, true));
  j["isomorphic_to_cbar"] = are_isomorphic(r.result, build_Cbar()).has_value();
  j["isomorphic_to_c"] = are_isomorphic(r.result, c).has_value();
  j["interrupted"] = false;
  return j;
}

// ---------------------------------------------------------------- groups64-census

json groups64_census(const ExperimentSpec& spec) {
  json j = header(spec);
  const auto& classes = suitable_group_classes();
  const auto f = TrilinearForm::determinant();
  std::vector<json> items(classes.size());
  std::vector<GroupFingerprint> fps(classes.size());
  const auto done = parallel_for(classes.size(), spec.workers, [&](std::size_t i) {
    const auto& c = classes[i];
    const Group64 h = group64(c.representative);
    json e;
    e["class"] = c.class_index;
    e["squaring_vector"] = {h.s[0], h.s[1], h.s[2]};
    e["members"] = c.members;
    if (spec.mlt) {
      const auto q0 = build_CHmu(h, f, {});
      const auto q1 = build_CHmu(h, f, {0, 1});
      const auto m0 = multiplication_group(q0);
      e["mlt_order_mu0"] = m0.order().str();
      e["mlt_order_mu1"] = multiplication_group(q1).order().str();
      fps[i] = fingerprint(m0);
      e["mlt_fingerprint_mu0"] = to_json(fps[i]);
    }
    items[i] = std::move(e);
  });
  auto& arr = j["items"] = json::array();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (!done[i]) continue;
    if (spec.mlt && done[0]) items[i]["mlt_fingerprint_equals_class1"] = fps[i] == fps[0];
    arr.push_back(items[i]);
  }
  j["summary"] = {{"class_count", classes.size()}};
  return finish(std::move(j), done);
}

}  // namespace

json run_experiment(const ExperimentSpec& spec) {
  if (spec.name == "theta-family") return theta_family(spec);
  if (spec.name == "single-delta-params") return single_delta_params(spec);
  if (spec.name == "random-mu-pairs") return random_mu_pairs(spec);
  if (spec.name == "greedy-descent") return greedy_descent(spec);
  if (spec.name == "groups64-census") return groups64_census(spec);
  throw Error(Errc::InvalidArgument, "unknown experiment '" + spec.name + "'");
}

}  // namespace loops::cli
