#include "loops/report.hpp"

#include "loops/analysis.hpp"

namespace loops {

AnalysisReport analyze(const LoopTable& q, bool with_mlt) {
  AnalysisReport r;
  r.order = q.order();
  r.mu_count = mu_count(q);
  r.is_associative = r.mu_count == 0;
  r.is_commutative = is_commutative(q);
  const auto nu = nuclei(q);
  const auto z = center(q, nu.nucleus);
  const auto a = associator_subloop(q);
  r.left_nucleus_size = nu.left.size();
  r.middle_nucleus_size = nu.middle.size();
  r.right_nucleus_size = nu.right.size();
  r.nucleus_size = nu.nucleus.size();
  r.center_size = z.size();
  r.associator_subloop_size = a.size();
  r.nilpotency_class = nilpotency_class(q);
  r.power_associative = is_power_associative(q);
  r.nucleus_is_right_nucleus = nu.nucleus == nu.right;
  r.nucleus_elementary_abelian_2 = is_elementary_abelian_2(q, nu.nucleus);
  r.center_is_associator_subloop = z == a;
  r.nuclei_cover_loop = (nu.left.members | nu.middle.members | nu.right.members).all();
  if (with_mlt) {
    const auto mlt = multiplication_group(q);
    const auto inn = inner_mapping_group(mlt, q.order());
    r.mlt_order = mlt.order();
    r.inn_order = inn.order();
    r.inn_abelian = is_abelian(inn);
    r.inn_elementary_abelian_2 = is_elementary_abelian_2(inn);
  }
  return r;
}

nlohmann::ordered_json to_json(const AnalysisReport& r) {
  nlohmann::ordered_json j;
  j["order"] = r.order;
  j["is_associative"] = r.is_associative;
  j["is_commutative"] = r.is_commutative;
  j["left_nucleus_size"] = r.left_nucleus_size;
  j["middle_nucleus_size"] = r.middle_nucleus_size;
  j["right_nucleus_size"] = r.right_nucleus_size;
  j["nucleus_size"] = r.nucleus_size;
  j["center_size"] = r.center_size;
  j["associator_subloop_size"] = r.associator_subloop_size;
  j["nilpotency_class"] = r.nilpotency_class ? nlohmann::ordered_json(*r.nilpotency_class) : nullptr;
  j["mu_count"] = r.mu_count;
  j["power_associative"] = r.power_associative;
  j["nucleus_is_right_nucleus"] = r.nucleus_is_right_nucleus;
  j["nucleus_elementary_abelian_2"] = r.nucleus_elementary_abelian_2;
  j["center_is_associator_subloop"] = r.center_is_associator_subloop;
  j["nuclei_cover_loop"] = r.nuclei_cover_loop;
  if (r.mlt_order) {
    j["mlt_order"] = r.mlt_order->str();
    j["inn_order"] = r.inn_order->str();
    j["inn_abelian"] = *r.inn_abelian;
    j["inn_elementary_abelian_2"] = *r.inn_elementary_abelian_2;
  }
  return j;
}

nlohmann::ordered_json to_json(const GroupFingerprint& f) {
  nlohmann::ordered_json j;
  j["order"] = f.order.str();
  j["center_order"] = f.center_order ? nlohmann::ordered_json(f.center_order->str()) : nullptr;
  auto& d = j["derived_series_orders"] = nlohmann::ordered_json::array();
  for (const auto& o : f.derived_series_orders) d.push_back(o.str());
  if (f.abelian_invariants) {
    auto& a = j["abelian_invariants"] = nlohmann::ordered_json::array();
    for (const auto& o : *f.abelian_invariants) a.push_back(o.str());
  } else {
    j["abelian_invariants"] = nullptr;
  }
  if (f.order_histogram) {
    auto& h = j["order_histogram"] = nlohmann::ordered_json::object();
    for (auto [k, v] : *f.order_histogram) h[std::to_string(k)] = v;
  } else {
    j["order_histogram"] = nullptr;
  }
  j["histogram_skipped"] = f.histogram_skipped;
  return j;
}

nlohmann::ordered_json to_json(const PermGroup& g) {
  nlohmann::ordered_json j;
  j["degree"] = g.degree();
  auto& gens = j["generators"] = nlohmann::ordered_json::array();
  for (const auto& p : g.generators()) {
    auto img = p.images();
    gens.push_back(std::vector<unsigned>(img.begin(), img.end()));
  }
  j["base"] = g.base();
  j["order"] = g.order().str();
  return j;
}

}  // namespace loops
