#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "loops/loop_table.hpp"
#include "loops/perm_group.hpp"

namespace loops {

struct AnalysisReport {
  std::size_t order = 0;
  bool is_associative = false;
  bool is_commutative = false;
  std::size_t left_nucleus_size = 0;
  std::size_t middle_nucleus_size = 0;
  std::size_t right_nucleus_size = 0;
  std::size_t nucleus_size = 0;
  std::size_t center_size = 0;
  std::size_t associator_subloop_size = 0;
  std::optional<int> nilpotency_class;
  std::uint64_t mu_count = 0;
  bool power_associative = false;
  // derived comparisons
  bool nucleus_is_right_nucleus = false;
  bool nucleus_elementary_abelian_2 = false;
  bool center_is_associator_subloop = false;
  bool nuclei_cover_loop = false;
  // only with the multiplication group
  std::optional<BigInt> mlt_order;
  std::optional<BigInt> inn_order;
  std::optional<bool> inn_abelian;
  std::optional<bool> inn_elementary_abelian_2;
};

AnalysisReport analyze(const LoopTable& q, bool with_mlt = false);

nlohmann::ordered_json to_json(const AnalysisReport& r);
nlohmann::ordered_json to_json(const GroupFingerprint& f);
nlohmann::ordered_json to_json(const PermGroup& g);

}  // namespace loops
