#pragma once

// Machine-readable report for the substitution K0 pipeline.

#include "dimgroup/kgroup.hpp"

#include <nlohmann/json.hpp>

namespace dimgroup {

struct KgroupReport {
  nlohmann::ordered_json json;
  bool cap_exceeded = false;  // B stabilisation or absorption bound exhausted
};

/// Runs the full Theorem-3.12 pipeline plus the lemma checks and assembles
/// the versioned JSON report (deterministic key order).
KgroupReport kgroup_report(const Substitution& s, int level_cap = 6, int max_k = 8);

/// Invariants of a limit group as JSON (shared by `classical`).
nlohmann::ordered_json limit_group_json(const LimitGroup& g);

}  // namespace dimgroup
