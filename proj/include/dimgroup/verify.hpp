#pragma once

// Desk-scale verification harness: Vershik successor steps on properly
// ordered diagrams, the 3-block recoding equivalence, the proper-case
// collapse, and absorption of B into Delta under iterated promotion.

#include "dimgroup/bratteli.hpp"
#include "dimgroup/kgroup.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace dimgroup {

/// A level-n tower: the lexicographically ordered floors (paths from the top)
/// ranging at one vertex.
struct TowerView {
  int vertex = 0;
  std::vector<FinitePath> floors;
};

TowerView tower_view(const StationaryOrderedDiagram& d, int vertex, int level);

/// All level-n paths, tower by tower in vertex order.
std::vector<FinitePath> all_paths(const StationaryOrderedDiagram& d, int level);

/// Successor map on level-n paths of a properly ordered diagram. Replaces the
/// first non-maximal edge by its order successor and prefixes the minimal
/// path; the all-maximal path into the i-th vertex wraps to the all-minimal
/// path into the ((i+1) mod |V|)-th vertex, which chains the towers into a
/// single cycle (and is literally x_max -> x_min on one-vertex diagrams).
FinitePath vershik_step(const StationaryOrderedDiagram& d, const FinitePath& p);

/// (a) every letter of every sigma^Q image is again a 3-block, and (b) the
/// edge-lifted tripling of the diagram equals the diagram of sigma^Q.
bool three_block_equivalence(const Substitution& s);

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct VerifyReport {
  std::vector<CheckLine> checks;
  bool all_pass() const;
  std::string to_text() const;  // one line per check: PASS/FAIL name witness
  nlohmann::ordered_json to_json() const;
};

/// The proper-case collapse: (beta^Q)^2 annihilates B, and the tripled
/// pipeline invariants match the classical dimension group. Requires a
/// proper primitive substitution; powers it internally until every image has
/// length >= 2.
VerifyReport verify_proper_collapse(const Substitution& s);

/// Least k <= max_k with v * (beta^Q)^k in Delta, per HNF basis vector of B.
VerifyReport verify_absorption(const Substitution& s, int max_k = 8);

/// Everything the harness can say about one substitution.
VerifyReport verify_all(const Substitution& s, int level_cap = 6, int max_k = 8);

}  // namespace dimgroup
