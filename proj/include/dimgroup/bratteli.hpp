#pragma once

// Stationary ordered Bratteli diagrams: one repeating level of ordered
// fan-ins plus an implicit top vertex with a single edge to each level-1
// vertex. A stationary ordered diagram and a substitution carry the same
// data (vertex v <-> letter v, ordered sources of r^{-1}(v) <-> sigma(v)),
// and the conversions below are exact inverses.

#include "dimgroup/substitution.hpp"

#include <array>
#include <string>
#include <vector>

namespace dimgroup {

constexpr int kTopVertex = -1;

/// A vertex triple (u,v,w); for substitutions, a 3-block of the language.
using Triple = std::array<LetterId, 3>;

/// A^Q of a primitive substitution: its sorted 3-blocks.
std::vector<Triple> triples_of(const Substitution& s);

struct OrderedEdge {
  int source = 0;       // vertex id, or kTopVertex for level-1 edges
  int range = 0;        // vertex id
  int order_index = 1;  // 1-based position in the linear order of r^{-1}(range)
  friend bool operator==(const OrderedEdge&, const OrderedEdge&) = default;
};

/// A path from the top vertex down to a level-n vertex; edges[0] is the top
/// edge, consecutive edges satisfy edges[j].source == edges[j-1].range.
struct FinitePath {
  std::vector<OrderedEdge> edges;
  int level() const { return static_cast<int>(edges.size()); }
  int range() const { return edges.back().range; }
  friend bool operator==(const FinitePath&, const FinitePath&) = default;
};

class StationaryOrderedDiagram {
public:
  StationaryOrderedDiagram(std::vector<std::string> vertex_names,
                           std::vector<std::vector<int>> fan_in);

  static StationaryOrderedDiagram from_substitution(const Substitution& s);
  Substitution to_substitution() const;

  std::size_t vertex_count() const { return fan_in_.size(); }
  const std::string& vertex_name(int v) const { return vertex_names_.at(static_cast<std::size_t>(v)); }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }

  /// Sources of r^{-1}(v), ascending order index.
  const std::vector<int>& fan_in(int v) const { return fan_in_.at(static_cast<std::size_t>(v)); }

  /// All stage edges sorted by (range, order_index).
  std::vector<OrderedEdge> edges() const;

  Mat incidence() const;  // entry (a,b) = #edges with source a, range b

  /// The stationary diagram whose stage edges are the k-step paths of this
  /// one, in the induced lexicographic order.
  StationaryOrderedDiagram telescope(int k) const;

  friend bool operator==(const StationaryOrderedDiagram&, const StationaryOrderedDiagram&) = default;

private:
  std::vector<std::string> vertex_names_;
  std::vector<std::vector<int>> fan_in_;
};

/// Render a vertex triple as a composite letter: plain concatenation when all
/// base letters are single characters, '-'-joined otherwise.
std::string triple_name(const std::vector<std::string>& base_names,
                        const std::array<int, 3>& t);

/// The tripling of d over the given vertex triples (the 3-block vertex set of
/// the generating substitution). Edge lift: for r^{-1}(v) = e_1 < ... < e_k
/// and a triple (u,v,w), the i-th edge into (u,v,w) has source
/// (s(e_{i-1}), s(e_i), s(e_{i+1})), reading s(e_0) as the source of the last
/// edge into u and s(e_{k+1}) as the source of the first edge into w.
StationaryOrderedDiagram triple_diagram(const StationaryOrderedDiagram& d,
                                        const std::vector<std::array<int, 3>>& blocks3);

/// sigma^Q on the 3-block alphabet, built from the closed-form image
/// sigma^Q[(a,b,c)] = (a_m,b_1,b_2)(b_1,b_2,b_3)...(b_{n-1},b_n,c_1).
Substitution tripled_substitution(const Substitution& s);

/// For each level-n vertex, the unique all-maximal and all-minimal paths
/// from the top vertex. Returned per vertex id.
struct ExtremePaths {
  std::vector<FinitePath> maximal;
  std::vector<FinitePath> minimal;
};
ExtremePaths max_min_paths(const StationaryOrderedDiagram& d, int level);

enum class Properness { proper, non_proper, unknown };

/// Exact for stationary diagrams: proper iff the maximal-edge-source and
/// minimal-edge-source maps each settle on a unique fixed point from every
/// vertex. Never returns unknown for stationary input.
Properness is_properly_ordered_bounded(const StationaryOrderedDiagram& d, int depth = 2);

/// Paths between two stage levels (no top edge): edges[0].source is the
/// level-n source vertex.
using StagePath = std::vector<OrderedEdge>;

/// All length-L paths ranging at v, lexicographically ordered (last edge most
/// significant).
std::vector<StagePath> stage_paths_into(const StationaryOrderedDiagram& d, int v, int length);

struct PathInterval {
  int level_lo = 0;
  int level_hi = 0;
  StagePath lower;
  StagePath upper;
  std::vector<StagePath> contents;         // paths in [lower, upper)
  std::vector<long long> source_counts;    // multiset of s(path) over contents
};

/// Every interval [p1, p2), p1 <= p2 with equal source and equal range, over
/// spans 1..n_levels. Deterministic order: span, then range vertex, then
/// endpoint positions.
std::vector<PathInterval> enumerate_path_intervals(const StationaryOrderedDiagram& d,
                                                   int n_levels);

/// DOT export of the first `levels` levels (plus the top vertex); edges are
/// labelled with their order index, nodes emitted in vertex order.
std::string to_dot(const StationaryOrderedDiagram& d, int levels);

}  // namespace dimgroup
