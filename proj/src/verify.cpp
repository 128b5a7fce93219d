#include "dimgroup/verify.hpp"

#include "dimgroup/errors.hpp"

#include <algorithm>
#include <sstream>

namespace dimgroup {

TowerView tower_view(const StationaryOrderedDiagram& d, int vertex, int level) {
  if (level < 1) throw PreconditionError("tower_view requires level >= 1");
  TowerView out;
  out.vertex = vertex;
  if (level == 1) {
    out.floors.push_back(FinitePath{{OrderedEdge{kTopVertex, vertex, 1}}});
    return out;
  }
  for (const StagePath& sp : stage_paths_into(d, vertex, level - 1)) {
    FinitePath p;
    p.edges.push_back({kTopVertex, sp.front().source, 1});
    p.edges.insert(p.edges.end(), sp.begin(), sp.end());
    out.floors.push_back(std::move(p));
  }
  return out;
}

std::vector<FinitePath> all_paths(const StationaryOrderedDiagram& d, int level) {
  std::vector<FinitePath> out;
  for (int v = 0; v < static_cast<int>(d.vertex_count()); ++v) {
    TowerView t = tower_view(d, v, level);
    out.insert(out.end(), t.floors.begin(), t.floors.end());
  }
  return out;
}

FinitePath vershik_step(const StationaryOrderedDiagram& d, const FinitePath& p) {
  if (is_properly_ordered_bounded(d) != Properness::proper)
    throw PreconditionError("vershik_step requires a properly ordered diagram");
  if (p.edges.empty()) throw PreconditionError("vershik_step: empty path");
  const int level = p.level();
  // edges[0] is the top edge (a singleton fan-in, always maximal)
  for (std::size_t j = 1; j < p.edges.size(); ++j) {
    const OrderedEdge& e = p.edges[j];
    const auto& fan = d.fan_in(e.range);
    if (static_cast<std::size_t>(e.order_index) < fan.size()) {
      const OrderedEdge succ{fan[static_cast<std::size_t>(e.order_index)], e.range,
                             e.order_index + 1};
      FinitePath out = max_min_paths(d, static_cast<int>(j)).minimal[
          static_cast<std::size_t>(succ.source)];
      out.edges.push_back(succ);
      out.edges.insert(out.edges.end(), p.edges.begin() + static_cast<long>(j) + 1,
                       p.edges.end());
      return out;
    }
  }
  const int next = (p.range() + 1) % static_cast<int>(d.vertex_count());
  return max_min_paths(d, level).minimal[static_cast<std::size_t>(next)];
}

bool three_block_equivalence(const Substitution& s) {
  Substitution sq = tripled_substitution(s);  // throws if an image letter leaves A^Q
  StationaryOrderedDiagram lifted =
      triple_diagram(StationaryOrderedDiagram::from_substitution(s), triples_of(s));
  return lifted == StationaryOrderedDiagram::from_substitution(sq);
}

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  for (const CheckLine& c : checks)
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.name
       << (c.witness.empty() ? "" : "  [" + c.witness + "]") << "\n";
  return os.str();
}

nlohmann::ordered_json VerifyReport::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckLine& c : checks)
    arr.push_back(nlohmann::ordered_json{
        {"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  return nlohmann::ordered_json{{"checks", arr}, {"all_pass", all_pass()}};
}

namespace {

std::string invariants_string(const LimitGroup& g) {
  std::ostringstream os;
  os << "rank " << g.stable_rank() << ", torsion [";
  for (std::size_t i = 0; i < g.stable_torsion().size(); ++i)
    os << (i ? "," : "") << g.stable_torsion()[i].str();
  os << "], char poly " << poly_to_string(g.stable_char_poly());
  return os.str();
}

bool same_invariants(const LimitGroup& a, const LimitGroup& b) {
  return a.stable_rank() == b.stable_rank() && a.stable_torsion() == b.stable_torsion() &&
         a.stable_char_poly() == b.stable_char_poly();
}

}  // namespace

VerifyReport verify_proper_collapse(const Substitution& s) {
  if (!s.is_primitive())
    throw PreconditionError("verify_proper_collapse requires a primitive substitution");
  if (!s.is_proper())
    throw PreconditionError(
        "verify_proper_collapse requires a proper substitution (constant first and last letters)");

  // ensure every tower traverses at least two towers below
  Substitution t = s;
  int powered = 1;
  while (std::any_of(t.rules().begin(), t.rules().end(),
                     [](const Word& w) { return w.size() < 2; })) {
    t = Substitution(s.alphabet(), s.power(++powered).rules());
    if (powered > 8) throw CapExceededError("verify_proper_collapse: image growth stalled");
  }

  VerifyReport rep;
  const Substitution sq = tripled_substitution(t);
  const Mat beta_q = sq.incidence();
  const StationaryOrderedDiagram dq = StationaryOrderedDiagram::from_substitution(sq);
  const BSubgroupResult b = b_subgroup(dq);
  const Mat beta2 = mat_mul(beta_q, beta_q);
  bool collapse = b.stabilized;
  for (const Vec& v : b.lattice.basis())
    collapse = collapse && is_zero_vec(row_times(v, beta2));
  rep.checks.push_back({"collapse_beta_sq_kills_B", collapse,
                        "rank(B) = " + std::to_string(b.lattice.rank()) +
                            (powered > 1 ? ", on sigma^" + std::to_string(powered) : "")});

  const LimitGroup sub = substitution_kgroup(t);
  const LimitGroup cls = classical_dimension_group(t);
  rep.checks.push_back({"kgroup_matches_classical", same_invariants(sub, cls),
                        invariants_string(sub) + " vs " + invariants_string(cls)});
  return rep;
}

VerifyReport verify_absorption(const Substitution& s, int max_k) {
  if (!s.is_primitive())
    throw PreconditionError("verify_absorption requires a primitive substitution");
  VerifyReport rep;
  const std::vector<Triple> triples = triples_of(s);
  const Substitution sq = tripled_substitution(s);
  const StationaryOrderedDiagram dq = StationaryOrderedDiagram::from_substitution(sq);
  const BSubgroupResult b = b_subgroup(dq);
  const IntegerLattice delta = delta_subgroup(triples, s.alphabet_size());
  const std::vector<int> ks = absorption_exponents(b.lattice, delta, sq.incidence(), max_k);
  std::ostringstream os;
  bool ok = b.stabilized;
  os << "k =";
  for (int k : ks) {
    os << " " << k;
    ok = ok && k >= 0;
  }
  if (!b.stabilized) os << " (B not stabilized)";
  rep.checks.push_back({"absorption_within_" + std::to_string(max_k), ok, os.str()});
  return rep;
}

VerifyReport verify_all(const Substitution& s, int level_cap, int max_k) {
  VerifyReport rep;
  const bool primitive = s.is_primitive();
  rep.checks.push_back({"primitive", primitive, ""});
  if (!primitive) return rep;

  const AperiodicityVerdict ap = s.aperiodicity();
  rep.checks.push_back({"aperiodic",
                        ap.kind == AperiodicityKind::aperiodic,
                        ap.kind == AperiodicityKind::periodic
                            ? "periodic with period " + std::to_string(ap.period)
                            : (ap.kind == AperiodicityKind::unknown ? "unknown" : "")});
  if (ap.kind == AperiodicityKind::periodic) return rep;

  rep.checks.push_back({"three_block_equivalence", three_block_equivalence(s), ""});

  const std::vector<Triple> triples = triples_of(s);
  const Substitution sq = tripled_substitution(s);
  const Mat beta_q = sq.incidence();
  const StationaryOrderedDiagram dq = StationaryOrderedDiagram::from_substitution(sq);
  const BSubgroupResult b = b_subgroup(dq, level_cap);
  const IntegerLattice delta = delta_subgroup(triples, s.alphabet_size());

  rep.checks.push_back({"b_stabilized", b.stabilized,
                        "rank(B) = " + std::to_string(b.lattice.rank()) + " from depth " +
                            std::to_string(b.stabilized_at)});
  rep.checks.push_back({"lemma36_delta_in_B", b.lattice.contains(delta),
                        "rank(Delta) = " + std::to_string(delta.rank())});

  bool lemma37 = true;
  const std::size_t n = s.alphabet_size();
  for (std::size_t p = 0; p < n * n && lemma37; ++p) {
    Vec phi(n * n, 0);
    phi[p] = 1;
    lemma37 = row_times(delta_of_phi(triples, n, phi), beta_q) ==
              delta_of_phi(triples, n, phi_prime(s, phi));
  }
  rep.checks.push_back({"lemma37_commuting_square", lemma37, ""});

  VerifyReport absorb = verify_absorption(s, max_k);
  rep.checks.insert(rep.checks.end(), absorb.checks.begin(), absorb.checks.end());

  const StationaryOrderedDiagram d = StationaryOrderedDiagram::from_substitution(s);
  const bool proper_diagram = is_properly_ordered_bounded(d) == Properness::proper;
  rep.checks.push_back({"properly_ordered_diagram", true, proper_diagram ? "proper" : "non-proper"});
  if (s.is_proper()) {
    VerifyReport collapse = verify_proper_collapse(s);
    rep.checks.insert(rep.checks.end(), collapse.checks.begin(), collapse.checks.end());
  }

  // Vershik sanity on small levels when the diagram is properly ordered
  if (proper_diagram) {
    bool vershik_ok = true;
    std::string witness;
    for (int level = 1; level <= 3 && vershik_ok; ++level) {
      const std::vector<FinitePath> paths = all_paths(d, level);
      FinitePath cur = max_min_paths(d, level).minimal[0];
      std::size_t steps = 0;
      do {
        cur = vershik_step(d, cur);
        ++steps;
        if (steps > paths.size()) break;
      } while (!(cur == max_min_paths(d, level).minimal[0]));
      if (steps != paths.size()) {
        vershik_ok = false;
        witness = "level " + std::to_string(level) + ": cycle " + std::to_string(steps) +
                  " != " + std::to_string(paths.size()) + " paths";
      }
    }
    rep.checks.push_back({"vershik_full_cycle", vershik_ok, witness});
  }
  return rep;
}

}  // namespace dimgroup
