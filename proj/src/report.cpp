#include "dimgroup/report.hpp"

#include <algorithm>

namespace dimgroup {

namespace {

nlohmann::ordered_json poly_json(const std::vector<Int>& coeffs) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Int& c : coeffs) arr.push_back(c.str());
  return arr;
}

long long to_ll(const Int& x) { return x.convert_to<long long>(); }

}  // namespace

nlohmann::ordered_json limit_group_json(const LimitGroup& g) {
  nlohmann::ordered_json j;
  j["dim"] = g.dim();
  j["stable_rank"] = g.stable_rank();
  nlohmann::ordered_json tors = nlohmann::ordered_json::array();
  for (const Int& t : g.stable_torsion()) tors.push_back(t.str());
  j["torsion"] = tors;
  j["char_poly"] = poly_json(g.stable_char_poly());
  j["char_poly_pretty"] = poly_to_string(g.stable_char_poly());
  j["perron_eigenvalue"] = g.perron().eigenvalue;
  return j;
}

KgroupReport kgroup_report(const Substitution& s, int level_cap, int max_k) {
  KgroupReport rep;

  const std::vector<Triple> triples = triples_of(s);
  const Substitution sq = tripled_substitution(s);
  const Mat beta_q = sq.incidence();
  const IntegerLattice delta = delta_subgroup(triples, s.alphabet_size());
  const StationaryOrderedDiagram dq = StationaryOrderedDiagram::from_substitution(sq);
  const BSubgroupResult b = b_subgroup(dq, level_cap);
  const LimitGroup g = substitution_kgroup(s);

  // Lemma 3.6: Delta inside B (exact lattice containment).
  const bool lemma36 = b.lattice.contains(delta);
  // Lemma 3.7: beta^Q(delta(phi)) = delta(phi') as linear maps; checking the
  // |A|^2 indicator functions covers all phi by linearity.
  bool lemma37 = true;
  const std::size_t n = s.alphabet_size();
  for (std::size_t p = 0; p < n * n && lemma37; ++p) {
    Vec phi(n * n, 0);
    phi[p] = 1;
    const Vec lhs = row_times(delta_of_phi(triples, n, phi), beta_q);
    const Vec rhs = delta_of_phi(triples, n, phi_prime(s, phi));
    lemma37 = lhs == rhs;
  }
  const std::vector<int> ks = absorption_exponents(b.lattice, delta, beta_q, max_k);
  int max_absorb = 0;
  bool absorb_ok = true;
  for (int k : ks) {
    if (k < 0) absorb_ok = false;
    max_absorb = std::max(max_absorb, k);
  }
  rep.cap_exceeded = !b.stabilized || !absorb_ok;

  nlohmann::ordered_json& j = rep.json;
  j["schema_version"] = 1;
  j["alphabet"] = s.alphabet().letters();
  nlohmann::ordered_json tnames = nlohmann::ordered_json::array();
  for (const Triple& t : triples) tnames.push_back(triple_name(s.alphabet().letters(), t));
  j["triples"] = tnames;
  nlohmann::ordered_json bm = nlohmann::ordered_json::array();
  for (const Vec& row : beta_q) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const Int& x : row) r.push_back(to_ll(x));
    bm.push_back(r);
  }
  j["beta_matrix"] = bm;
  j["delta_rank"] = delta.rank();
  j["b_rank"] = b.lattice.rank();
  j["b_stabilized"] = b.stabilized;
  j["stable_rank"] = g.stable_rank();
  nlohmann::ordered_json tors = nlohmann::ordered_json::array();
  for (const Int& t : g.stable_torsion()) tors.push_back(t.str());
  j["torsion"] = tors;
  j["char_poly"] = poly_json(g.stable_char_poly());
  j["char_poly_pretty"] = poly_to_string(g.stable_char_poly());
  const GroupElement u = order_unit(g);
  nlohmann::ordered_json uv = nlohmann::ordered_json::array();
  for (const Int& x : u.vector) uv.push_back(to_ll(x));
  j["order_unit"] = nlohmann::ordered_json{{"level", u.level}, {"vector", uv}};
  j["perron_eigenvalue"] = g.perron().eigenvalue;
  j["checks"] = nlohmann::ordered_json{
      {"lemma36", lemma36},
      {"lemma37", lemma37},
      {"prop38_max_k", absorb_ok ? max_absorb : -1},
  };
  return rep;
}

}  // namespace dimgroup
