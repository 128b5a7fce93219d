#include "dimgroup/kgroup.hpp"

#include "dimgroup/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>

namespace dimgroup {

Vec delta_of_phi(const std::vector<Triple>& triples, std::size_t alphabet_size, const Vec& phi) {
  assert(phi.size() == alphabet_size * alphabet_size);
  auto pair_idx = [&](LetterId x, LetterId y) {
    return static_cast<std::size_t>(x) * alphabet_size + static_cast<std::size_t>(y);
  };
  Vec out(triples.size(), 0);
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto [a, b, c] = triples[i];
    out[i] = phi[pair_idx(b, c)] - phi[pair_idx(a, b)];
  }
  return out;
}

IntegerLattice delta_subgroup(const std::vector<Triple>& triples, std::size_t alphabet_size) {
  Mat gens;
  const std::size_t d2 = alphabet_size * alphabet_size;
  for (std::size_t p = 0; p < d2; ++p) {
    Vec phi(d2, 0);
    phi[p] = 1;
    gens.push_back(delta_of_phi(triples, alphabet_size, phi));
  }
  return IntegerLattice::span(triples.size(), gens);
}

Vec phi_prime(const Substitution& s, const Vec& phi) {
  const std::size_t n = s.alphabet_size();
  assert(phi.size() == n * n);
  Vec out(n * n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const LetterId lu = s.last_letter(static_cast<LetterId>(u));
      const LetterId fv = s.first_letter(static_cast<LetterId>(v));
      out[u * n + v] = phi[static_cast<std::size_t>(lu) * n + static_cast<std::size_t>(fv)];
    }
  return out;
}

namespace {

/// Constraint rows spanning the same solution set as all path-interval sums
/// of a given span: within each (range, source) class, consecutive prefix
/// differences (the full pair set telescopes to these).
Mat interval_constraints(const StationaryOrderedDiagram& d, int span) {
  const std::size_t nv = d.vertex_count();
  std::set<std::vector<long long>> rows;
  // prefix source counts along the lex-ordered path list of each tower,
  // computed without materialising paths: the lex list of sources for paths
  // into v of span L is the concatenation over edges e into v (in order) of
  // the list for s(e) of span L-1.
  std::vector<std::vector<int>> src_seq(nv);  // span-L source sequences
  for (std::size_t v = 0; v < nv; ++v) src_seq[v] = {static_cast<int>(v)};
  for (int l = 1; l <= span; ++l) {
    std::vector<std::vector<int>> next(nv);
    for (std::size_t v = 0; v < nv; ++v)
      for (int s : d.fan_in(static_cast<int>(v)))
        next[v].insert(next[v].end(), src_seq[static_cast<std::size_t>(s)].begin(),
                       src_seq[static_cast<std::size_t>(s)].end());
    src_seq = std::move(next);
  }
  for (std::size_t v = 0; v < nv; ++v) {
    const auto& seq = src_seq[v];
    std::vector<std::vector<long long>> prefix(seq.size() + 1,
                                               std::vector<long long>(nv, 0));
    for (std::size_t i = 0; i < seq.size(); ++i) {
      prefix[i + 1] = prefix[i];
      ++prefix[i + 1][static_cast<std::size_t>(seq[i])];
    }
    std::vector<std::size_t> last_pos(nv, SIZE_MAX);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto s = static_cast<std::size_t>(seq[i]);
      if (last_pos[s] != SIZE_MAX) {
        std::vector<long long> row(nv);
        for (std::size_t k = 0; k < nv; ++k) row[k] = prefix[i][k] - prefix[last_pos[s]][k];
        rows.insert(std::move(row));
      }
      last_pos[s] = i;
    }
  }
  Mat out;
  for (const auto& r : rows) {
    Vec v(nv);
    for (std::size_t k = 0; k < nv; ++k) v[k] = r[k];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

BSubgroupResult b_subgroup(const StationaryOrderedDiagram& d, int level_cap) {
  if (level_cap < 1) throw PreconditionError("b_subgroup requires level_cap >= 1");
  const std::size_t nv = d.vertex_count();
  BSubgroupResult res;
  res.lattice = IntegerLattice::full(nv);
  Mat all_constraints;
  std::vector<IntegerLattice> chain;
  for (int depth = 1; depth <= level_cap; ++depth) {
    Mat cs = interval_constraints(d, depth);
    all_constraints.insert(all_constraints.end(), cs.begin(), cs.end());
    chain.push_back(integer_kernel(all_constraints, nv));
    const std::size_t n = chain.size();
    // the kernel chain can pause for a level before dropping further, so
    // require three equal kernels in a row before trusting stabilisation
    if (n >= 3 && chain[n - 1] == chain[n - 2] && chain[n - 2] == chain[n - 3]) {
      res.lattice = chain[n - 1];
      res.stabilized_at = depth - 2;
      res.stabilized = true;
      return res;
    }
  }
  res.lattice = chain.back();
  res.stabilized_at = level_cap;
  res.stabilized = false;
  return res;
}

bool induced_endo_check(const Mat& endo, const IntegerLattice& relations) {
  for (const Vec& b : relations.basis())
    if (!relations.contains(row_times(b, endo))) return false;
  return true;
}

PerronData perron_data(const Mat& m) {
  PerronData out;
  const std::size_t n = m.size();
  if (n == 0) return out;
  Eigen::MatrixXd em(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) em(static_cast<long>(i), static_cast<long>(j)) =
        static_cast<double>(m[i][j]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(em);
  const auto& vals = es.eigenvalues();
  std::size_t lead = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(vals(static_cast<long>(i))) > std::abs(vals(static_cast<long>(lead)))) lead = i;
  out.eigenvalue = vals(static_cast<long>(lead)).real();
  double second = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (i != lead) second = std::max(second, std::abs(vals(static_cast<long>(i))));
  out.gap = std::abs(vals(static_cast<long>(lead))) - second;

  // tau must satisfy tau(v*M) = lambda tau(v): take the column eigenvector of
  // M (the left eigenvector of the promotion v -> v*M)
  Eigen::VectorXcd ev = es.eigenvectors().col(static_cast<long>(lead));
  std::vector<double> w(n);
  double norm1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm1 += std::abs(ev(static_cast<long>(i)).real());
  double sign = 0.0;
  for (std::size_t i = 0; i < n; ++i) sign += ev(static_cast<long>(i)).real();
  if (norm1 == 0.0) norm1 = 1.0;
  const double flip = sign < 0 ? -1.0 : 1.0;
  for (std::size_t i = 0; i < n; ++i) w[i] = flip * ev(static_cast<long>(i)).real() / norm1;
  out.left_eigenvector = std::move(w);

  const double rounded = std::round(out.eigenvalue);
  if (std::abs(out.eigenvalue - rounded) < 1e-6) {
    // exact check against the integer characteristic polynomial
    std::vector<Int> cp = char_poly(m);
    Int x = static_cast<long long>(rounded), acc = 0;
    for (const Int& c : cp) acc = acc * x + c;
    if (acc == 0) {
      out.eigenvalue_exact = true;
      out.eigenvalue = rounded;
    }
  }
  return out;
}

LimitGroup::LimitGroup(std::size_t dim, QuotientPresentation stage, Mat endo,
                       IntegerLattice eventual_kernel, std::size_t stable_rank,
                       std::vector<Int> stable_torsion, Mat stable_matrix, PerronData perron)
    : dim_(dim),
      stage_(std::move(stage)),
      endo_(std::move(endo)),
      eventual_kernel_(std::move(eventual_kernel)),
      stable_rank_(stable_rank),
      stable_torsion_(std::move(stable_torsion)),
      stable_matrix_(std::move(stable_matrix)),
      perron_(std::move(perron)) {}

LimitGroup direct_limit(std::size_t dim, const IntegerLattice& relations, const Mat& endo,
                        int iteration_cap) {
  if (endo.size() != dim) throw PreconditionError("direct_limit: endo dimension mismatch");
  if (!induced_endo_check(endo, relations))
    throw PreconditionError("direct_limit: endo does not preserve the relation lattice");

  // eventual kernel: ascending chain of preimages of the relations
  IntegerLattice n = relations;
  int it = 0;
  while (true) {
    IntegerLattice next = n.preimage(endo);
    if (next == n) break;
    n = next;
    if (++it > iteration_cap)
      throw CapExceededError("direct_limit: eventual kernel iteration cap exceeded");
  }

  SmithBasis sb = smith_basis(n.basis(), dim);
  const std::size_t s = sb.invariant_factors.size();
  const std::size_t r = dim - s;
  std::vector<Int> torsion;
  for (const Int& f : sb.invariant_factors)
    if (f > 1) torsion.push_back(f);

  // stable matrix: express the action in the basis W whose first s rows span
  // sat(N); the bottom-right r x r block is the induced map on Z^dim/sat(N)
  Mat stable;
  if (s == 0) {
    stable = endo;
  } else {
    // C = W * endo * W^{-1} expresses the action in the W basis; W is
    // unimodular, so the exact rational inverse has integer entries.
    const Mat we = mat_mul(sb.w, endo);
    stable = Mat(r, Vec(r, 0));
    const std::size_t nn = dim;
    std::vector<std::vector<boost::multiprecision::cpp_rational>> aug(
        nn, std::vector<boost::multiprecision::cpp_rational>(2 * nn, 0));
    for (std::size_t i = 0; i < nn; ++i) {
      for (std::size_t j = 0; j < nn; ++j) aug[i][j] = boost::multiprecision::cpp_rational(sb.w[i][j]);
      aug[i][nn + i] = 1;
    }
    for (std::size_t c = 0; c < nn; ++c) {
      std::size_t p = c;
      while (aug[p][c] == 0) ++p;
      std::swap(aug[c], aug[p]);
      const auto pivv = aug[c][c];
      for (std::size_t j = 0; j < 2 * nn; ++j) aug[c][j] /= pivv;
      for (std::size_t i2 = 0; i2 < nn; ++i2) {
        if (i2 == c || aug[i2][c] == 0) continue;
        const auto f = aug[i2][c];
        for (std::size_t j = 0; j < 2 * nn; ++j) aug[i2][j] -= f * aug[c][j];
      }
    }
    Mat winv(nn, Vec(nn));
    for (std::size_t i = 0; i < nn; ++i)
      for (std::size_t j = 0; j < nn; ++j) {
        const auto& q = aug[i][nn + j];
        assert(boost::multiprecision::denominator(q) == 1);
        winv[i][j] = boost::multiprecision::numerator(q);
      }
    const Mat c = mat_mul(we, winv);
    // invariance: rows < s have zeros in columns >= s
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = s; j < dim; ++j) assert(c[i][j] == 0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) stable[i][j] = c[s + i][s + j];
  }

  return LimitGroup(dim, quotient(dim, relations), endo, n, r, std::move(torsion),
                    std::move(stable), perron_data(endo));
}

bool element_eq(const LimitGroup& g, const GroupElement& x, const GroupElement& y) {
  if (x.vector.size() != g.dim() || y.vector.size() != g.dim())
    throw PreconditionError("element_eq: dimension mismatch");
  Vec xv = x.vector, yv = y.vector;
  const int top = std::max(x.level, y.level);
  for (int l = x.level; l < top; ++l) xv = row_times(xv, g.endo());
  for (int l = y.level; l < top; ++l) yv = row_times(yv, g.endo());
  Vec diff(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) diff[i] = xv[i] - yv[i];
  return g.eventual_kernel().contains(diff);
}

namespace {

bool all_nonneg(const Vec& v) {
  for (const auto& x : v)
    if (x < 0) return false;
  return true;
}

/// Try to move y into the non-negative orthant by adding relation-lattice
/// vectors, with bounded coefficients. Returns true on success.
bool shift_to_nonneg(Vec y, const IntegerLattice& l, const Int& coeff_cap, int iter_cap) {
  if (all_nonneg(y)) return true;
  const Mat& basis = l.basis();
  if (basis.empty()) return false;
  const std::size_t dim = y.size();
  std::vector<Int> used(basis.size(), 0);
  for (int it = 0; it < iter_cap; ++it) {
    std::size_t worst = dim;
    for (std::size_t i = 0; i < dim; ++i)
      if (y[i] < 0 && (worst == dim || y[i] < y[worst])) worst = i;
    if (worst == dim) return true;
    bool moved = false;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Int& e = basis[b][worst];
      if (e == 0) continue;
      Int t = (-y[worst] + (e < 0 ? -e : e) - 1) / (e < 0 ? -e : e);
      if (e < 0) t = -t;
      if (abs(used[b] + t) > coeff_cap) continue;
      used[b] += t;
      for (std::size_t i = 0; i < dim; ++i) y[i] += t * basis[b][i];
      moved = true;
      break;
    }
    if (!moved) return false;
  }
  return false;
}

}  // namespace

Sign is_positive(const LimitGroup& g, const GroupElement& x) {
  if (x.vector.size() != g.dim()) throw PreconditionError("is_positive: dimension mismatch");
  GroupElement zero{x.level, zero_vec(g.dim())};
  if (element_eq(g, x, zero)) return Sign::zero;

  const auto& w = g.perron().left_eigenvector;
  double tau = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const double xi = static_cast<double>(x.vector[i]);
    tau += w[i] * xi;
    scale += std::abs(xi);
  }
  const double tol = 1e-9 * std::max(1.0, scale);
  if (tau > tol) return Sign::positive;
  if (tau < -tol) return Sign::negative;

  // boundary: bounded exact certificate search
  constexpr int kMaxPower = 12;
  const Int coeff_cap = 10000;
  Vec y = x.vector, ny(g.dim());
  for (int k = 0; k <= kMaxPower; ++k) {
    if (shift_to_nonneg(y, g.stage().relations, coeff_cap, 4096)) return Sign::positive;
    for (std::size_t i = 0; i < g.dim(); ++i) ny[i] = -y[i];
    if (shift_to_nonneg(ny, g.stage().relations, coeff_cap, 4096)) return Sign::negative;
    y = row_times(y, g.endo());
  }
  return Sign::indeterminate;
}

GroupElement order_unit(const LimitGroup& g) { return GroupElement{1, ones_vec(g.dim())}; }

LimitGroup classical_dimension_group(const Substitution& s) {
  if (!s.is_primitive())
    throw PreconditionError("classical_dimension_group requires a primitive substitution");
  return direct_limit(s.alphabet_size(), IntegerLattice::zero(s.alphabet_size()), s.incidence());
}

LimitGroup substitution_kgroup(const Substitution& s) {
  if (!s.is_primitive())
    throw PreconditionError("substitution_kgroup requires a primitive substitution");
  if (s.aperiodicity().kind == AperiodicityKind::periodic)
    throw PreconditionError("substitution_kgroup refuses a periodic substitution");
  const std::vector<Triple> triples = triples_of(s);
  const Substitution sq = tripled_substitution(s);
  const Mat beta_q = sq.incidence();
  const IntegerLattice delta = delta_subgroup(triples, s.alphabet_size());
  return direct_limit(triples.size(), delta, beta_q);
}

std::vector<int> absorption_exponents(const IntegerLattice& b, const IntegerLattice& delta,
                                      const Mat& endo, int max_k) {
  std::vector<int> out;
  for (const Vec& basis_vec : b.basis()) {
    Vec v = basis_vec;
    int k = 0;
    while (k <= max_k && !delta.contains(v)) {
      v = row_times(v, endo);
      ++k;
    }
    out.push_back(k <= max_k ? k : -1);
  }
  return out;
}

}  // namespace dimgroup
