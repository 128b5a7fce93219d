#include "dimgroup/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace dimgroup {

namespace {

Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  if (b == 0) {
    x = a < 0 ? -1 : 1;
    y = 0;
    return a < 0 ? Int(-a) : a;
  }
  Int x1, y1;
  Int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

std::size_t pivot_col(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return i;
  return v.size();
}

}  // namespace

Mat hnf(const Mat& generators) {
  if (generators.empty()) return {};
  const std::size_t dim = generators[0].size();
  std::vector<Vec> basis;  // echelon, pivot columns strictly increasing

  for (const Vec& g : generators) {
    assert(g.size() == dim);
    Vec v = g;
    // sweep left to right, merging with existing pivots
    for (std::size_t col = 0; col < dim && !is_zero_vec(v);) {
      std::size_t p = pivot_col(v);
      if (p >= dim) break;
      col = p;
      auto it = std::find_if(basis.begin(), basis.end(),
                             [&](const Vec& b) { return pivot_col(b) == p; });
      if (it == basis.end()) {
        auto pos = std::find_if(basis.begin(), basis.end(),
                                [&](const Vec& b) { return pivot_col(b) > p; });
        basis.insert(pos, v);
        v = zero_vec(dim);
        break;
      }
      Vec& b = *it;
      if (v[p] % b[p] == 0) {
        const Int q = v[p] / b[p];
        for (std::size_t i = p; i < dim; ++i) v[i] -= q * b[i];
      } else {
        Int x, y;
        const Int g2 = ext_gcd(b[p], v[p], x, y);
        const Int bq = b[p] / g2, vq = v[p] / g2;
        Vec nb(dim, 0), nv(dim, 0);
        for (std::size_t i = 0; i < dim; ++i) {
          nb[i] = x * b[i] + y * v[i];
          nv[i] = bq * v[i] - vq * b[i];
        }
        b = std::move(nb);  // pivot value is now g2
        v = std::move(nv);  // zero at p
      }
    }
  }

  // canonical form: positive pivots, entries above a pivot in [0, pivot)
  for (Vec& b : basis) {
    const std::size_t p = pivot_col(b);
    if (b[p] < 0)
      for (auto& x : b) x = -x;
  }
  // reduce above-pivot entries left to right; row j is zero at every earlier
  // pivot column, so later steps leave finished columns alone
  for (std::size_t i = basis.size(); i-- > 0;) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const std::size_t p = pivot_col(basis[j]);
      Int q = basis[i][p] / basis[j][p];
      if (basis[i][p] - q * basis[j][p] < 0) q -= 1;  // floor division
      if (q != 0)
        for (std::size_t k = p; k < dim; ++k) basis[i][k] -= q * basis[j][k];
    }
  }
  return basis;
}

IntegerLattice IntegerLattice::span(std::size_t dim, const Mat& generators) {
  IntegerLattice l(dim);
  l.basis_ = hnf(generators);
  return l;
}

bool IntegerLattice::contains(const Vec& v) const {
  assert(v.size() == dim_);
  Vec r = v;
  for (const Vec& b : basis_) {
    const std::size_t p = pivot_col(b);
    if (r[p] == 0) continue;
    if (r[p] % b[p] != 0) return false;
    const Int q = r[p] / b[p];
    for (std::size_t i = p; i < dim_; ++i) r[i] -= q * b[i];
  }
  return is_zero_vec(r);
}

bool IntegerLattice::contains(const IntegerLattice& other) const {
  for (const Vec& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

IntegerLattice IntegerLattice::sum(const IntegerLattice& other) const {
  assert(dim_ == other.dim_);
  Mat gens = basis_;
  gens.insert(gens.end(), other.basis_.begin(), other.basis_.end());
  return span(dim_, gens);
}

IntegerLattice IntegerLattice::image(const Mat& m) const {
  assert(m.size() == dim_);
  const std::size_t out_dim = m.empty() ? 0 : m[0].size();
  Mat gens;
  gens.reserve(basis_.size());
  for (const Vec& b : basis_) gens.push_back(row_times(b, m));
  return span(out_dim, gens);
}

IntegerLattice IntegerLattice::preimage(const Mat& m) const {
  const std::size_t d = m.size();
  assert(m.empty() || m[0].size() == dim_);
  const std::size_t r = basis_.size();
  // v*m = c*basis has a solution c  <=>  (v, c) solves, per coordinate j,
  // sum_k v_k m[k][j] - sum_t c_t basis[t][j] = 0
  Mat constraints(dim_, Vec(d + r, 0));
  for (std::size_t j = 0; j < dim_; ++j) {
    for (std::size_t k = 0; k < d; ++k) constraints[j][k] = m[k][j];
    for (std::size_t t = 0; t < r; ++t) constraints[j][d + t] = -basis_[t][j];
  }
  IntegerLattice ker = integer_kernel(constraints, d + r);
  Mat proj;
  proj.reserve(ker.rank());
  for (const Vec& row : ker.basis()) proj.emplace_back(row.begin(), row.begin() + static_cast<long>(d));
  return span(d, proj);
}

IntegerLattice IntegerLattice::saturation() const {
  if (basis_.empty()) return *this;
  IntegerLattice orth = integer_kernel(basis_, dim_);
  return integer_kernel(orth.basis(), dim_);
}

IntegerLattice integer_kernel(const Mat& constraints, std::size_t dim) {
  Mat k = identity_mat(dim);
  for (const Vec& c : constraints) {
    assert(c.size() == dim);
    std::vector<Int> y(k.size());
    bool any = false;
    for (std::size_t i = 0; i < k.size(); ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < dim; ++j) s += k[i][j] * c[j];
      y[i] = s;
      any = any || s != 0;
    }
    if (!any) continue;
    std::size_t piv = k.size();
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (y[i] == 0) continue;
      if (piv == k.size()) {
        piv = i;
        continue;
      }
      Int x, yy;
      const Int g = ext_gcd(y[piv], y[i], x, yy);
      const Int qp = y[piv] / g, qi = y[i] / g;
      Vec np(dim), ni(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        np[j] = x * k[piv][j] + yy * k[i][j];
        ni[j] = qp * k[i][j] - qi * k[piv][j];
      }
      k[piv] = std::move(np);
      k[i] = std::move(ni);
      y[piv] = g;
      y[i] = 0;
    }
    k.erase(k.begin() + static_cast<long>(piv));
    k = hnf(k);  // keeps entries small; happens at most dim times
  }
  return IntegerLattice::span(dim, k);
}

SmithBasis smith_basis(const Mat& generators, std::size_t dim) {
  Mat a = hnf(generators);  // start from the reduced basis
  const std::size_t m = a.size();
  SmithBasis out;
  out.w = identity_mat(dim);
  Mat& w = out.w;

  auto col_swap = [&](std::size_t j1, std::size_t j2) {
    for (Vec& row : a) std::swap(row[j1], row[j2]);
    std::swap(w[j1], w[j2]);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (Vec& row : a) row[dst] += f * row[src];
    for (std::size_t j = 0; j < dim; ++j) w[src][j] -= f * w[dst][j];
  };

  std::size_t t = 0;
  while (t < m && t < dim) {
    // smallest nonzero |entry| in the remaining block
    std::size_t bi = m, bj = dim;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < dim; ++j)
        if (a[i][j] != 0 &&
            (bi == m || abs(a[i][j]) < abs(a[bi][bj])))
          bi = i, bj = j;
    if (bi == m) break;
    std::swap(a[t], a[bi]);
    if (bj != t) col_swap(t, bj);
    bool again = false;
    for (std::size_t i = t + 1; i < m; ++i) {
      const Int q = a[i][t] / a[t][t];
      if (q != 0)
        for (std::size_t j = 0; j < dim; ++j) a[i][j] -= q * a[t][j];
      if (a[i][t] != 0) again = true;
    }
    for (std::size_t j = t + 1; j < dim; ++j) {
      const Int q = a[t][j] / a[t][t];
      if (q != 0) col_add(j, t, -q);
      if (a[t][j] != 0) again = true;
    }
    if (again) continue;
    // divisibility: a[t][t] must divide the rest of the block
    bool fixed = false;
    for (std::size_t i = t + 1; i < m && !fixed; ++i)
      for (std::size_t j = t + 1; j < dim && !fixed; ++j)
        if (a[i][j] % a[t][t] != 0) {
          for (std::size_t jj = 0; jj < dim; ++jj) a[t][jj] += a[i][jj];
          fixed = true;
        }
    if (fixed) continue;
    if (a[t][t] < 0)
      for (std::size_t j = 0; j < dim; ++j) a[t][j] = -a[t][j];
    out.invariant_factors.push_back(a[t][t]);
    ++t;
  }
  return out;
}

QuotientPresentation quotient(std::size_t dim, const IntegerLattice& relations) {
  QuotientPresentation q;
  q.ambient_dim = dim;
  q.relations = relations;
  SmithBasis sb = smith_basis(relations.basis(), dim);
  q.free_rank = dim - sb.invariant_factors.size();
  for (const Int& d : sb.invariant_factors)
    if (d > 1) q.torsion.push_back(d);
  return q;
}

}  // namespace dimgroup
