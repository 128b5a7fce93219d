#pragma once

// Sublattices of Z^d in canonical Hermite normal form, integer kernels, and
// Smith-normal-form quotient presentations. Lattice vectors are rows; the
// basis matrix is in row HNF (pivots strictly increasing and positive,
// entries above a pivot reduced into [0, pivot)), which is unique per
// lattice and makes equality a plain comparison.

#include "dimgroup/exact.hpp"

#include <cstddef>
#include <vector>

namespace dimgroup {

/// Canonical row HNF of the lattice spanned by the given generator rows.
/// Zero rows are dropped; the result has rank(gens) rows.
Mat hnf(const Mat& generators);

class IntegerLattice {
public:
  /// The zero lattice in Z^dim.
  explicit IntegerLattice(std::size_t dim) : dim_(dim) {}

  static IntegerLattice span(std::size_t dim, const Mat& generators);
  static IntegerLattice zero(std::size_t dim) { return IntegerLattice(dim); }
  static IntegerLattice full(std::size_t dim) { return span(dim, identity_mat(dim)); }

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  const Mat& basis() const { return basis_; }

  bool contains(const Vec& v) const;
  bool contains(const IntegerLattice& other) const;
  bool operator==(const IntegerLattice& other) const {
    return dim_ == other.dim_ && basis_ == other.basis_;
  }

  IntegerLattice sum(const IntegerLattice& other) const;

  /// {v * m : v in L} as a lattice in Z^cols(m).
  IntegerLattice image(const Mat& m) const;

  /// {v in Z^dim : v * m in L}; requires rows(m) == dim of the ambient space
  /// of v and cols(m) == this->dim().
  IntegerLattice preimage(const Mat& m) const;

  /// Largest lattice with the same rational span (Z^dim/sat is torsion-free).
  IntegerLattice saturation() const;

private:
  std::size_t dim_;
  Mat basis_;  // canonical HNF rows
};

/// {x in Z^dim : dot(c, x) = 0 for every constraint row c}. The result is
/// saturated. Constraint rows must have length dim.
IntegerLattice integer_kernel(const Mat& constraints, std::size_t dim);

struct SmithBasis {
  std::vector<Int> invariant_factors;  // nonzero d_1 | d_2 | ... | d_r
  Mat w;  // rows form a basis of Z^dim; the first r rows span the saturation
          // of the input lattice, and d_i * w_i generate the lattice itself
};

/// Smith decomposition of the lattice spanned by the generator rows,
/// with the ambient basis W = V^{-1} tracked through the column operations.
SmithBasis smith_basis(const Mat& generators, std::size_t dim);

struct QuotientPresentation {
  std::size_t ambient_dim = 0;
  IntegerLattice relations{0};
  std::size_t free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, divisibility chain
};

/// Z^dim / relations, presented by Smith invariants.
QuotientPresentation quotient(std::size_t dim, const IntegerLattice& relations);

}  // namespace dimgroup
