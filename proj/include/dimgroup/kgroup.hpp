#pragma once

// The ordered K0 machinery: the delta and B subgroups, stationary inductive
// limits of Z^d/L under a lattice-preserving endomorphism, positivity via the
// Perron functional with an exact certificate fallback, and the headline
// computation: the dimension group of a primitive aperiodic substitution as
// the limit of Z^{|A^Q|}/Delta Z^{|A^Q|} under beta^Q.

#include "dimgroup/bratteli.hpp"
#include "dimgroup/exact.hpp"
#include "dimgroup/lattice.hpp"
#include "dimgroup/substitution.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace dimgroup {

/// delta(phi)(a,b,c) = phi(b,c) - phi(a,b) for phi: A x A -> Z. phi is stored
/// as a row vector of length |A|^2, pair (x,y) at index x*|A| + y.
Vec delta_of_phi(const std::vector<Triple>& triples, std::size_t alphabet_size, const Vec& phi);

/// The lattice delta(Z^{|A x A|}) inside Z^{|triples|}, in HNF.
IntegerLattice delta_subgroup(const std::vector<Triple>& triples, std::size_t alphabet_size);

/// phi'(u,v) = phi(last letter of sigma(u), first letter of sigma(v)).
Vec phi_prime(const Substitution& s, const Vec& phi);

struct BSubgroupResult {
  IntegerLattice lattice{0};
  int stabilized_at = 0;  // first depth of the stable window
  bool stabilized = false;
};

/// Integer kernel of all path-interval constraints on the stationary diagram,
/// deepening until three successive kernels agree or the cap is reached
/// (best effort + flag in that case, per the module contract).
BSubgroupResult b_subgroup(const StationaryOrderedDiagram& d, int level_cap = 6);

/// Does endo map the relation lattice into itself (v*endo for each basis v)?
bool induced_endo_check(const Mat& endo, const IntegerLattice& relations);

struct GroupElement {
  int level = 1;
  Vec vector;
};

struct PerronData {
  double eigenvalue = 0.0;
  bool eigenvalue_exact = false;      // integral root of the exact char poly
  std::vector<double> left_eigenvector;  // unit 1-norm; the limit functional
  double gap = 0.0;                   // modulus gap to the second eigenvalue
};

PerronData perron_data(const Mat& m);

class LimitGroup {
public:
  LimitGroup(std::size_t dim, QuotientPresentation stage, Mat endo,
             IntegerLattice eventual_kernel, std::size_t stable_rank,
             std::vector<Int> stable_torsion, Mat stable_matrix, PerronData perron);

  std::size_t dim() const { return dim_; }
  const QuotientPresentation& stage() const { return stage_; }
  const Mat& endo() const { return endo_; }
  const IntegerLattice& eventual_kernel() const { return eventual_kernel_; }
  std::size_t stable_rank() const { return stable_rank_; }
  const std::vector<Int>& stable_torsion() const { return stable_torsion_; }
  const Mat& stable_matrix() const { return stable_matrix_; }
  const PerronData& perron() const { return perron_; }
  std::vector<Int> stable_char_poly() const { return char_poly(stable_matrix_); }

private:
  std::size_t dim_;
  QuotientPresentation stage_;
  Mat endo_;
  IntegerLattice eventual_kernel_;
  std::size_t stable_rank_;
  std::vector<Int> stable_torsion_;
  Mat stable_matrix_;
  PerronData perron_;
};

/// colim( Z^dim/relations --endo--> Z^dim/relations --endo--> ... ).
/// Pre: induced_endo_check(endo, relations).
LimitGroup direct_limit(std::size_t dim, const IntegerLattice& relations, const Mat& endo,
                        int iteration_cap = 32);

/// Limit equality: promote both representatives to a common level and test
/// membership of the difference in the eventual kernel.
bool element_eq(const LimitGroup& g, const GroupElement& x, const GroupElement& y);

enum class Sign { positive, zero, negative, indeterminate };

Sign is_positive(const LimitGroup& g, const GroupElement& x);

/// The class of the all-ones top vector at level 1.
GroupElement order_unit(const LimitGroup& g);

/// colim( Z^{|A|} --M--> Z^{|A|} --M--> ... ), no relations.
LimitGroup classical_dimension_group(const Substitution& s);

/// Theorem 3.12 pipeline: A^Q = 3-blocks, beta^Q = incidence of sigma^Q,
/// relations = delta subgroup. Refuses periodic input.
LimitGroup substitution_kgroup(const Substitution& s);

/// For each basis vector of b, the least k <= max_k with v * endo^k in delta
/// (-1 when the bound is exhausted).
std::vector<int> absorption_exponents(const IntegerLattice& b, const IntegerLattice& delta,
                                      const Mat& endo, int max_k);

}  // namespace dimgroup
