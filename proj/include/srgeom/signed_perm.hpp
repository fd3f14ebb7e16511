#pragma once

#include "srgeom/core.hpp"
#include "srgeom/strata.hpp"

#include <functional>
#include <vector>

namespace srgeom {

// Diagonal sign matrix, entries in {+1, -1}.
struct SignChange {
  std::vector<int> signs;

  static SignChange identity(int p);
  int p() const { return static_cast<int>(signs.size()); }
  int sign_level() const;  // number of -1 entries
  bool is_even() const { return sign_level() % 2 == 0; }
  Eigen::MatrixXd mat() const;
  bool operator==(const SignChange& o) const = default;
};

// Element (sigma, pi) of the signed permutation group: matrix I_sigma P_pi
// where P_pi e_j = e_{pi(j)}. perm is the one-line form, 0-based.
struct SignedPerm {
  std::vector<int> signs;
  std::vector<int> perm;

  static SignedPerm identity(int p);
  int p() const { return static_cast<int>(signs.size()); }
  bool operator==(const SignedPerm& o) const = default;
};

// Group law matching matrix multiplication: mat(a) * mat(b) = mat(multiply(a, b)).
SignedPerm multiply(const SignedPerm& a, const SignedPerm& b);
SignedPerm inverse(const SignedPerm& g);
Eigen::MatrixXd mat(const SignedPerm& g);

// det(mat(g)) = prod(signs) * sgn(perm).
int sgn(const SignedPerm& g);
bool is_even(const SignedPerm& g);

// All elements with det +1, in a fixed deterministic order. Throws TooLarge
// for p > 8 (2^(p-1) p! growth).
std::vector<SignedPerm> enumerate_even(int p);

// Visits every even element without materializing the group. Same guard.
void for_each_even(int p, const std::function<void(const SignedPerm&)>& fn);

// Permutation action on diagonals: result[i] = d[pi^{-1}(i)]. Signs act
// trivially.
PosDiag act_on_diag(const SignedPerm& g, const PosDiag& D);

// Fiber-preserving action g . (U, D) = (U mat(g)^{-1}, pi_g . D).
EigenPoint act_on_M(const SignedPerm& g, const EigenPoint& pt);

// Membership in the component group of the eigenvalue pattern J: pi fixes
// every block of J setwise and each per-block signed-permutation block of
// mat(g) has determinant +1. Such elements are automatically even.
bool gamma0_membership(const SignedPerm& g, const SetPartition& J);

// Lexicographically least representatives (+1 before -1 on signs, then
// one-line permutation) of the double cosets of the two component groups
// inside the even signed permutation group.
std::vector<SignedPerm> double_coset_reps(const SetPartition& J_D,
                                          const SetPartition& J_L);

}  // namespace srgeom
