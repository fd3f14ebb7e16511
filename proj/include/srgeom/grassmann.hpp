#pragma once

#include "srgeom/core.hpp"
#include "srgeom/signed_perm.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace srgeom {

// m-dimensional subspace of R^p, stored as a p x m matrix with orthonormal
// columns.
class Subspace {
 public:
  explicit Subspace(Eigen::MatrixXd basis);
  const Eigen::MatrixXd& basis() const { return b_; }
  int p() const { return static_cast<int>(b_.rows()); }
  int m() const { return static_cast<int>(b_.cols()); }

 private:
  Eigen::MatrixXd b_;
};

// Rotation that is an involution (checked at construction).
class Involution {
 public:
  explicit Involution(Rotation R);
  const Rotation& rot() const { return r_; }
  const Eigen::MatrixXd& matrix() const { return r_.matrix(); }
  int p() const { return r_.p(); }
  int inv_level() const { return level_; }

 private:
  Rotation r_;
  int level_;
};

// W -> I - 2 P_W, the reflection through W^perp. Lands in SO(p) iff dim W is
// even; throws OddDimension otherwise.
Involution phi_mp(const Subspace& W);

// Eigenspace of -1; inverse of phi_mp on even-level involutions.
Subspace e_minus(const Involution& R);

// Ascending principal angles, length min(dim W, dim Z). Angles above pi/4
// come from the singular values of W^T Z, smaller ones from the sines of the
// complement projection, so every angle is accurate to ~1e-15 absolute.
std::vector<double> principal_angles(const Subspace& W, const Subspace& Z);

// Grassmannian geodesic distance: l2 norm of the principal angles. Requires
// equal dimensions.
double d_gr(const Subspace& W, const Subspace& Z);

// Data linking principal angles between the -1 eigenspaces to the planar
// angles of the product: each positive principal angle phi consumes two
// entries of the doubled angle list of R1 R2 at 2 phi (one rotation plane),
// each zero angle consumes one zero entry (a shared -1 direction), and the
// unmatched remainder must lie in {0, pi}.
struct HalfAngleData {
  std::vector<double> principal;    // angles between E_-1(R1), E_-1(R2)
  std::vector<double> theta_tilde;  // doubled normal-form angle list of R1 R2
  bool matched = false;             // injection found within tol
};
HalfAngleData half_angle_check(const Involution& R1, const Involution& R2,
                               double tol = 1e-8);

// Searches even sign changes sigma with level(sigma) < 2 level(R) (or
// exactly level_filter) for d_so(R I_sigma, I) < d_so(R, I) - 1e-12; returns
// the best one found, or nullopt.
std::optional<SignChange> sign_change_reducible(
    const Involution& R, std::optional<int> level_filter = std::nullopt);

struct PlaneScan {
  std::vector<int> J;  // 0-based coordinate indices, ascending
  double dist = 0;     // d_gr to the best coordinate plane
  bool within_bound = false;  // dist^2 < m pi^2 / 8
};
// Exhaustive scan over the C(p, m) coordinate planes; p <= 14 (TooLarge).
PlaneScan best_coordinate_plane(const Subspace& W);

// Hard-to-cover plane spanned by the normalized indicator vectors of the
// first and second index blocks of size floor(p/2); defined for p >= 4.
Subspace counterexample_Wp(int p);

// Variant for odd p >= 5: all-ones vector against the signed half-split.
Subspace counterexample_Wp_prime(int p);

struct Sin2Witness {
  std::vector<int> J;
  double sum_sin2 = 0;  // sum of squared principal-angle sines, <= m(1 - m/p)
};
// Coordinate plane maximizing the Frobenius mass of the selected rows, which
// exactly minimizes the squared-sine sum.
Sin2Witness sin2_bound_witness(const Subspace& W);

// Exact integer identity: sum over all m-subsets J of E_J E_J^T equals
// C(p-1, m-1) I. Verified by counting; p <= 12.
bool combinat_identity(int p, int m);

// Diagonal pair (D, Lambda) built by the gap recipe so that, whenever (U, V)
// is not sign-change reducible, ((U, D), (V, Lambda)) attains the
// scaling-rotation distance: every nontrivial permutation overshoots
// d_diag(D, Lambda)^2 by more than k diam(SO(p))^2.
std::pair<PosDiag, PosDiag> nscr_minimal_pair(const Rotation& U,
                                              const Rotation& V, double k);

}  // namespace srgeom
