#pragma once

#include "srgeom/core.hpp"

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace srgeom {

// Unit quaternion x0 + x1 i + x2 j + x3 k. The constructor normalizes and
// rejects near-zero input.
struct UnitQuaternion {
  double x0 = 1, x1 = 0, x2 = 0, x3 = 0;

  UnitQuaternion() = default;
  UnitQuaternion(double a, double b, double c, double d);

  UnitQuaternion conj() const { return UnitQuaternion(x0, -x1, -x2, -x3); }
  double re() const { return x0; }
  bool operator==(const UnitQuaternion& o) const = default;
};

UnitQuaternion qmul(const UnitQuaternion& a, const UnitQuaternion& b);

// Pair (z, w) with q = z + w j under C + Cj coordinates: z = x0 + x1 i,
// w = x2 + x3 i.
struct HyperComplex {
  std::complex<double> z{1, 0};
  std::complex<double> w{0, 0};
};

// Rotation covering map: phi(q) x = q x conj(q) on pure imaginary x.
Rotation phi(const UnitQuaternion& q);

// Embeds a unit complex number: phi of (Re xi, Im xi, 0, 0), a rotation about
// the first axis.
Rotation phi_circle(const std::complex<double>& xi);

// The preimage with x0 > 0 (if x0 vanishes within roundoff the first nonzero
// of x1, x2, x3 is made positive). Throws AtCutLocus for involutions, where
// x0 = 0 and both preimages tie.
UnitQuaternion half_angle_lift(const Rotation& R);

// Lift without the cut-locus guard; returns one of the two preimages under
// the same sign rule. Internal building block, exposed for enumerations that
// legitimately visit involutions.
UnitQuaternion quat_lift_any(const Rotation& R);

// 2 acos |<q1, q2>|; equals d_so(phi(q1), phi(q2)).
double quat_distance(const UnitQuaternion& q1, const UnitQuaternion& q2);

// (z, w) of the lift of U^{-1} V. Throws AtCutLocus when U^{-1} V is an
// involution (apply the end-frame repair first).
HyperComplex hypercomplex_split(const Rotation& U, const Rotation& V);

// Angles of the pair: varphi = acos max(|z|, |w|), and the two mixed angles
// beta = acos sqrt((1 + 2|Re(conj(z) w)|) / 2),
// beta' = acos sqrt((1 + 2|Im(conj(z) w)|) / 2). All lie in [0, pi/4].
struct PairAngles {
  double varphi = 0;
  double beta = 0;
  double beta_prime = 0;
};
PairAngles varphi_beta(const HyperComplex& zw);

// Double-coset representative: quaternion zeta with the induced permutation
// of the diagonal (one-line, 0-based).
struct CosetRep {
  std::string label;
  UnitQuaternion zeta;
  std::array<int, 3> pi;
};

// z_star: the 6 representatives for a distinct-pair start pattern against a
// fully distinct end pattern; z_11: the 3 representatives when both patterns
// have one repeated pair.
struct CosetTables {
  std::vector<CosetRep> z_star;
  std::vector<CosetRep> z_11;
};
CosetTables coset_tables();

}  // namespace srgeom
