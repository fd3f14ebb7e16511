#pragma once

#include "srgeom/core.hpp"
#include "srgeom/quat3.hpp"
#include "srgeom/strata.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace srgeom {

// Minimal smooth interpolation curve chi(t) = U(t) D(t) U(t)^T between two
// SPD matrices, carried by the geodesic between a minimal pair of
// eigendecompositions: U(t) = exp(t A) U1, D(t) = exp(t L) D.
struct MssrCurve {
  EigenPoint start;       // (U1, D)
  EigenPoint end;         // (V1, Lambda1)
  Eigen::MatrixXd A;      // skew; exp(A) U1 = V1
  Eigen::VectorXd L;      // diagonal log increment; exp(L) D = Lambda1
  std::string class_label;
  double length = 0;
  bool antipodal = false; // A is the flagged cut-locus choice (never produced
                          // by the p = 3 classification)
};

// Candidate squared-length branches for a p = 3 equal-pair start pattern.
// ell_12 is absent when the end pattern also has an equal pair.
struct EllTriple {
  double ell_id = 0;
  double ell_13 = 0;
  double ell_12 = 0;
  bool has_ell_12 = true;
};

inline constexpr long long kCardinalityInfinite = -1;

struct MssrSet {
  std::vector<MssrCurve> curves;  // for infinite families: representatives
  long long cardinality = 0;      // kCardinalityInfinite when infinite
  bool infinite = false;
  std::string case_tag;
};

// Number of circle representatives emitted for an infinite family.
inline constexpr int kInfiniteFamilySamples = 8;

// Same-axis degeneracy threshold: when both patterns have an equal pair and
// min(|z|, |w|) <= this, the end frame is replaced by the start frame and
// (z, w) by (1, 0).
inline constexpr double kSameAxisTol = 1e-8;

struct SrReport {
  double value = 0;
  std::string branch;   // "isotropic", "enumeration", "ell_id", "ell_13", "ell_12"
  std::string case_tag; // set when the p = 3 closed form ran
  IntPartition stratum_x;
  IntPartition stratum_y;
};

// Scaling-rotation distance. Cases: either side isotropic (any p), both
// eigenvalue patterns fully distinct (p <= 8, group enumeration; TooLarge
// beyond), and the p = 3 closed forms. Anything else: Unsupported.
double d_sr(const SpdMatrix& X, const SpdMatrix& Y, double k = 1.0,
            double tol_eig = kTolEig);
SrReport d_sr_report(const SpdMatrix& X, const SpdMatrix& Y, double k = 1.0,
                     double tol_eig = kTolEig);

// Branch lengths for pre-canonicalized decompositions: D must have its
// simple entry first and an equal trailing pair; Lambda must be either fully
// distinct (three branches) or of the same shape (two). Throws WrongStratum
// otherwise, AtCutLocus if U^{-1}V is an involution.
EllTriple ell_values(const EigenPoint& eX, const EigenPoint& eY, double k);

// Full classification of the minimal interpolants for p = 3 with X in the
// equal-pair stratum and Y not isotropic. Throws WrongStratum on other
// strata, Degenerate when a case comparison lands in (tol/10, tol).
MssrSet classify_mssr(const SpdMatrix& X, const SpdMatrix& Y, double k = 1.0,
                      double tol = kTolTie, double tol_eig = kTolEig);

// Endpoint decompositions of the minimal curves (same order as classify).
std::vector<std::pair<EigenPoint, EigenPoint>> minimal_pairs(
    const SpdMatrix& X, const SpdMatrix& Y, double k = 1.0,
    double tol = kTolTie, double tol_eig = kTolEig);

SpdMatrix eval_curve(const MssrCurve& c, double t);

// Independent stepwise construction of the same set (end-frame repair, polar
// angle read-off, per-class length minimization over the representative
// table). Must agree with classify_mssr curve-for-curve.
MssrSet mssr_stepwise(const SpdMatrix& X, const SpdMatrix& Y, double k = 1.0,
                      double tol = kTolTie, double tol_eig = kTolEig);

// Exact curve-equality predicate for p = 3 curves joining the same
// endpoints: the spatial frame increments must coincide and the starting
// decompositions must differ by a diagonal-pattern-preserving block rotation
// composed with a signed permutation. Throws MismatchedEndpoints.
bool curves_equal_p3(const MssrCurve& a, const MssrCurve& b,
                     double tol = kTolTie);

// Grid minimization of d_m over the 24 even signed permutations and the
// circle factors of both fibers (n_grid points per circle). Converges to
// d_sr from above at O(1/n_grid^2). p = 3 only.
double brute_force_oracle(const SpdMatrix& X, const SpdMatrix& Y,
                          double k = 1.0, int n_grid = 720);

}  // namespace srgeom
