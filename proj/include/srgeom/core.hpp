#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>

namespace srgeom {

// Shared validation tolerances. Constructors check their invariants with
// these; numerical routines document which one they key off.
inline constexpr double kTolOrth = 1e-9;   // orthogonality / symmetry of inputs
inline constexpr double kTolEig = 1e-8;    // eigenvalue positivity and merging
inline constexpr double kTolRecon = 1e-8;  // decomposition round-trip slack
inline constexpr double kTolTie = 1e-9;    // classification tie tolerance

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidInputError : Error { using Error::Error; };
struct NotSpdError : Error { using Error::Error; };
struct NotInvolutionError : Error { using Error::Error; };
struct TooLargeError : Error { using Error::Error; };
struct AtCutLocusError : Error { using Error::Error; };
struct WrongStratumError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };
struct MismatchedEndpointsError : Error { using Error::Error; };
struct OddDimensionError : Error { using Error::Error; };
struct BadDimensionError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Element of SO(p). The constructor enforces R^T R = I and det R > 0.
class Rotation {
 public:
  explicit Rotation(Eigen::MatrixXd R);
  static Rotation identity(int p);
  // Skips validation; caller guarantees the invariant (hot paths only).
  static Rotation trusted(Eigen::MatrixXd R);

  const Eigen::MatrixXd& matrix() const { return m_; }
  int p() const { return static_cast<int>(m_.rows()); }

 private:
  Rotation() = default;
  Eigen::MatrixXd m_;
};

// Diagonal matrix with strictly positive entries, stored as its diagonal.
class PosDiag {
 public:
  explicit PosDiag(Eigen::VectorXd d);
  const Eigen::VectorXd& diag() const { return d_; }
  Eigen::MatrixXd matrix() const;
  Eigen::VectorXd log() const { return d_.array().log(); }
  int p() const { return static_cast<int>(d_.size()); }

 private:
  Eigen::VectorXd d_;
};

// Symmetric positive-definite matrix. Symmetry is checked at construction;
// eigenvalue positivity is enforced here via a full symmetric eigensolve
// (dimensions are small throughout).
class SpdMatrix {
 public:
  explicit SpdMatrix(Eigen::MatrixXd X);
  const Eigen::MatrixXd& matrix() const { return m_; }
  int p() const { return static_cast<int>(m_.rows()); }

 private:
  Eigen::MatrixXd m_;
};

// Point (U, D) of the product manifold SO(p) x Diag+(p).
struct EigenPoint {
  Rotation U;
  PosDiag D;
};

// Element of so(p): A + A^T = 0 within kTolOrth.
class SkewMatrix {
 public:
  explicit SkewMatrix(Eigen::MatrixXd A);
  static SkewMatrix zero(int p);
  static SkewMatrix trusted(Eigen::MatrixXd A);
  const Eigen::MatrixXd& matrix() const { return m_; }
  int p() const { return static_cast<int>(m_.rows()); }

 private:
  SkewMatrix() = default;
  Eigen::MatrixXd m_;
};

// Planar-angle normal form of a rotation: R = Q blockdiag(C(theta_1), ...,
// C(theta_k) [, 1]) Q^T with angles in [0, pi] sorted descending and Q
// orthogonal. angles has ceil(p/2) entries; for odd p the trailing entry is 0
// and the last frame column spans the distinguished fixed axis.
struct NormalForm {
  Eigen::VectorXd angles;
  Eigen::MatrixXd frame;
};

// X = U D U^T.
SpdMatrix compose_F(const EigenPoint& pt);

// Eigenvalues sorted descending, det(U) = +1 (last eigenvector column is
// flipped if needed). Throws NotSpd when an eigenvalue is <= kTolEig * |X|.
EigenPoint eigen_decompose(const SpdMatrix& X);

Rotation so_exp(const SkewMatrix& A);

struct SoLogResult {
  SkewMatrix principal;      // minimal-norm logarithm (deterministic choice)
  bool is_cut_locus = false; // true exactly when R is an involution
};
// Deterministic at the cut locus: angles sorted descending, each pi-block
// logged as +pi*J in the computed frame.
SoLogResult so_log(const Rotation& R);

NormalForm normal_form(const Rotation& R);

// Geodesic distance on SO(p) for <A,B> = tr(A^T B)/2: d = sqrt(sum theta_i^2).
double d_so(const Rotation& U, const Rotation& V);

// Log-Euclidean distance on Diag+(p).
double d_diag(const PosDiag& D, const PosDiag& L);

// Product metric: d^2 = k * d_so^2 + d_diag^2.
double d_m(double k, const EigenPoint& a, const EigenPoint& b);

// R^2 = I and R != I, both within kTolEig.
bool is_involution(const Rotation& R);

// Multiplicity of eigenvalue -1. Throws NotInvolution.
int level(const Rotation& R);

}  // namespace srgeom
