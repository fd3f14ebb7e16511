#include "srgeom/core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace srgeom {
namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// sin(x)/x and (1 - cos(x))/x^2 with series fallbacks near zero.
double sinc(double x) {
  double x2 = x * x;
  if (std::abs(x) < 1e-4) return 1 - x2 / 6 + x2 * x2 / 120;
  return std::sin(x) / x;
}
double cosc(double x) {
  double x2 = x * x;
  if (std::abs(x) < 1e-4) return 0.5 - x2 / 24 + x2 * x2 / 720;
  return (1 - std::cos(x)) / x2;
}

Eigen::Matrix2d rot2(double theta) {
  Eigen::Matrix2d c;
  c << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return c;
}

// Left and right quaternion multiplication matrices on R^4 = H; together an
// orthogonal basis of so(4) with <B, B> = 4, and every L commutes with every
// R. exp(sum a_m L_m) = cos|a| I + sinc|a| (sum a_m L_m) since the L_m
// anticommute and square to -I.
Eigen::Matrix4d quat_side_basis(int side, int axis) {
  Eigen::Matrix4d b = Eigen::Matrix4d::Zero();
  auto set = [&b](int i, int j, double v) { b(i, j) = v; };
  if (side == 0) {  // left multiplication by i, j, k
    if (axis == 0) { set(0, 1, -1); set(1, 0, 1); set(2, 3, -1); set(3, 2, 1); }
    if (axis == 1) { set(0, 2, -1); set(1, 3, 1); set(2, 0, 1); set(3, 1, -1); }
    if (axis == 2) { set(0, 3, -1); set(1, 2, -1); set(2, 1, 1); set(3, 0, 1); }
  } else {  // right multiplication by i, j, k
    if (axis == 0) { set(0, 1, -1); set(1, 0, 1); set(2, 3, 1); set(3, 2, -1); }
    if (axis == 1) { set(0, 2, -1); set(1, 3, -1); set(2, 0, 1); set(3, 1, 1); }
    if (axis == 2) { set(0, 3, -1); set(1, 2, 1); set(2, 1, -1); set(3, 0, 1); }
  }
  return b;
}

Eigen::MatrixXd exp_via_schur(const Eigen::MatrixXd& A) {
  int p = static_cast<int>(A.rows());
  Eigen::RealSchur<Eigen::MatrixXd> schur(A);
  const Eigen::MatrixXd& T = schur.matrixT();
  const Eigen::MatrixXd& Q = schur.matrixU();
  Eigen::MatrixXd E = Eigen::MatrixXd::Identity(p, p);
  int i = 0;
  while (i < p) {
    if (i + 1 < p && T(i + 1, i) != 0.0) {
      double theta = (T(i + 1, i) - T(i, i + 1)) / 2;
      E.block(i, i, 2, 2) = rot2(theta);
      i += 2;
    } else {
      i += 1;
    }
  }
  return Q * E * Q.transpose();
}

struct Plane {
  double theta;
  Eigen::VectorXd v1, v2;
};

// Planar decomposition of a rotation via its real Schur form. The Schur T of
// an orthogonal matrix is orthogonal and quasi-triangular, hence block
// diagonal up to roundoff: 2x2 rotation blocks and +-1 singletons. Block
// angles come from atan2, which stays well conditioned at every angle
// including pi.
void planes_of(const Rotation& R, std::vector<Plane>& planes,
               std::vector<Eigen::VectorXd>& fixed_axes) {
  int p = R.p();
  Eigen::RealSchur<Eigen::MatrixXd> schur(R.matrix());
  const Eigen::MatrixXd& T = schur.matrixT();
  const Eigen::MatrixXd& Q = schur.matrixU();
  std::vector<Eigen::VectorXd> plus_cols, minus_cols;
  int i = 0;
  while (i < p) {
    if (i + 1 < p && T(i + 1, i) != 0.0) {
      double c = (T(i, i) + T(i + 1, i + 1)) / 2;
      double s = (T(i + 1, i) - T(i, i + 1)) / 2;
      double theta = std::atan2(s, c);
      Eigen::VectorXd v1 = Q.col(i), v2 = Q.col(i + 1);
      if (theta < 0) {
        std::swap(v1, v2);
        theta = -theta;
      }
      planes.push_back({theta, std::move(v1), std::move(v2)});
      i += 2;
    } else {
      if (T(i, i) > 0)
        plus_cols.push_back(Q.col(i));
      else
        minus_cols.push_back(Q.col(i));
      i += 1;
    }
  }
  if (minus_cols.size() % 2 != 0)
    throw InvalidInputError("normal_form: matrix is not a rotation");
  for (std::size_t t = 0; t + 1 < minus_cols.size(); t += 2)
    planes.push_back({kPi, minus_cols[t], minus_cols[t + 1]});
  if (p % 2 == 1) {
    if (plus_cols.empty())
      throw InvalidInputError("normal_form: matrix is not a rotation");
    fixed_axes.push_back(plus_cols.back());
    plus_cols.pop_back();
  }
  if (plus_cols.size() % 2 != 0)
    throw InvalidInputError("normal_form: matrix is not a rotation");
  for (std::size_t t = 0; t + 1 < plus_cols.size(); t += 2)
    planes.push_back({0.0, plus_cols[t], plus_cols[t + 1]});
  std::stable_sort(planes.begin(), planes.end(),
                   [](const Plane& a, const Plane& b) { return a.theta > b.theta; });
}

}  // namespace

Rotation::Rotation(Eigen::MatrixXd R) {
  if (R.rows() < 1 || R.rows() != R.cols())
    throw InvalidInputError("Rotation: matrix must be square and nonempty");
  int p = static_cast<int>(R.rows());
  double orth = max_abs(R.transpose() * R - Eigen::MatrixXd::Identity(p, p));
  if (orth > kTolOrth)
    throw InvalidInputError("Rotation: columns not orthonormal");
  if (R.determinant() < 0)
    throw InvalidInputError("Rotation: determinant is negative");
  m_ = std::move(R);
}

Rotation Rotation::identity(int p) {
  return trusted(Eigen::MatrixXd::Identity(p, p));
}

Rotation Rotation::trusted(Eigen::MatrixXd R) {
  Rotation r;
  r.m_ = std::move(R);
  return r;
}

PosDiag::PosDiag(Eigen::VectorXd d) {
  if (d.size() < 1) throw InvalidInputError("PosDiag: empty diagonal");
  if ((d.array() <= 0).any())
    throw InvalidInputError("PosDiag: entries must be positive");
  d_ = std::move(d);
}

Eigen::MatrixXd PosDiag::matrix() const {
  return Eigen::MatrixXd(d_.asDiagonal());
}

SpdMatrix::SpdMatrix(Eigen::MatrixXd X) {
  if (X.rows() < 1 || X.rows() != X.cols())
    throw InvalidInputError("SpdMatrix: matrix must be square and nonempty");
  double scale = std::max(1.0, max_abs(X));
  if (max_abs(X - X.transpose()) > kTolOrth * scale)
    throw InvalidInputError("SpdMatrix: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().cwiseAbs().maxCoeff();
  if (es.eigenvalues().minCoeff() <= kTolEig * top)
    throw NotSpdError("SpdMatrix: eigenvalue not positive");
  m_ = std::move(X);
}

SkewMatrix::SkewMatrix(Eigen::MatrixXd A) {
  if (A.rows() < 1 || A.rows() != A.cols())
    throw InvalidInputError("SkewMatrix: matrix must be square and nonempty");
  double scale = std::max(1.0, max_abs(A));
  if (max_abs(A + A.transpose()) > kTolOrth * scale)
    throw InvalidInputError("SkewMatrix: matrix is not antisymmetric");
  m_ = std::move(A);
}

SkewMatrix SkewMatrix::zero(int p) {
  return trusted(Eigen::MatrixXd::Zero(p, p));
}

SkewMatrix SkewMatrix::trusted(Eigen::MatrixXd A) {
  SkewMatrix s;
  s.m_ = std::move(A);
  return s;
}

SpdMatrix compose_F(const EigenPoint& pt) {
  if (pt.U.p() != pt.D.p())
    throw InvalidInputError("compose_F: dimension mismatch");
  Eigen::MatrixXd X =
      pt.U.matrix() * pt.D.diag().asDiagonal() * pt.U.matrix().transpose();
  X = ((X + X.transpose()) / 2).eval();
  return SpdMatrix(std::move(X));
}

EigenPoint eigen_decompose(const SpdMatrix& X) {
  int p = X.p();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X.matrix());
  Eigen::VectorXd ev = es.eigenvalues();
  double top = ev.cwiseAbs().maxCoeff();
  if (ev.minCoeff() <= kTolEig * top)
    throw NotSpdError("eigen_decompose: eigenvalue not positive");
  Eigen::VectorXd d(p);
  Eigen::MatrixXd U(p, p);
  for (int i = 0; i < p; ++i) {  // ascending -> descending
    d(i) = ev(p - 1 - i);
    U.col(i) = es.eigenvectors().col(p - 1 - i);
  }
  if (U.determinant() < 0) U.col(p - 1) *= -1;
  return {Rotation::trusted(std::move(U)), PosDiag(std::move(d))};
}

Rotation so_exp(const SkewMatrix& A) {
  int p = A.p();
  const Eigen::MatrixXd& a = A.matrix();
  if (p == 1) return Rotation::identity(1);
  if (p == 2) return Rotation::trusted(rot2(a(1, 0)));
  if (p == 3) {
    double t = std::sqrt(a(2, 1) * a(2, 1) + a(0, 2) * a(0, 2) + a(1, 0) * a(1, 0));
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity() + sinc(t) * a + cosc(t) * (a * a);
    return Rotation::trusted(m);
  }
  if (p == 4) {
    // Commuting split of so(4) into left and right quaternion actions.
    Eigen::Matrix4d al = Eigen::Matrix4d::Zero(), ar = Eigen::Matrix4d::Zero();
    double na2 = 0, nb2 = 0;
    for (int axis = 0; axis < 3; ++axis) {
      Eigen::Matrix4d L = quat_side_basis(0, axis), R = quat_side_basis(1, axis);
      double ca = (L.transpose() * a).trace() / 4;
      double cb = (R.transpose() * a).trace() / 4;
      al += ca * L;
      ar += cb * R;
      na2 += ca * ca;
      nb2 += cb * cb;
    }
    double na = std::sqrt(na2), nb = std::sqrt(nb2);
    Eigen::Matrix4d el = std::cos(na) * Eigen::Matrix4d::Identity() + sinc(na) * al;
    Eigen::Matrix4d er = std::cos(nb) * Eigen::Matrix4d::Identity() + sinc(nb) * ar;
    return Rotation::trusted(el * er);
  }
  return Rotation::trusted(exp_via_schur(a));
}

NormalForm normal_form(const Rotation& R) {
  int p = R.p();
  NormalForm nf;
  if (p == 1) {
    nf.angles = Eigen::VectorXd::Zero(1);
    nf.frame = Eigen::MatrixXd::Identity(1, 1);
    return nf;
  }
  std::vector<Plane> planes;
  std::vector<Eigen::VectorXd> axes;
  planes_of(R, planes, axes);
  int k = p / 2;
  nf.angles = Eigen::VectorXd::Zero((p + 1) / 2);
  nf.frame = Eigen::MatrixXd(p, p);
  for (int i = 0; i < k; ++i) {
    nf.angles(i) = planes[i].theta;
    nf.frame.col(2 * i) = planes[i].v1;
    nf.frame.col(2 * i + 1) = planes[i].v2;
  }
  if (p % 2 == 1) nf.frame.col(p - 1) = axes[0];
  return nf;
}

SoLogResult so_log(const Rotation& R) {
  int p = R.p();
  SoLogResult out{SkewMatrix::zero(p), is_involution(R)};
  if (p == 1) return out;
  std::vector<Plane> planes;
  std::vector<Eigen::VectorXd> axes;
  planes_of(R, planes, axes);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p, p);
  for (const Plane& pl : planes)
    A += pl.theta * (pl.v2 * pl.v1.transpose() - pl.v1 * pl.v2.transpose());
  out.principal = SkewMatrix::trusted(((A - A.transpose()) / 2).eval());
  return out;
}

double d_so(const Rotation& U, const Rotation& V) {
  if (U.p() != V.p()) throw InvalidInputError("d_so: dimension mismatch");
  Rotation rel = Rotation::trusted(U.matrix().transpose() * V.matrix());
  NormalForm nf = normal_form(rel);
  return nf.angles.norm();
}

double d_diag(const PosDiag& D, const PosDiag& L) {
  if (D.p() != L.p()) throw InvalidInputError("d_diag: dimension mismatch");
  return (D.log() - L.log()).norm();
}

double d_m(double k, const EigenPoint& a, const EigenPoint& b) {
  double dr = d_so(a.U, b.U);
  double dd = d_diag(a.D, b.D);
  return std::sqrt(k * dr * dr + dd * dd);
}

bool is_involution(const Rotation& R) {
  int p = R.p();
  const Eigen::MatrixXd& m = R.matrix();
  if (max_abs(m * m - Eigen::MatrixXd::Identity(p, p)) > kTolEig) return false;
  return max_abs(m - Eigen::MatrixXd::Identity(p, p)) > kTolEig;
}

int level(const Rotation& R) {
  if (!is_involution(R)) throw NotInvolutionError("level: not an involution");
  Eigen::MatrixXd sym = (R.matrix() + R.matrix().transpose()) / 2;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  int m = 0;
  for (int i = 0; i < R.p(); ++i)
    if (es.eigenvalues()(i) < -1 + kTolEig) ++m;
  return m;
}

}  // namespace srgeom
