#include "srgeom/quat3.hpp"

#include <algorithm>
#include <cmath>

namespace srgeom {
namespace {

constexpr double kZeroComponent = 1e-12;

double clamp_unit(double v) { return std::min(1.0, std::max(-1.0, v)); }

// Deterministic sign gauge: real part positive; if it vanishes, the first
// nonzero imaginary component is made positive.
UnitQuaternion gauge(UnitQuaternion q) {
  bool flip;
  if (std::abs(q.x0) > kZeroComponent) {
    flip = q.x0 < 0;
  } else {
    double lead = 0;
    for (double v : {q.x1, q.x2, q.x3}) {
      if (std::abs(v) > kZeroComponent) {
        lead = v;
        break;
      }
    }
    flip = lead < 0;
  }
  if (flip) return UnitQuaternion(-q.x0, -q.x1, -q.x2, -q.x3);
  return q;
}

}  // namespace

UnitQuaternion::UnitQuaternion(double a, double b, double c, double d)
    : x0(a), x1(b), x2(c), x3(d) {
  double n = std::sqrt(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3);
  if (n < 1e-12)
    throw InvalidInputError("UnitQuaternion: input has near-zero norm");
  x0 /= n;
  x1 /= n;
  x2 /= n;
  x3 /= n;
}

UnitQuaternion qmul(const UnitQuaternion& a, const UnitQuaternion& b) {
  return UnitQuaternion(
      a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
      a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
      a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
      a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0);
}

Rotation phi(const UnitQuaternion& q) {
  double a = q.x0, b = q.x1, c = q.x2, d = q.x3;
  Eigen::Matrix3d R;
  R << 1 - 2 * (c * c + d * d), 2 * (b * c - a * d), 2 * (b * d + a * c),
      2 * (b * c + a * d), 1 - 2 * (b * b + d * d), 2 * (c * d - a * b),
      2 * (b * d - a * c), 2 * (c * d + a * b), 1 - 2 * (b * b + c * c);
  return Rotation::trusted(R);
}

Rotation phi_circle(const std::complex<double>& xi) {
  return phi(UnitQuaternion(xi.real(), xi.imag(), 0, 0));
}

UnitQuaternion quat_lift_any(const Rotation& R) {
  if (R.p() != 3) throw BadDimensionError("quat_lift_any: p must be 3");
  const Eigen::MatrixXd& m = R.matrix();
  double t = m.trace();
  double cand[4] = {1 + t, 1 + 2 * m(0, 0) - t, 1 + 2 * m(1, 1) - t,
                    1 + 2 * m(2, 2) - t};
  int pivot = static_cast<int>(std::max_element(cand, cand + 4) - cand);
  double s = 0.5 * std::sqrt(std::max(cand[pivot], 0.0));
  double w, x, y, z;
  switch (pivot) {
    case 0:
      w = s;
      x = (m(2, 1) - m(1, 2)) / (4 * s);
      y = (m(0, 2) - m(2, 0)) / (4 * s);
      z = (m(1, 0) - m(0, 1)) / (4 * s);
      break;
    case 1:
      x = s;
      w = (m(2, 1) - m(1, 2)) / (4 * s);
      y = (m(0, 1) + m(1, 0)) / (4 * s);
      z = (m(0, 2) + m(2, 0)) / (4 * s);
      break;
    case 2:
      y = s;
      w = (m(0, 2) - m(2, 0)) / (4 * s);
      x = (m(0, 1) + m(1, 0)) / (4 * s);
      z = (m(1, 2) + m(2, 1)) / (4 * s);
      break;
    default:
      z = s;
      w = (m(1, 0) - m(0, 1)) / (4 * s);
      x = (m(0, 2) + m(2, 0)) / (4 * s);
      y = (m(1, 2) + m(2, 1)) / (4 * s);
      break;
  }
  return gauge(UnitQuaternion(w, x, y, z));
}

UnitQuaternion half_angle_lift(const Rotation& R) {
  if (R.p() != 3) throw BadDimensionError("half_angle_lift: p must be 3");
  if (is_involution(R))
    throw AtCutLocusError("half_angle_lift: rotation angle is pi");
  return quat_lift_any(R);
}

double quat_distance(const UnitQuaternion& q1, const UnitQuaternion& q2) {
  double dot = q1.x0 * q2.x0 + q1.x1 * q2.x1 + q1.x2 * q2.x2 + q1.x3 * q2.x3;
  return 2 * std::acos(clamp_unit(std::abs(dot)));
}

HyperComplex hypercomplex_split(const Rotation& U, const Rotation& V) {
  Rotation rel = Rotation::trusted(U.matrix().transpose() * V.matrix());
  UnitQuaternion q = half_angle_lift(rel);
  HyperComplex zw;
  zw.z = {q.x0, q.x1};
  zw.w = {q.x2, q.x3};
  return zw;
}

PairAngles varphi_beta(const HyperComplex& zw) {
  std::complex<double> cross = std::conj(zw.z) * zw.w;
  PairAngles a;
  a.varphi = std::acos(clamp_unit(std::max(std::abs(zw.z), std::abs(zw.w))));
  a.beta = std::acos(
      std::sqrt(clamp_unit((1 + 2 * std::abs(cross.real())) / 2)));
  a.beta_prime = std::acos(
      std::sqrt(clamp_unit((1 + 2 * std::abs(cross.imag())) / 2)));
  return a;
}

CosetTables coset_tables() {
  const double r = 1 / std::sqrt(2.0);
  CosetTables t;
  std::array<int, 3> id{0, 1, 2};
  std::array<int, 3> swap02{2, 1, 0};
  std::array<int, 3> swap01{1, 0, 2};
  t.z_star = {
      {"1", UnitQuaternion(1, 0, 0, 0), id},
      {"j", UnitQuaternion(0, 0, 1, 0), id},
      {"zeta_j+", UnitQuaternion(r, 0, r, 0), swap02},
      {"zeta_j-", UnitQuaternion(r, 0, -r, 0), swap02},
      {"zeta_k+", UnitQuaternion(r, 0, 0, r), swap01},
      {"zeta_k-", UnitQuaternion(r, 0, 0, -r), swap01},
  };
  t.z_11 = {t.z_star[0], t.z_star[1], t.z_star[2]};
  return t;
}

}  // namespace srgeom
