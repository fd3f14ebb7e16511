#include <doctest.h>

#include <cmath>
#include <complex>

#include "srgeom/core.hpp"
#include "srgeom/quat3.hpp"
#include "test_util.hpp"

using namespace srgeom;
using testutil::Rng;

namespace {
constexpr double kPi = 3.14159265358979323846;

UnitQuaternion random_unit_quat(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return UnitQuaternion(g(rng), g(rng), g(rng), g(rng));  // ctor normalizes
}

Eigen::Matrix3d cross_mat(const Eigen::Vector3d& u) {
  Eigen::Matrix3d a;
  a << 0, -u(2), u(1), u(2), 0, -u(0), -u(1), u(0), 0;
  return a;
}
}  // namespace

TEST_CASE("quaternion algebra: i j = k and friends") {
  UnitQuaternion i(0, 1, 0, 0), j(0, 0, 1, 0), k(0, 0, 0, 1);
  CHECK(qmul(i, j) == k);
  CHECK(qmul(j, k) == i);
  CHECK(qmul(k, i) == j);
  UnitQuaternion ji = qmul(j, i);
  CHECK(ji.x3 == doctest::Approx(-1.0));
  UnitQuaternion ii = qmul(i, i);
  CHECK(ii.x0 == doctest::Approx(-1.0));
}

TEST_CASE("phi is a double-cover homomorphism") {
  Rng rng(41);
  for (int t = 0; t < 30; ++t) {
    UnitQuaternion a = random_unit_quat(rng), b = random_unit_quat(rng);
    CHECK(testutil::max_abs_diff(phi(qmul(a, b)).matrix(),
                                 phi(a).matrix() * phi(b).matrix()) < 1e-12);
    UnitQuaternion na(-a.x0, -a.x1, -a.x2, -a.x3);
    CHECK(testutil::max_abs_diff(phi(a).matrix(), phi(na).matrix()) < 1e-15);
  }
  CHECK(testutil::max_abs_diff(phi(UnitQuaternion(1, 0, 0, 0)).matrix(),
                               Eigen::MatrixXd::Identity(3, 3)) == 0.0);
}

TEST_CASE("phi matches the rotation exponential") {
  Rng rng(42);
  std::uniform_real_distribution<double> ang(0.05, 3.0);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 25; ++t) {
    Eigen::Vector3d u(g(rng), g(rng), g(rng));
    u.normalize();
    double theta = ang(rng);
    UnitQuaternion q(std::cos(theta / 2), std::sin(theta / 2) * u(0),
                     std::sin(theta / 2) * u(1), std::sin(theta / 2) * u(2));
    Rotation r = so_exp(SkewMatrix(theta * cross_mat(u)));
    CHECK(testutil::max_abs_diff(phi(q).matrix(), r.matrix()) < 1e-12);
  }
}

TEST_CASE("phi on the axis units and a quarter turn") {
  Eigen::Matrix3d di = Eigen::Vector3d(1, -1, -1).asDiagonal();
  Eigen::Matrix3d dj = Eigen::Vector3d(-1, 1, -1).asDiagonal();
  Eigen::Matrix3d dk = Eigen::Vector3d(-1, -1, 1).asDiagonal();
  CHECK(testutil::max_abs_diff(phi(UnitQuaternion(0, 1, 0, 0)).matrix(), di) <
        1e-15);
  CHECK(testutil::max_abs_diff(phi(UnitQuaternion(0, 0, 1, 0)).matrix(), dj) <
        1e-15);
  CHECK(testutil::max_abs_diff(phi(UnitQuaternion(0, 0, 0, 1)).matrix(), dk) <
        1e-15);
  double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix3d quarter;
  quarter << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  CHECK(testutil::max_abs_diff(phi(UnitQuaternion(s, 0, 0, s)).matrix(),
                               quarter) < 1e-15);
}

TEST_CASE("phi_circle rotates the equal-pair plane by twice the argument") {
  for (double a : {0.2, 1.1, 2.6}) {
    Rotation r = phi_circle(std::polar(1.0, a));
    Eigen::Matrix3d expect;
    expect << 1, 0, 0, 0, std::cos(2 * a), -std::sin(2 * a), 0,
        std::sin(2 * a), std::cos(2 * a);
    CHECK(testutil::max_abs_diff(r.matrix(), expect) < 1e-14);
  }
}

TEST_CASE("lifts invert phi") {
  Rng rng(43);
  for (int t = 0; t < 30; ++t) {
    Rotation r = testutil::random_rotation(3, rng);
    UnitQuaternion q = quat_lift_any(r);
    CHECK(q.re() >= 0.0);
    CHECK(testutil::max_abs_diff(phi(q).matrix(), r.matrix()) < 1e-11);
    UnitQuaternion h = half_angle_lift(r);
    CHECK(testutil::max_abs_diff(phi(h).matrix(), r.matrix()) < 1e-11);
  }
  Rotation flip(Eigen::MatrixXd(Eigen::Vector3d(-1, -1, 1).asDiagonal()));
  CHECK_THROWS_AS(half_angle_lift(flip), AtCutLocusError);
  CHECK_NOTHROW(quat_lift_any(flip));
}

TEST_CASE("quat_distance equals the SO(3) geodesic distance") {
  Rng rng(44);
  for (int t = 0; t < 100; ++t) {
    UnitQuaternion a = random_unit_quat(rng), b = random_unit_quat(rng);
    CHECK(testutil::near(quat_distance(a, b), d_so(phi(a), phi(b)), 1e-6));
  }
}

TEST_CASE("hypercomplex_split reconstructs the relative rotation") {
  Rng rng(45);
  for (int t = 0; t < 30; ++t) {
    Rotation u = testutil::random_rotation(3, rng);
    Rotation v = testutil::random_rotation(3, rng);
    HyperComplex zw = hypercomplex_split(u, v);
    CHECK(std::norm(zw.z) + std::norm(zw.w) == doctest::Approx(1.0).epsilon(1e-12));
    UnitQuaternion q(zw.z.real(), zw.z.imag(), zw.w.real(), zw.w.imag());
    CHECK(testutil::max_abs_diff(phi(q).matrix(),
                                 u.matrix().transpose() * v.matrix()) < 1e-10);
  }
}

TEST_CASE("pair angles: ranges and the complementary-angle identity") {
  Rng rng(46);
  for (int t = 0; t < 50; ++t) {
    Rotation u = testutil::random_rotation(3, rng);
    Rotation v = testutil::random_rotation(3, rng);
    HyperComplex zw = hypercomplex_split(u, v);
    PairAngles pa = varphi_beta(zw);
    for (double a : {pa.varphi, pa.beta, pa.beta_prime}) {
      CHECK(a >= -1e-15);
      CHECK(a <= kPi / 4 + 1e-15);
    }
    // acos((|z| + |w|) / sqrt(2)) = pi/4 - varphi.
    double lhs = std::acos(
        std::min(1.0, (std::abs(zw.z) + std::abs(zw.w)) / std::sqrt(2.0)));
    CHECK(testutil::near(lhs, kPi / 4 - pa.varphi, 1e-12));
  }
}

TEST_CASE("coset tables: labels, induced permutations, signed-perm images") {
  CosetTables ct = coset_tables();
  REQUIRE(ct.z_star.size() == 6);
  REQUIRE(ct.z_11.size() == 3);
  CHECK(ct.z_star[0].label == "1");
  CHECK(ct.z_star[1].label == "j");
  CHECK(ct.z_star[2].label == "zeta_j+");
  CHECK(ct.z_star[3].label == "zeta_j-");
  CHECK(ct.z_star[4].label == "zeta_k+");
  CHECK(ct.z_star[5].label == "zeta_k-");
  CHECK(ct.z_11[0].label == "1");
  CHECK(ct.z_11[1].label == "j");
  CHECK(ct.z_11[2].label == "zeta_j+");

  auto check_rep = [](const CosetRep& rep) {
    Eigen::Matrix3d m = phi(rep.zeta).matrix();
    // Image is a signed permutation matrix...
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::min(std::abs(m(i, j)), std::abs(std::abs(m(i, j)) - 1.0)) <
              1e-14);
    // ...whose conjugation action permutes a diagonal by rep.pi.
    Eigen::Vector3d v(2, 3, 5);
    Eigen::Matrix3d conj = m * v.asDiagonal() * m.transpose();
    for (int i = 0; i < 3; ++i)
      CHECK(conj(i, i) == doctest::Approx(v(rep.pi[i])).epsilon(1e-13));
  };
  for (const CosetRep& rep : ct.z_star) check_rep(rep);
  for (const CosetRep& rep : ct.z_11) check_rep(rep);

  // The equal-pair table is {1, j, zeta_{j,+}}.
  CHECK(testutil::max_abs_diff(phi(ct.z_11[0].zeta).matrix(),
                               Eigen::MatrixXd::Identity(3, 3)) < 1e-15);
  CHECK(testutil::max_abs_diff(
            phi(ct.z_11[1].zeta).matrix(),
            Eigen::Matrix3d(Eigen::Vector3d(-1, 1, -1).asDiagonal())) < 1e-15);
  Eigen::Matrix3d zjp;
  zjp << 0, 0, 1, 0, 1, 0, -1, 0, 0;
  CHECK(testutil::max_abs_diff(phi(ct.z_11[2].zeta).matrix(), zjp) < 1e-15);
}
