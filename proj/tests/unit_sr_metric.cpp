#include <doctest.h>

#include <cmath>
#include <complex>

#include "srgeom/quat3.hpp"
#include "srgeom/sr_metric.hpp"
#include "srgeom/strata.hpp"
#include "test_util.hpp"

using namespace srgeom;
using testutil::Rng;

namespace {
constexpr double kPi = 3.14159265358979323846;

SpdMatrix from_diag(double a, double b, double c) {
  return SpdMatrix(Eigen::Vector3d(a, b, c).asDiagonal());
}

Rotation rot_of(std::complex<double> z, std::complex<double> w) {
  return phi(UnitQuaternion(z.real(), z.imag(), w.real(), w.imag()));
}

// (z, w) with |z| = |w| and relative phase alpha; |z|^2 + |w|^2 = 1.
std::pair<std::complex<double>, std::complex<double>> balanced_zw(double alpha) {
  double r = 1.0 / std::sqrt(2.0);
  return {std::complex<double>(r, 0), std::polar(r, alpha)};
}

void check_curve_set(const MssrSet& set, const SpdMatrix& x, const SpdMatrix& y,
                     double k) {
  double d = d_sr(x, y, k);
  for (const MssrCurve& c : set.curves) {
    CHECK(testutil::max_abs_diff(eval_curve(c, 0.0).matrix(), x.matrix()) <
          1e-9);
    CHECK(testutil::max_abs_diff(eval_curve(c, 1.0).matrix(), y.matrix()) <
          1e-9);
    CHECK(testutil::near(c.length, d, 1e-9));
  }
  for (std::size_t i = 0; i < set.curves.size(); ++i)
    for (std::size_t j = i + 1; j < set.curves.size(); ++j)
      CHECK_FALSE(curves_equal_p3(set.curves[i], set.curves[j]));
}
}  // namespace

TEST_CASE("distance basics") {
  Rng rng(61);
  for (int t = 0; t < 5; ++t) {
    SpdMatrix x = testutil::random_spd_mid3(rng);
    CHECK(d_sr(x, x) < 1e-9);
    SpdMatrix y = testutil::random_spd_distinct(3, rng);
    CHECK(testutil::near(d_sr(x, y), d_sr(y, x), 1e-12));
  }
  CHECK(d_sr(from_diag(4, 1, 1), from_diag(9, 1, 1)) ==
        doctest::Approx(std::log(9.0 / 4.0)).epsilon(1e-12));
  CHECK_THROWS_AS(d_sr(from_diag(4, 1, 1), from_diag(9, 1, 1), 0.0),
                  InvalidInputError);
  CHECK_THROWS_AS(d_sr(from_diag(4, 1, 1), from_diag(9, 1, 1), -2.0),
                  InvalidInputError);
}

TEST_CASE("isotropic start: pure scaling law for any end stratum") {
  Rng rng(62);
  for (int p = 2; p <= 6; ++p) {
    for (int t = 0; t < 6; ++t) {
      double c = std::exp(0.8 - 0.3 * t);
      SpdMatrix x(Eigen::MatrixXd(c * Eigen::MatrixXd::Identity(p, p)));
      SpdMatrix y = t % 2 ? testutil::random_spd_distinct(p, rng)
                          : SpdMatrix(Eigen::MatrixXd(
                                std::exp(0.4) * Eigen::MatrixXd::Identity(p, p)));
      Eigen::VectorXd lam = eigen_decompose(y).D.diag();
      double expect = (lam.array().log() - std::log(c)).matrix().norm();
      CHECK(testutil::near(d_sr(x, y), expect, 1e-12));
      CHECK(testutil::near(d_sr(y, x), expect, 1e-12));
    }
  }
  SrReport rep = d_sr_report(SpdMatrix(Eigen::MatrixXd::Identity(3, 3)),
                             from_diag(9, 4, 1));
  CHECK(rep.branch == "isotropic");
}

TEST_CASE("aligned distinct diagonals reduce to the log-Euclidean distance") {
  SpdMatrix x = from_diag(9, 4, 1);
  SpdMatrix y = from_diag(18, 8, 2);
  CHECK(testutil::near(d_sr(x, y), std::sqrt(3.0) * std::log(2.0), 1e-12));
  SrReport rep = d_sr_report(x, y);
  CHECK(rep.branch == "enumeration");
  CHECK(rep.case_tag == "top->top");
  CHECK(rep.stratum_x == IntPartition::of({1, 1, 1}));
}

TEST_CASE("closed form agrees with the grid oracle") {
  Rng rng(63);
  for (int t = 0; t < 12; ++t) {
    SpdMatrix x = testutil::random_spd_mid3(rng);
    SpdMatrix y = t % 2 ? testutil::random_spd_distinct(3, rng)
                        : testutil::random_spd_mid3(rng);
    double d = d_sr(x, y);
    double o = brute_force_oracle(x, y, 1.0, 720);
    CHECK(o - d > -1e-9);  // the grid converges from above
    CHECK(std::abs(o - d) <= 5e-4);
  }
}

TEST_CASE("pure rotation pairs cost sqrt(k) times the angle") {
  double alpha = 0.7;
  Eigen::Matrix3d r;
  r << std::cos(alpha), -std::sin(alpha), 0, std::sin(alpha), std::cos(alpha),
      0, 0, 0, 1;
  SpdMatrix x = from_diag(4, 1, 1);
  SpdMatrix y(r * x.matrix() * r.transpose());
  CHECK(testutil::near(d_sr(x, y, 1.0), alpha, 1e-12));
  CHECK(testutil::near(d_sr(x, y, 4.0), 2.0 * alpha, 1e-12));
  CHECK(testutil::near(brute_force_oracle(x, y, 1.0, 720), alpha, 5e-4));
}

TEST_CASE("branch lengths satisfy the exchange identities") {
  Rng rng(64);
  for (int t = 0; t < 25; ++t) {
    bool to_top = t % 2 == 0;
    std::uniform_real_distribution<double> bgap(0.4, 1.5);
    double b = bgap(rng);
    EigenPoint ex{testutil::random_rotation(3, rng),
                  PosDiag(Eigen::Vector3d(std::exp(b), 1, 1))};
    Eigen::Vector3d lam;
    if (to_top) {
      double a1 = bgap(rng), a3 = -bgap(rng);
      lam << std::exp(a1), 1, std::exp(a3);
    } else {
      lam << std::exp(bgap(rng)), 1, 1;
    }
    EigenPoint ey{testutil::random_rotation(3, rng), PosDiag(lam)};
    double k = t % 3 ? 1.0 : 2.5;
    EllTriple ell = ell_values(ex, ey, k);
    PairAngles pa = varphi_beta(hypercomplex_split(ex.U, ey.U));
    double la1 = std::log(lam(0)), la2 = 0.0, la3 = std::log(lam(2));
    if (to_top) {
      CHECK(ell.has_ell_12);
      double lhs = ell.ell_id * ell.ell_id - ell.ell_13 * ell.ell_13;
      double rhs = 4 * k * (pa.varphi * pa.varphi - pa.beta * pa.beta) -
                   2 * b * (la1 - la3);
      CHECK(testutil::near(lhs, rhs, 1e-10));
      double lhs2 = ell.ell_id * ell.ell_id - ell.ell_12 * ell.ell_12;
      double rhs2 =
          4 * k * (pa.varphi * pa.varphi - pa.beta_prime * pa.beta_prime) -
          2 * b * (la1 - la2);
      CHECK(testutil::near(lhs2, rhs2, 1e-10));
    } else {
      CHECK_FALSE(ell.has_ell_12);
      double lhs = ell.ell_id * ell.ell_id - ell.ell_13 * ell.ell_13;
      double rhs = 2 * k * kPi * (pa.varphi - kPi / 8) - 2 * b * (la1 - la2);
      CHECK(testutil::near(lhs, rhs, 1e-10));
    }
  }
}

TEST_CASE("engineered cardinalities: equal-pair to distinct end") {
  double k = 1.0;
  SpdMatrix x(Eigen::Vector3d(std::exp(1.0), 1, 1).asDiagonal());
  auto [z, w] = balanced_zw(0.6);
  Rotation v = rot_of(z, w);
  double beta = 0.3;                                         // alpha / 2
  double bp = std::acos(std::sqrt((1 + std::sin(0.6)) / 2));  // mixed angle
  double gap13 = 2 * (kPi * kPi / 16 - beta * beta);
  double gap12 = 2 * (kPi * kPi / 16 - bp * bp);

  SUBCASE("one curve: generic instance") {
    Rotation vg = rot_of(std::complex<double>(0.62, 0.33),
                         std::complex<double>(0.55, 0.44));
    SpdMatrix y = compose_F(EigenPoint{vg, PosDiag(Eigen::Vector3d(9, 4, 1))});
    MssrSet set = classify_mssr(x, y, k);
    CHECK(set.cardinality == 1);
    CHECK_FALSE(set.infinite);
    check_curve_set(set, x, y, k);
  }
  SUBCASE("two curves: balanced pair, scaling branch strictly minimal") {
    Eigen::Vector3d lam(std::exp(1.5), std::exp(0.5), std::exp(0.2));
    SpdMatrix y = compose_F(EigenPoint{v, PosDiag(lam)});
    MssrSet set = classify_mssr(x, y, k);
    REQUIRE(set.cardinality == 2);
    CHECK(set.curves[0].class_label == "A1");
    CHECK(set.curves[1].class_label == "A2");
    check_curve_set(set, x, y, k);
  }
  SUBCASE("three curves: balanced pair with a two-branch tie") {
    Eigen::Vector3d lam(std::exp(0.6), std::exp(-0.3), std::exp(0.6 - gap13));
    SpdMatrix y = compose_F(EigenPoint{v, PosDiag(lam)});
    MssrSet set = classify_mssr(x, y, k);
    REQUIRE(set.cardinality == 3);
    CHECK(set.curves[0].class_label == "A1");
    CHECK(set.curves[1].class_label == "A2");
    CHECK(set.curves[2].class_label[0] == 'B');
    check_curve_set(set, x, y, k);
  }
  SUBCASE("four curves: balanced pair with a three-branch tie") {
    Eigen::Vector3d lam(std::exp(0.7), std::exp(0.7 - gap12),
                        std::exp(0.7 - gap13));
    SpdMatrix y = compose_F(EigenPoint{v, PosDiag(lam)});
    MssrSet set = classify_mssr(x, y, k);
    REQUIRE(set.cardinality == 4);
    CHECK(set.curves[0].class_label == "A1");
    CHECK(set.curves[1].class_label == "A2");
    // The sign sublabel of the mixed branches tracks the eigenvector sign
    // convention, so only the branch letter is pinned.
    CHECK(set.curves[2].class_label[0] == 'B');
    CHECK(set.curves[3].class_label[0] == 'C');
    check_curve_set(set, x, y, k);
  }
}

TEST_CASE("engineered cardinalities: equal-pair to equal-pair") {
  double k = 1.0;
  auto [z, w] = balanced_zw(0.6);
  Rotation v = rot_of(z, w);

  SUBCASE("one curve: generic instance") {
    SpdMatrix x = from_diag(4, 1, 1);
    Rotation vg = rot_of(std::complex<double>(0.62, 0.33),
                         std::complex<double>(0.55, 0.44));
    SpdMatrix y = compose_F(EigenPoint{vg, PosDiag(Eigen::Vector3d(9, 2, 2))});
    MssrSet set = classify_mssr(x, y, k);
    CHECK(set.cardinality == 1);
    check_curve_set(set, x, y, k);
  }
  SUBCASE("two curves: balanced pair, scaling branch strictly minimal") {
    SpdMatrix x(Eigen::Vector3d(std::exp(1.2), 1, 1).asDiagonal());
    SpdMatrix y(v.matrix() * x.matrix() * v.matrix().transpose());
    MssrSet set = classify_mssr(x, y, k);
    REQUIRE(set.cardinality == 2);
    CHECK(set.curves[0].class_label == "A1'");
    CHECK(set.curves[1].class_label == "A2'");
    check_curve_set(set, x, y, k);
  }
  SUBCASE("three curves: balanced pair on the branch tie") {
    SpdMatrix x(Eigen::Vector3d(std::exp(1.0), 1, 1).asDiagonal());
    Eigen::Vector3d lam(std::exp(kPi * kPi / 8), 1, 1);
    SpdMatrix y = compose_F(EigenPoint{v, PosDiag(lam)});
    MssrSet set = classify_mssr(x, y, k);
    REQUIRE(set.cardinality == 3);
    CHECK(set.curves[0].class_label == "A1'");
    CHECK(set.curves[1].class_label == "A2'");
    CHECK(set.curves[2].class_label == "B'");
    check_curve_set(set, x, y, k);
  }
  SUBCASE("infinite family: aligned prolate and oblate, deep product") {
    SpdMatrix x = from_diag(4, 1, 1);
    SpdMatrix y = from_diag(0.25, 1, 1);
    MssrSet set = classify_mssr(x, y, k);
    CHECK(set.infinite);
    CHECK(set.cardinality == kCardinalityInfinite);
    REQUIRE(set.curves.size() == kInfiniteFamilySamples);
    for (const MssrCurve& c : set.curves) CHECK(c.class_label == "C'");
    check_curve_set(set, x, y, k);
  }
  SUBCASE("finite branch: aligned prolate and oblate, shallow product") {
    SpdMatrix x = from_diag(4, 1, 1);
    SpdMatrix y = from_diag(1 / 1.1, 1, 1);
    MssrSet set = classify_mssr(x, y, k);
    CHECK_FALSE(set.infinite);
    REQUIRE(set.cardinality == 1);
    CHECK(set.curves[0].class_label == "A1'");
    check_curve_set(set, x, y, k);
  }
}

TEST_CASE("stepwise construction agrees with the classifier") {
  Rng rng(65);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    bool involutive = t % 6 == 5;
    SpdMatrix x = involutive
                      ? testutil::compose(testutil::random_rotation(3, rng),
                                          Eigen::Vector3d(std::exp(1.3), 1, 1))
                      : testutil::random_spd_mid3(rng);
    SpdMatrix y = [&] {
      if (involutive) {
        // Involutive relative rotation: end frame differs by a half turn.
        EigenPoint ex = eigen_decompose(x);
        Eigen::Vector3d axis(g(rng), g(rng), g(rng));
        axis.normalize();
        Rotation rel = phi(UnitQuaternion(0, axis(0), axis(1), axis(2)));
        Rotation vf(ex.U.matrix() * rel.matrix());
        Eigen::Vector3d lam(std::exp(1.1), 1, std::exp(-0.7));
        if ((t / 6) % 2) lam = Eigen::Vector3d(std::exp(0.9), 1, 1);
        return compose_F(EigenPoint{vf, PosDiag(lam)});
      }
      return t % 2 ? testutil::random_spd_distinct(3, rng)
                   : testutil::random_spd_mid3(rng);
    }();
    MssrSet a = classify_mssr(x, y);
    MssrSet b = mssr_stepwise(x, y);
    REQUIRE(a.curves.size() == b.curves.size());
    CHECK(a.cardinality == b.cardinality);
    CHECK(a.infinite == b.infinite);
    for (std::size_t i = 0; i < a.curves.size(); ++i) {
      CHECK(a.curves[i].class_label == b.curves[i].class_label);
      CHECK(testutil::near(a.curves[i].length, b.curves[i].length, 1e-10));
      CHECK(curves_equal_p3(a.curves[i], b.curves[i], 1e-7));
    }
  }
}

TEST_CASE("curve calculus") {
  SpdMatrix x = from_diag(4, 1, 1);
  Rotation v = rot_of(std::complex<double>(0.62, 0.33),
                      std::complex<double>(0.55, 0.44));
  SpdMatrix y = compose_F(EigenPoint{v, PosDiag(Eigen::Vector3d(9, 4, 1))});
  MssrSet set = classify_mssr(x, y);
  REQUIRE(!set.curves.empty());
  const MssrCurve& c = set.curves[0];

  Rotation stepped = so_exp(SkewMatrix(c.A));
  CHECK(testutil::max_abs_diff(stepped.matrix() * c.start.U.matrix(),
                               c.end.U.matrix()) < 1e-10);
  Eigen::VectorXd scaled =
      (c.start.D.log() + c.L).array().exp().matrix();
  CHECK(testutil::max_abs_diff(scaled, c.end.D.diag()) < 1e-10);

  double t = 0.3;
  SpdMatrix mid = eval_curve(c, t);
  double expect_det = std::pow(x.matrix().determinant(), 1 - t) *
                      std::pow(y.matrix().determinant(), t);
  CHECK(mid.matrix().determinant() == doctest::Approx(expect_det).epsilon(1e-9));
  CHECK_THROWS_AS(eval_curve(c, 1.5), InvalidInputError);
  CHECK_THROWS_AS(eval_curve(c, -0.1), InvalidInputError);
}

TEST_CASE("curve equality predicate") {
  SpdMatrix x(Eigen::Vector3d(std::exp(1.0), 1, 1).asDiagonal());
  auto [z, w] = balanced_zw(0.6);
  Rotation v = rot_of(z, w);
  Eigen::Vector3d lam(std::exp(1.5), std::exp(0.5), std::exp(0.2));
  SpdMatrix y = compose_F(EigenPoint{v, PosDiag(lam)});
  MssrSet set = classify_mssr(x, y);
  REQUIRE(set.curves.size() == 2);
  CHECK(curves_equal_p3(set.curves[0], set.curves[0]));
  CHECK(curves_equal_p3(set.curves[1], set.curves[1]));
  CHECK_FALSE(curves_equal_p3(set.curves[0], set.curves[1]));

  SpdMatrix y2 = compose_F(
      EigenPoint{v, PosDiag(Eigen::Vector3d(std::exp(0.4), 1.0, std::exp(-0.3)))});
  MssrSet other = classify_mssr(x, y2);
  REQUIRE(!other.curves.empty());
  CHECK_THROWS_AS(curves_equal_p3(set.curves[0], other.curves[0]),
                  MismatchedEndpointsError);
}

TEST_CASE("tie tolerance band raises Degenerate instead of guessing") {
  SpdMatrix x = from_diag(4, 1, 1);
  SpdMatrix y = from_diag(0.25, 1, 1);
  // The two branch lengths differ by ~0.26; a tolerance of 0.5 places that
  // difference inside (tol/10, tol).
  CHECK_THROWS_AS(classify_mssr(x, y, 1.0, 0.5), DegenerateError);
  CHECK_NOTHROW(classify_mssr(x, y, 1.0, kTolTie));
  CHECK_NOTHROW(d_sr(x, y));  // the distance itself has no tie to resolve
}

TEST_CASE("stratum guards") {
  Rng rng(66);
  CHECK_THROWS_AS(classify_mssr(from_diag(9, 4, 1), from_diag(4, 1, 1)),
                  WrongStratumError);
  CHECK_THROWS_AS(
      classify_mssr(SpdMatrix(Eigen::MatrixXd::Identity(3, 3)), from_diag(9, 4, 1)),
      WrongStratumError);
  SpdMatrix x4(Eigen::Vector4d(4, 1, 1, 1).asDiagonal());
  SpdMatrix y4(Eigen::Vector4d(9, 4, 2, 2).asDiagonal());
  CHECK_THROWS_AS(classify_mssr(x4, y4), WrongStratumError);
  CHECK_THROWS_AS(d_sr(x4, y4), UnsupportedError);
  CHECK_THROWS_AS(brute_force_oracle(x4, y4), BadDimensionError);

  // Distinct eigenvalues beyond the enumeration limit.
  int p = 9;
  Eigen::VectorXd logs(p);
  for (int i = 0; i < p; ++i) logs(i) = -0.4 * i;
  SpdMatrix big1 = testutil::compose(testutil::random_rotation(p, rng),
                                     logs.array().exp().matrix());
  SpdMatrix big2 = testutil::compose(testutil::random_rotation(p, rng),
                                     (logs.array() + 0.1).exp());
  CHECK_THROWS_AS(d_sr(big1, big2), TooLargeError);
}

TEST_CASE("minimal_pairs mirrors the classification") {
  SpdMatrix x = from_diag(4, 1, 1);
  Rotation v = rot_of(std::complex<double>(0.62, 0.33),
                      std::complex<double>(0.55, 0.44));
  SpdMatrix y = compose_F(EigenPoint{v, PosDiag(Eigen::Vector3d(9, 4, 1))});
  double k = 2.0;
  MssrSet set = classify_mssr(x, y, k);
  auto pairs = minimal_pairs(x, y, k);
  REQUIRE(pairs.size() == set.curves.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(testutil::max_abs_diff(compose_F(pairs[i].first).matrix(),
                                 x.matrix()) < 1e-9);
    CHECK(testutil::max_abs_diff(compose_F(pairs[i].second).matrix(),
                                 y.matrix()) < 1e-9);
    CHECK(testutil::near(d_m(k, pairs[i].first, pairs[i].second),
                         set.curves[i].length, 1e-10));
  }
}

TEST_CASE("oracle fixed points") {
  SpdMatrix x = from_diag(4, 1, 1);
  CHECK(brute_force_oracle(x, x) < 1e-9);
  // Isotropic sides bypass the grid entirely.
  SpdMatrix iso(Eigen::MatrixXd(2.0 * Eigen::MatrixXd::Identity(3, 3)));
  SpdMatrix y = from_diag(9, 4, 1);
  CHECK(testutil::near(brute_force_oracle(iso, y), d_sr(iso, y), 1e-12));
}
