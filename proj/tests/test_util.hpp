#pragma once

#include <Eigen/Dense>

#include <random>
#include <vector>

#include "srgeom/core.hpp"
#include "srgeom/grassmann.hpp"

namespace testutil {

using Rng = std::mt19937_64;

inline Eigen::MatrixXd gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = g(rng);
  return m;
}

// Haar-ish rotation: QR of a Gaussian matrix with the R-diagonal sign fix.
inline srgeom::Rotation random_rotation(int p, Rng& rng) {
  Eigen::MatrixXd a = gaussian(p, p, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < p; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  if (q.determinant() < 0) q.col(p - 1) = -q.col(p - 1);
  return srgeom::Rotation(q);
}

inline srgeom::Subspace random_subspace(int p, int m, Rng& rng) {
  Eigen::MatrixXd a = gaussian(p, m, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(p, m);
  return srgeom::Subspace(q);
}

// Involution of level m: conjugate of diag(-1 x m, +1 x (p-m)).
inline srgeom::Involution random_involution(int p, int m, Rng& rng) {
  srgeom::Rotation q = random_rotation(p, rng);
  Eigen::VectorXd s = Eigen::VectorXd::Ones(p);
  s.head(m).setConstant(-1.0);
  Eigen::MatrixXd r = q.matrix() * s.asDiagonal() * q.matrix().transpose();
  r = 0.5 * (r + r.transpose()).eval();
  return srgeom::Involution(srgeom::Rotation(r));
}

inline srgeom::SpdMatrix compose(const srgeom::Rotation& u,
                                 const Eigen::VectorXd& diag) {
  return srgeom::compose_F(srgeom::EigenPoint{u, srgeom::PosDiag(diag)});
}

// SPD with well-separated log-eigenvalues (pairwise log gaps >= 0.25).
inline srgeom::SpdMatrix random_spd_distinct(int p, Rng& rng) {
  std::uniform_real_distribution<double> shift(-0.8, 0.8);
  std::uniform_real_distribution<double> gap(0.25, 0.9);
  Eigen::VectorXd logs(p);
  logs(0) = shift(rng);
  for (int i = 1; i < p; ++i) logs(i) = logs(i - 1) - gap(rng);
  return compose(random_rotation(p, rng), logs.array().exp().matrix());
}

// p = 3 equal-pair SPD: eigenvalues (e^b t, t, t), |b| in [0.3, 1.6].
inline srgeom::SpdMatrix random_spd_mid3(Rng& rng) {
  std::uniform_real_distribution<double> gap(0.3, 1.6);
  std::uniform_real_distribution<double> scale(-0.5, 0.5);
  std::bernoulli_distribution flip(0.5);
  double b = gap(rng) * (flip(rng) ? 1.0 : -1.0);
  double t = scale(rng);
  Eigen::VectorXd logs(3);
  logs << b + t, t, t;
  return compose(random_rotation(3, rng), logs.array().exp().matrix());
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testutil
