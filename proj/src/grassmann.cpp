#include "srgeom/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace srgeom {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kImprovement = 1e-12;

double clamp_unit(double v) { return std::min(1.0, std::max(-1.0, v)); }

// Ascending m-subsets of {0..p-1}; returns false when exhausted.
bool next_subset(std::vector<int>& J, int p) {
  int m = static_cast<int>(J.size());
  for (int i = m - 1; i >= 0; --i) {
    if (J[i] < p - m + i) {
      ++J[i];
      for (int j = i + 1; j < m; ++j) J[j] = J[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Angles between the column spans of two orthonormal bases, ascending.
// acos of a singular value near 1 loses half the digits, so angles below
// pi/4 are recomputed from the complement (I - W W^T) Z, whose singular
// values are the sines: each branch is used only where it is
// well-conditioned, keeping every angle accurate to ~1e-15 absolute.
std::vector<double> angles_of_bases(const Eigen::MatrixXd& wb,
                                    const Eigen::MatrixXd& zb) {
  Eigen::MatrixXd cross = wb.transpose() * zb;
  Eigen::JacobiSVD<Eigen::MatrixXd> csvd(cross);
  Eigen::VectorXd c = csvd.singularValues();  // descending: angles ascending
  Eigen::MatrixXd comp = zb - wb * cross;
  Eigen::JacobiSVD<Eigen::MatrixXd> ssvd(comp);
  Eigen::VectorXd s = ssvd.singularValues();  // descending: angles descending
  int q = static_cast<int>(c.size());
  std::vector<double> angles(q);
  for (int i = 0; i < q; ++i) {
    double ci = clamp_unit(c(i));
    double si = clamp_unit(s(s.size() - 1 - i));
    angles[i] = ci * ci > 0.5 ? std::asin(si) : std::acos(ci);
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

double dist_to_plane(const Subspace& W, const std::vector<int>& J) {
  Eigen::MatrixXd plane = Eigen::MatrixXd::Zero(W.p(), static_cast<int>(J.size()));
  for (std::size_t t = 0; t < J.size(); ++t)
    plane(J[t], static_cast<int>(t)) = 1.0;
  double sq = 0;
  for (double a : angles_of_bases(plane, W.basis())) sq += a * a;
  return std::sqrt(sq);
}

}  // namespace

Subspace::Subspace(Eigen::MatrixXd basis) : b_(std::move(basis)) {
  if (b_.cols() < 1 || b_.cols() > b_.rows())
    throw BadDimensionError("Subspace: need 1 <= m <= p");
  Eigen::MatrixXd gram = b_.transpose() * b_;
  gram -= Eigen::MatrixXd::Identity(b_.cols(), b_.cols());
  if (gram.cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidInputError("Subspace: columns are not orthonormal");
}

Involution::Involution(Rotation R) : r_(std::move(R)), level_(0) {
  if (!is_involution(r_))
    throw NotInvolutionError("Involution: matrix does not square to I");
  level_ = level(r_);
}

Involution phi_mp(const Subspace& W) {
  if (W.m() % 2 != 0)
    throw OddDimensionError("phi_mp: reflection lands in SO(p) only for even m");
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(W.p(), W.p()) -
                      2 * W.basis() * W.basis().transpose();
  return Involution(Rotation(std::move(R)));
}

Subspace e_minus(const Involution& R) {
  // Orthogonal involutions are symmetric, so a self-adjoint solve is exact.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R.matrix());
  int m = 0;
  while (m < R.p() && es.eigenvalues()(m) <= -1 + kTolEig) ++m;
  if (m == 0)
    throw NotInvolutionError("e_minus: no -1 eigenvalue found");
  return Subspace(es.eigenvectors().leftCols(m));
}

std::vector<double> principal_angles(const Subspace& W, const Subspace& Z) {
  if (W.p() != Z.p())
    throw BadDimensionError("principal_angles: ambient dimensions differ");
  return angles_of_bases(W.basis(), Z.basis());
}

double d_gr(const Subspace& W, const Subspace& Z) {
  if (W.m() != Z.m())
    throw BadDimensionError("d_gr: subspace dimensions differ");
  double sq = 0;
  for (double a : principal_angles(W, Z)) sq += a * a;
  return std::sqrt(sq);
}

HalfAngleData half_angle_check(const Involution& R1, const Involution& R2,
                               double tol) {
  if (R1.p() != R2.p())
    throw BadDimensionError("half_angle_check: dimensions differ");
  int p = R1.p();
  HalfAngleData out;
  out.principal = principal_angles(e_minus(R1), e_minus(R2));
  NormalForm nf = normal_form(
      Rotation::trusted(R1.matrix() * R2.matrix()));
  for (int i = 0; i < p / 2; ++i) {
    out.theta_tilde.push_back(nf.angles(i));
    out.theta_tilde.push_back(nf.angles(i));
  }
  if (p % 2 == 1) out.theta_tilde.push_back(0.0);
  // Greedy two-pointer matching, both lists ascending. A positive principal
  // angle phi marks a 2-plane where R1 R2 rotates by 2 phi, so it consumes
  // two list entries near 2 phi; a zero angle marks a shared -1 direction and
  // consumes one zero entry. Whatever remains must come from excess -1
  // dimensions (pi) or the fixed complement (0).
  std::vector<double> doubled = out.theta_tilde;
  std::sort(doubled.begin(), doubled.end());
  std::vector<double> leftovers;
  std::size_t i = 0;
  bool ok = true;
  for (double phi : out.principal) {
    while (i < doubled.size() && doubled[i] / 2 < phi - tol)
      leftovers.push_back(doubled[i++]);
    int need = phi > tol ? 2 : 1;
    for (int c = 0; c < need && ok; ++c) {
      if (i == doubled.size() || doubled[i] / 2 > phi + tol)
        ok = false;
      else
        ++i;
    }
    if (!ok) break;
  }
  while (i < doubled.size()) leftovers.push_back(doubled[i++]);
  if (ok)
    for (double t : leftovers)
      if (std::min(t, kPi - t) > tol) ok = false;
  out.matched = ok;
  return out;
}

std::optional<SignChange> sign_change_reducible(
    const Involution& R, std::optional<int> level_filter) {
  int p = R.p();
  Rotation I = Rotation::identity(p);
  double base = d_so(R.rot(), I);
  double best = base - kImprovement;
  std::optional<SignChange> found;
  for (std::uint32_t bits = 1; bits < (1u << p); ++bits) {
    int lvl = __builtin_popcount(bits);
    if (lvl % 2 != 0) continue;
    if (level_filter ? lvl != *level_filter : lvl >= 2 * R.inv_level())
      continue;
    SignChange sigma = SignChange::identity(p);
    for (int t = 0; t < p; ++t)
      if ((bits >> t) & 1) sigma.signs[t] = -1;
    double d = d_so(Rotation::trusted(R.matrix() * sigma.mat()), I);
    if (d < best) {
      best = d;
      found = sigma;
    }
  }
  return found;
}

PlaneScan best_coordinate_plane(const Subspace& W) {
  if (W.p() > 14)
    throw TooLargeError("best_coordinate_plane: p > 14 enumeration refused");
  std::vector<int> J(W.m());
  std::iota(J.begin(), J.end(), 0);
  PlaneScan scan;
  scan.dist = -1;
  do {
    double d = dist_to_plane(W, J);
    if (scan.dist < 0 || d < scan.dist) {
      scan.dist = d;
      scan.J = J;
    }
  } while (next_subset(J, W.p()));
  scan.within_bound = scan.dist * scan.dist < W.m() * kPi * kPi / 8;
  return scan;
}

Subspace counterexample_Wp(int p) {
  if (p < 4) throw BadDimensionError("counterexample_Wp: need p >= 4");
  int k = p / 2;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(p, 2);
  for (int i = 0; i < k; ++i) {
    b(i, 0) = 1 / std::sqrt(static_cast<double>(k));
    b(k + i, 1) = 1 / std::sqrt(static_cast<double>(k));
  }
  return Subspace(std::move(b));
}

Subspace counterexample_Wp_prime(int p) {
  if (p < 5 || p % 2 == 0)
    throw BadDimensionError("counterexample_Wp_prime: need odd p >= 5");
  int k = (p - 1) / 2;
  Eigen::MatrixXd b(p, 2);
  for (int i = 0; i < p; ++i) {
    b(i, 0) = 1 / std::sqrt(static_cast<double>(p));
    double w = i < k ? 1 : (i < 2 * k ? -1 : 0);
    b(i, 1) = w / std::sqrt(static_cast<double>(p - 1));
  }
  return Subspace(std::move(b));
}

Sin2Witness sin2_bound_witness(const Subspace& W) {
  if (W.p() > 14)
    throw TooLargeError("sin2_bound_witness: p > 14 refused");
  // sum cos^2 over the plane R^J equals the Frobenius mass of rows J, so the
  // m heaviest rows are the exact argmin of the squared-sine sum.
  std::vector<int> order(W.p());
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd mass = W.basis().rowwise().squaredNorm();
  std::stable_sort(order.begin(), order.end(),
                   [&mass](int a, int b) { return mass(a) > mass(b); });
  Sin2Witness wit;
  wit.J.assign(order.begin(), order.begin() + W.m());
  std::sort(wit.J.begin(), wit.J.end());
  double cos2 = 0;
  for (int j : wit.J) cos2 += mass(j);
  wit.sum_sin2 = std::max(0.0, W.m() - cos2);
  return wit;
}

bool combinat_identity(int p, int m) {
  if (m < 1 || m > p || p > 12)
    throw TooLargeError("combinat_identity: need 1 <= m <= p <= 12");
  std::vector<long long> diag(p, 0);
  std::vector<int> J(m);
  std::iota(J.begin(), J.end(), 0);
  do {
    for (int j : J) ++diag[j];
  } while (next_subset(J, p));
  long long binom = 1;
  for (int i = 1; i <= m - 1; ++i) binom = binom * (p - i) / i;
  return std::all_of(diag.begin(), diag.end(),
                     [binom](long long v) { return v == binom; });
}

std::pair<PosDiag, PosDiag> nscr_minimal_pair(const Rotation& U,
                                              const Rotation& V, double k) {
  if (U.p() != V.p())
    throw BadDimensionError("nscr_minimal_pair: dimensions differ");
  int p = U.p();
  double c = k * (p / 2) * kPi * kPi;  // squared rotation-part diameter
  double c1 = std::sqrt(c / (3 * p));
  double gap = (2 * std::sqrt(static_cast<double>(p)) + 1.01) * c1;
  Eigen::VectorXd d(p), l(p);
  for (int i = 0; i < p; ++i) {
    d(i) = std::exp((p - 1 - i) * gap);
    l(i) = std::exp((p - 1 - i) * gap + c1);
  }
  return {PosDiag(d), PosDiag(l)};
}

}  // namespace srgeom
