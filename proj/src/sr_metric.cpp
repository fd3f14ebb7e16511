#include "srgeom/sr_metric.hpp"

#include "srgeom/signed_perm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

namespace srgeom {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kUnitTol = 1e-12;  // minimum modulus for normalizing a rep

double clamp_unit(double v) { return std::min(1.0, std::max(-1.0, v)); }

// Sign of a comparison value under the ambiguity band: values at most tol/10
// in magnitude count as exact ties, values at least tol decide, anything in
// between is not certifiable either way.
int band_sign(double v, double tol, const char* what) {
  double a = std::abs(v);
  if (a <= tol / 10) return 0;
  if (a >= tol) return v > 0 ? 1 : -1;
  throw DegenerateError(std::string("ambiguous comparison: ") + what);
}

enum class Pattern { kTop, kMid, kBottom, kOther };

Pattern pattern_of(const SetPartition& J) {
  if (J.num_blocks() == J.p) return Pattern::kTop;
  if (J.num_blocks() == 1) return Pattern::kBottom;
  if (J.p == 3 && J.num_blocks() == 2) return Pattern::kMid;
  return Pattern::kOther;
}

// Simple eigenvalue moved to the front (descending order leaves it either
// first or last; a 3-cycle fixes the latter while preserving the frame
// determinant and the composed matrix).
EigenPoint canonical_mid(const EigenPoint& e, double tol_eig) {
  SetPartition J = partition_of_diag(e.D, tol_eig);
  if (J.blocks.size() != 2)
    throw WrongStratumError("expected one simple and one repeated eigenvalue");
  if (J.blocks[0].size() == 1) return e;
  SignedPerm cycle;
  cycle.signs = {1, 1, 1};
  cycle.perm = {1, 2, 0};
  return act_on_M(cycle, e);
}

// End-frame repair: when the frame quotient is an involution, multiply the
// end frame by the first even sign change that breaks the involution. The
// composed matrix is unchanged.
Rotation repair_end_frame(const Rotation& U, const Rotation& V) {
  Rotation rel = Rotation::trusted(U.matrix().transpose() * V.matrix());
  if (!is_involution(rel)) return V;
  static const std::array<std::array<double, 3>, 3> kSigns{
      {{-1, -1, 1}, {-1, 1, -1}, {1, -1, -1}}};
  for (const auto& s : kSigns) {
    Eigen::Vector3d d(s[0], s[1], s[2]);
    Rotation cand = Rotation::trusted(V.matrix() * d.asDiagonal());
    Rotation q = Rotation::trusted(U.matrix().transpose() * cand.matrix());
    if (!is_involution(q)) return cand;
  }
  throw AtCutLocusError("end-frame repair failed");  // unreachable
}

const std::array<int, 3> kPermId{0, 1, 2};
const std::array<int, 3> kPerm13{2, 1, 0};
const std::array<int, 3> kPerm12{1, 0, 2};

Eigen::Vector3d permuted(const Eigen::VectorXd& v, const std::array<int, 3>& pi) {
  // Entry i of the permuted diagonal is v[pi^{-1}(i)]; the three table
  // permutations are involutions, so pi serves as its own inverse.
  return Eigen::Vector3d(v(pi[0]), v(pi[1]), v(pi[2]));
}

// Squared diagonal term for the branch that applies pi to the end diagonal.
double diag_term(const PosDiag& D, const PosDiag& L, const std::array<int, 3>& pi) {
  Eigen::Vector3d delta = permuted(L.log(), pi) - Eigen::Vector3d(D.log());
  return delta.squaredNorm();
}

EllTriple ell_from_data(const HyperComplex& zw, const PosDiag& D,
                        const PosDiag& L, double k, bool y_mid) {
  PairAngles a = varphi_beta(zw);
  EllTriple t;
  t.ell_id = std::sqrt(4 * k * a.varphi * a.varphi + diag_term(D, L, kPermId));
  if (y_mid) {
    double rot = kPi / 4 - a.varphi;
    t.ell_13 = std::sqrt(4 * k * rot * rot + diag_term(D, L, kPerm13));
    t.has_ell_12 = false;
  } else {
    t.ell_13 = std::sqrt(4 * k * a.beta * a.beta + diag_term(D, L, kPerm13));
    t.ell_12 = std::sqrt(4 * k * a.beta_prime * a.beta_prime +
                         diag_term(D, L, kPerm12));
  }
  return t;
}

std::complex<double> unit(const std::complex<double>& v) {
  double n = std::abs(v);
  if (n <= kUnitTol)
    throw DegenerateError("cannot normalize a vanishing class representative");
  return v / n;
}

// Static data of one curve class: coset representative, its diagonal
// permutation, and which branch diagonal it uses.
struct ClassSpec {
  const char* label;
  UnitQuaternion zeta;
  std::array<int, 3> pi;
};

const UnitQuaternion kQOne(1, 0, 0, 0);
const UnitQuaternion kQJ(0, 0, 1, 0);
const UnitQuaternion kQZetaJp(1, 0, 1, 0);   // (1 + j)/sqrt(2) after normalize
const UnitQuaternion kQZetaJm(1, 0, -1, 0);
const UnitQuaternion kQZetaKp(1, 0, 0, 1);
const UnitQuaternion kQZetaKm(1, 0, 0, -1);

MssrCurve make_curve(const std::string& label, const Rotation& U1,
                     const PosDiag& D, const Rotation& V1, const PosDiag& L1,
                     double k) {
  SoLogResult lg = so_log(Rotation::trusted(V1.matrix() * U1.matrix().transpose()));
  Eigen::VectorXd L = L1.log() - D.log();
  double rot = d_so(U1, V1);
  return MssrCurve{EigenPoint{U1, D},
                   EigenPoint{V1, L1},
                   lg.principal.matrix(),
                   L,
                   label,
                   std::sqrt(k * rot * rot + L.squaredNorm()),
                   lg.is_cut_locus};
}

// Curve from class data (zeta, r_U, r_V): start (U phi(r_U), D), end
// (V phi(r_V) phi(zeta)^{-1}, pi_zeta . Lambda).
MssrCurve curve_from_class(const std::string& label, const ClassSpec& spec,
                           const std::complex<double>& r_u,
                           const std::complex<double>& r_v, const Rotation& U,
                           const PosDiag& D, const Rotation& V,
                           const PosDiag& L, double k) {
  Rotation U1 = Rotation::trusted(U.matrix() * phi_circle(r_u).matrix());
  Rotation V1 = Rotation::trusted(V.matrix() * phi_circle(r_v).matrix() *
                                  phi(spec.zeta).matrix().transpose());
  PosDiag L1(permuted(L.log(), spec.pi).array().exp());
  return make_curve(label, U1, D, V1, L1, k);
}

const ClassSpec kClassA1{"A1", kQOne, kPermId};
const ClassSpec kClassA2{"A2", kQJ, kPermId};
const ClassSpec kClassB1{"B1", kQZetaJp, kPerm13};
const ClassSpec kClassB2{"B2", kQZetaJm, kPerm13};
const ClassSpec kClassC1{"C1", kQZetaKp, kPerm12};
const ClassSpec kClassC2{"C2", kQZetaKm, kPerm12};
const ClassSpec kClassA1p{"A1'", kQOne, kPermId};
const ClassSpec kClassA2p{"A2'", kQJ, kPermId};
const ClassSpec kClassBp{"B'", kQZetaJp, kPerm13};
const ClassSpec kClassCp{"C'", kQZetaJp, kPerm13};

struct P3Setup {
  EigenPoint ex;
  EigenPoint ey;
  bool y_mid = false;
  bool same_axis = false;  // same-axis convention applied (both mid)
  HyperComplex zw;
};

P3Setup p3_setup(const SpdMatrix& X, const SpdMatrix& Y, double tol_eig) {
  if (X.p() != 3 || Y.p() != 3)
    throw WrongStratumError("classification requires p = 3");
  EigenPoint ex = eigen_decompose(X);
  EigenPoint ey = eigen_decompose(Y);
  Pattern px = pattern_of(partition_of_diag(ex.D, tol_eig));
  Pattern py = pattern_of(partition_of_diag(ey.D, tol_eig));
  if (px != Pattern::kMid)
    throw WrongStratumError(
        "start matrix must have exactly two equal eigenvalues");
  if (py != Pattern::kMid && py != Pattern::kTop)
    throw WrongStratumError(
        "end matrix must have two or three distinct eigenvalues");
  ex = canonical_mid(ex, tol_eig);
  bool y_mid = py == Pattern::kMid;
  if (y_mid) ey = canonical_mid(ey, tol_eig);
  ey.U = repair_end_frame(ex.U, ey.U);
  HyperComplex zw = hypercomplex_split(ex.U, ey.U);
  bool same_axis = false;
  if (y_mid && std::min(std::abs(zw.z), std::abs(zw.w)) <= kSameAxisTol) {
    // Same-axis convention: reuse the start frame for the end point.
    same_axis = true;
    ey.U = ex.U;
    zw = HyperComplex{};
  }
  return P3Setup{std::move(ex), std::move(ey), y_mid, same_axis, zw};
}

std::string join_labels(const std::vector<MssrCurve>& curves) {
  std::string out = "{";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (i) out += ",";
    out += curves[i].class_label;
  }
  return out + "}";
}

void append_infinite_family(std::vector<MssrCurve>& curves, const P3Setup& s,
                            double k) {
  for (int m = 0; m < kInfiniteFamilySamples; ++m) {
    std::complex<double> r =
        std::polar(1.0, kPi * m / kInfiniteFamilySamples);
    curves.push_back(curve_from_class("C'", kClassCp, r, r, s.ex.U, s.ex.D,
                                      s.ey.U, s.ey.D, k));
  }
}

double checked_k(double k) {
  if (!(k > 0)) throw InvalidInputError("weight k must be positive");
  return k;
}

}  // namespace

EllTriple ell_values(const EigenPoint& eX, const EigenPoint& eY, double k) {
  checked_k(k);
  if (eX.U.p() != 3 || eY.U.p() != 3)
    throw WrongStratumError("ell_values requires p = 3");
  SetPartition jx = partition_of_diag(eX.D);
  SetPartition jy = partition_of_diag(eY.D);
  SetPartition mid_first = SetPartition::from_blocks(3, {{0}, {1, 2}});
  if (!(jx == mid_first))
    throw WrongStratumError(
        "ell_values: start diagonal must be (simple, pair, pair)");
  bool y_mid;
  if (jy == mid_first) {
    y_mid = true;
  } else if (jy.num_blocks() == 3) {
    y_mid = false;
  } else {
    throw WrongStratumError(
        "ell_values: end diagonal must be distinct or (simple, pair, pair)");
  }
  HyperComplex zw = hypercomplex_split(eX.U, eY.U);
  return ell_from_data(zw, eX.D, eY.D, k, y_mid);
}

MssrSet classify_mssr(const SpdMatrix& X, const SpdMatrix& Y, double k,
                      double tol, double tol_eig) {
  checked_k(k);
  P3Setup s = p3_setup(X, Y, tol_eig);
  EllTriple ell = ell_from_data(s.zw, s.ex.D, s.ey.D, k, s.y_mid);
  const std::complex<double>& z = s.zw.z;
  const std::complex<double>& w = s.zw.w;
  std::complex<double> cross = std::conj(z) * w;
  MssrSet out;

  auto emit = [&](const ClassSpec& spec, const std::complex<double>& r_u,
                  const std::complex<double>& r_v) {
    out.curves.push_back(curve_from_class(spec.label, spec, r_u, r_v, s.ex.U,
                                          s.ex.D, s.ey.U, s.ey.D, k));
  };

  if (!s.y_mid) {
    // End pattern fully distinct: branches ell_id / ell_13 / ell_12, then a
    // two-way split inside each minimal branch.
    double m = std::min({ell.ell_id, ell.ell_13, ell.ell_12});
    bool in_id = band_sign(ell.ell_id - m, tol, "ell_id vs minimum") == 0;
    bool in_13 = band_sign(ell.ell_13 - m, tol, "ell_13 vs minimum") == 0;
    bool in_12 = band_sign(ell.ell_12 - m, tol, "ell_12 vs minimum") == 0;
    if (in_id) {
      int cmp = band_sign(std::abs(z) - std::abs(w), tol, "|z| vs |w|");
      if (cmp >= 0) emit(kClassA1, unit(z), 1.0);
      if (cmp <= 0) emit(kClassA2, unit(w), 1.0);
    }
    if (in_13) {
      int cmp = band_sign(cross.real(), tol, "Re(conj(z) w)");
      if (cmp >= 0) emit(kClassB1, unit(z + w), 1.0);
      if (cmp <= 0) emit(kClassB2, unit(z - w), 1.0);
    }
    if (in_12) {
      int cmp = band_sign(cross.imag(), tol, "Im(conj(z) w)");
      std::complex<double> iw(-w.imag(), w.real());
      if (cmp >= 0) emit(kClassC1, unit(z - iw), 1.0);
      if (cmp <= 0) emit(kClassC2, unit(z + iw), 1.0);
    }
    if (out.curves.empty() || out.curves.size() > 4)
      throw DegenerateError("inconsistent class resolution");
    out.cardinality = static_cast<long long>(out.curves.size());
    out.case_tag = "mid->top " + join_labels(out.curves);
    return out;
  }

  // Both patterns have an equal pair: branches ell_id / ell_13.
  int branch = band_sign(ell.ell_id - ell.ell_13, tol, "ell_id vs ell_13");
  if (s.same_axis) {
    // Convention case, (z, w) = (1, 0): the ell_13 branch carries the
    // circle family instead of B'.
    if (branch <= 0) emit(kClassA1p, 1.0, 1.0);
    if (branch >= 0) append_infinite_family(out.curves, s, k);
    out.infinite = branch >= 0;
  } else {
    if (branch <= 0) {
      int cmp = band_sign(std::abs(z) - std::abs(w), tol, "|z| vs |w|");
      if (cmp >= 0) emit(kClassA1p, 1.0, unit(std::conj(z)));
      if (cmp <= 0) emit(kClassA2p, 1.0, unit(w));
    }
    if (branch >= 0) {
      std::complex<double> ru = std::sqrt(unit(w) * unit(z));
      std::complex<double> rv = std::sqrt(unit(w) * std::conj(unit(z)));
      emit(kClassBp, ru, rv);
    }
  }
  out.cardinality = out.infinite ? kCardinalityInfinite
                                 : static_cast<long long>(out.curves.size());
  out.case_tag = std::string("mid->mid ") +
                 (out.infinite ? (branch == 0 ? "{A1',C' family}" : "{C' family}")
                               : join_labels(out.curves));
  return out;
}

std::vector<std::pair<EigenPoint, EigenPoint>> minimal_pairs(
    const SpdMatrix& X, const SpdMatrix& Y, double k, double tol,
    double tol_eig) {
  MssrSet set = classify_mssr(X, Y, k, tol, tol_eig);
  std::vector<std::pair<EigenPoint, EigenPoint>> pairs;
  pairs.reserve(set.curves.size());
  for (const MssrCurve& c : set.curves) pairs.emplace_back(c.start, c.end);
  return pairs;
}

SpdMatrix eval_curve(const MssrCurve& c, double t) {
  if (t < 0 || t > 1) throw InvalidInputError("eval_curve: t outside [0, 1]");
  Rotation Ut = Rotation::trusted(so_exp(SkewMatrix::trusted(t * c.A)).matrix() *
                                  c.start.U.matrix());
  PosDiag Dt((c.start.D.log() + t * c.L).array().exp());
  return compose_F(EigenPoint{Ut, Dt});
}

MssrSet mssr_stepwise(const SpdMatrix& X, const SpdMatrix& Y, double k,
                      double tol, double tol_eig) {
  checked_k(k);
  P3Setup s = p3_setup(X, Y, tol_eig);

  // Polar read-off of the repaired frame quotient: rotation angle from the
  // trace, axis from the antisymmetric part, then the half-angle lift.
  const Eigen::MatrixXd R =
      s.ex.U.matrix().transpose() * s.ey.U.matrix();
  Eigen::Vector3d axis(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0),
                       R(1, 0) - R(0, 1));
  double sin_t = axis.norm() / 2;
  double cos_t = (R.trace() - 1) / 2;
  double theta = std::atan2(sin_t, cos_t);
  std::complex<double> z(1, 0), w(0, 0);
  if (sin_t > 1e-14) {
    Eigen::Vector3d a = axis / (2 * sin_t);
    double c = std::cos(theta / 2), ss = std::sin(theta / 2);
    z = {c, ss * a(0)};
    w = {ss * a(1), ss * a(2)};
  }
  if (s.same_axis) {
    z = {1, 0};
    w = {0, 0};
  }

  // Candidate classes with their rotation cosines; undefined representatives
  // (vanishing normalizers) are skipped.
  struct Candidate {
    const ClassSpec* spec;
    double f;
    std::complex<double> r_u, r_v;
    bool family = false;  // circle of representatives, not a single curve
  };
  std::vector<Candidate> cands;
  std::complex<double> iw(-w.imag(), w.real());
  const double az = std::abs(z), aw = std::abs(w);
  if (!s.y_mid) {
    if (az > kUnitTol) cands.push_back({&kClassA1, az, unit(z), 1.0, false});
    if (aw > kUnitTol) cands.push_back({&kClassA2, aw, unit(w), 1.0, false});
    for (auto [spec, v] : {std::pair{&kClassB1, z + w}, {&kClassB2, z - w},
                           {&kClassC1, z - iw}, {&kClassC2, z + iw}}) {
      if (std::abs(v) > kUnitTol)
        cands.push_back(
            {spec, std::abs(v) / std::sqrt(2.0), unit(v), 1.0, false});
    }
  } else {
    if (az > kUnitTol)
      cands.push_back({&kClassA1p, az, 1.0, unit(std::conj(z)), false});
    if (aw > kUnitTol) cands.push_back({&kClassA2p, aw, 1.0, unit(w), false});
    if (az > kUnitTol && aw > kUnitTol) {
      std::complex<double> ru = std::sqrt(unit(w) * unit(z));
      std::complex<double> rv = std::sqrt(unit(w) * std::conj(unit(z)));
      cands.push_back(
          {&kClassBp, (az + aw) / std::sqrt(2.0), ru, rv, false});
    }
    if (s.same_axis)
      cands.push_back({&kClassCp, 1 / std::sqrt(2.0), 1.0, 1.0, true});
  }

  std::vector<double> lengths;
  double best = std::numeric_limits<double>::infinity();
  for (const Candidate& c : cands) {
    double rot = std::acos(clamp_unit(c.f));
    double len = std::sqrt(4 * k * rot * rot +
                           diag_term(s.ex.D, s.ey.D, c.spec->pi));
    lengths.push_back(len);
    best = std::min(best, len);
  }

  MssrSet out;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (band_sign(lengths[i] - best, tol, "class length vs minimum") != 0)
      continue;
    if (cands[i].family) {
      append_infinite_family(out.curves, s, k);
      out.infinite = true;
    } else {
      out.curves.push_back(curve_from_class(cands[i].spec->label,
                                            *cands[i].spec, cands[i].r_u,
                                            cands[i].r_v, s.ex.U, s.ex.D,
                                            s.ey.U, s.ey.D, k));
    }
  }
  if (out.curves.empty())
    throw DegenerateError("no class attains the minimum");
  out.cardinality = out.infinite ? kCardinalityInfinite
                                 : static_cast<long long>(out.curves.size());
  out.case_tag = std::string(s.y_mid ? "mid->mid " : "mid->top ") +
                 join_labels(out.curves);
  return out;
}

namespace {

SetPartition intersect_partitions(const SetPartition& a, const SetPartition& b) {
  std::vector<std::vector<int>> blocks;
  for (const auto& ba : a.blocks)
    for (const auto& bb : b.blocks) {
      std::vector<int> cut;
      std::set_intersection(ba.begin(), ba.end(), bb.begin(), bb.end(),
                            std::back_inserter(cut));
      if (!cut.empty()) blocks.push_back(std::move(cut));
    }
  return SetPartition::from_blocks(a.p, std::move(blocks));
}

bool close_vec(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

bool curves_equal_p3(const MssrCurve& a, const MssrCurve& b, double tol) {
  if (a.start.U.p() != 3 || b.start.U.p() != 3)
    throw BadDimensionError("curves_equal_p3: p must be 3");
  for (double t : {0.0, 1.0}) {
    Eigen::MatrixXd xa = eval_curve(a, t).matrix();
    Eigen::MatrixXd xb = eval_curve(b, t).matrix();
    if ((xa - xb).cwiseAbs().maxCoeff() > 1e-8 * (1 + xa.cwiseAbs().maxCoeff()))
      throw MismatchedEndpointsError(
          "curves_equal_p3: curves join different endpoints");
  }
  // Same spatial increment: the geodesic rotation paths must coincide.
  if ((a.A - b.A).cwiseAbs().maxCoeff() > tol) return false;
  // Same diagonal path up to a fiber symmetry: some even signed permutation
  // must carry both diagonals across, with the residual frame quotient a
  // block rotation of the common eigenvalue pattern.
  SetPartition joint = intersect_partitions(partition_of_diag(a.start.D),
                                            partition_of_diag(a.end.D));
  Eigen::VectorXd log_db = b.start.D.log(), log_lb = b.end.D.log();
  for (const SignedPerm& g : enumerate_even(3)) {
    if (!close_vec(Eigen::VectorXd(act_on_diag(g, a.start.D).log()), log_db,
                   tol) ||
        !close_vec(Eigen::VectorXd(act_on_diag(g, a.end.D).log()), log_lb,
                   tol))
      continue;
    Eigen::MatrixXd B =
        a.start.U.matrix().transpose() * b.start.U.matrix() * mat(g);
    bool ok = true;
    for (const auto& block : joint.blocks) {
      std::vector<char> in_block(3, 0);
      for (int i : block) in_block[i] = 1;
      for (int i : block)
        for (int j = 0; j < 3 && ok; ++j)
          if (!in_block[j] && std::abs(B(i, j)) > tol) ok = false;
      if (!ok) break;
      Eigen::MatrixXd sub(block.size(), block.size());
      for (std::size_t r = 0; r < block.size(); ++r)
        for (std::size_t c = 0; c < block.size(); ++c)
          sub(r, c) = B(block[r], block[c]);
      if (sub.determinant() < 0.5) ok = false;
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

SrReport d_sr_report(const SpdMatrix& X, const SpdMatrix& Y, double k,
                     double tol_eig) {
  checked_k(k);
  if (X.p() != Y.p()) throw BadDimensionError("d_sr: dimension mismatch");
  EigenPoint ex = eigen_decompose(X);
  EigenPoint ey = eigen_decompose(Y);
  SetPartition jx = partition_of_diag(ex.D, tol_eig);
  SetPartition jy = partition_of_diag(ey.D, tol_eig);
  SrReport rep;
  rep.stratum_x = int_partition_of(jx);
  rep.stratum_y = int_partition_of(jy);
  if (jx.num_blocks() == 1 || jy.num_blocks() == 1) {
    // Either matrix isotropic: the fiber reaches any frame, so only the
    // log-diagonal gap remains.
    rep.value = d_diag(ex.D, ey.D);
    rep.branch = "isotropic";
    rep.case_tag = "bottom";
    return rep;
  }
  int p = X.p();
  if (jx.num_blocks() == p && jy.num_blocks() == p) {
    double best_sq = std::numeric_limits<double>::infinity();
    for_each_even(p, [&](const SignedPerm& g) {
      double dd = d_diag(ex.D, act_on_diag(g, ey.D));
      if (dd * dd >= best_sq) return;
      Rotation vg =
          Rotation::trusted(ey.U.matrix() * mat(g).transpose());
      double rot = d_so(ex.U, vg);
      best_sq = std::min(best_sq, k * rot * rot + dd * dd);
    });
    rep.value = std::sqrt(best_sq);
    rep.branch = "enumeration";
    rep.case_tag = "top->top";
    return rep;
  }
  if (p != 3)
    throw UnsupportedError(
        "repeated non-isotropic eigenvalue patterns are closed-form only "
        "for p = 3");
  // p = 3 with at least one mid pattern; the formulas take the mid side
  // first and the distance is symmetric.
  bool swap = jx.num_blocks() == 3;
  const SpdMatrix& A = swap ? Y : X;
  const SpdMatrix& B = swap ? X : Y;
  P3Setup s = p3_setup(A, B, tol_eig);
  EllTriple ell = ell_from_data(s.zw, s.ex.D, s.ey.D, k, s.y_mid);
  rep.value = std::min(ell.ell_id, ell.ell_13);
  rep.branch = ell.ell_id <= ell.ell_13 ? "ell_id" : "ell_13";
  if (ell.has_ell_12 && ell.ell_12 < rep.value) {
    rep.value = ell.ell_12;
    rep.branch = "ell_12";
  }
  rep.case_tag = s.y_mid ? "mid->mid" : "mid->top";
  return rep;
}

double d_sr(const SpdMatrix& X, const SpdMatrix& Y, double k, double tol_eig) {
  return d_sr_report(X, Y, k, tol_eig).value;
}

double brute_force_oracle(const SpdMatrix& X, const SpdMatrix& Y, double k,
                          int n_grid) {
  checked_k(k);
  if (X.p() != 3 || Y.p() != 3)
    throw BadDimensionError("brute_force_oracle: p must be 3");
  if (n_grid < 1) throw InvalidInputError("brute_force_oracle: n_grid < 1");
  EigenPoint ex = eigen_decompose(X);
  EigenPoint ey = eigen_decompose(Y);
  SetPartition jx = partition_of_diag(ex.D);
  SetPartition jy = partition_of_diag(ey.D);
  std::vector<SignedPerm> group = enumerate_even(3);
  if (jx.num_blocks() == 1 || jy.num_blocks() == 1) {
    // An isotropic side frees the rotation term entirely.
    double best = std::numeric_limits<double>::infinity();
    for (const SignedPerm& g : group)
      best = std::min(best, d_diag(ex.D, act_on_diag(g, ey.D)));
    return best;
  }
  // Circle factor of a two-equal-eigenvalue pattern: rotations inside the
  // repeated block, i.e. about the remaining axis (none for a top pattern).
  auto axis_of = [](const SetPartition& j) -> std::optional<UnitQuaternion> {
    if (j.num_blocks() == 3) return std::nullopt;
    bool pair_last = j.blocks[0].size() == 1;
    if (pair_last) return UnitQuaternion(0, 1, 0, 0);  // block {1,2}: axis e0
    return UnitQuaternion(0, 0, 0, 1);                 // block {0,1}: axis e2
  };
  std::optional<UnitQuaternion> u = axis_of(jx);
  std::optional<UnitQuaternion> v = axis_of(jy);
  UnitQuaternion q_rel = quat_lift_any(
      Rotation::trusted(ex.U.matrix().transpose() * ey.U.matrix()));

  std::vector<double> cs(n_grid), sn(n_grid);
  for (int i = 0; i < n_grid; ++i) {
    cs[i] = std::cos(kPi * i / n_grid);
    sn[i] = std::sin(kPi * i / n_grid);
  }

  double best_sq = std::numeric_limits<double>::infinity();
  for (const SignedPerm& g : group) {
    double dd = d_diag(ex.D, act_on_diag(g, ey.D));
    double T = dd * dd;
    if (T >= best_sq) continue;
    UnitQuaternion zeta = quat_lift_any(Rotation::trusted(mat(g)));
    // Bilinear form of the absolute quaternion inner product over the two
    // circle parameters (half-angle coordinates). The end-side fiber element
    // is V R_v(t) mat(g)^T, so the circle factor multiplies before the coset
    // representative: the composed lift is e^{us} q_rel e^{vt} conj(zeta).
    UnitQuaternion Q = qmul(q_rel, zeta.conj());
    UnitQuaternion Qv = v ? qmul(qmul(q_rel, *v), zeta.conj()) : Q;
    double m00 = Q.re();
    double m01 = v ? Qv.re() : 0;
    double m10 = u ? -qmul(*u, Q).re() : 0;
    double m11 = (u && v) ? -qmul(*u, Qv).re() : 0;
    double peak = 0;
    if (u && v) {
      for (int i = 0; i < n_grid; ++i) {
        double a = m00 * cs[i] + m10 * sn[i];
        double b = m01 * cs[i] + m11 * sn[i];
        for (int j = 0; j < n_grid; ++j)
          peak = std::max(peak, std::abs(a * cs[j] + b * sn[j]));
      }
    } else if (u || v) {
      double slope = u ? m10 : m01;
      for (int i = 0; i < n_grid; ++i)
        peak = std::max(peak, std::abs(m00 * cs[i] + slope * sn[i]));
    } else {
      peak = std::abs(m00);
    }
    double rot = 2 * std::acos(clamp_unit(peak));
    best_sq = std::min(best_sq, k * rot * rot + T);
  }
  return std::sqrt(best_sq);
}

}  // namespace srgeom
