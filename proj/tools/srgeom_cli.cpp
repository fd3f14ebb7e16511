#include <CLI11.hpp>
#include <json.hpp>

#include "srgeom/grassmann.hpp"
#include "srgeom/io.hpp"
#include "srgeom/signed_perm.hpp"
#include "srgeom/sr_metric.hpp"
#include "srgeom/strata.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace srgeom;

namespace {

constexpr int kExitInput = 2;    // parse errors and domain violations
constexpr int kExitCompute = 3;  // unsupported, degenerate, too large
constexpr double kQuarterPiSq = 3.14159265358979323846 * 3.14159265358979323846 / 4;

struct CliConfig {
  double k = 1.0;
  double tol_eig = 1e-8;
  double tol_tie = 1e-9;
  int samples = 101;
  std::string format = "json";
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--k", cfg.k, "weight of the rotation term")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-eig", cfg.tol_eig,
                  "eigenvalue gap threshold for stratum detection")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-tie", cfg.tol_tie,
                  "tie threshold for branch comparisons")
      ->check(CLI::PositiveNumber);
}

SpdMatrix load_spd(const std::string& path) {
  return SpdMatrix(read_matrix_file(path));
}

std::string partition_str(const IntPartition& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.parts.size(); ++i) {
    if (i) out += "+";
    out += std::to_string(parts.parts[i]);
  }
  return out;
}

// "SO(2)", "SO(2)xSO(3)", or "point" when the fiber component is discrete.
std::string group_str(const IntPartition& parts) {
  std::string out;
  for (int kpart : parts.parts) {
    if (kpart < 2) continue;
    if (!out.empty()) out += "x";
    out += "SO(" + std::to_string(kpart) + ")";
  }
  return out.empty() ? "point" : out;
}

std::string spheroid_str(const SetPartition& J) {
  if (J.p != 3 || J.num_blocks() != 2) return "";
  return J.blocks[0].size() == 2 ? "oblate" : "prolate";
}

std::string sanitize(const std::string& label) {
  std::string out;
  for (char c : label) out += c == '\'' ? 'p' : c;
  return out;
}

int cmd_distance(const std::string& xf, const std::string& yf,
                 const CliConfig& cfg) {
  SpdMatrix X = load_spd(xf), Y = load_spd(yf);
  SrReport rep = d_sr_report(X, Y, cfg.k, cfg.tol_eig);
  if (cfg.format == "json") {
    json j{{"d_sr", rep.value},
           {"branch", rep.branch},
           {"case", rep.case_tag},
           {"stratum_x", partition_str(rep.stratum_x)},
           {"stratum_y", partition_str(rep.stratum_y)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "d_sr = " << format_double(rep.value) << "\n"
              << "stratum X: " << partition_str(rep.stratum_x) << "\n"
              << "stratum Y: " << partition_str(rep.stratum_y) << "\n"
              << "branch: " << rep.branch << "\n"
              << "case: " << rep.case_tag << "\n";
  }
  return 0;
}

MssrCurve reversed(MssrCurve c) {
  std::swap(c.start, c.end);
  c.A = (-c.A).eval();
  c.L = (-c.L).eval();
  c.class_label += " (reversed)";
  return c;
}

// Interpolation curves for any supported stratum pairing. The p = 3
// classification covers an equal-pair start; the remaining pairings reduce
// to a single explicit curve.
MssrSet interpolation_set(const SpdMatrix& X, const SpdMatrix& Y,
                          const CliConfig& cfg) {
  EigenPoint ex = eigen_decompose(X), ey = eigen_decompose(Y);
  SetPartition jx = partition_of_diag(ex.D, cfg.tol_eig);
  SetPartition jy = partition_of_diag(ey.D, cfg.tol_eig);
  int p = X.p();
  auto single = [&](const EigenPoint& a, const EigenPoint& b,
                    const std::string& label, const std::string& tag) {
    SoLogResult lg = so_log(
        Rotation::trusted(b.U.matrix() * a.U.matrix().transpose()));
    Eigen::VectorXd L = b.D.log() - a.D.log();
    double rot = d_so(a.U, b.U);
    MssrSet set;
    set.curves.push_back(MssrCurve{
        a, b, lg.principal.matrix(), L, label,
        std::sqrt(cfg.k * rot * rot + L.squaredNorm()), lg.is_cut_locus});
    set.cardinality = 1;
    set.case_tag = tag;
    return set;
  };
  if (jx.num_blocks() == 1)
    return single(EigenPoint{ey.U, ex.D}, ey, "scaling",
                  "isotropic start: pure scaling curve");
  if (jy.num_blocks() == 1)
    return single(ex, EigenPoint{ex.U, ey.D}, "scaling",
                  "isotropic end: pure scaling curve");
  if (jx.num_blocks() == p && jy.num_blocks() == p) {
    double best_sq = std::numeric_limits<double>::infinity();
    SignedPerm best_g;
    for_each_even(p, [&](const SignedPerm& g) {
      double dd = d_diag(ex.D, act_on_diag(g, ey.D));
      Rotation vg = Rotation::trusted(ey.U.matrix() * mat(g).transpose());
      double rot = d_so(ex.U, vg);
      double v = cfg.k * rot * rot + dd * dd;
      if (v < best_sq) {
        best_sq = v;
        best_g = g;
      }
    });
    Rotation vg = Rotation::trusted(ey.U.matrix() * mat(best_g).transpose());
    return single(ex, EigenPoint{vg, act_on_diag(best_g, ey.D)}, "geodesic",
                  "fully distinct eigenvalues: aligned geodesic");
  }
  if (p != 3)
    throw UnsupportedError(
        "interpolation with repeated non-isotropic eigenvalues is closed-form "
        "only for p = 3");
  if (jx.num_blocks() == 2)
    return classify_mssr(X, Y, cfg.k, cfg.tol_tie, cfg.tol_eig);
  // Start pattern fully distinct, end pattern has the equal pair: classify
  // the reversed problem and run the curves backwards.
  MssrSet set = classify_mssr(Y, X, cfg.k, cfg.tol_tie, cfg.tol_eig);
  for (MssrCurve& c : set.curves) c = reversed(std::move(c));
  set.case_tag += " (time-reversed)";
  return set;
}

int cmd_interpolate(const std::string& xf, const std::string& yf,
                    const CliConfig& cfg) {
  SpdMatrix X = load_spd(xf), Y = load_spd(yf);
  MssrSet set = interpolation_set(X, Y, cfg);
  fs::create_directories(cfg.out_dir);
  std::string ext = cfg.format == "csv" ? "csv" : "json";
  json manifest;
  manifest["case"] = set.case_tag;
  manifest["infinite"] = set.infinite;
  manifest["cardinality"] =
      set.infinite ? json("INFINITE") : json(set.cardinality);
  if (set.infinite)
    manifest["note"] = "infinite circle family; " +
                       std::to_string(kInfiniteFamilySamples) +
                       " evenly spaced representatives emitted";
  json files = json::array();
  for (std::size_t i = 0; i < set.curves.size(); ++i) {
    const MssrCurve& c = set.curves[i];
    std::string name = "curve_" + std::to_string(i) + "_" +
                       sanitize(c.class_label) + "." + ext;
    std::ofstream out(fs::path(cfg.out_dir) / name);
    if (!out) throw InvalidInputError("cannot write to " + cfg.out_dir);
    out << (cfg.format == "csv" ? curve_to_csv(c, cfg.samples)
                                : curve_to_json(c, cfg.samples));
    files.push_back({{"file", name},
                     {"class", c.class_label},
                     {"length", c.length}});
  }
  manifest["curves"] = std::move(files);
  std::ofstream mo(fs::path(cfg.out_dir) / "manifest.json");
  if (!mo) throw InvalidInputError("cannot write to " + cfg.out_dir);
  mo << manifest.dump(2) << "\n";
  std::cout << "case: " << set.case_tag << "\n"
            << "curves written: " << set.curves.size() << " ("
            << (set.infinite ? std::string("INFINITE family")
                             : std::to_string(set.cardinality))
            << ")\n"
            << "manifest: " << (fs::path(cfg.out_dir) / "manifest.json").string()
            << "\n";
  return 0;
}

int cmd_classify(const std::string& xf, const std::string& yf,
                 const CliConfig& cfg) {
  SpdMatrix X = load_spd(xf), Y = load_spd(yf);
  EigenPoint ex = eigen_decompose(X);
  bool swapped =
      partition_of_diag(ex.D, cfg.tol_eig).num_blocks() == 3 &&
      partition_of_diag(eigen_decompose(Y).D, cfg.tol_eig).num_blocks() == 2;
  MssrSet set = swapped ? classify_mssr(Y, X, cfg.k, cfg.tol_tie, cfg.tol_eig)
                        : classify_mssr(X, Y, cfg.k, cfg.tol_tie, cfg.tol_eig);
  if (swapped) {
    for (MssrCurve& c : set.curves) c = reversed(std::move(c));
    set.case_tag += " (time-reversed)";
  }
  if (cfg.format == "json") {
    json j{{"case", set.case_tag},
           {"infinite", set.infinite},
           {"cardinality",
            set.infinite ? json("INFINITE") : json(set.cardinality)}};
    json cs = json::array();
    for (const MssrCurve& c : set.curves)
      cs.push_back({{"class", c.class_label}, {"length", c.length}});
    j["curves"] = std::move(cs);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "case: " << set.case_tag << "\n"
              << "cardinality: "
              << (set.infinite ? std::string("INFINITE")
                               : std::to_string(set.cardinality))
              << "\n";
    for (const MssrCurve& c : set.curves)
      std::cout << "  " << c.class_label
                << "  length = " << format_double(c.length) << "\n";
  }
  return 0;
}

int cmd_fiber(const std::string& xf, const CliConfig& cfg) {
  SpdMatrix X = load_spd(xf);
  FiberSummary fsum = fiber_summary(X, cfg.tol_eig);
  EigenPoint ex = eigen_decompose(X);
  SetPartition J = partition_of_diag(ex.D, cfg.tol_eig);
  std::string shape = spheroid_str(J);
  if (cfg.format == "json") {
    json j{{"num_components", fsum.num_components},
           {"component_dim", fsum.component_dim},
           {"total_fiber_dim", fsum.total_fiber_dim},
           {"group", group_str(fsum.component_group_parts)},
           {"stratum", partition_str(int_partition_of(J))}};
    if (!shape.empty()) j["shape"] = shape;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << fsum.num_components << " components x "
              << group_str(fsum.component_group_parts) << ", stratum "
              << partition_str(int_partition_of(J));
    if (!shape.empty()) std::cout << ", " << shape;
    std::cout << "\n";
  }
  return 0;
}

Involution random_involution(int p, int m, std::mt19937_64& rng) {
  if (m < 2 || m > p || m % 2 != 0)
    throw InvalidInputError(
        "involution level must be even and between 2 and p");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd G(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) G(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(p);
  d.head(m).setConstant(-1);
  Eigen::MatrixXd R = Q * d.asDiagonal() * Q.transpose();
  return Involution(Rotation((R + R.transpose()) / 2));
}

void report_reduction(const Involution& R,
                      const std::optional<SignChange>& sigma,
                      const CliConfig& cfg) {
  double base = d_so(R.rot(), Rotation::identity(R.p()));
  if (cfg.format == "json") {
    json j{{"p", R.p()},
           {"level_R", R.inv_level()},
           {"d_to_identity", base},
           {"reducible", sigma.has_value()}};
    if (sigma) {
      json signs = json::array();
      for (int s : sigma->signs) signs.push_back(s);
      j["sigma"] = std::move(signs);
      j["level_sigma"] = sigma->sign_level();
      j["d_to_sigma"] =
          d_so(R.rot(), Rotation::trusted(sigma->mat()));
    }
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "level(R) = " << R.inv_level()
            << ", d(R, I) = " << format_double(base) << "\n";
  if (!sigma) {
    std::cout << "not sign-change reducible\n";
    return;
  }
  std::cout << "sigma = (";
  for (std::size_t i = 0; i < sigma->signs.size(); ++i)
    std::cout << (i ? "," : "") << (sigma->signs[i] < 0 ? "-" : "+");
  std::cout << ")\nlevel(sigma) = " << sigma->sign_level()
            << ", d(R, I_sigma) = "
            << format_double(
                   d_so(R.rot(), Rotation::trusted(sigma->mat())))
            << "\n";
}

int cmd_reduce(const std::string& rfile, const std::vector<int>& random_pm,
               int trials, std::uint64_t seed, const CliConfig& cfg) {
  if (!rfile.empty()) {
    Involution R{Rotation(read_matrix_file(rfile))};
    report_reduction(R, sign_change_reducible(R), cfg);
    return 0;
  }
  std::mt19937_64 rng(seed);
  int reduced = 0;
  for (int t = 0; t < trials; ++t) {
    Involution R = random_involution(random_pm[0], random_pm[1], rng);
    std::optional<SignChange> sigma = sign_change_reducible(R);
    if (sigma) ++reduced;
    report_reduction(R, sigma, cfg);
  }
  if (trials > 1)
    std::cout << "reduced " << reduced << " of " << trials << " trials\n";
  return 0;
}

int cmd_scan(int p, int m, const std::string& construction, int trials,
             std::uint64_t seed, const CliConfig& cfg) {
  (void)cfg;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto make_W = [&](int t) -> Subspace {
    if (construction == "Wp") return counterexample_Wp(p);
    if (construction == "Wprime") return counterexample_Wp_prime(p);
    (void)t;
    Eigen::MatrixXd G(p, m);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < m; ++j) G(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(p, m);
    return Subspace(Q);
  };
  int n = construction == "random" ? trials : 1;
  for (int t = 0; t < n; ++t) {
    Subspace W = make_W(t);
    int mw = W.m();
    PlaneScan scan = best_coordinate_plane(W);
    json j{{"p", p},
           {"m", mw},
           {"construction", construction},
           {"best_J", scan.J},
           {"dist_sq_over_pi2_4",
            scan.dist * scan.dist / (kQuarterPiSq)}};
    if (mw % 2 == 0) {
      j["reducible"] = sign_change_reducible(phi_mp(W)).has_value();
    } else {
      j["reducible"] = nullptr;
    }
    std::cout << j.dump() << "\n";
  }
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{
      "scaling-rotation distances and minimal smooth interpolation curves "
      "between symmetric positive-definite matrices"};
  app.require_subcommand(1);
  CliConfig cfg;

  std::string xf, yf, rfile;
  std::vector<int> random_pm;
  int scan_p = 0, scan_m = 0, trials = 1;
  std::uint64_t seed = 12345;
  std::string construction = "random";

  CLI::App* dist = app.add_subcommand("distance", "scaling-rotation distance");
  dist->add_option("X", xf, "start matrix file")->required();
  dist->add_option("Y", yf, "end matrix file")->required();
  add_common(dist, cfg);
  dist->add_option("--format", cfg.format)
      ->check(CLI::IsMember({"json", "text"}));

  CLI::App* interp =
      app.add_subcommand("interpolate", "write sampled interpolation curves");
  interp->add_option("X", xf, "start matrix file")->required();
  interp->add_option("Y", yf, "end matrix file")->required();
  add_common(interp, cfg);
  interp->add_option("--samples", cfg.samples, "sample count per curve")
      ->check(CLI::Range(2, 1000000));
  interp->add_option("--format", cfg.format)
      ->check(CLI::IsMember({"json", "csv"}));
  interp->add_option("--out", cfg.out_dir, "output directory");

  CLI::App* cls =
      app.add_subcommand("classify", "minimal-curve classes and lengths");
  cls->add_option("X", xf, "start matrix file")->required();
  cls->add_option("Y", yf, "end matrix file")->required();
  add_common(cls, cfg);
  cls->add_option("--format", cfg.format)
      ->check(CLI::IsMember({"json", "text"}));

  CLI::App* fib = app.add_subcommand("fiber", "eigendecomposition fiber");
  fib->add_option("X", xf, "matrix file")->required();
  add_common(fib, cfg);
  fib->add_option("--format", cfg.format)
      ->check(CLI::IsMember({"json", "text"}));

  CLI::App* red = app.add_subcommand("reduce", "sign-change reducibility");
  red->add_option("R", rfile, "rotation involution file");
  red->add_option("--random-involution", random_pm,
                  "dimension p and level m of random involutions")
      ->expected(2);
  red->add_option("--trials", trials)->check(CLI::PositiveNumber);
  red->add_option("--seed", seed);
  add_common(red, cfg);
  red->add_option("--format", cfg.format)
      ->check(CLI::IsMember({"json", "text"}));

  CLI::App* scan =
      app.add_subcommand("grassmann-scan", "coordinate-plane distance scan");
  scan->add_option("p", scan_p, "ambient dimension")->required();
  scan->add_option("m", scan_m, "subspace dimension")->required();
  scan->add_option("--construction", construction)
      ->check(CLI::IsMember({"Wp", "Wprime", "random"}));
  scan->add_option("--trials", trials)->check(CLI::PositiveNumber);
  scan->add_option("--seed", seed);
  add_common(scan, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (dist->parsed()) return cmd_distance(xf, yf, cfg);
    if (interp->parsed()) return cmd_interpolate(xf, yf, cfg);
    if (cls->parsed()) return cmd_classify(xf, yf, cfg);
    if (fib->parsed()) return cmd_fiber(xf, cfg);
    if (red->parsed()) {
      if (rfile.empty() && random_pm.size() != 2)
        throw InvalidInputError(
            "reduce needs a matrix file or --random-involution p m");
      return cmd_reduce(rfile, random_pm, trials, seed, cfg);
    }
    if (scan->parsed()) {
      if (scan_m < 1 || scan_m >= scan_p)
        throw InvalidInputError("need 1 <= m < p");
      return cmd_scan(scan_p, scan_m, construction, trials, seed, cfg);
    }
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitCompute;
  } catch (const DegenerateError& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kExitCompute;
  } catch (const TooLargeError& e) {
    std::cerr << "too large: " << e.what() << "\n";
    return kExitCompute;
  } catch (const WrongStratumError& e) {
    std::cerr << "unsupported stratum: " << e.what() << "\n";
    return kExitCompute;
  } catch (const AtCutLocusError& e) {
    std::cerr << "cut locus: " << e.what() << "\n";
    return kExitCompute;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
