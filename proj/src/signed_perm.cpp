#include "srgeom/signed_perm.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_set>

namespace srgeom {
namespace {

std::vector<int> perm_inverse(const std::vector<int>& pi) {
  std::vector<int> inv(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) inv[pi[i]] = static_cast<int>(i);
  return inv;
}

int perm_sign(const std::vector<int>& pi) {
  std::vector<char> seen(pi.size(), 0);
  int parity = 0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = pi[j]) {
      seen[j] = 1;
      ++len;
    }
    parity ^= (len - 1) & 1;
  }
  return parity ? -1 : 1;
}

// Total order: +1 sorts before -1 entrywise, then the one-line permutation.
bool lex_less(const SignedPerm& a, const SignedPerm& b) {
  for (int i = 0; i < a.p(); ++i)
    if (a.signs[i] != b.signs[i]) return a.signs[i] > b.signs[i];
  return a.perm < b.perm;
}

std::uint64_t encode(const SignedPerm& g) {
  std::uint64_t code = 0;
  for (int i = 0; i < g.p(); ++i)
    code = code * 16 + static_cast<std::uint64_t>(g.perm[i]) * 2 +
           (g.signs[i] < 0 ? 1 : 0);
  return code;
}

}  // namespace

SignChange SignChange::identity(int p) {
  SignChange s;
  s.signs.assign(p, 1);
  return s;
}

int SignChange::sign_level() const {
  return static_cast<int>(std::count(signs.begin(), signs.end(), -1));
}

Eigen::MatrixXd SignChange::mat() const {
  Eigen::VectorXd d(p());
  for (int i = 0; i < p(); ++i) d(i) = signs[i];
  return d.asDiagonal();
}

SignedPerm SignedPerm::identity(int p) {
  SignedPerm g;
  g.signs.assign(p, 1);
  g.perm.resize(p);
  std::iota(g.perm.begin(), g.perm.end(), 0);
  return g;
}

SignedPerm multiply(const SignedPerm& a, const SignedPerm& b) {
  if (a.p() != b.p())
    throw InvalidInputError("signed perm multiply: dimension mismatch");
  int p = a.p();
  SignedPerm c;
  c.signs.resize(p);
  c.perm.resize(p);
  std::vector<int> inv_a = perm_inverse(a.perm);
  for (int i = 0; i < p; ++i) {
    c.perm[i] = a.perm[b.perm[i]];
    c.signs[i] = a.signs[i] * b.signs[inv_a[i]];
  }
  return c;
}

SignedPerm inverse(const SignedPerm& g) {
  int p = g.p();
  SignedPerm h;
  h.signs.resize(p);
  h.perm = perm_inverse(g.perm);
  for (int i = 0; i < p; ++i) h.signs[i] = g.signs[g.perm[i]];
  return h;
}

Eigen::MatrixXd mat(const SignedPerm& g) {
  int p = g.p();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p, p);
  for (int j = 0; j < p; ++j) m(g.perm[j], j) = g.signs[g.perm[j]];
  return m;
}

int sgn(const SignedPerm& g) {
  int s = perm_sign(g.perm);
  for (int v : g.signs) s *= v;
  return s;
}

bool is_even(const SignedPerm& g) { return sgn(g) == 1; }

void for_each_even(int p, const std::function<void(const SignedPerm&)>& fn) {
  if (p < 1 || p > 8)
    throw TooLargeError("signed perm enumeration limited to 1 <= p <= 8");
  SignedPerm g = SignedPerm::identity(p);
  do {
    for (std::uint32_t bits = 0; bits < (1u << p); ++bits) {
      for (int i = 0; i < p; ++i) g.signs[i] = (bits >> i) & 1 ? -1 : 1;
      if (is_even(g)) fn(g);
    }
  } while (std::next_permutation(g.perm.begin(), g.perm.end()));
}

std::vector<SignedPerm> enumerate_even(int p) {
  std::vector<SignedPerm> all;
  for_each_even(p, [&all](const SignedPerm& g) { all.push_back(g); });
  return all;
}

PosDiag act_on_diag(const SignedPerm& g, const PosDiag& D) {
  if (g.p() != D.p())
    throw InvalidInputError("act_on_diag: dimension mismatch");
  std::vector<int> inv = perm_inverse(g.perm);
  Eigen::VectorXd out(D.p());
  for (int i = 0; i < D.p(); ++i) out(i) = D.diag()(inv[i]);
  return PosDiag(out);
}

EigenPoint act_on_M(const SignedPerm& g, const EigenPoint& pt) {
  if (g.p() != pt.U.p())
    throw InvalidInputError("act_on_M: dimension mismatch");
  Eigen::MatrixXd u = pt.U.matrix() * mat(g).transpose();
  return EigenPoint{Rotation::trusted(std::move(u)), act_on_diag(g, pt.D)};
}

bool gamma0_membership(const SignedPerm& g, const SetPartition& J) {
  if (g.p() != J.p)
    throw InvalidInputError("gamma0_membership: dimension mismatch");
  for (const auto& block : J.blocks) {
    // The permutation must fix the block setwise, and the corresponding
    // signed-permutation block of mat(g) must have determinant +1.
    int sign_prod = 1;
    std::vector<int> local(g.p(), -1);
    for (std::size_t t = 0; t < block.size(); ++t)
      local[block[t]] = static_cast<int>(t);
    std::vector<int> restricted(block.size());
    for (std::size_t t = 0; t < block.size(); ++t) {
      int image = g.perm[block[t]];
      if (local[image] < 0) return false;
      restricted[t] = local[image];
      sign_prod *= g.signs[block[t]];
    }
    if (sign_prod * perm_sign(restricted) != 1) return false;
  }
  return true;
}

std::vector<SignedPerm> double_coset_reps(const SetPartition& J_D,
                                          const SetPartition& J_L) {
  if (J_D.p != J_L.p)
    throw InvalidInputError("double_coset_reps: dimension mismatch");
  int p = J_D.p;
  std::vector<SignedPerm> group = enumerate_even(p);
  std::vector<SignedPerm> left, right;
  for (const SignedPerm& g : group) {
    if (gamma0_membership(g, J_D)) left.push_back(g);
    if (gamma0_membership(g, J_L)) right.push_back(g);
  }
  std::unordered_set<std::uint64_t> visited;
  std::vector<SignedPerm> reps;
  for (const SignedPerm& g : group) {
    if (visited.count(encode(g))) continue;
    SignedPerm best = g;
    for (const SignedPerm& a : left) {
      SignedPerm ag = multiply(a, g);
      for (const SignedPerm& b : right) {
        SignedPerm agb = multiply(ag, b);
        visited.insert(encode(agb));
        if (lex_less(agb, best)) best = agb;
      }
    }
    reps.push_back(std::move(best));
  }
  std::sort(reps.begin(), reps.end(), lex_less);
  return reps;
}

}  // namespace srgeom
