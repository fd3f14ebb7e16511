#include "srgeom/strata.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace srgeom {
namespace {

void canonicalize(SetPartition& P) {
  for (auto& b : P.blocks) std::sort(b.begin(), b.end());
  std::sort(P.blocks.begin(), P.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

bool assign_parts(std::vector<int>& caps, const std::vector<int>& parts,
                  std::size_t i) {
  if (i == parts.size())
    return std::all_of(caps.begin(), caps.end(), [](int c) { return c == 0; });
  int last_tried = -1;
  for (std::size_t j = 0; j < caps.size(); ++j) {
    if (caps[j] < parts[i] || caps[j] == last_tried) continue;
    last_tried = caps[j];
    caps[j] -= parts[i];
    if (assign_parts(caps, parts, i + 1)) return true;
    caps[j] += parts[i];
  }
  return false;
}

}  // namespace

SetPartition SetPartition::top(int p) {
  SetPartition P;
  P.p = p;
  for (int i = 0; i < p; ++i) P.blocks.push_back({i});
  return P;
}

SetPartition SetPartition::bottom(int p) {
  SetPartition P;
  P.p = p;
  std::vector<int> all(p);
  std::iota(all.begin(), all.end(), 0);
  P.blocks.push_back(std::move(all));
  return P;
}

SetPartition SetPartition::from_blocks(int p,
                                       std::vector<std::vector<int>> blocks) {
  std::vector<char> seen(p, 0);
  int count = 0;
  for (const auto& b : blocks) {
    if (b.empty()) throw InvalidInputError("SetPartition: empty block");
    for (int i : b) {
      if (i < 0 || i >= p || seen[i])
        throw InvalidInputError("SetPartition: indices must cover 0..p-1 once");
      seen[i] = 1;
      ++count;
    }
  }
  if (count != p)
    throw InvalidInputError("SetPartition: indices must cover 0..p-1 once");
  SetPartition P;
  P.p = p;
  P.blocks = std::move(blocks);
  canonicalize(P);
  return P;
}

IntPartition IntPartition::of(std::vector<int> parts) {
  for (int k : parts)
    if (k <= 0) throw InvalidInputError("IntPartition: parts must be positive");
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  IntPartition a;
  a.parts = std::move(parts);
  return a;
}

int IntPartition::sum() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

SetPartition partition_of_diag(const PosDiag& D, double tol) {
  int p = D.p();
  Eigen::VectorXd lg = D.log();
  std::vector<int> idx(p);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&lg](int a, int b) { return lg(a) > lg(b); });
  std::vector<std::vector<int>> blocks;
  for (int t = 0; t < p; ++t) {
    if (t == 0 || lg(idx[t - 1]) - lg(idx[t]) > tol)
      blocks.emplace_back();
    blocks.back().push_back(idx[t]);
  }
  return SetPartition::from_blocks(p, std::move(blocks));
}

bool refines(const SetPartition& J, const SetPartition& K) {
  if (J.p != K.p) throw InvalidInputError("refines: dimension mismatch");
  std::vector<int> block_of(J.p, -1);
  for (std::size_t b = 0; b < J.blocks.size(); ++b)
    for (int i : J.blocks[b]) block_of[i] = static_cast<int>(b);
  for (const auto& kb : K.blocks)
    for (int i : kb)
      if (block_of[i] != block_of[kb.front()]) return false;
  return true;
}

bool refines_int(const IntPartition& a, const IntPartition& b) {
  if (a.sum() != b.sum()) return false;
  std::vector<int> caps = a.parts;
  return assign_parts(caps, b.parts, 0);
}

IntPartition int_partition_of(const SetPartition& J) {
  std::vector<int> sizes;
  sizes.reserve(J.blocks.size());
  for (const auto& b : J.blocks) sizes.push_back(static_cast<int>(b.size()));
  return IntPartition::of(std::move(sizes));
}

IntPartition stratum_of(const SpdMatrix& X, double tol) {
  EigenPoint e = eigen_decompose(X);
  return int_partition_of(partition_of_diag(e.D, tol));
}

StratumDims stratum_dims(const SetPartition& J) {
  int p = J.p;
  int r = J.num_blocks();
  int pairs = 0;
  for (const auto& b : J.blocks) {
    int k = static_cast<int>(b.size());
    pairs += k * (k - 1) / 2;
  }
  StratumDims d;
  d.dim_S_J = r + p * (p - 1) / 2;
  d.dim_S_int = d.dim_S_J - pairs;
  d.dim_D_J = r;
  return d;
}

FiberSummary fiber_summary(const SpdMatrix& X, double tol) {
  EigenPoint e = eigen_decompose(X);
  SetPartition J = partition_of_diag(e.D, tol);
  int p = J.p;
  int r = J.num_blocks();
  __int128 num = 1;
  for (int i = 0; i < r - 1; ++i) num *= 2;
  for (int i = 2; i <= p; ++i) num *= i;
  int dim = 0;
  for (const auto& b : J.blocks) {
    int k = static_cast<int>(b.size());
    for (int i = 2; i <= k; ++i) num /= i;
    dim += k * (k - 1) / 2;
  }
  if (num > INT64_MAX)
    throw TooLargeError("fiber_summary: component count overflows");
  FiberSummary f;
  f.num_components = static_cast<long long>(num);
  f.component_dim = dim;
  f.total_fiber_dim = dim;
  f.component_group_parts = int_partition_of(J);
  return f;
}

std::pair<long long, long long> count_strata(int p) {
  if (p < 1 || p > 25) throw TooLargeError("count_strata: p out of range");
  // Integer partitions by bounded-largest-part recurrence.
  std::vector<std::vector<long long>> np(p + 1, std::vector<long long>(p + 1, 0));
  for (int m = 0; m <= p; ++m) np[0][m] = 1;
  for (int n = 1; n <= p; ++n)
    for (int m = 1; m <= p; ++m)
      np[n][m] = np[n][m - 1] + (n >= m ? np[n - m][m] : 0);
  // Bell triangle: row n ends with B_n.
  std::vector<long long> row{1};
  for (int n = 2; n <= p; ++n) {
    std::vector<long long> next{row.back()};
    for (long long v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return {np[p][p], row.back()};
}

}  // namespace srgeom
