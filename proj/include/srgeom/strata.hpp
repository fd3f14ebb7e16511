#pragma once

#include "srgeom/core.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace srgeom {

// Partition of {0, ..., p-1}. Canonical form: each block sorted ascending,
// blocks ordered by smallest element.
struct SetPartition {
  int p = 0;
  std::vector<std::vector<int>> blocks;

  static SetPartition top(int p);     // all singletons
  static SetPartition bottom(int p);  // one block
  static SetPartition from_blocks(int p, std::vector<std::vector<int>> blocks);

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  bool operator==(const SetPartition& o) const = default;
};

// Partition of the integer p, parts non-increasing.
struct IntPartition {
  std::vector<int> parts;

  static IntPartition of(std::vector<int> parts);  // sorts descending
  int sum() const;
  bool operator==(const IntPartition& o) const = default;
};

// Structure of the fiber over an SPD matrix whose eigenvalue multiplicities
// are k_1 >= ... >= k_r: 2^(r-1) p! / prod(k_i!) components, each a copy of
// SO(k_1) x ... x SO(k_r).
struct FiberSummary {
  long long num_components = 0;
  int component_dim = 0;
  int total_fiber_dim = 0;
  IntPartition component_group_parts;
};

// Groups indices of D whose entries coincide on the log scale: single-linkage
// closure of |log d_i - log d_j| <= tol.
SetPartition partition_of_diag(const PosDiag& D, double tol = kTolEig);

// True iff every block of K is contained in a block of J (K refines J).
bool refines(const SetPartition& J, const SetPartition& K);

// True iff b arises by further splitting parts of a.
bool refines_int(const IntPartition& a, const IntPartition& b);

IntPartition int_partition_of(const SetPartition& J);

// Multiplicity pattern of X's eigenvalues, parts sorted non-increasing.
IntPartition stratum_of(const SpdMatrix& X, double tol = kTolEig);

struct StratumDims {
  int dim_S_J = 0;    // stratum of fixed eigenvalue pattern J: r + p(p-1)/2
  int dim_S_int = 0;  // stratum of the integer pattern: minus sum k_i(k_i-1)/2
  int dim_D_J = 0;    // diagonal part: r
};
StratumDims stratum_dims(const SetPartition& J);

// Throws TooLarge when the component count overflows 64 bits.
FiberSummary fiber_summary(const SpdMatrix& X, double tol = kTolEig);

// (number of integer partitions of p, Bell number B_p): counts of eigenvalue
// patterns of Sym+(p) and of eigenblock patterns of the product manifold.
std::pair<long long, long long> count_strata(int p);

}  // namespace srgeom
