#pragma once

// Seeded random instances: Gram matrices BᵀB and unimodular conjugates.

#include <cstdint>

#include "latiso/lattice.hpp"
#include "latiso/random.hpp"

namespace latiso {

/// Gram BᵀB of a nonsingular n x n integer B with entries in [−range, range].
Lattice random_lattice(std::size_t n, long range, Rng& rng);

/// Product of `ops` elementary column operations col_i += q·col_j (i ≠ j,
/// q uniform in [−skew, skew]). A rank-1 matrix is ±1.
IntMat random_unimodular(std::size_t n, long skew, std::size_t ops, Rng& rng);

struct InstancePair {
  Lattice a;
  Lattice b;        // Uᵀ·A·U
  IntMat transform; // U
};

/// The pair behind `gen`: a random Gram with entries of B in [−2, 2] and its
/// conjugate by a unimodular U built from 8n column operations.
InstancePair random_yes_pair(std::size_t n, std::uint64_t seed, long skew);

}  // namespace latiso
