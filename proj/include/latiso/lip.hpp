#pragma once

// Lattice isomorphism: all unimodular U with G₁ = Uᵀ·G₂·U.
//
// Lattices whose shortest vectors span the space (λ₁ = λₙ) are handled by
// transporting an isolating dual vector: a dual vector w₁ of L₁ picks out a
// unique chain of independent shortest vectors, any isometry carries it to a
// dual vector of L₂ of the same norm picking out the image chain, and the two
// chains determine the map. The general case splits off the saturated span of
// the shortest vectors and recurses on the orthogonal projection.

#include <cstdint>
#include <optional>
#include <vector>

#include "latiso/isolation.hpp"
#include "latiso/lattice.hpp"
#include "latiso/reduction.hpp"

namespace latiso {

struct LipOptions {
  /// Re-enumerate shortest vectors and the dual shell instead of storing them.
  bool low_memory = false;
  std::uint64_t seed = 1;
  /// Failure probability used to size the isolating-vector search radius.
  Rat eps{1, 2};
  EnumOptions enumeration;
};

struct IsoSet {
  Lattice source, target;
  std::vector<IntMat> isoms;  // sorted, duplicate-free
};

struct IsolatingDual {
  DualCoeffVec w;
  Chain chain;  // n linearly independent shortest vectors of L
};

/// Shortest nonzero vectors, both signs, sorted.
std::vector<CoeffVec> shortest_vector_set(const Lattice& l, const EnumOptions& opts = {});

/// A dual vector uniquely defining a length-n independent chain among the
/// shortest vectors. Requires λ₁ = λₙ.
IsolatingDual find_isolating_dual(const Lattice& l, const LipOptions& opts = {});

/// All isomorphisms between two lattices whose shortest vectors have full
/// rank. Throws PreconditionViolated otherwise.
IsoSet lip_equal_minima(const Lattice& l1, const Lattice& l2, const LipOptions& opts = {});

/// All isomorphisms between two lattices of any shape.
IsoSet lip_general(const Lattice& l1, const Lattice& l2, const LipOptions& opts = {});

/// lip_general(L, L), checked to be a group.
IsoSet automorphisms(const Lattice& l, const LipOptions& opts = {});

/// Some isomorphism, if one exists; stops at the first certificate.
std::optional<IntMat> find_isomorphism(const Lattice& l1, const Lattice& l2,
                                       const LipOptions& opts = {});
bool lip_decide(const Lattice& l1, const Lattice& l2, const LipOptions& opts = {});

/// Dual coordinates of the image of w under the isomorphism U (L₁ → L₂):
/// U⁻ᵀ·w.
DualCoeffVec transport_dual(const IntMat& u, const DualCoeffVec& w);

}  // namespace latiso
