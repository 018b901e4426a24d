#pragma once

// Basis reduction and short-vector enumeration, all in exact rational
// arithmetic against a Gram matrix.

#include <cstdint>
#include <functional>
#include <vector>

#include "latiso/lattice.hpp"

namespace latiso {

/// Gram–Schmidt data: mu(i, j) = <b_i, b~_j> / <b~_j, b~_j> for j < i (unit
/// diagonal), gs_norms_sq[i] = ||b~_i||².
struct GSO {
  RatMat mu;
  RatVec gs_norms_sq;
};

GSO gso(const Lattice& l);

/// A reduced basis of the input lattice. lattice.gram() = transformᵀ·G·transform.
struct ReducedBasis {
  Lattice lattice;
  IntMat transform;  // unimodular
};

/// Exact δ-LLL, 1/4 < δ < 1.
ReducedBasis lll_reduce(const Lattice& l, const Rat& delta = Rat(3, 4));

struct EnumOptions {
  /// Refuse to start when the predicted enumeration-tree size exceeds this.
  double max_nodes = 1e8;
};

struct ShortVector {
  CoeffVec v;
  Rat norm_sq;
};

/// Streaming enumeration: calls `visit` once for every nonzero lattice
/// point with squared norm <= bound_sq, in no particular order. Only one of
/// each pair ±v is visited; `visit` sees the representative only.
void for_each_short_pair(
    const Lattice& l, const Rat& bound_sq,
    const std::function<void(const CoeffVec&, const Rat&)>& visit,
    const EnumOptions& opts = {});

/// All nonzero points with squared norm <= bound_sq (both v and -v), sorted
/// by (norm², lexicographic coordinates).
std::vector<ShortVector> enumerate_with_norms(const Lattice& l, const Rat& bound_sq,
                                              const EnumOptions& opts = {});
std::vector<CoeffVec> enumerate_below(const Lattice& l, const Rat& bound_sq,
                                      const EnumOptions& opts = {});

/// λ₁² of a lattice of rank >= 1.
Rat min_norm_sq(const Lattice& l, const EnumOptions& opts = {});

/// A shortest nonzero vector: the first vector of the sorted enumeration at
/// radius λ₁, sign-normalized (first nonzero coordinate positive).
CoeffVec shortest_vector(const Lattice& l, const EnumOptions& opts = {});

/// Korkine–Zolotarev basis built from n successive shortest-vector calls on
/// projected lattices, then size-reduced.
ReducedBasis kz_basis(const Lattice& l, const EnumOptions& opts = {});
/// Basis whose dual basis is Korkine–Zolotarev.
ReducedBasis dual_kz_basis(const Lattice& l, const EnumOptions& opts = {});

/// λ₁², …, λₙ².
RatVec successive_minima_sq(const Lattice& l, const EnumOptions& opts = {});

/// True if the GSO satisfies |μ_ij| <= 1/2 and the δ-Lovász condition.
bool is_lll_reduced(const Lattice& l, const Rat& delta = Rat(3, 4));
/// True if every ||b~_i||² equals λ₁² of the i-th projected lattice and the
/// basis is size-reduced.
bool is_kz_reduced(const Lattice& l, const EnumOptions& opts = {});

}  // namespace latiso
