#pragma once

// Lattices represented by Gram matrices.
//
// No real-coordinate basis is ever stored: a lattice point is an integer
// coefficient vector against an implicit basis B with Gram G = BᵀB, and all
// norms are exact squared norms xᵀGx. Points of the dual lattice are integer
// coefficient vectors against the dual basis B* (Gram G⁻¹), and the pairing
// between a primal and a dual point is the plain integer dot product because
// BᵀB* = I.

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "latiso/exactlinalg.hpp"

namespace latiso {

/// Coefficients of a lattice point with respect to the lattice basis.
struct CoeffVec {
  IntVec coords;

  std::size_t size() const { return coords.size(); }
  bool is_zero() const;
  CoeffVec operator-() const;
  friend bool operator==(const CoeffVec&, const CoeffVec&) = default;
};
bool operator<(const CoeffVec& a, const CoeffVec& b);

/// Coefficients of a dual-lattice point with respect to the dual basis.
struct DualCoeffVec {
  IntVec coords;

  std::size_t size() const { return coords.size(); }
  friend bool operator==(const DualCoeffVec&, const DualCoeffVec&) = default;
};

/// Lexicographic comparison of integer vectors.
bool lex_less(std::span<const Int> a, std::span<const Int> b);
/// Flip the sign so the first nonzero coordinate is positive.
CoeffVec sign_normalized(CoeffVec v);

class Lattice {
 public:
  /// Rank-0 lattice.
  Lattice() = default;

  std::size_t rank() const { return gram_.rows(); }
  const RatMat& gram() const { return gram_; }

  Rat norm_sq(const CoeffVec& v) const;
  Rat inner(const CoeffVec& a, const CoeffVec& b) const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.gram_ == b.gram_;
  }

 private:
  friend Lattice make_lattice(RatMat g);
  explicit Lattice(RatMat g) : gram_(std::move(g)) {}
  RatMat gram_;
};

/// Validates symmetry and positive definiteness.
Lattice make_lattice(RatMat g);
Lattice make_lattice(const IntMat& g);

/// Gram of the dual lattice is G⁻¹.
Lattice dual(const Lattice& l);
/// det(G) = det(L)².
Rat det_sq(const Lattice& l);

/// Squared norm of a dual vector: wᵀ·G⁻¹·w (g_inv = dual(L).gram()).
Rat dual_norm_sq(const RatMat& g_inv, const DualCoeffVec& w);

/// Change of basis: the lattice with Gram Uᵀ·G·U.
Lattice transform(const Lattice& l, const IntMat& u);

struct GeneratedLattice {
  Lattice lattice;
  IntMat combos;  // N x n; lattice.gram() == combosᵀ·Ggen·combos
};

/// Basis of the lattice generated by N vectors given only their (PSD) Gram
/// matrix. The returned basis is LLL-reduced.
GeneratedLattice basis_from_generators(const RatMat& generator_gram);

/// Basis of L ∩ span(S) in coefficient coordinates (n x k, HNF), saturated.
IntMat intersect_with_span(const Lattice& l, std::span<const CoeffVec> s);

struct Projection {
  Lattice projected;    // π(L), Gram = Schur complement
  Lattice sublattice;   // L ∩ span(S) in the adapted basis
  IntMat basis;         // unimodular n x n; first k columns span L ∩ span(S)
  std::size_t sub_rank = 0;
  // k x (n-k): column j holds the coordinates, in the sublattice basis, of
  // the component of complement vector j lying in span(S); so
  // π(c_j) = c_j − Σ_i lift(i, j)·s_i.
  RatMat lift;
};

/// Project L onto the orthogonal complement of span(S). span(S) = span(L)
/// yields a rank-0 projected lattice.
Projection project_away(const Lattice& l, std::span<const CoeffVec> s);

/// |L : M| for a full-rank sublattice M given by basis columns (coefficients
/// in L). Throws RankDeficient when the columns do not have full rank.
Rat index_of(const IntMat& sub_basis, const Lattice& l);

/// True iff u is unimodular and g1 = uᵀ·g2·u. Throws DimensionMismatch when
/// shapes disagree.
bool is_isomorphism(const Lattice& g1, const Lattice& g2, const IntMat& u);

}  // namespace latiso
