#include "latiso/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "latiso/reduction.hpp"

namespace latiso {

bool CoeffVec::is_zero() const {
  return std::all_of(coords.begin(), coords.end(),
                     [](const Int& c) { return c == 0; });
}

CoeffVec CoeffVec::operator-() const {
  CoeffVec r{coords};
  for (auto& c : r.coords) c = -c;
  return r;
}

bool lex_less(std::span<const Int> a, std::span<const Int> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool operator<(const CoeffVec& a, const CoeffVec& b) {
  return lex_less(a.coords, b.coords);
}

CoeffVec sign_normalized(CoeffVec v) {
  for (const auto& c : v.coords) {
    if (c == 0) continue;
    if (c < 0) return -v;
    break;
  }
  return v;
}

Rat Lattice::norm_sq(const CoeffVec& v) const {
  return bilinear(gram_, v.coords, v.coords);
}

Rat Lattice::inner(const CoeffVec& a, const CoeffVec& b) const {
  return bilinear(gram_, a.coords, b.coords);
}

Lattice make_lattice(RatMat g) {
  if (!g.square()) throw NotSymmetric("Gram matrix is not square");
  if (!is_symmetric(g)) throw NotSymmetric("Gram matrix is not symmetric");
  if (!is_positive_definite(g))
    throw NotPositiveDefinite("Gram matrix is not positive definite");
  return Lattice(std::move(g));
}

Lattice make_lattice(const IntMat& g) { return make_lattice(to_rational(g)); }

Lattice dual(const Lattice& l) { return make_lattice(inverse(l.gram())); }

Rat det_sq(const Lattice& l) { return det(l.gram()); }

Rat dual_norm_sq(const RatMat& g_inv, const DualCoeffVec& w) {
  return bilinear(g_inv, w.coords, w.coords);
}

Lattice transform(const Lattice& l, const IntMat& u) {
  return make_lattice(congruence(l.gram(), u));
}

GeneratedLattice basis_from_generators(const RatMat& generator_gram) {
  if (!is_symmetric(generator_gram))
    throw NotSymmetric("generator Gram matrix is not symmetric");
  // For a PSD Gram, Ggen·x = 0 exactly when the combination Σ x_i w_i
  // vanishes, so the trailing HNF transform columns are the integer
  // relations and the leading ones a complement: a basis of the lattice.
  HnfResult r = hnf(clear_row_denominators(generator_gram));
  if (r.rank == 0) throw ZeroLattice("generators span the zero lattice");
  IntMat z = r.u.columns(0, r.rank);
  Lattice raw = make_lattice(congruence(generator_gram, z));
  ReducedBasis red = lll_reduce(raw);
  return {red.lattice, z * red.transform};
}

IntMat intersect_with_span(const Lattice& l, std::span<const CoeffVec> s) {
  const std::size_t n = l.rank();
  if (s.empty()) throw DimensionMismatch("empty spanning set");
  // span(S) = { x : A·x = 0 } with the rows of A spanning span(S)^⊥; the
  // saturated lattice is then the integer kernel of A.
  RatMat rows(s.size(), n);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].size() != n) throw DimensionMismatch("vector length");
    for (std::size_t j = 0; j < n; ++j) rows(i, j) = s[i].coords[j];
  }
  RatMat perp = rational_nullspace(rows).transpose();
  if (perp.rows() == 0) return IntMat::identity(n);
  return integer_kernel(perp);
}

Projection project_away(const Lattice& l, std::span<const CoeffVec> s) {
  const std::size_t n = l.rank();
  IntMat sat = intersect_with_span(l, s);
  const std::size_t k = sat.cols();
  Projection p;
  p.sub_rank = k;
  p.basis = complete_to_unimodular(sat);
  RatMat adapted = congruence(l.gram(), p.basis);
  std::vector<std::size_t> sidx(k), cidx(n - k);
  std::iota(sidx.begin(), sidx.end(), 0);
  std::iota(cidx.begin(), cidx.end(), k);
  p.sublattice = make_lattice(adapted.submatrix(sidx, sidx));
  if (k == n) {
    p.projected = Lattice();
    p.lift = RatMat(k, 0);
    return p;
  }
  p.projected = make_lattice(schur_complement(adapted, sidx));
  p.lift = inverse(adapted.submatrix(sidx, sidx)) * adapted.submatrix(sidx, cidx);
  return p;
}

Rat index_of(const IntMat& sub_basis, const Lattice& l) {
  if (sub_basis.rows() != l.rank())
    throw DimensionMismatch("sublattice basis has wrong length");
  if (sub_basis.cols() != l.rank() || rank(sub_basis) != l.rank())
    throw RankDeficient("sublattice is not of full rank");
  Rat ratio = det(congruence(l.gram(), sub_basis)) / det_sq(l);
  Int index = abs(det(sub_basis));
  if (Rat(index * index) != ratio)
    throw RankDeficient("determinant ratio is not a perfect square");
  return Rat(index);
}

bool is_isomorphism(const Lattice& g1, const Lattice& g2, const IntMat& u) {
  const std::size_t n = g1.rank();
  if (g2.rank() != n || u.rows() != n || u.cols() != n)
    throw DimensionMismatch("isomorphism shape does not match lattice ranks");
  if (abs(det(u)) != 1) return false;
  return congruence(g2.gram(), u) == g1.gram();
}

}  // namespace latiso
