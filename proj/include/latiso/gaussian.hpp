#pragma once

// Discrete Gaussian sampling over Gram-represented lattices and a simulation
// of the two-message proof system for lattice non-isomorphism.
//
// ρ_s(x) = exp(−π‖x‖²/s²). The sampler is the randomized nearest-plane
// walk over a reduced basis: level by level, an integer is drawn from the
// one-dimensional discrete Gaussian centred at the current projection with
// width s/‖b̃ᵢ‖.

#include <cstdint>
#include <vector>

#include "latiso/lattice.hpp"
#include "latiso/random.hpp"
#include "latiso/reduction.hpp"

namespace latiso {

enum class SamplerBasis { lll, kz };

/// Smallest admissible s² for the given basis, as a rigorous rational upper
/// bound of max‖b̃ᵢ‖²·ln(2n+4)/π.
Rat smoothness_floor_sq(const Lattice& basis);

class GaussianSampler {
 public:
  /// Throws WidthTooSmall when s is below the smoothness floor of the reduced
  /// basis used for sampling.
  GaussianSampler(const Lattice& l, double s, SamplerBasis basis = SamplerBasis::lll);

  CoeffVec sample(Rng& rng) const;
  double width() const { return s_; }
  const Lattice& lattice() const { return lattice_; }

 private:
  Lattice lattice_;
  IntMat transform_;
  std::vector<std::vector<double>> mu_;  // mu_[j][i] for j > i
  std::vector<double> sigma_;            // s / ‖b̃ᵢ‖
  double s_;
};

/// One draw from the integer Gaussian with the given centre and width, by
/// rejection over centre ± 12 widths.
long sample_integer_gaussian(Rng& rng, double center, double sigma);

CoeffVec sample_discrete_gaussian(const Lattice& l, double s, std::uint64_t seed);

/// n² + ceil(n·log₂(s√n)·(n + 20·max(0, log₂log₂(s√n)))).
Int min_sample_count(std::size_t n, double s);

/// Gram matrix CᵀGC of N independent samples (columns of C).
RatMat sample_generating_gram(const Lattice& l, double s, std::size_t count,
                              std::uint64_t seed);
/// Same, drawing with an existing sampler; also returns the coefficient
/// matrix when `coeffs` is non-null.
RatMat sample_generating_gram(const GaussianSampler& sampler, std::size_t count, Rng& rng,
                              IntMat* coeffs = nullptr);

/// Fraction of samples lying in the sublattice spanned by the columns of
/// `sub_basis` (coefficients in L, any rank). Throws NotSublattice when the
/// columns generate all of L.
Rat estimate_sublattice_mass(const Lattice& l, const IntMat& sub_basis, double s,
                             std::size_t trials, std::uint64_t seed);

/// Fraction of trials in which n² samples contain n independent vectors.
/// Requires s ≥ λₙ(L).
Rat linear_independence_rate(const Lattice& l, double s, std::size_t trials,
                             std::uint64_t seed);

struct Transcript {
  int i = 1;        // verifier's secret choice, 1 or 2
  RatMat g_sent;    // Gram of the sampled generators
  int i_guess = 1;  // prover's answer
  bool accept = false;
};

struct SzkParams {
  double s = 0;
  std::size_t samples = 0;
};

/// Width tied to the longer KZ basis vector of the two lattices (never below
/// it), and the matching generator count.
SzkParams szk_params(const Lattice& l1, const Lattice& l2);

Transcript szk_round(const Lattice& l1, const Lattice& l2, std::uint64_t seed);
/// Round r uses seed + r.
std::vector<Transcript> szk_run(const Lattice& l1, const Lattice& l2, std::size_t rounds,
                                std::uint64_t seed);
Rat estimate_acceptance(const Lattice& l1, const Lattice& l2, std::size_t rounds,
                        std::uint64_t seed);

}  // namespace latiso
