#pragma once

// Elimination functions and isolated chains.
//
// An elimination function E is the closure operator of a family of integer
// sets closed under intersection. A weight vector z uniquely defines a chain
// x₁, …, x_d in a finite set C when each x_j is the unique minimizer of
// ⟨z, ·⟩ over C \ E({x₁, …, x_{j−1}}).

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "latiso/exactlinalg.hpp"

namespace latiso {

class EliminationOracle {
 public:
  virtual ~EliminationOracle() = default;
  /// x ∈ E(A).
  virtual bool member(std::span<const IntVec> a, std::span<const Int> x) const = 0;
};

/// E(A) = span(A) ∩ Zⁿ.
std::shared_ptr<const EliminationOracle> span_oracle();
/// The family {∅, Zⁿ}: E(∅) = ∅, otherwise everything.
std::shared_ptr<const EliminationOracle> trivial_oracle();
/// Identity on sets smaller than d, everything otherwise.
std::shared_ptr<const EliminationOracle> top_d_oracle(std::size_t d);

struct Chain {
  std::vector<IntVec> vectors;
  IntVec selector;
  bool maximal = false;
};

/// The minimum at `step` (1-based) was attained by two or more vectors.
struct NotUnique {
  std::size_t step = 0;
};

using ChainResult = std::variant<Chain, NotUnique>;

/// Greedy unique-minimum selection until C is exhausted.
ChainResult extract_chain(std::span<const IntVec> c, std::span<const Int> z,
                          const EliminationOracle& oracle);

/// ceil(K·(2K+1)·m²·n / eps).
Int isolation_radius(const Int& k, const Int& m, const Int& n, const Rat& eps);

struct IsolationSample {
  IntVec z;
  Chain chain;
  std::size_t draws = 0;  // number of z drawn, including the successful one
};

/// Draws z uniformly from {1,…,R}ⁿ with R = isolation_radius(K, m, n, eps),
/// K = max |c_i| over C, until z defines a maximal chain. Throws
/// RetryLimitExceeded after max_draws failures.
IsolationSample sample_isolating(std::span<const IntVec> c, const EliminationOracle& oracle,
                                 std::size_t m, const Rat& eps, std::uint64_t seed,
                                 std::size_t max_draws = 64);

/// Fraction of z uniform in {1,…,R}ⁿ yielding a maximal chain. Trial t uses
/// seed + t.
Rat estimate_isolation_prob(std::span<const IntVec> c, const EliminationOracle& oracle,
                            const Int& r, std::size_t trials, std::uint64_t seed);

/// Largest absolute coordinate over C.
Int max_abs_entry(std::span<const IntVec> c);

}  // namespace latiso
