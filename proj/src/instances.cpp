#include "latiso/instances.hpp"

namespace latiso {

Lattice random_lattice(std::size_t n, long range, Rng& rng) {
  if (n == 0) return Lattice();
  if (range < 1) throw PreconditionViolated("entry range must be positive");
  for (;;) {
    IntMat b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = rng.uniform(Int(-range), Int(range));
    if (det(b) == 0) continue;
    return make_lattice(b.transpose() * b);
  }
}

IntMat random_unimodular(std::size_t n, long skew, std::size_t ops, Rng& rng) {
  if (skew < 0) throw PreconditionViolated("skew must be non-negative");
  IntMat u = IntMat::identity(n);
  if (n == 1 && rng.bit()) u(0, 0) = -1;
  if (n < 2) return u;
  for (std::size_t t = 0; t < ops; ++t) {
    std::size_t i = rng.below(n), j = rng.below(n - 1);
    if (j >= i) ++j;
    Int q = rng.uniform(Int(-skew), Int(skew));
    if (q == 0) continue;
    for (std::size_t r = 0; r < n; ++r) u(r, i) += q * u(r, j);
  }
  return u;
}

InstancePair random_yes_pair(std::size_t n, std::uint64_t seed, long skew) {
  if (n == 0) throw PreconditionViolated("n must be positive");
  Rng rng(seed);
  InstancePair p;
  p.a = random_lattice(n, 2, rng);
  p.transform = random_unimodular(n, skew, 8 * n, rng);
  p.b = transform(p.a, p.transform);
  return p;
}

}  // namespace latiso
