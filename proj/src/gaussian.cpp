#include "latiso/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "latiso/lip.hpp"

namespace latiso {

namespace {

Rat max_gs_norm_sq(const Lattice& basis) {
  Rat m = 0;
  for (const auto& b : gso(basis).gs_norms_sq) m = std::max(m, b);
  return m;
}

// ln(2n+4)/π, nudged upward so the exact comparison errs on the safe side.
double smoothing_factor(std::size_t n) {
  return std::log(2.0 * double(n) + 4.0) / std::numbers::pi;
}

}  // namespace

Rat smoothness_floor_sq(const Lattice& basis) {
  const double upper = smoothing_factor(basis.rank()) * (1.0 + 1e-12);
  return max_gs_norm_sq(basis) * Rat(upper);
}

GaussianSampler::GaussianSampler(const Lattice& l, double s, SamplerBasis basis) : s_(s) {
  if (l.rank() == 0) throw PreconditionViolated("cannot sample from a rank-0 lattice");
  if (!(s > 0) || !std::isfinite(s)) throw WidthTooSmall("width must be positive");
  ReducedBasis red = basis == SamplerBasis::kz ? kz_basis(l) : lll_reduce(l);
  lattice_ = l;
  transform_ = red.transform;
  if (Rat(s) * Rat(s) < smoothness_floor_sq(red.lattice))
    throw WidthTooSmall("width below the smoothness floor of the sampling basis");
  const std::size_t n = l.rank();
  GSO g = gso(red.lattice);
  mu_.assign(n, std::vector<double>(n, 0.0));
  sigma_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) mu_[i][j] = g.mu(i, j).get_d();
    sigma_[i] = s / std::sqrt(g.gs_norms_sq[i].get_d());
  }
}

CoeffVec GaussianSampler::sample(Rng& rng) const {
  const std::size_t n = sigma_.size();
  std::vector<long> y(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    double c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c -= mu_[j][i] * double(y[j]);
    y[i] = sample_integer_gaussian(rng, c, sigma_[i]);
  }
  IntVec yi(y.begin(), y.end());
  return CoeffVec{mat_vec(transform_, yi)};
}

long sample_integer_gaussian(Rng& rng, double center, double sigma) {
  const double lo = std::ceil(center - 12 * sigma);
  const double hi = std::floor(center + 12 * sigma);
  if (hi < lo) return std::lround(center);
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  const double scale = std::numbers::pi / (sigma * sigma);
  for (;;) {
    const double x = lo + double(rng.below(span));
    const double d = x - center;
    if (rng.uniform01() < std::exp(-scale * d * d)) return static_cast<long>(x);
  }
}

CoeffVec sample_discrete_gaussian(const Lattice& l, double s, std::uint64_t seed) {
  GaussianSampler sampler(l, s);
  Rng rng(seed);
  return sampler.sample(rng);
}

Int min_sample_count(std::size_t n, double s) {
  const double t = std::log2(s * std::sqrt(double(n)));
  if (n == 0 || !(t > 0)) throw PreconditionViolated("min_sample_count needs n >= 1 and s*sqrt(n) > 1");
  const double loglog = std::max(0.0, std::log2(t));
  const double extra = double(n) * t * (double(n) + 20.0 * loglog);
  // Guard against a product that is an integer up to rounding.
  const double rounded = std::round(extra);
  const double up = std::abs(extra - rounded) < 1e-9 ? rounded : std::ceil(extra);
  return Int(static_cast<unsigned long>(n * n)) + Int(static_cast<unsigned long>(up));
}

RatMat sample_generating_gram(const GaussianSampler& sampler, std::size_t count, Rng& rng,
                              IntMat* coeffs) {
  if (count == 0) throw PreconditionViolated("need at least one sample");
  const std::size_t n = sampler.lattice().rank();
  IntMat c(n, count);
  for (std::size_t j = 0; j < count; ++j) c.set_column(j, sampler.sample(rng).coords);
  RatMat g = congruence(sampler.lattice().gram(), c);
  if (coeffs) *coeffs = std::move(c);
  return g;
}

RatMat sample_generating_gram(const Lattice& l, double s, std::size_t count,
                              std::uint64_t seed) {
  GaussianSampler sampler(l, s);
  Rng rng(seed);
  return sample_generating_gram(sampler, count, rng);
}

Rat estimate_sublattice_mass(const Lattice& l, const IntMat& sub_basis, double s,
                             std::size_t trials, std::uint64_t seed) {
  const std::size_t n = l.rank();
  if (sub_basis.rows() != n) throw DimensionMismatch("sublattice basis has wrong length");
  if (trials == 0) throw PreconditionViolated("trials must be positive");
  HnfResult h = hnf(sub_basis);
  if (h.rank == n) {
    Int index = 1;
    for (std::size_t k = 0; k < n; ++k) index *= h.h(h.pivot_rows[k], k);
    if (index == 1) throw NotSublattice("the sublattice is the whole lattice");
  }
  GaussianSampler sampler(l, s);
  Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t)
    if (lattice_membership(h, sampler.sample(rng).coords)) ++hits;
  Rat p(static_cast<unsigned long>(hits), static_cast<unsigned long>(trials));
  p.canonicalize();
  return p;
}

Rat linear_independence_rate(const Lattice& l, double s, std::size_t trials,
                             std::uint64_t seed) {
  const std::size_t n = l.rank();
  if (trials == 0) throw PreconditionViolated("trials must be positive");
  if (Rat(s) * Rat(s) < successive_minima_sq(l).back())
    throw PreconditionViolated("width below the last successive minimum");
  GaussianSampler sampler(l, s);
  Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    IntMat c;
    sample_generating_gram(sampler, n * n, rng, &c);
    if (rank(c) == n) ++hits;
  }
  Rat p(static_cast<unsigned long>(hits), static_cast<unsigned long>(trials));
  p.canonicalize();
  return p;
}

SzkParams szk_params(const Lattice& l1, const Lattice& l2) {
  const std::size_t n = l1.rank();
  if (l2.rank() != n) throw DimensionMismatch("lattices of different rank");
  if (n == 0) throw PreconditionViolated("rank-0 lattices");
  Rat longest = 0;
  for (const Lattice* l : {&l1, &l2}) {
    ReducedBasis kz = kz_basis(*l);
    for (std::size_t i = 0; i < n; ++i) longest = std::max(longest, kz.lattice.gram()(i, i));
  }
  const double factor = std::sqrt(smoothing_factor(n));
  SzkParams p;
  p.s = std::sqrt(longest.get_d()) * std::max(1.0, factor) * (1.0 + 1e-9);
  p.samples = min_sample_count(n, p.s).get_ui();
  return p;
}

namespace {

struct SzkGame {
  SzkGame(const Lattice& a, const Lattice& b)
      : l1(a),
        l2(b),
        params(szk_params(a, b)),
        s1(a, params.s, SamplerBasis::kz),
        s2(b, params.s, SamplerBasis::kz) {}

  Transcript play(std::uint64_t seed) const {
    Rng rng(seed);
    Transcript t;
    t.i = rng.bit() ? 2 : 1;
    t.g_sent = sample_generating_gram(t.i == 1 ? s1 : s2, params.samples, rng);
    t.i_guess = prover(t.g_sent);
    t.accept = t.i == t.i_guess;
    return t;
  }

  // Unbounded prover: recover the generated lattice and test it against
  // both inputs; any ambiguity is answered with 1.
  int prover(const RatMat& g) const {
    GeneratedLattice gen;
    try {
      gen = basis_from_generators(g);
    } catch (const ZeroLattice&) {
      return 1;
    }
    if (gen.lattice.rank() != l1.rank()) return 1;
    const bool iso1 = lip_decide(gen.lattice, l1);
    const bool iso2 = lip_decide(gen.lattice, l2);
    return (iso2 && !iso1) ? 2 : 1;
  }

  Lattice l1, l2;
  SzkParams params;
  GaussianSampler s1, s2;
};

}  // namespace

Transcript szk_round(const Lattice& l1, const Lattice& l2, std::uint64_t seed) {
  return SzkGame(l1, l2).play(seed);
}

std::vector<Transcript> szk_run(const Lattice& l1, const Lattice& l2, std::size_t rounds,
                                std::uint64_t seed) {
  SzkGame game(l1, l2);
  std::vector<Transcript> out;
  out.reserve(rounds);
  for (std::size_t r = 0; r < rounds; ++r) out.push_back(game.play(seed + r));
  return out;
}

Rat estimate_acceptance(const Lattice& l1, const Lattice& l2, std::size_t rounds,
                        std::uint64_t seed) {
  if (rounds == 0) throw PreconditionViolated("rounds must be positive");
  SzkGame game(l1, l2);
  std::size_t accepted = 0;
  for (std::size_t r = 0; r < rounds; ++r)
    if (game.play(seed + r).accept) ++accepted;
  Rat p(static_cast<unsigned long>(accepted), static_cast<unsigned long>(rounds));
  p.canonicalize();
  return p;
}

}  // namespace latiso
