#include <cmath>
#include <map>
#include <numbers>

#include "doctest.h"
#include "latiso/gaussian.hpp"
#include "oracles.hpp"

using namespace latiso;
using namespace latiso::testing;

namespace {

double rho(double x, double s) { return std::exp(-std::numbers::pi * x * x / (s * s)); }

// P(‖u‖² >= bound) under the discrete Gaussian on a diagonal Gram, by direct
// summation over a box that holds all but a negligible part of the mass.
double tail_mass(const std::vector<double>& diag, double s, double bound) {
  const std::size_t n = diag.size();
  std::vector<long> box(n);
  for (std::size_t i = 0; i < n; ++i) box[i] = long(12 * s / std::sqrt(diag[i])) + 1;
  double total = 0, tail = 0;
  std::vector<long> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -box[i];
  for (;;) {
    double nrm = 0;
    for (std::size_t i = 0; i < n; ++i) nrm += diag[i] * double(x[i]) * double(x[i]);
    double w = std::exp(-std::numbers::pi * nrm / (s * s));
    total += w;
    if (nrm >= bound) tail += w;
    std::size_t i = 0;
    while (i < n && x[i] == box[i]) {
      x[i] = -box[i];
      ++i;
    }
    if (i == n) break;
    ++x[i];
  }
  return tail / total;
}

}  // namespace

TEST_CASE("one-dimensional marginals match rho within 0.02 total variation") {
  Lattice z1 = integer_lattice(1);
  const double s = 20;
  GaussianSampler sampler(z1, s);
  Rng rng(42);
  std::map<long, long> counts;
  const long draws = 100000;
  for (long t = 0; t < draws; ++t) ++counts[sampler.sample(rng).coords[0].get_si()];
  double norm = 0;
  for (long x = -60; x <= 60; ++x) norm += rho(x, s);
  double tv = 0;
  long outside = 0;
  for (const auto& [x, c] : counts)
    if (x < -60 || x > 60) outside += c;
  for (long x = -60; x <= 60; ++x) {
    double emp = counts.count(x) ? double(counts[x]) / draws : 0.0;
    tv += std::abs(emp - rho(x, s) / norm);
  }
  tv = tv / 2 + double(outside) / draws / 2;
  CHECK(tv <= 0.02);
}

TEST_CASE("mean squared norm, tail and symmetry") {
  struct Case {
    Lattice l;
    double s;
  };
  for (const auto& c : {Case{integer_lattice(1), 100}, Case{integer_lattice(2), 50},
                        Case{lat({{2, 1}, {1, 1}}), 30}}) {
    const std::size_t n = c.l.rank();
    GaussianSampler sampler(c.l, c.s);
    Rng rng(7);
    const int draws = 10000;
    double sum = 0;
    int tail = 0;
    std::vector<double> coord_sum(n, 0.0), coord_sq(n, 0.0);
    for (int t = 0; t < draws; ++t) {
      CoeffVec v = sampler.sample(rng);
      double nrm = c.l.norm_sq(v).get_d();
      sum += nrm;
      if (nrm >= c.s * c.s * double(n)) ++tail;
      for (std::size_t i = 0; i < n; ++i) {
        double x = v.coords[i].get_d();
        coord_sum[i] += x;
        coord_sq[i] += x * x;
      }
    }
    // unit determinant, s far above smoothing: E‖u‖² ≈ s²n/2π
    double expect = c.s * c.s * double(n) / (2 * std::numbers::pi);
    CHECK(std::abs(sum / draws - expect) <= 0.1 * expect);
    // Exact tail for the diagonal cases; the frequency must agree within 4σ.
    if (c.l.gram()(0, 0) == 1) {
      std::vector<double> diag(n, 1.0);
      double p = tail_mass(diag, c.s, c.s * c.s * double(n));
      double sigma = std::sqrt(p * (1 - p) / draws);
      CHECK(std::abs(double(tail) / draws - p) <= 4 * sigma + 1e-4);
      CHECK(p < std::pow(2.0, -double(n)));
    }
    for (std::size_t i = 0; i < n; ++i) {
      double mean = coord_sum[i] / draws;
      double sd = std::sqrt(coord_sq[i] / draws - mean * mean);
      CHECK(std::abs(mean) <= 3 * sd / std::sqrt(double(draws)));
    }
  }
}

TEST_CASE("width below the smoothness floor is rejected") {
  CHECK_THROWS_AS(GaussianSampler(integer_lattice(2), 0.5), WidthTooSmall);
  CHECK_THROWS_AS(GaussianSampler(lat({{100, 0}, {0, 1}}), 5), WidthTooSmall);
  CHECK_NOTHROW(GaussianSampler(integer_lattice(2), 1.0));
  CHECK(smoothness_floor_sq(integer_lattice(2)) > Rat(66, 100));
  CHECK(smoothness_floor_sq(integer_lattice(2)) < Rat(67, 100));
}

TEST_CASE("min_sample_count") {
  CHECK(min_sample_count(2, 4) == 147);
  CHECK(min_sample_count(1, 2) == 2);
  CHECK(min_sample_count(2, 2) == 4 + 42);
  for (double s : {2.0, 3.0, 5.0, 10.0, 40.0}) {
    CHECK(min_sample_count(2, s) <= min_sample_count(2, s * 1.5));
    CHECK(min_sample_count(2, s) <= min_sample_count(3, s));
  }
  CHECK_THROWS_AS(min_sample_count(1, 1), PreconditionViolated);
}

TEST_CASE("sample_generating_gram") {
  RatMat one = sample_generating_gram(integer_lattice(2), 3, 1, 5);
  CHECK(one.rows() == 1);
  CHECK(one(0, 0) >= 0);
  RatMat g = sample_generating_gram(lat({{2, 1}, {1, 2}}), 4, 30, 9);
  CHECK(g.rows() == 30);
  CHECK(is_symmetric(g));
  CHECK(rank(g) <= 2);
  for (std::size_t i = 0; i < 30; ++i) CHECK(g(i, i) >= 0);
}

TEST_CASE("sampled generators generate the lattice") {
  for (const auto& l : {integer_lattice(2), lat({{2, 1}, {1, 2}}), lat({{1, 0}, {0, 4}})}) {
    const double s = 4 * std::sqrt(kz_basis(l).lattice.gram()(1, 1).get_d());
    const std::size_t count = min_sample_count(2, s).get_ui();
    GaussianSampler sampler(l, s);
    Rng rng(3);
    int ok = 0;
    for (int t = 0; t < 200; ++t) {
      GeneratedLattice gen = basis_from_generators(sample_generating_gram(sampler, count, rng));
      if (gen.lattice.rank() == 2 && det_sq(gen.lattice) == det_sq(l)) ++ok;
    }
    CHECK(ok >= 198);
  }
}

TEST_CASE("sublattice mass") {
  // Z with 2Z at s = 100: mass ≈ 1/2, below 1/(1+e^{-π/c²}) + 3σ with c = s.
  Lattice z1 = integer_lattice(1);
  const std::size_t trials = 10000;
  double p = estimate_sublattice_mass(z1, IntMat{{Int(2)}}, 100, trials, 1).get_d();
  double c = 100;
  double bound = 1 / (1 + std::exp(-std::numbers::pi / (c * c)));
  CHECK(std::abs(p - 0.5) < 0.03);
  CHECK(p <= bound + 3 * std::sqrt(0.25 / trials));

  CHECK_THROWS_AS(estimate_sublattice_mass(z1, IntMat{{Int(1)}}, 10, 10, 1), NotSublattice);
  CHECK_THROWS_AS(estimate_sublattice_mass(integer_lattice(2),
                                           IntMat{{Int(1), Int(1)}, {Int(0), Int(1)}}, 10, 10, 1),
                  NotSublattice);
  double slice = estimate_sublattice_mass(integer_lattice(2), IntMat{{Int(1)}, {Int(0)}}, 50,
                                          5000, 2)
                     .get_d();
  CHECK(slice < 0.05);

  // index-2 sublattice of A2 at moderate width
  Lattice a2 = lat({{2, 1}, {1, 2}});
  double q = estimate_sublattice_mass(a2, IntMat{{Int(2), Int(0)}, {Int(0), Int(1)}}, 10,
                                      trials, 3)
                 .get_d();
  double cq = 10 / std::sqrt(2.0);
  CHECK(q <= 1 / (1 + std::exp(-std::numbers::pi / (cq * cq))) + 3 * std::sqrt(0.25 / trials));
}

TEST_CASE("linear independence rate") {
  CHECK(linear_independence_rate(integer_lattice(2), 10, 200, 1) >= Rat(99, 100));
  CHECK(linear_independence_rate(lat({{2, 1}, {1, 2}}), 10, 200, 2) >= Rat(99, 100));
  // rank 1: one sample, independent iff nonzero; P(0) = 1/Σρ ≈ 1/s
  CHECK(linear_independence_rate(integer_lattice(1), 100, 2000, 3) >= Rat(97, 100));
  CHECK(linear_independence_rate(integer_lattice(4), 6, 100, 4) >= Rat(99, 100));
  CHECK_THROWS_AS(linear_independence_rate(lat({{1, 0}, {0, 16}}), 3, 10, 1),
                  PreconditionViolated);
}

TEST_CASE("szk parameters sit at or above the longest KZ vector") {
  SzkParams p = szk_params(lat({{1, 0}, {0, 4}}), lat({{2, 0}, {0, 2}}));
  CHECK(p.s >= 2.0);
  CHECK(p.s < 2.001);
  CHECK(p.samples == min_sample_count(2, p.s).get_ui());
}

TEST_CASE("szk rounds") {
  // rank-1 pair: the norm tells the two apart whenever the samples generate
  // the lattice; otherwise the prover falls back to answering 1.
  Lattice two = lat({{2}}), three = lat({{3}});
  int generated = 0;
  for (const auto& t : szk_run(two, three, 200, 1)) {
    CHECK(is_symmetric(t.g_sent));
    CHECK(t.accept == (t.i == t.i_guess));
    if (t.i == 1) {
      CHECK(t.accept);
      continue;
    }
    bool gen = false;
    try {
      gen = det_sq(basis_from_generators(t.g_sent).lattice) == 3;
    } catch (const ZeroLattice&) {
    }
    CHECK(t.accept == gen);
    generated += gen;
  }
  CHECK(generated > 0);
}

TEST_CASE("szk acceptance on YES and NO pairs") {
  Lattice a = lat({{2, 1}, {1, 3}});
  Lattice b = transform(a, IntMat{{Int(1), Int(2)}, {Int(1), Int(3)}});
  Rat yes = estimate_acceptance(a, b, 1000, 5);
  CHECK(yes >= Rat(45, 100));
  CHECK(yes <= Rat(55, 100));
  Rat no = estimate_acceptance(lat({{1, 0}, {0, 4}}), lat({{2, 0}, {0, 2}}), 200, 6);
  CHECK(no >= Rat(99, 100));
}

TEST_CASE("the sent Gram does not reveal the choice on YES pairs") {
  // Pool the diagonal entries (sample norms) for each choice and compare the
  // two empirical distributions.
  Lattice a = lat({{2, 1}, {1, 3}});
  Lattice b = transform(a, IntMat{{Int(2), Int(1)}, {Int(1), Int(1)}});
  std::map<Rat, double> h1, h2;
  double n1 = 0, n2 = 0;
  for (const auto& t : szk_run(a, b, 500, 77)) {
    auto& h = t.i == 1 ? h1 : h2;
    double& cnt = t.i == 1 ? n1 : n2;
    for (std::size_t k = 0; k < t.g_sent.rows(); ++k) {
      h[t.g_sent(k, k)] += 1;
      cnt += 1;
    }
  }
  std::map<Rat, int> keys;
  for (const auto& [k, v] : h1) keys[k] = 1;
  for (const auto& [k, v] : h2) keys[k] = 1;
  double tv = 0;
  for (const auto& [k, unused] : keys) {
    double p = h1.count(k) ? h1[k] / n1 : 0.0;
    double q = h2.count(k) ? h2[k] / n2 : 0.0;
    tv += std::abs(p - q);
  }
  CHECK(tv / 2 < 0.05);
}
