#include <cmath>
#include <random>

#include "doctest.h"
#include "latiso/isolation.hpp"
#include "latiso/lip.hpp"
#include "oracles.hpp"

using namespace latiso;
using namespace latiso::testing;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::vector<IntVec> unit_vectors(std::size_t n) {
  std::vector<IntVec> c;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    c.push_back(e);
    e[i] = -1;
    c.push_back(e);
  }
  return c;
}

IntVec random_vec(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntVec v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("built-in oracles") {
  auto span = span_oracle();
  std::vector<IntVec> a{iv({1, 0})};
  CHECK(span->member(a, iv({2, 0})));
  CHECK_FALSE(span->member(a, iv({0, 1})));
  CHECK(span->member({}, iv({0, 0})));
  CHECK_FALSE(span->member({}, iv({1, 0})));

  auto triv = trivial_oracle();
  CHECK_FALSE(triv->member({}, iv({5, 1})));
  CHECK(triv->member(a, iv({5, 1})));

  auto top2 = top_d_oracle(2);
  std::vector<IntVec> one{iv({1, 1})}, two{iv({1, 1}), iv({0, 3})};
  CHECK(top2->member(one, iv({1, 1})));
  CHECK_FALSE(top2->member(one, iv({2, 1})));
  CHECK(top2->member(two, iv({7, -7})));
}

TEST_CASE("oracle axioms on random small sets") {
  std::mt19937_64 rng(17);
  std::vector<std::shared_ptr<const EliminationOracle>> oracles{
      span_oracle(), trivial_oracle(), top_d_oracle(2), top_d_oracle(3)};
  for (const auto& o : oracles) {
    for (int t = 0; t < 150; ++t) {
      std::vector<IntVec> a, b;
      std::size_t na = rng() % 4, nb = rng() % 3;
      for (std::size_t i = 0; i < na; ++i) a.push_back(random_vec(rng, 3, -3, 3));
      b = a;
      for (std::size_t i = 0; i < nb; ++i) b.push_back(random_vec(rng, 3, -3, 3));
      // (i) A ⊆ E(A)
      for (const auto& x : a) REQUIRE(o->member(a, x));
      std::vector<IntVec> probes;
      for (int p = 0; p < 10; ++p) probes.push_back(random_vec(rng, 3, -3, 3));
      for (const auto& x : b) probes.push_back(x);
      // (iii) A ⊆ B ⇒ E(A) ⊆ E(B)
      for (const auto& x : probes)
        if (o->member(a, x)) REQUIRE(o->member(b, x));
      // (ii) A ⊆ E(B) ⇒ E(A) ⊆ E(B), with a random A' drawn from E(B)'s probes
      std::vector<IntVec> in_eb;
      for (const auto& x : probes)
        if (o->member(b, x) && in_eb.size() < 6 &&
            std::find(in_eb.begin(), in_eb.end(), x) == in_eb.end())
          in_eb.push_back(x);
      for (const auto& x : probes)
        if (o->member(in_eb, x)) REQUIRE(o->member(b, x));
    }
  }
}

TEST_CASE("extract_chain examples") {
  auto c = unit_vectors(2);
  ChainResult r = extract_chain(c, iv({1, 2}), *span_oracle());
  REQUIRE(std::holds_alternative<Chain>(r));
  const Chain& ch = std::get<Chain>(r);
  CHECK(ch.vectors == std::vector<IntVec>{iv({0, -1}), iv({-1, 0})});
  CHECK(ch.maximal);
  CHECK(ch.selector == iv({1, 2}));

  ChainResult tie = extract_chain(c, iv({1, 1}), *span_oracle());
  REQUIRE(std::holds_alternative<NotUnique>(tie));
  CHECK(std::get<NotUnique>(tie).step == 1);

  std::vector<IntVec> single{iv({1, 0})};
  ChainResult s = extract_chain(single, iv({-4, 9}), *trivial_oracle());
  REQUIRE(std::holds_alternative<Chain>(s));
  CHECK(std::get<Chain>(s).vectors == single);

  // a tie at the second step
  std::vector<IntVec> c2{iv({1, 0}), iv({0, 1}), iv({0, -1})};
  ChainResult t2 = extract_chain(c2, iv({-1, 0}), *span_oracle());
  REQUIRE(std::holds_alternative<NotUnique>(t2));
  CHECK(std::get<NotUnique>(t2).step == 2);
}

TEST_CASE("chains are reproducible and independent under the span oracle") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 2 + t % 2;
    std::vector<IntVec> c = unit_vectors(n);
    for (int extra = 0; extra < 3; ++extra) c.push_back(random_vec(rng, n, -2, 2));
    IntVec z = random_vec(rng, n, 1, 50);
    ChainResult r = extract_chain(c, z, *span_oracle());
    if (!std::holds_alternative<Chain>(r)) continue;
    const Chain& ch = std::get<Chain>(r);
    REQUIRE(ch.maximal);
    REQUIRE(ch.vectors.size() == n);
    REQUIRE(rank(from_columns(ch.vectors, n)) == n);
    ChainResult again = extract_chain(c, ch.selector, *span_oracle());
    REQUIRE(std::get<Chain>(again).vectors == ch.vectors);
    // each x_j is the strict minimum outside the span of its predecessors
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<IntVec> prev(ch.vectors.begin(), ch.vectors.begin() + j);
      for (const auto& x : c) {
        if (span_oracle()->member(prev, x) || x == ch.vectors[j]) continue;
        REQUIRE(dot(z, x) > dot(z, ch.vectors[j]));
      }
    }
  }
}

TEST_CASE("isolation radius") {
  CHECK(isolation_radius(1, 2, 2, Rat(1, 2)) == 48);
  CHECK(isolation_radius(1, 1, 1, Rat(1)) == 3);
  CHECK(isolation_radius(3, 2, 2, Rat(1, 2)) == 336);
  CHECK(isolation_radius(1, 3, 3, Rat(1, 3)) == 243);
  CHECK(isolation_radius(1, 1, 1, Rat(2, 3)) == 5);
  CHECK_THROWS_AS(isolation_radius(0, 1, 1, Rat(1, 2)), PreconditionViolated);
  CHECK_THROWS_AS(isolation_radius(1, 1, 1, Rat(0)), PreconditionViolated);
}

TEST_CASE("sample_isolating") {
  auto c = unit_vectors(2);
  int successes_first = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    IsolationSample s = sample_isolating(c, *span_oracle(), 2, Rat(1, 2), seed);
    REQUIRE(s.chain.vectors.size() == 2);
    REQUIRE(s.chain.selector == s.z);
    if (s.draws == 1) ++successes_first;
  }
  CHECK(successes_first >= 100);

  std::vector<IntVec> single{iv({3, 1})};
  IsolationSample one = sample_isolating(single, *span_oracle(), 1, Rat(1, 2), 9);
  CHECK(one.draws == 1);
  CHECK(one.chain.vectors.size() == 1);

  CHECK_THROWS_AS(sample_isolating(c, *span_oracle(), 2, Rat(1, 2), 1, 0),
                  RetryLimitExceeded);
}

TEST_CASE("A2 shortest vectors are isolated with the promised probability") {
  Lattice a2 = lat({{2, 1}, {1, 2}});
  std::vector<IntVec> c;
  for (const auto& v : shortest_vector_set(a2)) c.push_back(v.coords);
  REQUIRE(c.size() == 6);
  int first_try = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    IsolationSample s = sample_isolating(c, *span_oracle(), 2, Rat(1, 2), seed);
    REQUIRE(s.chain.vectors.size() == 2);
    if (s.draws == 1) ++first_try;
  }
  CHECK(first_try >= 500);
}

TEST_CASE("estimate_isolation_prob") {
  auto z2 = unit_vectors(2);
  Rat p = estimate_isolation_prob(z2, *span_oracle(), 48, 10000, 1);
  CHECK(p >= Rat(1, 2));
  std::vector<IntVec> single{iv({1, 0})};
  CHECK(estimate_isolation_prob(single, *trivial_oracle(), 7, 100, 3) == 1);
  auto z3 = unit_vectors(3);
  Int r = isolation_radius(1, 3, 3, Rat(1, 4));
  CHECK(estimate_isolation_prob(z3, *span_oracle(), r, 10000, 2) >= Rat(3, 4));
}

TEST_CASE("larger radius does not hurt isolation") {
  auto z3 = unit_vectors(3);
  const std::size_t trials = 4000;
  for (long r : {2L, 4L, 8L, 16L}) {
    double p1 = estimate_isolation_prob(z3, *span_oracle(), r, trials, 100).get_d();
    double p2 = estimate_isolation_prob(z3, *span_oracle(), 2 * r, trials, 200).get_d();
    double sigma = std::sqrt(0.25 / trials) * std::sqrt(2.0);
    CHECK(p2 >= p1 - 3 * sigma);
  }
}
