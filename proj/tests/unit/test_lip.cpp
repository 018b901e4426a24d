#include <random>

#include "doctest.h"
#include "latiso/lip.hpp"
#include "oracles.hpp"

using namespace latiso;
using namespace latiso::testing;

namespace {

std::set<SmallMat> as_set(const IsoSet& s) {
  std::set<SmallMat> out;
  for (const auto& u : s.isoms) out.insert(to_small(u));
  return out;
}

bool contains(const IsoSet& s, const IntMat& u) {
  return std::find(s.isoms.begin(), s.isoms.end(), u) != s.isoms.end();
}

void require_sound(const IsoSet& s) {
  for (const auto& u : s.isoms) REQUIRE(is_isomorphism(s.source, s.target, u));
  std::set<SmallMat> distinct = as_set(s);
  REQUIRE(distinct.size() == s.isoms.size());
}

const Lattice kA2 = lat({{2, 1}, {1, 2}});

}  // namespace

TEST_CASE("shortest vector sets") {
  CHECK(shortest_vector_set(integer_lattice(2)).size() == 4);
  CHECK(shortest_vector_set(kA2).size() == 6);
  CHECK(shortest_vector_set(integer_lattice(3)).size() == 6);
  CHECK(shortest_vector_set(lat({{1, 0}, {0, 4}})).size() == 2);
}

TEST_CASE("find_isolating_dual") {
  for (const auto& l : {integer_lattice(1), integer_lattice(2), integer_lattice(3), kA2,
                        lat({{5}}), lat({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}})}) {
    const std::size_t n = l.rank();
    IsolatingDual iso = find_isolating_dual(l);
    REQUIRE(iso.chain.vectors.size() == n);
    REQUIRE(rank(from_columns(iso.chain.vectors, n)) == n);
    // exhaustive post-check of uniqueness over A
    std::vector<IntVec> a;
    for (const auto& v : shortest_vector_set(l)) a.push_back(v.coords);
    ChainResult again = extract_chain(a, iso.w.coords, *span_oracle());
    REQUIRE(std::get<Chain>(again).vectors == iso.chain.vectors);
    Rat lambda_dual = min_norm_sq(dual(l));
    Rat cap = lambda_dual * 25;
    for (std::size_t i = 0; i < 17; ++i) cap *= long(n);
    REQUIRE(dual_norm_sq(dual(l).gram(), iso.w) <= cap);
  }
  CHECK_THROWS_AS(find_isolating_dual(lat({{1, 0}, {0, 4}})), PreconditionViolated);
}

TEST_CASE("lip_equal_minima examples") {
  IsoSet z2 = lip_equal_minima(integer_lattice(2), integer_lattice(2));
  CHECK(z2.isoms.size() == 8);
  require_sound(z2);
  IsoSet a2 = lip_equal_minima(kA2, kA2);
  CHECK(a2.isoms.size() == 12);
  CHECK(as_set(a2) == brute_force_isometries(kA2.gram(), kA2.gram()));
  CHECK(lip_equal_minima(integer_lattice(2), kA2).isoms.empty());
  CHECK_THROWS_AS(lip_equal_minima(lat({{1, 0}, {0, 4}}), lat({{1, 0}, {0, 4}})),
                  PreconditionViolated);
}

TEST_CASE("lip_general examples") {
  CHECK(lip_general(lat({{1, 0}, {0, 4}}), lat({{2, 0}, {0, 2}})).isoms.empty());
  IsoSet z3 = lip_general(integer_lattice(3), integer_lattice(3));
  CHECK(z3.isoms.size() == 48);
  require_sound(z3);
  IsoSet d = lip_general(lat({{1, 0}, {0, 4}}), lat({{1, 0}, {0, 4}}));
  CHECK(d.isoms.size() == 4);
  CHECK(lip_general(integer_lattice(2), integer_lattice(3)).isoms.empty());
  IsoSet r0 = lip_general(Lattice(), Lattice());
  CHECK(r0.isoms.size() == 1);
}

TEST_CASE("lip_general recovers random unimodular conjugates") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 2 + t % 2;
    Lattice g = random_lattice(n, 3, rng);
    IntMat v = random_unimodular(n, 2, 8 * int(n), rng);
    Lattice h = transform(g, v);  // h = Vᵀ g V
    IsoSet s = lip_general(g, h);
    REQUIRE(!s.isoms.empty());
    require_sound(s);
    REQUIRE(contains(s, unimodular_inverse(v)));
    REQUIRE(s.isoms.size() == automorphisms(g).isoms.size());
  }
}

TEST_CASE("automorphism counts") {
  CHECK(automorphisms(integer_lattice(1)).isoms.size() == 2);
  CHECK(automorphisms(integer_lattice(2)).isoms.size() == 8);
  CHECK(automorphisms(integer_lattice(3)).isoms.size() == 48);
  CHECK(automorphisms(integer_lattice(4)).isoms.size() == 384);
  CHECK(automorphisms(kA2).isoms.size() == 12);
  IsoSet r1 = automorphisms(lat({{7}}));
  CHECK(r1.isoms == std::vector<IntMat>{IntMat{{Int(-1)}}, IntMat{{Int(1)}}});
  // A3 root lattice: Weyl group times ±1
  CHECK(automorphisms(lat({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}})).isoms.size() == 48);
}

TEST_CASE("automorphisms form a group") {
  for (const auto& l : {integer_lattice(3), kA2, lat({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}})}) {
    IsoSet s = automorphisms(l);
    std::set<SmallMat> g = as_set(s);
    REQUIRE(g.count(to_small(IntMat::identity(l.rank()))) == 1);
    for (const auto& a : s.isoms) {
      REQUIRE(g.count(to_small(unimodular_inverse(a))) == 1);
      for (const auto& b : s.isoms) REQUIRE(g.count(to_small(a * b)) == 1);
    }
  }
}

TEST_CASE("lip_decide") {
  CHECK_FALSE(lip_decide(integer_lattice(2), lat({{2, 2}, {2, 4}})));
  CHECK(lip_decide(kA2, lat({{2, -1}, {-1, 2}})));
  CHECK(lip_decide(integer_lattice(3), integer_lattice(3)));
  auto u = find_isomorphism(kA2, lat({{2, -1}, {-1, 2}}));
  REQUIRE(u.has_value());
  CHECK(is_isomorphism(kA2, lat({{2, -1}, {-1, 2}}), *u));
}

TEST_CASE("oracle equivalence against brute force") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 24; ++t) {
    std::size_t n = 2 + t % 2;
    Lattice g = random_lattice(n, 3, rng);
    IntMat v = random_unimodular(n, 1, 3 * int(n), rng);
    Lattice h = (t % 3 == 0) ? random_lattice(n, 3, rng) : transform(g, v);
    IsoSet s = lip_general(g, h);
    REQUIRE(as_set(s) == brute_force_isometries(g.gram(), h.gram()));
  }
}

TEST_CASE("dual shell contains every transported isolating vector") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    std::size_t n = 2 + t % 2;
    // equal-minima instances: conjugates of Zⁿ and of A2 / A3
    Lattice base = (t % 2 == 0) ? integer_lattice(n)
                   : (n == 2)   ? kA2
                                : lat({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
    Lattice h = transform(base, random_unimodular(n, 2, 8 * int(n), rng));
    IsolatingDual iso = find_isolating_dual(base);
    Rat shell = dual_norm_sq(dual(base).gram(), iso.w);
    IsoSet s = lip_equal_minima(base, h);
    REQUIRE(!s.isoms.empty());
    for (const auto& u : s.isoms) {
      DualCoeffVec w2 = transport_dual(u, iso.w);
      REQUIRE(dual_norm_sq(dual(h).gram(), w2) == shell);
      // and w2 selects the image chain
      std::vector<IntVec> a2;
      for (const auto& v : shortest_vector_set(h)) a2.push_back(v.coords);
      ChainResult r = extract_chain(a2, w2.coords, *span_oracle());
      const Chain& ch = std::get<Chain>(r);
      for (std::size_t j = 0; j < n; ++j)
        REQUIRE(ch.vectors[j] == mat_vec(u, iso.chain.vectors[j]));
    }
  }
}

TEST_CASE("right composition with a change of basis") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 8; ++t) {
    std::size_t n = 2 + t % 2;
    Lattice g1 = random_lattice(n, 3, rng);
    Lattice g2 = transform(g1, random_unimodular(n, 2, 6, rng));
    IntMat p = random_unimodular(n, 2, 6, rng);
    IsoSet base = lip_general(g1, g2);
    IsoSet moved = lip_general(transform(g1, p), g2);
    REQUIRE(base.isoms.size() == moved.isoms.size());
    std::set<SmallMat> expect;
    for (const auto& u : base.isoms) expect.insert(to_small(u * p));
    REQUIRE(as_set(moved) == expect);
  }
}

TEST_CASE("low-memory mode gives identical output") {
  LipOptions low;
  low.low_memory = true;
  for (const auto& pair : std::vector<std::pair<Lattice, Lattice>>{
           {integer_lattice(3), integer_lattice(3)},
           {kA2, lat({{2, -1}, {-1, 2}})},
           {lat({{1, 0}, {0, 4}}), lat({{1, 0}, {0, 4}})},
           {lat({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}}), lat({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}})}}) {
    IsoSet fast = lip_general(pair.first, pair.second);
    IsoSet slow = lip_general(pair.first, pair.second, low);
    REQUIRE(fast.isoms == slow.isoms);
  }
}

TEST_CASE("different seeds and eps give the same set") {
  LipOptions a, b;
  a.seed = 3;
  b.seed = 99;
  b.eps = Rat(1, 4);
  Lattice l = lat({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  CHECK(lip_general(l, l, a).isoms == lip_general(l, l, b).isoms);
}
