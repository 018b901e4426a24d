#include "latiso/isolation.hpp"

#include <algorithm>

#include "latiso/random.hpp"

namespace latiso {

namespace {

class SpanOracle final : public EliminationOracle {
 public:
  bool member(std::span<const IntVec> a, std::span<const Int> x) const override {
    if (std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; })) return true;
    if (a.empty()) return false;
    std::vector<IntVec> cols(a.begin(), a.end());
    const std::size_t before = rank(from_columns(cols, x.size()));
    cols.emplace_back(x.begin(), x.end());
    return rank(from_columns(cols, x.size())) == before;
  }
};

class TrivialOracle final : public EliminationOracle {
 public:
  bool member(std::span<const IntVec> a, std::span<const Int>) const override {
    return !a.empty();
  }
};

class TopDOracle final : public EliminationOracle {
 public:
  explicit TopDOracle(std::size_t d) : d_(d) {}
  bool member(std::span<const IntVec> a, std::span<const Int> x) const override {
    std::vector<IntVec> distinct(a.begin(), a.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() >= d_) return true;
    return std::any_of(a.begin(), a.end(), [&](const IntVec& v) {
      return std::equal(v.begin(), v.end(), x.begin(), x.end());
    });
  }

 private:
  std::size_t d_;
};

}  // namespace

std::shared_ptr<const EliminationOracle> span_oracle() {
  return std::make_shared<SpanOracle>();
}

std::shared_ptr<const EliminationOracle> trivial_oracle() {
  return std::make_shared<TrivialOracle>();
}

std::shared_ptr<const EliminationOracle> top_d_oracle(std::size_t d) {
  return std::make_shared<TopDOracle>(d);
}

ChainResult extract_chain(std::span<const IntVec> c, std::span<const Int> z,
                          const EliminationOracle& oracle) {
  if (c.empty()) throw PreconditionViolated("chain extraction over an empty set");
  Chain chain;
  chain.selector.assign(z.begin(), z.end());
  for (;;) {
    const IntVec* best = nullptr;
    Int best_val;
    bool tie = false;
    for (const auto& x : c) {
      if (std::find(chain.vectors.begin(), chain.vectors.end(), x) != chain.vectors.end() ||
          oracle.member(chain.vectors, x))
        continue;
      Int v = dot(z, x);
      if (!best || v < best_val) {
        best = &x;
        best_val = v;
        tie = false;
      } else if (v == best_val && x != *best) {
        tie = true;
      }
    }
    if (!best) break;
    if (tie) return NotUnique{chain.vectors.size() + 1};
    chain.vectors.push_back(*best);
  }
  chain.maximal = true;
  return chain;
}

Int isolation_radius(const Int& k, const Int& m, const Int& n, const Rat& eps) {
  if (k < 1 || m < 1 || n < 1 || eps <= 0 || eps > 1)
    throw PreconditionViolated("isolation radius needs K, m, n >= 1 and 0 < eps <= 1");
  Rat r = Rat(k * (2 * k + 1) * m * m * n) / eps;
  return ceil_rat(r);
}

Int max_abs_entry(std::span<const IntVec> c) {
  Int k = 0;
  for (const auto& v : c)
    for (const auto& x : v) k = std::max(k, Int(abs(x)));
  return k;
}

namespace {

IntVec draw_selector(Rng& rng, std::size_t n, const Int& r) {
  IntVec z(n);
  for (auto& v : z) v = rng.uniform(1, r);
  return z;
}

}  // namespace

IsolationSample sample_isolating(std::span<const IntVec> c, const EliminationOracle& oracle,
                                 std::size_t m, const Rat& eps, std::uint64_t seed,
                                 std::size_t max_draws) {
  if (c.empty()) throw PreconditionViolated("isolation over an empty set");
  const std::size_t n = c.front().size();
  Int k = std::max(Int(1), max_abs_entry(c));
  Int r = isolation_radius(k, Int(static_cast<unsigned long>(m)),
                           Int(static_cast<unsigned long>(n)), eps);
  Rng rng(seed);
  for (std::size_t draw = 1; draw <= max_draws; ++draw) {
    IntVec z = draw_selector(rng, n, r);
    ChainResult res = extract_chain(c, z, oracle);
    if (auto* ch = std::get_if<Chain>(&res)) return {std::move(z), std::move(*ch), draw};
  }
  throw RetryLimitExceeded("no isolating vector after " + std::to_string(max_draws) +
                           " draws");
}

Rat estimate_isolation_prob(std::span<const IntVec> c, const EliminationOracle& oracle,
                            const Int& r, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw PreconditionViolated("trials must be positive");
  if (c.empty()) throw PreconditionViolated("isolation over an empty set");
  const std::size_t n = c.front().size();
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(seed + t);
    IntVec z = draw_selector(rng, n, r);
    if (std::holds_alternative<Chain>(extract_chain(c, z, oracle))) ++hits;
  }
  Rat p(static_cast<unsigned long>(hits), static_cast<unsigned long>(trials));
  p.canonicalize();
  return p;
}

}  // namespace latiso
