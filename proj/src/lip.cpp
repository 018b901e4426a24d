#include "latiso/lip.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "latiso/random.hpp"

namespace latiso {

namespace {

// Thrown from inside an enumeration callback to abandon the search once a
// single certificate is enough.
struct StopSearch {};

class IsoCollector {
 public:
  explicit IsoCollector(bool first) : first_(first) {}

  void add(IntMat u) {
    std::vector<Int> key(u.entries().begin(), u.entries().end());
    found_.emplace(std::move(key), std::move(u));
    if (first_) throw StopSearch{};
  }

  std::vector<IntMat> sorted() const {
    std::vector<IntMat> out;
    for (const auto& [key, u] : found_) out.push_back(u);
    return out;
  }

 private:
  bool first_;
  std::map<std::vector<Int>, IntMat> found_;
};

std::vector<IntVec> coords_of(const std::vector<CoeffVec>& vs) {
  std::vector<IntVec> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(v.coords);
  return out;
}

bool spans_full_rank(const std::vector<IntVec>& a, std::size_t n) {
  return !a.empty() && rank(from_columns(a, n)) == n;
}

IsoSet make_set(const Lattice& l1, const Lattice& l2, std::vector<IntMat> isoms) {
  return {l1, l2, std::move(isoms)};
}

IntVec mul(const IntMat& m, const IntVec& v) { return mat_vec(m, v); }

void equal_minima_search(const Lattice& l1, const Lattice& l2, const LipOptions& opts,
                         IsoCollector& out) {
  const std::size_t n = l1.rank();
  if (det_sq(l1) != det_sq(l2)) return;

  std::vector<IntVec> a1 = coords_of(shortest_vector_set(l1, opts.enumeration));
  if (!spans_full_rank(a1, n))
    throw PreconditionViolated("shortest vectors of the first lattice do not span it");
  const Rat lambda = l1.norm_sq(CoeffVec{a1.front()});
  if (min_norm_sq(l2, opts.enumeration) != lambda) return;

  auto load_a2 = [&] { return coords_of(shortest_vector_set(l2, opts.enumeration)); };
  std::vector<IntVec> a2_store;
  std::size_t a2_size = 0;
  if (opts.low_memory) {
    for_each_short_pair(
        l2, lambda, [&](const CoeffVec&, const Rat&) { a2_size += 2; }, opts.enumeration);
  } else {
    a2_store = load_a2();
    a2_size = a2_store.size();
  }
  if (a2_size != a1.size()) return;
  if (opts.low_memory) {
    if (!spans_full_rank(load_a2(), n))
      throw PreconditionViolated("shortest vectors of the second lattice do not span it");
  } else if (!spans_full_rank(a2_store, n)) {
    throw PreconditionViolated("shortest vectors of the second lattice do not span it");
  }

  IsolatingDual iso = find_isolating_dual(l1, opts);
  IntMat x = from_columns(iso.chain.vectors, n);
  RatMat x_inv = inverse(to_rational(x));
  const Rat shell = dual_norm_sq(dual(l1).gram(), iso.w);
  auto oracle = span_oracle();

  auto try_image = [&](const IntVec& w2) {
    std::vector<IntVec> a2_local;
    const std::vector<IntVec>& a2 = opts.low_memory ? (a2_local = load_a2()) : a2_store;
    ChainResult res = extract_chain(a2, w2, *oracle);
    const Chain* chain = std::get_if<Chain>(&res);
    if (!chain || chain->vectors.size() != n) return;
    RatMat u = to_rational(from_columns(chain->vectors, n)) * x_inv;
    if (!is_integral(u)) return;
    IntMat ui = to_integer(u);
    if (is_isomorphism(l1, l2, ui)) out.add(std::move(ui));
  };

  // Any isometry carries w₁ to a dual vector of L₂ with the same norm, so
  // the exact shell ‖w₂‖² = ‖w₁‖² contains every image that matters.
  Lattice d2 = dual(l2);
  if (opts.low_memory) {
    for_each_short_pair(
        d2, shell,
        [&](const CoeffVec& v, const Rat& norm) {
          if (norm != shell) return;
          try_image(v.coords);
          try_image((-v).coords);
        },
        opts.enumeration);
  } else {
    std::vector<IntVec> shell_vectors;
    for_each_short_pair(
        d2, shell,
        [&](const CoeffVec& v, const Rat& norm) {
          if (norm != shell) return;
          shell_vectors.push_back(v.coords);
          shell_vectors.push_back((-v).coords);
        },
        opts.enumeration);
    for (const auto& w2 : shell_vectors) try_image(w2);
  }
}

void general_search(const Lattice& l1, const Lattice& l2, const LipOptions& opts,
                    IsoCollector& out) {
  const std::size_t n = l1.rank();
  if (l2.rank() != n) return;
  if (n == 0) {
    out.add(IntMat());
    return;
  }
  if (n == 1) {
    if (l1.gram() != l2.gram()) return;
    out.add(IntMat{{Int(-1)}});
    out.add(IntMat{{Int(1)}});
    return;
  }
  if (det_sq(l1) != det_sq(l2)) return;

  std::vector<CoeffVec> a1 = shortest_vector_set(l1, opts.enumeration);
  std::vector<CoeffVec> a2 = shortest_vector_set(l2, opts.enumeration);
  if (a1.size() != a2.size() || l1.norm_sq(a1.front()) != l2.norm_sq(a2.front())) return;

  Projection p1 = project_away(l1, a1);
  Projection p2 = project_away(l2, a2);
  if (p1.sub_rank != p2.sub_rank) return;
  const std::size_t k = p1.sub_rank;
  if (k == n) {
    equal_minima_search(l1, l2, opts, out);
    return;
  }

  IsoCollector sub(false), rest(false);
  equal_minima_search(p1.sublattice, p2.sublattice, opts, sub);
  std::vector<IntMat> out1 = sub.sorted();
  if (out1.empty()) return;
  general_search(p1.projected, p2.projected, opts, rest);
  std::vector<IntMat> out2 = rest.sorted();
  if (out2.empty()) return;

  // In the adapted bases (sublattice basis s, complements c) an isometry
  // restricting to U₁ on the sublattice and inducing U₂ on the projection
  // sends c₁ⱼ to Σ U₂(l,j)·c₂ₗ + Σ (U₁·M₁ − M₂·U₂)(i,j)·s₂ᵢ, M = lift.
  IntMat c1_inv = unimodular_inverse(p1.basis);
  for (const auto& u1 : out1) {
    RatMat u1m1 = to_rational(u1) * p1.lift;
    for (const auto& u2 : out2) {
      RatMat off = p2.lift * to_rational(u2);
      IntMat t(n, n);
      bool integral = true;
      for (std::size_t i = 0; i < k && integral; ++i)
        for (std::size_t j = 0; j < n - k; ++j) {
          Rat v = u1m1(i, j) - off(i, j);
          if (v.get_den() != 1) {
            integral = false;
            break;
          }
          t(i, k + j) = v.get_num();
        }
      if (!integral) continue;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) t(i, j) = u1(i, j);
      for (std::size_t i = 0; i < n - k; ++i)
        for (std::size_t j = 0; j < n - k; ++j) t(k + i, k + j) = u2(i, j);
      IntMat u = p2.basis * t * c1_inv;
      if (is_isomorphism(l1, l2, u)) out.add(std::move(u));
    }
  }
}

IsoSet run(const Lattice& l1, const Lattice& l2, const LipOptions& opts, bool general,
           bool first) {
  IsoCollector out(first);
  if (l1.rank() == l2.rank()) {
    try {
      if (general)
        general_search(l1, l2, opts, out);
      else if (l1.rank() == 0)
        out.add(IntMat());
      else
        equal_minima_search(l1, l2, opts, out);
    } catch (const StopSearch&) {
    }
  }
  return make_set(l1, l2, out.sorted());
}

}  // namespace

std::vector<CoeffVec> shortest_vector_set(const Lattice& l, const EnumOptions& opts) {
  return enumerate_below(l, min_norm_sq(l, opts), opts);
}

IsolatingDual find_isolating_dual(const Lattice& l, const LipOptions& opts) {
  const std::size_t n = l.rank();
  if (n == 0) throw PreconditionViolated("rank-0 lattice");
  std::vector<IntVec> a = coords_of(shortest_vector_set(l, opts.enumeration));
  if (!spans_full_rank(a, n))
    throw PreconditionViolated("shortest vectors do not span the lattice");

  // Sample z over the dual-KZ basis: with B' = B·V, the dual vector B'*·z has
  // coordinates V⁻ᵀ·z against B*, and its pairing with x equals ⟨z, V⁻¹x⟩.
  ReducedBasis dk = dual_kz_basis(l, opts.enumeration);
  IntMat v_inv = unimodular_inverse(dk.transform);
  IntMat to_dual = v_inv.transpose();
  std::vector<IntVec> a_kz;
  for (const auto& x : a) a_kz.push_back(mul(v_inv, x));
  const Int k = std::max(Int(1), max_abs_entry(a_kz));
  const Int nn(static_cast<unsigned long>(n));
  const Int r_max = isolation_radius(k, nn, nn, opts.eps);
  const RatMat g_inv = dual(l).gram();
  auto oracle = span_oracle();

  Rng rng(opts.seed);
  constexpr int kDrawsPerRadius = 8;
  constexpr int kRoundsAtMax = 8;
  int rounds_at_max = 0;
  for (Int r = std::min(Int(2), r_max);; r = std::min(Int(2 * r), r_max)) {
    std::optional<IsolatingDual> best;
    Rat best_norm;
    for (int d = 0; d < kDrawsPerRadius; ++d) {
      IntVec z(n);
      for (auto& c : z) c = rng.uniform(1, r);
      DualCoeffVec w{mul(to_dual, z)};
      ChainResult res = extract_chain(a, w.coords, *oracle);
      const Chain* chain = std::get_if<Chain>(&res);
      if (!chain || chain->vectors.size() != n) continue;
      Rat norm = dual_norm_sq(g_inv, w);
      if (!best || norm < best_norm) {
        best = IsolatingDual{w, *chain};
        best_norm = norm;
      }
    }
    if (best) return *best;
    if (r == r_max && ++rounds_at_max >= kRoundsAtMax) break;
  }

  // Deterministic fallback: dual vectors by increasing norm, up to the
  // proven bound 25·n¹⁷·λ₁²(L*).
  Lattice d = dual(l);
  const Rat lambda_dual = min_norm_sq(d, opts.enumeration);
  Rat cap = lambda_dual * 25;
  for (std::size_t i = 0; i < 17; ++i) cap *= nn;
  for (Rat bound = lambda_dual;; bound *= 2) {
    if (bound > cap) bound = cap;
    for (const auto& sv : enumerate_with_norms(d, bound, opts.enumeration)) {
      ChainResult res = extract_chain(a, sv.v.coords, *oracle);
      const Chain* chain = std::get_if<Chain>(&res);
      if (chain && chain->vectors.size() == n) return {DualCoeffVec{sv.v.coords}, *chain};
    }
    if (bound == cap) break;
  }
  throw CapExceeded("no isolating dual vector below the proven norm bound");
}

IsoSet lip_equal_minima(const Lattice& l1, const Lattice& l2, const LipOptions& opts) {
  return run(l1, l2, opts, false, false);
}

IsoSet lip_general(const Lattice& l1, const Lattice& l2, const LipOptions& opts) {
  return run(l1, l2, opts, true, false);
}

IsoSet automorphisms(const Lattice& l, const LipOptions& opts) {
  IsoSet s = lip_general(l, l, opts);
  const IntMat id = IntMat::identity(l.rank());
  if (!std::binary_search(s.isoms.begin(), s.isoms.end(), id,
                          [](const IntMat& a, const IntMat& b) {
                            return std::lexicographical_compare(
                                a.entries().begin(), a.entries().end(),
                                b.entries().begin(), b.entries().end());
                          }))
    throw std::logic_error("automorphism set is missing the identity");
  for (const auto& u : s.isoms) {
    IntMat inv = l.rank() ? unimodular_inverse(u) : IntMat();
    if (std::find(s.isoms.begin(), s.isoms.end(), inv) == s.isoms.end())
      throw std::logic_error("automorphism set is not closed under inverse");
  }
  return s;
}

std::optional<IntMat> find_isomorphism(const Lattice& l1, const Lattice& l2,
                                       const LipOptions& opts) {
  IsoSet s = run(l1, l2, opts, true, true);
  if (s.isoms.empty()) return std::nullopt;
  return s.isoms.front();
}

bool lip_decide(const Lattice& l1, const Lattice& l2, const LipOptions& opts) {
  return find_isomorphism(l1, l2, opts).has_value();
}

DualCoeffVec transport_dual(const IntMat& u, const DualCoeffVec& w) {
  return {mat_vec(unimodular_inverse(u).transpose(), w.coords)};
}

}  // namespace latiso
