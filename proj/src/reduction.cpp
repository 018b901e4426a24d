#include "latiso/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace latiso {

GSO gso(const Lattice& l) {
  const std::size_t n = l.rank();
  const RatMat& g = l.gram();
  GSO out{RatMat::identity(n), RatVec(n)};
  RatMat r(n, n);  // r(i, j) = <b_i, b~_j>
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Rat s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= out.mu(j, k) * r(i, k);
      r(i, j) = s;
      if (j < i) out.mu(i, j) = s / r(j, j);
    }
    out.gs_norms_sq[i] = r(i, i);
  }
  return out;
}

namespace {

Rat abs_rat(const Rat& q) { return q < 0 ? Rat(-q) : q; }

}  // namespace

ReducedBasis lll_reduce(const Lattice& l, const Rat& delta) {
  if (delta <= Rat(1, 4) || delta >= 1)
    throw PreconditionViolated("LLL parameter must satisfy 1/4 < delta < 1");
  const std::size_t n = l.rank();
  IntMat u = IntMat::identity(n);
  if (n <= 1) return {l, u};
  GSO g = gso(l);
  RatMat& mu = g.mu;
  RatVec& b = g.gs_norms_sq;
  const Rat half(1, 2);

  auto size_reduce = [&](std::size_t k, std::size_t j) {
    if (abs_rat(mu(k, j)) <= half) return;
    Int q = round_nearest(mu(k, j));
    for (std::size_t r = 0; r < n; ++r) u(r, k) -= q * u(r, j);
    mu(k, j) -= q;
    for (std::size_t i = 0; i < j; ++i) mu(k, i) -= q * mu(j, i);
  };

  std::size_t k = 1;
  while (k < n) {
    size_reduce(k, k - 1);
    if (b[k] < (delta - mu(k, k - 1) * mu(k, k - 1)) * b[k - 1]) {
      for (std::size_t r = 0; r < n; ++r) std::swap(u(r, k), u(r, k - 1));
      const Rat m = mu(k, k - 1);
      const Rat bn = b[k] + m * m * b[k - 1];
      mu(k, k - 1) = m * b[k - 1] / bn;
      b[k] = b[k - 1] * b[k] / bn;
      b[k - 1] = bn;
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu(k - 1, j), mu(k, j));
      for (std::size_t i = k + 1; i < n; ++i) {
        const Rat t = mu(i, k);
        mu(i, k) = mu(i, k - 1) - m * t;
        mu(i, k - 1) = t + mu(k, k - 1) * mu(i, k);
      }
      if (k > 1) --k;
    } else {
      for (std::size_t j = k - 1; j-- > 0;) size_reduce(k, j);
      ++k;
    }
  }
  return {transform(l, u), u};
}

bool is_lll_reduced(const Lattice& l, const Rat& delta) {
  GSO g = gso(l);
  const std::size_t n = l.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs_rat(g.mu(i, j)) > Rat(1, 2)) return false;
  for (std::size_t k = 1; k < n; ++k) {
    const Rat& m = g.mu(k, k - 1);
    if (g.gs_norms_sq[k] < (delta - m * m) * g.gs_norms_sq[k - 1]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// Depth-first interval enumeration on an LLL-reduced basis. Visits one
// representative of each ±v pair with squared norm <= bound; the visitor may
// lower `bound` while running.
class Enumerator {
 public:
  Enumerator(const Lattice& l, Rat bound, const EnumOptions& opts)
      : n_(l.rank()), bound_(std::move(bound)), opts_(opts) {
    ReducedBasis red = lll_reduce(l);
    transform_ = red.transform;
    GSO g = gso(red.lattice);
    mu_ = std::move(g.mu);
    r_ = std::move(g.gs_norms_sq);
    x_.assign(n_, 0);
    guard_predicted_size();
  }

  template <class Visit>
  void run(Visit&& visit) {
    if (n_ == 0 || bound_ <= 0) return;
    descend(n_ - 1, Rat(0), true, visit);
  }

  Rat& bound() { return bound_; }

 private:
  void guard_predicted_size() const {
    if (n_ == 0 || bound_ <= 0) return;
    // Gaussian-heuristic size of the enumeration tree.
    const double log_r = 0.5 * std::log(bound_.get_d());
    double total = 0, log_vol = 0;
    for (std::size_t k = 1; k <= n_; ++k) {
      log_vol += 0.5 * std::log(r_[n_ - k].get_d());
      const double kd = static_cast<double>(k);
      double log_ball = 0.5 * kd * std::log(M_PI) - std::lgamma(kd / 2 + 1) + kd * log_r;
      total += std::exp(log_ball - log_vol);
    }
    if (!(total <= opts_.max_nodes))
      throw BoundTooLarge("predicted enumeration size " + std::to_string(total) +
                          " exceeds cap " + std::to_string(opts_.max_nodes));
  }

  // Integer interval of x with (x - c)² <= q; false if empty.
  static bool interval(const Rat& c, const Rat& q, Int& lo, Int& hi) {
    auto feasible = [&](const Int& h) {
      Rat d = h - c;
      return d * d <= q;
    };
    Int m = round_nearest(c);
    if (!feasible(m)) return false;
    const double cd = c.get_d(), sq = std::sqrt(std::max(0.0, q.get_d()));
    hi = Int(std::floor(cd + sq));
    if (hi < m) hi = m;
    while (!feasible(hi)) --hi;
    while (feasible(hi + 1)) ++hi;
    lo = Int(std::ceil(cd - sq));
    if (lo > m) lo = m;
    while (!feasible(lo)) ++lo;
    while (feasible(lo - 1)) --lo;
    return true;
  }

  template <class Visit>
  void descend(std::size_t i, const Rat& above, bool zero_above, Visit& visit) {
    if (++nodes_ > 4 * opts_.max_nodes)
      throw BoundTooLarge("enumeration exceeded its node budget");
    Rat c = 0;
    for (std::size_t j = i + 1; j < n_; ++j)
      if (x_[j] != 0) c -= mu_(j, i) * x_[j];
    Rat q = (bound_ - above) / r_[i];
    if (q < 0) return;
    Int lo, hi;
    if (!interval(c, q, lo, hi)) return;
    if (zero_above && lo < 0) lo = 0;
    for (Int xi = lo; xi <= hi; ++xi) {
      Rat d = xi - c;
      Rat partial = above + r_[i] * d * d;
      if (partial > bound_) continue;  // bound may have shrunk
      x_[i] = xi;
      const bool zero = zero_above && xi == 0;
      if (i == 0) {
        if (!zero) emit(partial, visit);
      } else {
        descend(i - 1, partial, zero, visit);
      }
    }
    x_[i] = 0;
  }

  template <class Visit>
  void emit(const Rat& norm, Visit& visit) {
    CoeffVec v{mat_vec(transform_, x_)};
    visit(v, norm);
  }

  std::size_t n_;
  Rat bound_;
  EnumOptions opts_;
  IntMat transform_;
  RatMat mu_;
  RatVec r_;
  IntVec x_;
  double nodes_ = 0;
};

bool shortvec_less(const ShortVector& a, const ShortVector& b) {
  if (a.norm_sq != b.norm_sq) return a.norm_sq < b.norm_sq;
  return a.v < b.v;
}

}  // namespace

void for_each_short_pair(
    const Lattice& l, const Rat& bound_sq,
    const std::function<void(const CoeffVec&, const Rat&)>& visit,
    const EnumOptions& opts) {
  if (bound_sq < 0) throw PreconditionViolated("negative enumeration bound");
  Enumerator e(l, bound_sq, opts);
  e.run([&](const CoeffVec& v, const Rat& norm) { visit(v, norm); });
}

std::vector<ShortVector> enumerate_with_norms(const Lattice& l, const Rat& bound_sq,
                                              const EnumOptions& opts) {
  std::vector<ShortVector> out;
  for_each_short_pair(
      l, bound_sq,
      [&](const CoeffVec& v, const Rat& norm) {
        out.push_back({v, norm});
        out.push_back({-v, norm});
      },
      opts);
  std::sort(out.begin(), out.end(), shortvec_less);
  return out;
}

std::vector<CoeffVec> enumerate_below(const Lattice& l, const Rat& bound_sq,
                                      const EnumOptions& opts) {
  std::vector<CoeffVec> out;
  for (auto& sv : enumerate_with_norms(l, bound_sq, opts)) out.push_back(std::move(sv.v));
  return out;
}

Rat min_norm_sq(const Lattice& l, const EnumOptions& opts) {
  if (l.rank() == 0) throw PreconditionViolated("rank-0 lattice has no shortest vector");
  ReducedBasis red = lll_reduce(l);
  // The first reduced basis vector bounds λ₁² from above.
  Rat best = red.lattice.gram()(0, 0);
  Enumerator e(l, best, opts);
  e.run([&](const CoeffVec&, const Rat& norm) {
    if (norm < best) {
      best = norm;
      e.bound() = norm;
    }
  });
  return best;
}

CoeffVec shortest_vector(const Lattice& l, const EnumOptions& opts) {
  Rat lambda = min_norm_sq(l, opts);
  auto all = enumerate_with_norms(l, lambda, opts);
  return sign_normalized(all.front().v);
}

namespace {

// Size-reduce in place (|μ_ij| <= 1/2) without touching the GSO vectors.
void size_reduce_all(const Lattice& input, IntMat& u) {
  const std::size_t n = u.cols();
  GSO g = gso(transform(input, u));
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i; j-- > 0;) {
      Int q = round_nearest(g.mu(i, j));
      if (q == 0) continue;
      for (std::size_t r = 0; r < n; ++r) u(r, i) -= q * u(r, j);
      g.mu(i, j) -= q;
      for (std::size_t k = 0; k < j; ++k) g.mu(i, k) -= q * g.mu(j, k);
    }
  }
}

}  // namespace

ReducedBasis kz_basis(const Lattice& l, const EnumOptions& opts) {
  const std::size_t n = l.rank();
  if (n == 0) return {l, IntMat()};
  IntMat u = lll_reduce(l).transform;
  for (std::size_t i = 0; i < n; ++i) {
    RatMat g = congruence(l.gram(), u);
    std::vector<std::size_t> head(i);
    std::iota(head.begin(), head.end(), 0);
    Lattice proj = make_lattice(schur_complement(g, head));
    CoeffVec v = shortest_vector(proj, opts);
    IntMat w = complete_to_unimodular(from_columns(std::span(&v.coords, 1), n - i));
    IntMat t = IntMat::identity(n);
    for (std::size_t r = 0; r < n - i; ++r)
      for (std::size_t c = 0; c < n - i; ++c) t(i + r, i + c) = w(r, c);
    u = u * t;
  }
  size_reduce_all(l, u);
  return {transform(l, u), u};
}

ReducedBasis dual_kz_basis(const Lattice& l, const EnumOptions& opts) {
  if (l.rank() == 0) return {l, IntMat()};
  ReducedBasis dk = kz_basis(dual(l), opts);
  // A change of primal basis by U changes the dual basis by U⁻ᵀ.
  IntMat u = unimodular_inverse(dk.transform).transpose();
  return {transform(l, u), u};
}

bool is_kz_reduced(const Lattice& l, const EnumOptions& opts) {
  const std::size_t n = l.rank();
  GSO g = gso(l);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs_rat(g.mu(i, j)) > Rat(1, 2)) return false;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> head(i);
    std::iota(head.begin(), head.end(), 0);
    Lattice proj = make_lattice(schur_complement(l.gram(), head));
    if (min_norm_sq(proj, opts) != g.gs_norms_sq[i]) return false;
  }
  return true;
}

RatVec successive_minima_sq(const Lattice& l, const EnumOptions& opts) {
  const std::size_t n = l.rank();
  if (n == 0) return {};
  // A KZ basis consists of n independent vectors, so its longest vector
  // bounds λₙ² from above.
  ReducedBasis kz = kz_basis(l, opts);
  Rat bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, kz.lattice.gram()(i, i));
  RatVec minima;
  std::vector<IntVec> chosen;
  for (const auto& sv : enumerate_with_norms(l, bound, opts)) {
    chosen.push_back(sv.v.coords);
    if (rank(from_columns(chosen, n)) == chosen.size()) {
      minima.push_back(sv.norm_sq);
      if (minima.size() == n) break;
    } else {
      chosen.pop_back();
    }
  }
  return minima;
}

}  // namespace latiso
