#include "latiso/exactlinalg.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace latiso {

RatMat to_rational(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

bool is_integral(const RatMat& m) {
  for (const auto& q : m.entries())
    if (q.get_den() != 1) return false;
  return true;
}

IntMat to_integer(const RatMat& m) {
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1)
        throw DimensionMismatch("non-integral entry " + to_string(m(i, j)));
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

IntMat from_columns(std::span<const IntVec> cols, std::size_t dim) {
  IntMat m(dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != dim) throw DimensionMismatch("column length");
    m.set_column(j, cols[j]);
  }
  return m;
}

IntVec mat_vec(const IntMat& m, std::span<const Int> v) {
  if (m.cols() != v.size()) throw DimensionMismatch("matrix-vector product");
  IntVec r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

RatVec mat_vec(const RatMat& m, std::span<const Rat> v) {
  if (m.cols() != v.size()) throw DimensionMismatch("matrix-vector product");
  RatVec r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

Int dot(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat bilinear(const RatMat& g, std::span<const Int> a, std::span<const Int> b) {
  if (g.rows() != a.size() || g.cols() != b.size())
    throw DimensionMismatch("bilinear form");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    Rat row = 0;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) row += g(i, j) * b[j];
    s += row * a[i];
  }
  return s;
}

RatMat congruence(const RatMat& g, const IntMat& m) {
  RatMat mr = to_rational(m);
  return mr.transpose() * g * mr;
}

bool is_symmetric(const RatMat& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

IntMat clear_row_denominators(const RatMat& m) {
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  return r;
}

IntMat clear_denominators(const RatMat& m, Int* scale) {
  Int l = 1;
  for (const auto& q : m.entries())
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
  if (scale) *scale = l;
  return r;
}

// ---------------------------------------------------------------------------
// Hermite normal form

namespace {

void swap_columns(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// col[dst] -= q * col[src]
void axpy_column(IntMat& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (m(r, src) != 0) m(r, dst) -= q * m(r, src);
}

void negate_column(IntMat& m, std::size_t c) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = -m(r, c);
}

Int round_div(const Int& a, const Int& b) {
  // nearest integer to a/b
  Rat q(a, b);
  q.canonicalize();
  return round_nearest(q);
}

}  // namespace

HnfResult hnf(const IntMat& m) {
  HnfResult res;
  res.h = m;
  res.u = IntMat::identity(m.cols());
  IntMat& h = res.h;
  IntMat& u = res.u;
  const std::size_t cols = m.cols();
  std::size_t k = 0;
  for (std::size_t i = 0; i < m.rows() && k < cols; ++i) {
    // Euclid across the columns k..cols-1 of row i.
    for (;;) {
      std::size_t best = cols;
      for (std::size_t j = k; j < cols; ++j) {
        if (h(i, j) == 0) continue;
        if (best == cols || abs(h(i, j)) < abs(h(i, best))) best = j;
      }
      if (best == cols) break;
      swap_columns(h, k, best);
      swap_columns(u, k, best);
      bool done = true;
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (h(i, j) == 0) continue;
        Int q = round_div(h(i, j), h(i, k));
        axpy_column(h, j, k, q);
        axpy_column(u, j, k, q);
        if (h(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(i, k) == 0) continue;
    if (h(i, k) < 0) {
      negate_column(h, k);
      negate_column(u, k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, k).get_mpz_t());
      if (q == 0) continue;
      axpy_column(h, j, k, q);
      axpy_column(u, j, k, q);
    }
    res.pivot_rows.push_back(i);
    ++k;
  }
  res.rank = k;
  return res;
}

IntMat column_lattice_basis(const IntMat& m) {
  HnfResult r = hnf(m);
  return r.h.columns(0, r.rank);
}

IntMat integer_kernel(const IntMat& m) {
  HnfResult r = hnf(m);
  IntMat k = r.u.columns(r.rank, m.cols() - r.rank);
  if (k.cols() == 0) return k;
  return column_lattice_basis(k);
}

IntMat integer_kernel(const RatMat& m) {
  return integer_kernel(clear_row_denominators(m));
}

bool lattice_membership(const HnfResult& basis_hnf, std::span<const Int> x,
                        IntVec* coeffs) {
  const IntMat& h = basis_hnf.h;
  if (x.size() != h.rows()) throw DimensionMismatch("membership test");
  IntVec residual(x.begin(), x.end());
  IntVec y(basis_hnf.rank);
  std::size_t next_pivot = 0;
  for (std::size_t row = 0; row < h.rows(); ++row) {
    if (next_pivot < basis_hnf.rank && basis_hnf.pivot_rows[next_pivot] == row) {
      const Int& p = h(row, next_pivot);
      if (!mpz_divisible_p(residual[row].get_mpz_t(), p.get_mpz_t()))
        return false;
      Int c = residual[row] / p;
      y[next_pivot] = c;
      if (c != 0)
        for (std::size_t r = row; r < h.rows(); ++r)
          residual[r] -= c * h(r, next_pivot);
      ++next_pivot;
    } else if (residual[row] != 0) {
      return false;
    }
  }
  if (coeffs) *coeffs = std::move(y);
  return true;
}

IntMat complete_to_unimodular(const IntMat& primitive) {
  const std::size_t n = primitive.rows();
  const std::size_t k = primitive.cols();
  HnfResult r = hnf(primitive.transpose());
  if (r.rank != k) throw RankDeficient("columns are linearly dependent");
  // Kᵀ·V = [H' | 0], so V⁻ᵀ·[H'ᵀ; 0] = K; saturation means |det H'| = 1.
  IntMat hk = r.h.columns(0, k);
  if (abs(det(hk)) != 1) throw RankDeficient("columns are not primitive");
  IntMat p = unimodular_inverse(r.u).transpose();
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t row = 0; row < n; ++row) p(row, c) = primitive(row, c);
  return p;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination

namespace {

// Bareiss elimination of [a | b] to upper triangular form in place.
// Returns false if a is singular. `sign` tracks row swaps.
bool bareiss_forward(IntMat& a, IntMat* b, int& sign) {
  const std::size_t n = a.rows();
  Int prev = 1;
  sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return false;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      if (b)
        for (std::size_t j = 0; j < b->cols(); ++j) std::swap((*b)(k, j), (*b)(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      if (b)
        for (std::size_t j = 0; j < b->cols(); ++j) {
          Int& e = (*b)(i, j);
          e = e * a(k, k) - a(i, k) * (*b)(k, j);
          mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), prev.get_mpz_t());
        }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return true;
}

// Solve a·x = b for integer a (square, nonsingular) and integer b.
RatMat bareiss_solve(IntMat a, IntMat b) {
  const std::size_t n = a.rows();
  int sign = 1;
  if (!bareiss_forward(a, &b, sign)) throw SingularMatrix("singular system");
  RatMat x(n, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t ii = n; ii-- > 0;) {
      Rat s = b(ii, c);
      for (std::size_t j = ii + 1; j < n; ++j)
        if (a(ii, j) != 0) s -= x(j, c) * a(ii, j);
      x(ii, c) = s / a(ii, ii);
    }
  }
  return x;
}

}  // namespace

Int det(const IntMat& m) {
  if (!m.square()) throw DimensionMismatch("determinant of non-square matrix");
  if (m.rows() == 0) return 1;
  IntMat a = m;
  int sign = 1;
  if (!bareiss_forward(a, nullptr, sign)) return 0;
  return sign * a(m.rows() - 1, m.rows() - 1);
}

Rat det(const RatMat& m) {
  if (!m.square()) throw DimensionMismatch("determinant of non-square matrix");
  IntMat a = clear_row_denominators(m);
  Rat d(det(a));
  // Undo the row scalings.
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) {
        d /= Rat(a(i, j)) / m(i, j);
        break;
      }
    }
  }
  d.canonicalize();
  return d;
}

RatMat inverse(const RatMat& m) {
  if (!m.square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return m;
  // m = D⁻¹·a with a integral, so m⁻¹ = a⁻¹·D.
  IntMat a = clear_row_denominators(m);
  RatMat x = bareiss_solve(a, IntMat::identity(n));
  for (std::size_t i = 0; i < n; ++i) {
    Rat scale = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) != 0) {
        scale = Rat(a(i, j)) / m(i, j);
        break;
      }
    for (std::size_t r = 0; r < n; ++r) x(r, i) *= scale;
  }
  return x;
}

IntMat unimodular_inverse(const IntMat& m) {
  if (!m.square()) throw DimensionMismatch("inverse of non-square matrix");
  if (abs(det(m)) != 1) throw SingularMatrix("matrix is not unimodular");
  return to_integer(bareiss_solve(m, IntMat::identity(m.rows())));
}

std::size_t rank(const IntMat& m) {
  IntMat a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  Int prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(p, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a(i, j) = a(i, j) * a(r, c) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

std::size_t rank(const RatMat& m) { return rank(clear_row_denominators(m)); }

RatMat rational_nullspace(const RatMat& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  RatMat a = m;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(p, j));
    Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0, pi = 0; c < cols; ++c) {
    if (pi < pivot_cols.size() && pivot_cols[pi] == c) {
      ++pi;
      continue;
    }
    free_cols.push_back(c);
  }
  RatMat ns(cols, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    ns(free_cols[f], f) = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
      ns(pivot_cols[i], f) = -a(i, free_cols[f]);
  }
  return ns;
}

RatMat schur_complement(const RatMat& g, std::span<const std::size_t> pivots) {
  if (!g.square()) throw DimensionMismatch("Schur complement of non-square matrix");
  const std::size_t n = g.rows();
  std::vector<bool> in_s(n, false);
  for (auto p : pivots) {
    if (p >= n) throw DimensionMismatch("pivot index out of range");
    in_s[p] = true;
  }
  std::vector<std::size_t> s(pivots.begin(), pivots.end());
  std::vector<std::size_t> c;
  for (std::size_t i = 0; i < n; ++i)
    if (!in_s[i]) c.push_back(i);
  RatMat gcc = g.submatrix(c, c);
  if (s.empty() || c.empty()) return gcc;
  RatMat gss = g.submatrix(s, s);
  if (det(gss) == 0) throw SingularMatrix("pivot block is singular");
  RatMat gsc = g.submatrix(s, c);
  RatMat gcs = g.submatrix(c, s);
  RatMat corr = gcs * inverse(gss) * gsc;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) gcc(i, j) -= corr(i, j);
  return gcc;
}

bool is_positive_definite(const RatMat& g) {
  if (!g.square()) return false;
  const std::size_t n = g.rows();
  RatMat a = g;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int ceil_rat(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int round_nearest(const Rat& q) { return floor_rat(q + Rat(1, 2)); }

Int floor_sqrt(const Rat& q) {
  if (q < 0) throw DimensionMismatch("square root of a negative number");
  Int f = floor_rat(q);
  Int r;
  mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
  return r;
}

std::string to_string(const Rat& q) { return q.get_str(); }

Rat parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto valid_int = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw ParseError("not a rational number: '" + text + "'");
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  Int d(den);
  if (d == 0) throw ParseError("zero denominator: '" + text + "'");
  Rat q(Int(num), d);
  q.canonicalize();
  return q;
}

}  // namespace latiso
