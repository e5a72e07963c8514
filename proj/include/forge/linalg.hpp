#pragma once

// Dense vectors, matrices and subspaces over GF(2), GF(3), GF(4).
//
// Vectors are rows and matrices act on the right: the image of v under g is
// v * g. Subspaces are kept in reduced row-echelon form, which makes equal
// subspaces bit-identical and gives a canonical key for hashing.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "forge/error.hpp"
#include "forge/gf.hpp"

namespace forge {

using Vec = std::vector<elem_t>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, std::size_t rows, std::size_t cols)
      : f_(&f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const Field& f, const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw dimension_error("row length mismatch");
      std::copy(rows[i].begin(), rows[i].end(), m.a_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }
  static Matrix from_rows(const Field& f, const std::vector<Vec>& rows) {
    if (rows.empty()) throw dimension_error("cannot infer width of empty row list");
    return from_rows(f, rows, rows.front().size());
  }

  const Field& field() const { return *f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  elem_t operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  elem_t& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

  std::span<const elem_t> row(std::size_t r) const { return {a_.data() + r * cols_, cols_}; }
  Vec row_vec(std::size_t r) const { auto s = row(r); return {s.begin(), s.end()}; }
  std::vector<Vec> row_list() const {
    std::vector<Vec> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vec(r));
    return out;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_ || !(*f_ == *o.f_)) throw dimension_error("matrix product shape mismatch");
    Matrix m(*f_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        elem_t x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          m(i, j) = f_->add(m(i, j), f_->mul(x, o(k, j)));
      }
    return m;
  }
  Matrix operator+(const Matrix& o) const {
    check_shape(o);
    Matrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_->add(a_[i], o.a_[i]);
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    check_shape(o);
    Matrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_->sub(a_[i], o.a_[i]);
    return m;
  }
  Matrix scaled(elem_t s) const {
    Matrix m = *this;
    for (auto& x : m.a_) x = f_->mul(s, x);
    return m;
  }
  Matrix transpose() const {
    Matrix m(*f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  /// Entrywise Frobenius (conjugation over GF(4)).
  Matrix conjugate() const {
    Matrix m = *this;
    for (auto& x : m.a_) x = f_->frob(x);
    return m;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](elem_t x) { return x == 0; });
  }
  bool is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  const std::vector<elem_t>& data() const { return a_; }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.f_->order() == y.f_->order() && x.a_ == y.a_;
  }

 private:
  void check_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !(*f_ == *o.f_)) throw dimension_error("matrix shape mismatch");
  }

  const Field* f_ = &Field::gf2();
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<elem_t> a_;
};

// ---- vectors --------------------------------------------------------------

inline Vec vec_mul(const Field& f, std::span<const elem_t> v, const Matrix& m) {
  if (v.size() != m.rows()) throw dimension_error("vector/matrix shape mismatch");
  Vec out(m.cols(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    auto r = m.row(i);
    if (v[i] == 1) {
      for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.add(out[j], r[j]);
    } else {
      for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.add(out[j], f.mul(v[i], r[j]));
    }
  }
  return out;
}
inline Vec vec_mul(std::span<const elem_t> v, const Matrix& m) { return vec_mul(m.field(), v, m); }

inline Vec vec_add(const Field& f, const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = f.add(a[i], b[i]);
  return c;
}
inline Vec vec_scale(const Field& f, elem_t s, const Vec& a) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = f.mul(s, a[i]);
  return c;
}
inline bool vec_is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](elem_t x) { return x == 0; });
}
inline Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

/// Index of v in the enumeration of F^n as base-q digits (coordinate 0 least significant).
inline std::uint64_t vec_encode(const Field& f, std::span<const elem_t> v) {
  std::uint64_t x = 0;
  for (std::size_t i = v.size(); i-- > 0;) x = x * static_cast<std::uint64_t>(f.order()) + v[i];
  return x;
}
inline Vec vec_decode(const Field& f, std::uint64_t x, std::size_t n) {
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = static_cast<elem_t>(x % static_cast<std::uint64_t>(f.order()));
    x /= static_cast<std::uint64_t>(f.order());
  }
  return v;
}
inline std::uint64_t space_size(const Field& f, std::size_t n) {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < n; ++i) s *= static_cast<std::uint64_t>(f.order());
  return s;
}

/// Normalize a nonzero vector so that its first nonzero coordinate is 1.
inline Vec projective_normal(const Field& f, Vec v) {
  for (elem_t x : v)
    if (x != 0) return vec_scale(f, f.inv(x), v);
  return v;
}

// ---- elimination kernels ----------------------------------------------------

namespace detail {

struct Echelon {
  std::vector<Vec> rows;  // nonzero rows of the RREF
  std::vector<std::size_t> pivots;
};

/// Reference implementation: byte-wise Gauss-Jordan over any supported field.
inline Echelon rref_scalar(const Field& f, std::vector<Vec> rows, std::size_t ncols) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    elem_t s = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(s, x);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      elem_t m = f.neg(rows[i][c]);
      for (std::size_t j = 0; j < ncols; ++j) rows[i][j] = f.add(rows[i][j], f.mul(m, rows[r][j]));
    }
    e.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  e.rows = std::move(rows);
  return e;
}

/// GF(2) Gauss-Jordan on rows packed into 64-bit words.
inline Echelon rref_gf2_packed(const std::vector<Vec>& in, std::size_t ncols) {
  const std::size_t words = (ncols + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(in.size(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < in.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j)
      if (in[i][j]) rows[i][j / 64] |= std::uint64_t{1} << (j % 64);
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t piv = r;
    while (piv < rows.size() && !(rows[piv][w] & bit)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || !(rows[i][w] & bit)) continue;
      for (std::size_t k = w; k < words; ++k) rows[i][k] ^= rows[r][k];
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.rows.resize(r, Vec(ncols, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < ncols; ++j) e.rows[i][j] = static_cast<elem_t>((rows[i][j / 64] >> (j % 64)) & 1);
  return e;
}

inline Echelon rref_rows(const Field& f, std::vector<Vec> rows, std::size_t ncols) {
  if (f.order() == 2) return rref_gf2_packed(rows, ncols);
  return rref_scalar(f, std::move(rows), ncols);
}

}  // namespace detail

// ---- subspaces ------------------------------------------------------------

class Subspace {
 public:
  Subspace() = default;
  Subspace(const Field& f, std::size_t ambient) : f_(&f), n_(ambient) {}

  static Subspace span(const Field& f, std::size_t ambient, std::vector<Vec> gens) {
    for (const auto& v : gens)
      if (v.size() != ambient) throw dimension_error("vector length differs from ambient dimension");
    Subspace s(f, ambient);
    auto e = detail::rref_rows(f, std::move(gens), ambient);
    s.basis_ = std::move(e.rows);
    s.pivots_ = std::move(e.pivots);
    return s;
  }
  static Subspace full(const Field& f, std::size_t n) {
    std::vector<Vec> g;
    for (std::size_t i = 0; i < n; ++i) g.push_back(unit_vec(n, i));
    return span(f, n, std::move(g));
  }

  const Field& field() const { return *f_; }
  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return basis_.size() == n_; }

  /// v minus its projection along the pivot columns; zero iff v lies in the subspace.
  Vec reduce(Vec v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      elem_t c = v[pivots_[i]];
      if (c == 0) continue;
      elem_t m = f_->neg(c);
      for (std::size_t j = 0; j < n_; ++j) v[j] = f_->add(v[j], f_->mul(m, basis_[i][j]));
    }
    return v;
  }
  bool contains(const Vec& v) const {
    if (v.size() != n_) throw dimension_error("ambient mismatch");
    return vec_is_zero(reduce(v));
  }
  bool contains(const Subspace& o) const {
    check_ambient(o);
    return std::all_of(o.basis_.begin(), o.basis_.end(), [&](const Vec& v) { return contains(v); });
  }
  /// Coordinates of v (assumed in the subspace) with respect to basis().
  Vec coordinates(const Vec& v) const {
    Vec c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }
  /// Unit vectors on the non-pivot columns; they complete basis() to a basis of F^n.
  std::vector<Vec> complement_basis() const {
    std::vector<Vec> out;
    std::size_t k = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (k < pivots_.size() && pivots_[k] == j) {
        ++k;
        continue;
      }
      out.push_back(unit_vec(n_, j));
    }
    return out;
  }

  Subspace image(const Matrix& g) const {
    std::vector<Vec> gens;
    gens.reserve(basis_.size());
    for (const auto& b : basis_) gens.push_back(vec_mul(*f_, b, g));
    return span(*f_, n_, std::move(gens));
  }
  bool is_invariant(const Matrix& g) const {
    return std::all_of(basis_.begin(), basis_.end(), [&](const Vec& b) { return contains(vec_mul(*f_, b, g)); });
  }

  /// Every vector of the subspace (q^dim of them), in coordinate order.
  std::vector<Vec> elements() const {
    std::vector<Vec> out;
    const std::uint64_t total = space_size(*f_, dim());
    out.reserve(total);
    for (std::uint64_t x = 0; x < total; ++x) {
      Vec c = vec_decode(*f_, x, dim());
      Vec v(n_, 0);
      for (std::size_t i = 0; i < dim(); ++i)
        if (c[i]) v = vec_add(*f_, v, vec_scale(*f_, c[i], basis_[i]));
      out.push_back(std::move(v));
    }
    return out;
  }

  /// Canonical hashable encoding: equal keys iff equal subspaces.
  std::string canonical_key() const {
    std::string k;
    k.reserve(2 + basis_.size() * n_);
    k.push_back(static_cast<char>(n_));
    k.push_back(static_cast<char>(f_->order()));
    for (const auto& b : basis_)
      for (elem_t x : b) k.push_back(static_cast<char>(x));
    return k;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.f_->order() == b.f_->order() && a.basis_ == b.basis_;
  }

  void check_ambient(const Subspace& o) const {
    if (n_ != o.n_ || !(*f_ == *o.f_)) throw dimension_error("ambient dimension mismatch");
  }

 private:
  const Field* f_ = &Field::gf2();
  std::size_t n_ = 0;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

struct RrefResult {
  std::size_t rank;
  Subspace basis;
};

inline RrefResult rref(const Matrix& m) {
  Subspace s = Subspace::span(m.field(), m.cols(), m.row_list());
  return {s.dim(), std::move(s)};
}
inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

/// {v : v * m = 0}
inline Subspace left_kernel(const Matrix& m) {
  const Field& f = m.field();
  const std::size_t n = m.rows(), c = m.cols();
  std::vector<Vec> aug(n, Vec(c + n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    auto r = m.row(i);
    std::copy(r.begin(), r.end(), aug[i].begin());
    aug[i][c + i] = 1;
  }
  auto e = detail::rref_rows(f, std::move(aug), c + n);
  std::vector<Vec> ker;
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] < c) continue;
    ker.emplace_back(e.rows[i].begin() + static_cast<std::ptrdiff_t>(c), e.rows[i].end());
  }
  return Subspace::span(f, n, std::move(ker));
}

inline Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw dimension_error("inverse of non-square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  std::vector<Vec> aug(n, Vec(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    auto r = m.row(i);
    std::copy(r.begin(), r.end(), aug[i].begin());
    aug[i][n + i] = 1;
  }
  auto e = detail::rref_rows(f, std::move(aug), 2 * n);
  if (e.rows.size() < n || e.pivots[n - 1] != n - 1) throw precondition_error("matrix is singular");
  Matrix inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rows[i][n + j];
  return inv;
}

inline elem_t determinant(const Matrix& m) {
  if (!m.is_square()) throw dimension_error("determinant of non-square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  std::vector<Vec> a = m.row_list();
  elem_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = f.neg(det);
    }
    det = f.mul(det, a[c][c]);
    elem_t s = f.inv(a[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      elem_t mlt = f.neg(f.mul(a[i][c], s));
      for (std::size_t j = c; j < n; ++j) a[i][j] = f.add(a[i][j], f.mul(mlt, a[c][j]));
    }
  }
  return det;
}

/// {v : v g = v}
inline Subspace fixed_space(const Matrix& g) {
  if (!g.is_square()) throw dimension_error("fixed_space needs a square matrix");
  return left_kernel(g - Matrix::identity(g.field(), g.rows()));
}
/// Row space of g - 1, i.e. [V, g].
inline Subspace commutator_space(const Matrix& g) {
  if (!g.is_square()) throw dimension_error("commutator_space needs a square matrix");
  return rref(g - Matrix::identity(g.field(), g.rows())).basis;
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  a.check_ambient(b);
  std::vector<Vec> g = a.basis();
  g.insert(g.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.field(), a.ambient(), std::move(g));
}

inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  a.check_ambient(b);
  if (a.is_zero() || b.is_zero()) return Subspace(a.field(), a.ambient());
  std::vector<Vec> stacked = a.basis();
  stacked.insert(stacked.end(), b.basis().begin(), b.basis().end());
  Subspace rel = left_kernel(Matrix::from_rows(a.field(), stacked, a.ambient()));
  Matrix ab = Matrix::from_rows(a.field(), a.basis(), a.ambient());
  std::vector<Vec> out;
  for (const auto& r : rel.basis()) {
    Vec x(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(a.dim()));
    out.push_back(vec_mul(a.field(), x, ab));
  }
  return Subspace::span(a.field(), a.ambient(), std::move(out));
}

/// Action of g on an invariant subspace, written in the subspace's basis.
inline Matrix restrict_action(const Matrix& g, const Subspace& w) {
  const Field& f = g.field();
  Matrix m(f, w.dim(), w.dim());
  for (std::size_t i = 0; i < w.dim(); ++i) {
    Vec img = vec_mul(f, w.basis()[i], g);
    if (!w.contains(img)) throw precondition_error("subspace is not invariant");
    Vec c = w.coordinates(img);
    for (std::size_t j = 0; j < w.dim(); ++j) m(i, j) = c[j];
  }
  return m;
}

/// Action of g on V / w in the basis given by w.complement_basis().
inline Matrix quotient_action(const Matrix& g, const Subspace& w) {
  const Field& f = g.field();
  auto comp = w.complement_basis();
  std::vector<std::size_t> cols;
  for (const auto& c : comp)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j]) cols.push_back(j);
  Matrix m(f, comp.size(), comp.size());
  for (std::size_t i = 0; i < comp.size(); ++i) {
    Vec r = w.reduce(vec_mul(f, comp[i], g));
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = r[cols[j]];
  }
  return m;
}

/// Action of g on upper / lower for invariant subspaces lower <= upper.
inline Matrix section_action(const Matrix& g, const Subspace& lower, const Subspace& upper) {
  Matrix on_upper = restrict_action(g, upper);
  std::vector<Vec> low;
  for (const auto& v : lower.basis()) low.push_back(upper.coordinates(v));
  return quotient_action(on_upper, Subspace::span(g.field(), upper.dim(), std::move(low)));
}

/// Representatives of the 1-spaces of a subspace: vectors whose first nonzero
/// coordinate (with respect to basis()) is 1.
inline std::vector<Vec> projective_points(const Subspace& s) {
  const Field& f = s.field();
  std::vector<Vec> out;
  const std::uint64_t total = space_size(f, s.dim());
  for (std::uint64_t x = 1; x < total; ++x) {
    Vec c = vec_decode(f, x, s.dim());
    auto first = std::find_if(c.begin(), c.end(), [](elem_t e) { return e != 0; });
    if (*first != 1) continue;
    Vec v(s.ambient(), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i]) v = vec_add(f, v, vec_scale(f, c[i], s.basis()[i]));
    out.push_back(std::move(v));
  }
  return out;
}

/// Every k-dimensional subspace of F^n, enumerated through reduced echelon forms.
inline std::vector<Subspace> all_subspaces(const Field& f, std::size_t n, std::size_t k) {
  std::vector<Subspace> out;
  if (k > n) return out;
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    // free slots: (row i, column j) with j > piv[i] and j not a pivot column
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = piv[i] + 1; j < n; ++j)
        if (std::find(piv.begin(), piv.end(), j) == piv.end()) slots.emplace_back(i, j);
    const std::uint64_t total = space_size(f, slots.size());
    for (std::uint64_t x = 0; x < total; ++x) {
      Vec fill = vec_decode(f, x, slots.size());
      std::vector<Vec> rows(k, Vec(n, 0));
      for (std::size_t i = 0; i < k; ++i) rows[i][piv[i]] = 1;
      for (std::size_t s = 0; s < slots.size(); ++s) rows[slots[s].first][slots[s].second] = fill[s];
      out.push_back(Subspace::span(f, n, std::move(rows)));
    }
    // next combination of pivot columns
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

}  // namespace forge
