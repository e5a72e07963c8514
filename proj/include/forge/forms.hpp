#pragma once

// Bilinear, quadratic and Hermitian forms.
//
// A quadratic form is stored by its upper-triangular coefficient matrix c, so
// q(x) = sum_{i<=j} c_ij x_i x_j. Its polarization B(x,y) = q(x+y)-q(x)-q(y)
// has Gram matrix c + c^T (diagonal 2 c_ii, which vanishes in characteristic 2).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forge/error.hpp"
#include "forge/gf.hpp"
#include "forge/linalg.hpp"

namespace forge {

enum class FormKind { bilinear, quadratic, hermitian };

class Form {
 public:
  static Form bilinear(Matrix gram) {
    if (!gram.is_square()) throw dimension_error("Gram matrix must be square");
    Form f;
    f.kind_ = FormKind::bilinear;
    f.gram_ = std::move(gram);
    return f;
  }

  static Form quadratic(const Matrix& coeffs) {
    if (!coeffs.is_square()) throw dimension_error("coefficient matrix must be square");
    const Field& fl = coeffs.field();
    const std::size_t n = coeffs.rows();
    Form f;
    f.kind_ = FormKind::quadratic;
    f.coeffs_ = Matrix(fl, n, n);
    // fold the lower triangle into the upper one
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t a = std::min(i, j), b = std::max(i, j);
        f.coeffs_(a, b) = fl.add(f.coeffs_(a, b), coeffs(i, j));
      }
    f.gram_ = f.coeffs_ + f.coeffs_.transpose();
    return f;
  }

  static Form hermitian(Matrix gram) {
    if (!gram.is_square()) throw dimension_error("Gram matrix must be square");
    if (gram.field().degree() != 2) throw precondition_error("hermitian forms need GF(4)");
    if (!(gram.transpose().conjugate() == gram)) throw precondition_error("Gram matrix is not hermitian");
    Form f;
    f.kind_ = FormKind::hermitian;
    f.gram_ = std::move(gram);
    return f;
  }

  FormKind kind() const { return kind_; }
  const Field& field() const { return gram_.field(); }
  std::size_t dim() const { return gram_.rows(); }
  /// Gram matrix of the bilinear/sesquilinear form (the polarization for quadratic forms).
  const Matrix& gram() const { return gram_; }
  const Matrix& coefficients() const {
    require(FormKind::quadratic);
    return coeffs_;
  }

  /// B(x, y); for hermitian forms sum_ij x_i H_ij frob(y_j).
  elem_t eval(const Vec& x, const Vec& y) const {
    const Field& f = field();
    elem_t s = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        elem_t yj = kind_ == FormKind::hermitian ? f.frob(y[j]) : y[j];
        s = f.add(s, f.mul(x[i], f.mul(gram_(i, j), yj)));
      }
    }
    return s;
  }

  elem_t q(const Vec& x) const {
    require(FormKind::quadratic);
    const Field& f = field();
    elem_t s = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = i; j < dim(); ++j) s = f.add(s, f.mul(coeffs_(i, j), f.mul(x[i], x[j])));
    }
    return s;
  }

  /// The form x -> q(x g) (or (x,y) -> B(xg, yg)).
  Form transformed(const Matrix& g) const {
    const Field& f = field();
    const std::size_t n = dim();
    std::vector<Vec> img;
    for (std::size_t i = 0; i < n; ++i) img.push_back(vec_mul(f, unit_vec(n, i), g));
    if (kind_ == FormKind::quadratic) {
      Matrix c(f, n, n);
      for (std::size_t i = 0; i < n; ++i) {
        c(i, i) = q(img[i]);
        for (std::size_t j = i + 1; j < n; ++j) c(i, j) = eval(img[i], img[j]);
      }
      return quadratic(c);
    }
    Matrix gram(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gram(i, j) = eval(img[i], img[j]);
    Form out = *this;
    out.gram_ = gram;
    return out;
  }

  bool same_as(const Form& o) const {
    if (kind_ != o.kind_) return false;
    return kind_ == FormKind::quadratic ? coeffs_ == o.coeffs_ : gram_ == o.gram_;
  }

  bool preserved_by(const Matrix& g) const { return same_as(transformed(g)); }

  /// lambda with form(xg) = lambda * form(x), if g is a similitude.
  std::optional<elem_t> similitude_multiplier(const Matrix& g) const {
    Form t = transformed(g);
    for (elem_t lam = 1; lam < field().order(); ++lam) {
      Form s = *this;
      s.gram_ = gram_.scaled(lam);
      if (kind_ == FormKind::quadratic) s.coeffs_ = coeffs_.scaled(lam);
      if (s.same_as(t)) return lam;
    }
    return std::nullopt;
  }

  bool is_alternating() const {
    if (kind_ != FormKind::bilinear) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (gram_(i, i) != 0) return false;
      for (std::size_t j = 0; j < dim(); ++j)
        if (gram_(i, j) != field().neg(gram_(j, i))) return false;
    }
    return true;
  }

  Subspace polar_radical() const { return left_kernel(gram_); }

  /// Polar radical for bilinear/hermitian forms; for quadratic forms the
  /// singular vectors inside the polar radical.
  Subspace radical() const {
    Subspace rad = polar_radical();
    if (kind_ != FormKind::quadratic || rad.is_zero()) return rad;
    std::vector<Vec> sing;
    for (const auto& v : rad.elements())
      if (q(v) == 0) sing.push_back(v);
    return Subspace::span(field(), dim(), std::move(sing));
  }

  bool is_nondegenerate() const { return radical().is_zero(); }

 private:
  void require(FormKind k) const {
    if (kind_ != k) throw precondition_error("operation needs a different kind of form");
  }

  FormKind kind_ = FormKind::bilinear;
  Matrix gram_;
  Matrix coeffs_;
};

inline Form polarize(const Form& q) {
  if (q.kind() != FormKind::quadratic) throw precondition_error("polarize needs a quadratic form");
  return Form::bilinear(q.gram());
}

// ---- standard forms ---------------------------------------------------------

enum class WittType { plus, minus, odd };

inline std::string to_string(WittType t) {
  switch (t) {
    case WittType::plus: return "plus";
    case WittType::minus: return "minus";
    default: return "odd";
  }
}

/// Alternating form with hyperbolic pairs (e0,e1), (e2,e3), ...
inline Form standard_symplectic(const Field& f, std::size_t n) {
  if (n % 2) throw precondition_error("symplectic space needs even dimension");
  Matrix g(f, n, n);
  for (std::size_t i = 0; i < n; i += 2) {
    g(i, i + 1) = 1;
    g(i + 1, i) = f.neg(1);
  }
  return Form::bilinear(g);
}

/// Hyperbolic pairs x0x1 + x2x3 + ...; for minus type the last pair is
/// anisotropic (x^2 + xy + y^2 over GF(2)/GF(4), x^2 + y^2 over GF(3)); odd
/// dimension appends x_{n-1}^2.
inline Form standard_quadratic(const Field& f, std::size_t n, WittType type) {
  if ((n % 2 == 1) != (type == WittType::odd)) throw precondition_error("type does not fit dimension");
  Matrix c(f, n, n);
  const std::size_t pairs = n / 2;
  for (std::size_t k = 0; k < pairs; ++k) c(2 * k, 2 * k + 1) = 1;
  if (type == WittType::minus) {
    const std::size_t i = 2 * (pairs - 1);
    if (f.characteristic() == 2) {
      c(i, i) = 1;
      c(i + 1, i + 1) = 1;
      if (f.order() == 4) c(i, i) = c(i + 1, i + 1) = 2;  // w x^2 + xy + w y^2 is anisotropic over GF(4)
    } else {
      c(i, i + 1) = 0;
      c(i, i) = 1;
      c(i + 1, i + 1) = 1;
    }
  }
  if (type == WittType::odd) c(n - 1, n - 1) = 1;
  return Form::quadratic(c);
}

/// Hermitian form with hyperbolic pairs (e0,e1), (e2,e3), ... over GF(4).
inline Form standard_hermitian(std::size_t n) {
  if (n % 2) throw precondition_error("hermitian standard form needs even dimension");
  const Field& f = Field::gf4();
  Matrix g(f, n, n);
  for (std::size_t i = 0; i < n; i += 2) g(i, i + 1) = g(i + 1, i) = 1;
  return Form::hermitian(g);
}

// ---- Witt type ----------------------------------------------------------------

struct WittResult {
  WittType type;
  Subspace radical;
  std::uint64_t singular_count;  // nonzero singular vectors of the whole space
};

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Nonzero singular vectors of a nondegenerate quadratic space of dimension m.
inline std::uint64_t singular_vector_count(std::uint64_t q, std::size_t m, WittType t) {
  if (m == 0) return 0;
  if (t == WittType::odd) return ipow(q, m - 1) - 1;
  const std::size_t k = m / 2;
  if (t == WittType::plus) return (ipow(q, k) - 1) * (ipow(q, k - 1) + 1);
  return (ipow(q, k) + 1) * (ipow(q, k - 1) - 1);
}

inline WittResult witt_type(const Form& q) {
  if (q.kind() != FormKind::quadratic) throw precondition_error("witt_type needs a quadratic form");
  if (q.dim() > 8) throw precondition_error("witt_type scans at most 8 dimensions");
  const Field& f = q.field();
  const std::uint64_t total = space_size(f, q.dim());
  std::uint64_t sing = 0;
  for (std::uint64_t x = 1; x < total; ++x)
    if (q.q(vec_decode(f, x, q.dim())) == 0) ++sing;
  Subspace rad = q.radical();
  const std::uint64_t rsize = space_size(f, rad.dim());
  const std::size_t m = q.dim() - rad.dim();
  const std::uint64_t qo = static_cast<std::uint64_t>(f.order());
  if ((sing + 1) % rsize == 0) {
    const std::uint64_t quot = (sing + 1) / rsize - 1;
    if (m % 2 == 1) {
      if (quot == singular_vector_count(qo, m, WittType::odd)) return {WittType::odd, rad, sing};
    } else {
      if (quot == singular_vector_count(qo, m, WittType::plus)) return {WittType::plus, rad, sing};
      if (quot == singular_vector_count(qo, m, WittType::minus)) return {WittType::minus, rad, sing};
    }
  }
  throw precondition_error("form not nondegenerate of either type");
}

// ---- GF(3) point and 2-space taxonomy ---------------------------------------

enum class PointType { singular, plus, minus };
enum class TwoSpaceType { S, DP, DM, Nplus, Nminus };

inline std::string to_string(PointType t) {
  switch (t) {
    case PointType::singular: return "singular";
    case PointType::plus: return "plus";
    default: return "minus";
  }
}
inline std::string to_string(TwoSpaceType t) {
  switch (t) {
    case TwoSpaceType::S: return "S";
    case TwoSpaceType::DP: return "DP";
    case TwoSpaceType::DM: return "DM";
    case TwoSpaceType::Nplus: return "N+";
    default: return "N-";
  }
}

/// Label of the 1-space <v>: q(v) = 0, 1, 2 gives singular, plus, minus.
inline PointType point_type(const Form& q, const Vec& v) {
  if (q.kind() != FormKind::quadratic || q.field().order() != 3)
    throw precondition_error("point_type needs a quadratic form over GF(3)");
  if (vec_is_zero(v)) throw precondition_error("point_type of the zero vector");
  switch (q.q(v)) {
    case 0: return PointType::singular;
    case 1: return PointType::plus;
    default: return PointType::minus;
  }
}

struct PointTypeCensus {
  std::size_t n_singular = 0, n_plus = 0, n_minus = 0;
  std::size_t total() const { return n_singular + n_plus + n_minus; }
  bool operator==(const PointTypeCensus&) const = default;
};

inline PointTypeCensus point_census(const Form& q, const Subspace& x) {
  PointTypeCensus c;
  for (const auto& v : projective_points(x)) {
    switch (point_type(q, v)) {
      case PointType::singular: ++c.n_singular; break;
      case PointType::plus: ++c.n_plus; break;
      case PointType::minus: ++c.n_minus; break;
    }
  }
  return c;
}

inline TwoSpaceType subspace_type_2dim(const Form& q, const Subspace& e) {
  if (e.dim() != 2) throw dimension_error("subspace_type_2dim needs a 2-dimensional subspace");
  const PointTypeCensus c = point_census(q, e);
  if (c.n_singular == 4) return TwoSpaceType::S;
  if (c.n_singular == 1 && c.n_plus == 3) return TwoSpaceType::DP;
  if (c.n_singular == 1 && c.n_minus == 3) return TwoSpaceType::DM;
  if (c.n_singular == 2 && c.n_plus == 1 && c.n_minus == 1) return TwoSpaceType::Nplus;
  if (c.n_singular == 0 && c.n_plus == 2 && c.n_minus == 2) return TwoSpaceType::Nminus;
  throw precondition_error("impossible 2-space census");
}

/// First singular nonzero vector of x (in coordinate order), if any.
inline std::optional<Vec> singular_point_in_hyperplane(const Form& q, const Subspace& x) {
  if (x.dim() != 3) throw dimension_error("expected a 3-dimensional subspace");
  for (const auto& v : projective_points(x))
    if (q.q(v) == 0) return v;
  return std::nullopt;
}

// ---- isometry generators ------------------------------------------------------

/// Generators of the full isometry group of a nondegenerate form: transvections
/// (symplectic), reflections (orthogonal, odd characteristic), orthogonal
/// transvections (orthogonal, characteristic 2), unitary transvections plus a
/// diagonal torus element (hermitian). The list is deduplicated but not minimal.
inline std::vector<Matrix> isometry_generators(const Form& form) {
  if (!form.is_nondegenerate()) throw precondition_error("form is degenerate");
  const Field& f = form.field();
  const std::size_t n = form.dim();
  const Subspace whole = Subspace::full(f, n);
  std::vector<Matrix> gens;
  auto push = [&](const Matrix& m) {
    if (m.is_identity()) return;
    for (const auto& g : gens)
      if (g == m) return;
    gens.push_back(m);
  };
  // x -> x + c(x) v where c is the functional x -> coef * B(x, v)
  auto rank_one = [&](const Vec& v, elem_t coef) {
    Matrix m = Matrix::identity(f, n);
    for (std::size_t i = 0; i < n; ++i) {
      elem_t c = f.mul(coef, form.eval(unit_vec(n, i), v));
      for (std::size_t j = 0; j < n; ++j) m(i, j) = f.add(m(i, j), f.mul(c, v[j]));
    }
    return m;
  };
  for (const auto& v : projective_points(whole)) {
    switch (form.kind()) {
      case FormKind::bilinear:
        if (!form.is_alternating()) throw precondition_error("only alternating bilinear forms are supported");
        for (elem_t a = 1; a < f.order(); ++a) push(rank_one(v, a));
        break;
      case FormKind::quadratic: {
        elem_t qv = form.q(v);
        if (qv == 0) break;
        push(rank_one(v, f.neg(f.inv(qv))));
        break;
      }
      case FormKind::hermitian:
        if (form.eval(v, v) != 0) break;
        push(rank_one(v, 1));
        break;
    }
  }
  if (form.kind() == FormKind::hermitian) {
    // diag(w, w, 1, ..., 1) preserves the first hyperbolic pair and has determinant w^2
    Matrix d = Matrix::identity(f, n);
    d(0, 0) = d(1, 1) = f.primitive();
    if (!form.preserved_by(d)) throw precondition_error("hermitian torus element needs the standard form");
    push(d);
  }
  for (const auto& g : gens)
    if (!form.preserved_by(g)) throw construction_error("generated matrix is not an isometry");
  return gens;
}

/// A diagonal similitude with non-square multiplier, found by search.
inline Matrix diagonal_similitude(const Form& form) {
  const Field& f = form.field();
  const std::size_t n = form.dim();
  const std::uint64_t total = space_size(f, n);
  for (std::uint64_t x = 0; x < total; ++x) {
    Vec d = vec_decode(f, x, n);
    if (std::find(d.begin(), d.end(), elem_t{0}) != d.end()) continue;
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = d[i];
    auto lam = form.similitude_multiplier(m);
    if (!lam) continue;
    bool square = false;
    for (elem_t s = 1; s < f.order(); ++s)
      if (f.mul(s, s) == *lam) square = true;
    if (!square) return m;
  }
  throw precondition_error("no diagonal similitude with non-square multiplier");
}

// ---- invariant form recovery ------------------------------------------------------

/// Quadratic forms on F^n as coefficient vectors over the monomials x_i x_j, i <= j.
inline std::vector<std::pair<std::size_t, std::size_t>> quadratic_monomials(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.emplace_back(i, j);
  return m;
}

inline Form quadratic_from_coordinates(const Field& f, std::size_t n, const Vec& coords) {
  auto mono = quadratic_monomials(n);
  Matrix c(f, n, n);
  for (std::size_t k = 0; k < mono.size(); ++k) c(mono[k].first, mono[k].second) = coords[k];
  return Form::quadratic(c);
}

/// Matrix of the linear map q -> q o g on coefficient vectors.
inline Matrix pullback_matrix(const Matrix& g) {
  const Field& f = g.field();
  const std::size_t n = g.rows();
  auto mono = quadratic_monomials(n);
  Matrix l(f, mono.size(), mono.size());
  for (std::size_t k = 0; k < mono.size(); ++k) {
    Form t = quadratic_from_coordinates(f, n, unit_vec(mono.size(), k)).transformed(g);
    for (std::size_t j = 0; j < mono.size(); ++j) l(k, j) = t.coefficients()(mono[j].first, mono[j].second);
  }
  return l;
}

/// Hypotheses on a pair (a, b) in GL_4(p), p odd: commuting elements of order p
/// generating a group of order p^2 with [V,a] = C_V(b) and [V,b] = C_V(a)
/// distinct and 2-dimensional.
inline bool invariant_form_pair_hypotheses(const Matrix& a, const Matrix& b) {
  const Field& f = a.field();
  if (f.characteristic() == 2 || a.rows() != 4 || b.rows() != 4) return false;
  const Matrix one = Matrix::identity(f, 4);
  auto has_order_p = [&](const Matrix& m) {
    if (m.is_identity()) return false;
    Matrix x = one;
    for (int i = 0; i < f.characteristic(); ++i) x = x * m;
    return x.is_identity();
  };
  if (!has_order_p(a) || !has_order_p(b) || !(a * b == b * a)) return false;
  Matrix x = one;
  for (int i = 0; i < f.characteristic(); ++i, x = x * a)
    if (x == b) return false;
  Subspace va = commutator_space(a), vb = commutator_space(b);
  Subspace ca = fixed_space(a), cb = fixed_space(b);
  return va.dim() == 2 && vb.dim() == 2 && va == cb && vb == ca && !(va == vb);
}

struct RecoveredForm {
  Form form;
  WittType type;
  Vec witness;  // the vector outside [V, A] shown to be singular
  std::size_t solution_dim;
};

/// Solve q(xa) = q(x) = q(xb) over all quadratic forms, and return a
/// nondegenerate solution for which v is singular.
inline std::optional<RecoveredForm> recover_invariant_form(const Matrix& a, const Matrix& b, const Vec& v) {
  if (!invariant_form_pair_hypotheses(a, b)) throw precondition_error("pair does not satisfy the hypotheses");
  const Field& f = a.field();
  const std::size_t n = 4;
  Subspace va = subspace_sum(commutator_space(a), commutator_space(b));
  if (va.contains(v)) throw precondition_error("witness vector lies in [V, A]");
  const std::size_t m = quadratic_monomials(n).size();
  const Matrix one = Matrix::identity(f, m);
  Matrix la = pullback_matrix(a) - one, lb = pullback_matrix(b) - one;
  Matrix sys(f, m, 2 * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      sys(i, j) = la(i, j);
      sys(i, m + j) = lb(i, j);
    }
  Subspace sol = left_kernel(sys);
  for (const auto& c : sol.elements()) {
    if (vec_is_zero(c)) continue;
    Form q = quadratic_from_coordinates(f, n, c);
    if (!q.is_nondegenerate() || q.q(v) != 0) continue;
    return RecoveredForm{q, witt_type(q).type, v, sol.dim()};
  }
  return std::nullopt;
}

}  // namespace forge
