#pragma once

// Extraspecial groups p^{1+2n} as F_p^{2n} x F_p with the multiplication
// (u,a)(v,b) = (u+v, a+b+u C v^T) for a fixed cocycle matrix C, their
// automorphisms lifted from linear maps of the quotient, and the involution
// harness for p = 2.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "forge/error.hpp"
#include "forge/forms.hpp"
#include "forge/perm.hpp"

namespace forge {

/// Element index: vec_encode(u) + p^{2n} * a.
using xelem_t = std::uint32_t;

class ExtraspecialGroup {
 public:
  /// p = 2: C is the upper-triangular coefficient matrix of the standard
  /// quadratic form of the given type, so squaring induces that form.
  /// p = 3: C is the strict upper part of the standard symplectic Gram matrix
  /// and the group has exponent 3 (type must be plus).
  ExtraspecialGroup(std::uint32_t p, std::size_t n, WittType type) : p_(p), n_(n), type_(type) {
    if (p != 2 && p != 3) throw precondition_error("extraspecial groups are built for p = 2, 3 only");
    if (n == 0 || type == WittType::odd) throw precondition_error("need n >= 1 and type plus or minus");
    if (p == 3 && type != WittType::plus) throw precondition_error("odd p uses the exponent-p group only");
    if (ipow(p, 1 + 2 * n) > ipow(3, 9)) throw resource_error("extraspecial group larger than 3^9");
    field_ = &Field::of_order(static_cast<int>(p));
    const std::size_t m = 2 * n;
    qsize_ = static_cast<xelem_t>(ipow(p, m));
    symplectic_ = standard_symplectic(*field_, m);
    cocycle_ = Matrix(*field_, m, m);
    if (p == 2) {
      squaring_ = standard_quadratic(*field_, m, type);
      cocycle_ = squaring_->coefficients();
    } else {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) cocycle_(i, j) = symplectic_.gram()(i, j);
    }
    validate();
  }

  std::uint32_t p() const { return p_; }
  std::size_t n() const { return n_; }
  WittType declared_type() const { return type_; }
  const Field& field() const { return *field_; }
  std::uint64_t order() const { return std::uint64_t{qsize_} * p_; }
  xelem_t quotient_size() const { return qsize_; }
  const Matrix& cocycle() const { return cocycle_; }
  const Form& symplectic_form() const { return symplectic_; }
  const std::optional<Form>& squaring_form() const { return squaring_; }

  xelem_t make(const Vec& u, elem_t a) const { return static_cast<xelem_t>(vec_encode(*field_, u) + qsize_ * a); }
  Vec quotient(xelem_t x) const { return vec_decode(*field_, x % qsize_, 2 * n_); }
  elem_t central(xelem_t x) const { return static_cast<elem_t>(x / qsize_); }
  xelem_t identity() const { return 0; }
  xelem_t z() const { return qsize_; }  // (0, 1)
  xelem_t generator(std::size_t i) const { return make(unit_vec(2 * n_, i), 0); }

  elem_t phi(const Vec& u, const Vec& v) const {
    elem_t s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (!u[i]) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] && cocycle_(i, j)) s = field_->add(s, field_->mul(field_->mul(u[i], cocycle_(i, j)), v[j]));
    }
    return s;
  }

  xelem_t mul(xelem_t x, xelem_t y) const {
    const Vec u = quotient(x), v = quotient(y);
    const elem_t c = field_->add(field_->add(central(x), central(y)), phi(u, v));
    return make(vec_add(*field_, u, v), c);
  }
  xelem_t inv(xelem_t x) const {
    // (u,a)^-1 = (-u, -a + phi(u,u))
    const Vec u = quotient(x);
    return make(vec_scale(*field_, field_->neg(1), u), field_->add(field_->neg(central(x)), phi(u, u)));
  }
  xelem_t power(xelem_t x, std::uint64_t k) const {
    xelem_t r = identity();
    while (k--) r = mul(r, x);
    return r;
  }
  /// x^-1 y^-1 x y
  xelem_t commutator(xelem_t x, xelem_t y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }
  std::uint64_t element_order(xelem_t x) const {
    std::uint64_t k = 1;
    for (xelem_t y = x; y != identity(); y = mul(y, x)) ++k;
    return k;
  }
  bool is_central(xelem_t x) const {
    for (std::size_t i = 0; i < 2 * n_; ++i)
      if (mul(x, generator(i)) != mul(generator(i), x)) return false;
    return true;
  }

  /// Right regular representation on the element indices.
  PermGroup regular_group() const {
    std::vector<Permutation> gens;
    for (std::size_t i = 0; i < 2 * n_; ++i) {
      std::vector<point_t> img(order());
      for (xelem_t x = 0; x < order(); ++x) img[x] = mul(x, generator(i));
      gens.emplace_back(std::move(img));
    }
    return PermGroup(static_cast<std::size_t>(order()), std::move(gens));
  }

 private:
  void validate() const {
    const std::uint64_t total = order();
    const bool exhaustive_pairs = total <= 512;
    std::uint64_t centre = 0;
    for (xelem_t x = 0; x < total; ++x) {
      if (is_central(x)) ++centre;
      // x^p is central and, for p odd, trivial
      const xelem_t xp = power(x, p_);
      if (xp % qsize_ != 0) throw construction_error("quotient by the centre is not elementary abelian");
      if (p_ == 3 && xp != identity()) throw construction_error("exponent is not 3");
      if (p_ == 2 && central(xp) != squaring_->q(quotient(x))) throw construction_error("squaring map is not q");
    }
    if (centre != p_) throw construction_error("centre does not have order p");
    // [x, y] = (0, B(u, v))
    auto check_pair = [&](xelem_t x, xelem_t y) {
      const xelem_t c = commutator(x, y);
      if (c != make(Vec(2 * n_, 0), symplectic_.eval(quotient(x), quotient(y))))
        throw construction_error("commutator does not induce the symplectic form");
    };
    if (exhaustive_pairs) {
      for (xelem_t x = 0; x < total; ++x)
        for (xelem_t y = 0; y < total; ++y) check_pair(x, y);
    } else {
      for (std::size_t i = 0; i < 2 * n_; ++i)
        for (std::size_t j = 0; j < 2 * n_; ++j) check_pair(generator(i), generator(j));
    }
    if (p_ == 2) {
      if (witt_type(*squaring_).type != type_) throw construction_error("squaring form has the wrong type");
      if (n_ <= 4 && max_elementary_abelian_order() != ipow(2, type_ == WittType::plus ? 1 + n_ : n_))
        throw construction_error("maximal elementary abelian order does not match the type");
    }
  }

 public:
  /// Largest elementary abelian subgroup (p = 2). A maximal one A contains Z,
  /// since AZ is again elementary abelian, so A/Z runs over the subspaces of
  /// E/Z whose elements square to 1 and commute: exhaustive backtracking.
  std::uint64_t max_elementary_abelian_order() const {
    if (p_ != 2) throw precondition_error("elementary abelian search is for p = 2");
    std::vector<xelem_t> cands;  // involutions (u, 0) with u nonzero
    for (xelem_t x = 1; x < qsize_; ++x)
      if (mul(x, x) == identity()) cands.push_back(x);
    std::size_t best = 0;
    std::vector<xelem_t> chosen;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      best = std::max(best, chosen.size());
      if (best == n_) return;
      std::vector<Vec> span_basis;
      for (xelem_t c : chosen) span_basis.push_back(quotient(c));
      const Subspace span = Subspace::span(*field_, 2 * n_, span_basis);
      for (std::size_t i = from; i < cands.size(); ++i) {
        const xelem_t y = cands[i];
        if (span.contains(quotient(y))) continue;
        bool ok = true;
        for (xelem_t c : chosen)
          if (mul(c, y) != mul(y, c)) ok = false;
        if (!ok) continue;
        chosen.push_back(y);
        self(self, i + 1);
        chosen.pop_back();
        if (best == n_) return;
      }
    };
    rec(rec, 0);
    return ipow(2, best + 1);
  }

  /// plus iff a maximal elementary abelian subgroup has order 2^{1+n}.
  WittType classify_type() const { return max_elementary_abelian_order() == ipow(2, 1 + n_) ? WittType::plus : WittType::minus; }

 private:
  std::uint32_t p_;
  std::size_t n_;
  WittType type_;
  const Field* field_ = nullptr;
  xelem_t qsize_ = 0;
  Form symplectic_;
  Matrix cocycle_;
  std::optional<Form> squaring_;
};

inline ExtraspecialGroup make_extraspecial(std::uint32_t p, std::size_t n, WittType type = WittType::plus) {
  return ExtraspecialGroup(p, n, type);
}

// ---- automorphisms -----------------------------------------------------------------

/// An automorphism as a table of images of all elements.
struct XAutomorphism {
  std::vector<xelem_t> image;
  bool is_identity() const {
    for (std::size_t i = 0; i < image.size(); ++i)
      if (image[i] != i) return false;
    return true;
  }
};

/// The map sending (e_i, 0) to (e_i M, shifts_i) and z to z^lambda, extended
/// through the ordered words (e_0,0)^{u_0} ... (e_{2n-1},0)^{u_{2n-1}} z^c.
/// Throws if the map is not an automorphism.
inline XAutomorphism lift_automorphism(const ExtraspecialGroup& e, const Matrix& m, const Vec& shifts, elem_t lambda) {
  const std::size_t k = 2 * e.n();
  const Field& f = e.field();
  if (m.rows() != k || m.cols() != k || shifts.size() != k || lambda == 0)
    throw precondition_error("automorphism data does not fit the group");
  std::vector<xelem_t> gimg(k);
  for (std::size_t i = 0; i < k; ++i) gimg[i] = e.make(Vec(m.row(i).begin(), m.row(i).end()), shifts[i]);
  const xelem_t zimg = e.make(Vec(k, 0), lambda);
  XAutomorphism a;
  a.image.resize(e.order());
  for (xelem_t x = 0; x < e.order(); ++x) {
    const Vec u = e.quotient(x);
    xelem_t w = e.identity(), wi = e.identity();
    for (std::size_t i = 0; i < k; ++i) {
      w = e.mul(w, e.power(e.generator(i), u[i]));
      wi = e.mul(wi, e.power(gimg[i], u[i]));
    }
    // x = w z^c
    const elem_t c = f.sub(e.central(x), e.central(w));
    a.image[x] = e.mul(wi, e.power(zimg, c));
  }
  std::vector<bool> hit(e.order(), false);
  for (xelem_t y : a.image) hit[y] = true;
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) throw precondition_error("map is not bijective");
  for (xelem_t x = 0; x < e.order(); ++x) {
    for (std::size_t i = 0; i < k; ++i)
      if (a.image[e.mul(x, e.generator(i))] != e.mul(a.image[x], gimg[i]))
        throw precondition_error("map is not a homomorphism");
    if (a.image[e.mul(x, e.z())] != e.mul(a.image[x], zimg)) throw precondition_error("map is not a homomorphism");
  }
  return a;
}

inline XAutomorphism compose(const XAutomorphism& a, const XAutomorphism& b) {
  XAutomorphism c;
  c.image.resize(a.image.size());
  for (std::size_t x = 0; x < a.image.size(); ++x) c.image[x] = b.image[a.image[x]];
  return c;
}

inline XAutomorphism inner_automorphism(const ExtraspecialGroup& e, xelem_t w) {
  XAutomorphism a;
  a.image.resize(e.order());
  for (xelem_t x = 0; x < e.order(); ++x) a.image[x] = e.mul(e.mul(e.inv(w), x), w);
  return a;
}

struct SymplecticVerdict {
  bool is_automorphism = false;
  elem_t multiplier = 0;  // the scalar by which the automorphism acts on Z(E)
  bool preserves_form = false;
  Matrix quotient_action;
};

/// Checks that a is an automorphism and that its action on E/Z(E) scales the
/// commutator form by its multiplier on Z(E).
inline SymplecticVerdict automorphism_symplectic_check(const ExtraspecialGroup& e, const XAutomorphism& a) {
  SymplecticVerdict v;
  const std::uint64_t total = e.order();
  if (a.image.size() != total) throw precondition_error("automorphism table has the wrong size");
  std::vector<bool> hit(total, false);
  for (xelem_t y : a.image) hit[y] = true;
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) throw precondition_error("not an automorphism");
  for (xelem_t x = 0; x < total; ++x)
    for (std::size_t i = 0; i < 2 * e.n(); ++i)
      if (a.image[e.mul(x, e.generator(i))] != e.mul(a.image[x], a.image[e.generator(i)]))
        throw precondition_error("not an automorphism");
  v.is_automorphism = true;
  const xelem_t zi = a.image[e.z()];
  if (zi % e.quotient_size() != 0) throw precondition_error("automorphism does not fix the centre");
  v.multiplier = e.central(zi);
  const std::size_t k = 2 * e.n();
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < k; ++i) rows.push_back(e.quotient(a.image[e.generator(i)]));
  v.quotient_action = Matrix::from_rows(e.field(), rows, k);
  v.preserves_form = true;
  const Field& f = e.field();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const elem_t lhs = e.symplectic_form().eval(rows[i], rows[j]);
      const elem_t rhs = f.mul(v.multiplier, e.symplectic_form().eval(unit_vec(k, i), unit_vec(k, j)));
      if (lhs != rhs) v.preserves_form = false;
    }
  return v;
}

// ---- involutions ------------------------------------------------------------------------

enum class InvolutionVerdict { holds, fails, hypothesis_false };

inline std::string to_string(InvolutionVerdict v) {
  switch (v) {
    case InvolutionVerdict::holds: return "holds";
    case InvolutionVerdict::fails: return "fails";
    default: return "hypothesis-false";
  }
}

/// For an involutory automorphism a of E (p = 2): if z is not of the form
/// w^-1 w^a, then [E, a] lies in C_E(a) and is elementary abelian.
inline InvolutionVerdict involution_action_test(const ExtraspecialGroup& e, const XAutomorphism& a) {
  if (e.p() != 2) throw precondition_error("involution test is for p = 2");
  automorphism_symplectic_check(e, a);
  if (!compose(a, a).is_identity()) throw precondition_error("automorphism is not an involution");
  if (a.is_identity()) throw precondition_error("automorphism centralizes E");
  std::vector<bool> in(e.order(), false);
  std::vector<xelem_t> comms;
  for (xelem_t w = 0; w < e.order(); ++w) {
    const xelem_t c = e.mul(e.inv(w), a.image[w]);
    if (!in[c]) {
      in[c] = true;
      comms.push_back(c);
    }
  }
  if (in[e.z()]) return InvolutionVerdict::hypothesis_false;
  // close the commutator set to the subgroup [E, a]
  for (std::size_t i = 0; i < comms.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (xelem_t c : {e.mul(comms[i], comms[j]), e.mul(comms[j], comms[i])})
        if (!in[c]) {
          in[c] = true;
          comms.push_back(c);
        }
  for (xelem_t c : comms)
    if (a.image[c] != c || e.mul(c, c) != e.identity()) return InvolutionVerdict::fails;
  return InvolutionVerdict::holds;
}

/// Isometries of a quadratic form on GF(2)^m, m <= 4, by exhaustion.
inline std::vector<Matrix> orthogonal_group_elements(const Form& q) {
  if (q.field().order() != 2 || q.dim() > 4) throw precondition_error("exhaustion needs GF(2) and dim <= 4");
  const std::size_t m = q.dim();
  std::vector<Matrix> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (m * m)); ++code) {
    Matrix g(q.field(), m, m);
    for (std::size_t b = 0; b < m * m; ++b) g(b / m, b % m) = static_cast<elem_t>((code >> b) & 1);
    if (rank(g) == m && q.preserved_by(g)) out.push_back(g);
  }
  return out;
}

struct InvolutionHarnessReport {
  std::size_t automorphisms = 0;  // distinct involutory automorphisms tested
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::size_t hypothesis_false = 0;
};

/// Every involutory automorphism lifted from an isometry M of the squaring form
/// with M^2 = 1, over all shift vectors.
inline InvolutionHarnessReport involution_harness(const ExtraspecialGroup& e) {
  if (e.p() != 2 || e.n() > 2) throw precondition_error("harness covers 2^{1+2} and 2^{1+4}");
  InvolutionHarnessReport r;
  const std::size_t k = 2 * e.n();
  std::set<std::vector<xelem_t>> seen;
  for (const auto& m : orthogonal_group_elements(*e.squaring_form())) {
    if (!(m * m).is_identity()) continue;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
      const Vec shifts = vec_decode(e.field(), s, k);
      XAutomorphism a;
      try {
        a = lift_automorphism(e, m, shifts, 1);
      } catch (const precondition_error&) {
        continue;
      }
      if (a.is_identity() || !compose(a, a).is_identity() || !seen.insert(a.image).second) continue;
      ++r.automorphisms;
      switch (involution_action_test(e, a)) {
        case InvolutionVerdict::holds: ++r.holds; break;
        case InvolutionVerdict::fails: ++r.fails; break;
        case InvolutionVerdict::hypothesis_false: ++r.hypothesis_false; break;
      }
    }
  }
  return r;
}

/// Order-2 automorphism of 3^{1+2n} inverting Z: lifted from diag(1,-1,1,-1,...).
inline XAutomorphism inverting_involution(const ExtraspecialGroup& e) {
  if (e.p() != 3) throw precondition_error("inverting involution is built for p = 3");
  const std::size_t k = 2 * e.n();
  Matrix m(e.field(), k, k);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = i % 2 ? e.field().neg(1) : 1;
  return lift_automorphism(e, m, Vec(k, 0), e.field().neg(1));
}

}  // namespace forge
