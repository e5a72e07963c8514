#pragma once

// Named classical groups as matrix groups with faithful permutation images on
// nonzero vectors, the Suzuki labels of their involutions, the involution
// census, order-3 classes, and the parabolic structure of Sp6(2).

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "forge/forms.hpp"
#include "forge/modrep.hpp"
#include "forge/perm.hpp"
#include "forge/smallgroup.hpp"

namespace forge {

// ---- classical order formulas -------------------------------------------------------

inline std::uint64_t order_sp(std::uint64_t q, std::size_t n) {
  const std::size_t m = n / 2;
  std::uint64_t r = ipow(q, m * m);
  for (std::size_t i = 1; i <= m; ++i) r *= ipow(q, 2 * i) - 1;
  return r;
}

/// Full isometry group of a nondegenerate quadratic form.
inline std::uint64_t order_go(std::uint64_t q, std::size_t n, WittType t) {
  if (t == WittType::odd) {
    if (q % 2 == 0) return order_sp(q, n - 1);
    return 2 * order_sp(q, n - 1);
  }
  const std::size_t m = n / 2;
  std::uint64_t r = 2 * ipow(q, m * (m - 1));
  r *= t == WittType::plus ? ipow(q, m) - 1 : ipow(q, m) + 1;
  for (std::size_t i = 1; i < m; ++i) r *= ipow(q, 2 * i) - 1;
  return r;
}

/// SU_n(q), the form being hermitian over GF(q^2).
inline std::uint64_t order_su(std::uint64_t q, std::size_t n) {
  std::uint64_t r = ipow(q, n * (n - 1) / 2);
  for (std::size_t i = 2; i <= n; ++i) r *= i % 2 ? ipow(q, i) + 1 : ipow(q, i) - 1;
  return r;
}

// ---- permutation images of linear actions ---------------------------------------------

/// The nonzero vectors of F^dim, numbered from offset in vec_encode order.
struct VectorBlock {
  const Field* field;
  std::size_t dim;
  std::size_t offset;
  std::size_t size() const { return static_cast<std::size_t>(space_size(*field, dim) - 1); }
  point_t point(const Vec& v) const { return static_cast<point_t>(offset + vec_encode(*field, v) - 1); }
  Vec vector(point_t p) const { return vec_decode(*field, p - offset + 1, dim); }
};

/// Direct product of vector blocks; a tuple of matrices, one per block, acts on
/// the concatenated point set.
class LinearRep {
 public:
  LinearRep() = default;
  explicit LinearRep(const std::vector<std::pair<const Field*, std::size_t>>& blocks) {
    for (auto [f, d] : blocks) {
      blocks_.push_back({f, d, degree_});
      degree_ += blocks_.back().size();
    }
  }
  std::size_t degree() const { return degree_; }
  std::size_t block_count() const { return blocks_.size(); }
  const VectorBlock& block(std::size_t b) const { return blocks_.at(b); }

  Permutation permutation(const std::vector<Matrix>& mats) const {
    if (mats.size() != blocks_.size()) throw dimension_error("one matrix per block expected");
    std::vector<point_t> img(degree_);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const VectorBlock& bl = blocks_[b];
      const Matrix& g = mats[b];
      if (g.rows() != bl.dim || !(g.field() == *bl.field)) throw dimension_error("matrix does not fit block");
      if (bl.field->order() == 2) {
        std::vector<std::uint64_t> rows(bl.dim);
        for (std::size_t i = 0; i < bl.dim; ++i) rows[i] = vec_encode(*bl.field, g.row(i));
        for (std::uint64_t x = 1; x <= bl.size(); ++x) {
          std::uint64_t y = 0;
          for (std::size_t i = 0; i < bl.dim; ++i)
            if ((x >> i) & 1) y ^= rows[i];
          img[bl.offset + x - 1] = static_cast<point_t>(bl.offset + y - 1);
        }
      } else {
        for (std::uint64_t x = 1; x <= bl.size(); ++x) {
          Vec w = vec_mul(vec_decode(*bl.field, x, bl.dim), g);
          img[bl.offset + x - 1] = bl.point(w);
        }
      }
    }
    return Permutation(std::move(img));
  }

  Matrix matrix(const Permutation& p, std::size_t b) const {
    const VectorBlock& bl = blocks_.at(b);
    Matrix m(*bl.field, bl.dim, bl.dim);
    for (std::size_t i = 0; i < bl.dim; ++i) {
      Vec r = bl.vector(p[bl.point(unit_vec(bl.dim, i))]);
      for (std::size_t j = 0; j < bl.dim; ++j) m(i, j) = r[j];
    }
    return m;
  }

  /// Sorted points of the nonzero vectors of s.
  std::vector<point_t> points(const Subspace& s, std::size_t b) const {
    const VectorBlock& bl = blocks_.at(b);
    std::vector<point_t> out;
    for (const auto& v : s.elements())
      if (!vec_is_zero(v)) out.push_back(bl.point(v));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<VectorBlock> blocks_;
  std::size_t degree_ = 0;
};

/// The first `degree` images of p, for groups whose leading block is faithful.
inline Permutation restrict_perm(const Permutation& p, std::size_t degree) {
  std::vector<point_t> img(p.images().begin(), p.images().begin() + static_cast<std::ptrdiff_t>(degree));
  return Permutation(std::move(img));
}

inline PermGroup restrict_group(const PermGroup& g, std::size_t degree) {
  std::vector<Permutation> gens;
  for (const auto& x : g.generators()) gens.push_back(restrict_perm(x, degree));
  return PermGroup(degree, std::move(gens));
}

struct PointListHash {
  std::size_t operator()(const std::vector<point_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (point_t x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

/// Stabilizer of each of the given point sets (setwise, simultaneously).
inline PermGroup set_stabilizer(const PermGroup& g, const std::vector<std::vector<point_t>>& sets) {
  constexpr point_t sep = ~point_t{0};
  std::vector<point_t> key;
  for (const auto& s : sets) {
    std::vector<point_t> t = s;
    std::sort(t.begin(), t.end());
    key.insert(key.end(), t.begin(), t.end());
    key.push_back(sep);
  }
  const auto& gens = g.generators();
  auto act = [&](const std::vector<point_t>& k, std::size_t i) {
    std::vector<point_t> out(k.size());
    std::size_t start = 0;
    for (std::size_t j = 0; j < k.size(); ++j) {
      if (k[j] == sep) {
        out[j] = sep;
        std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.begin() + static_cast<std::ptrdiff_t>(j));
        start = j + 1;
      } else {
        out[j] = gens[i][k[j]];
      }
    }
    return out;
  };
  return stabilizer<std::vector<point_t>, PointListHash>(g, key, act);
}

/// Largest normal subgroup of g contained in h (h <= g).
inline PermGroup normal_core(const PermGroup& g, const PermGroup& h) {
  PermGroup k = h;
  while (true) {
    bool changed = false;
    for (const auto& x : g.generators()) {
      PermGroup kx = conjugate_group(k, x);
      if (!kx.same_as(k)) {
        k = intersection(k, kx);
        changed = true;
      }
    }
    if (!changed) return k;
  }
}

// ---- GF(4) to GF(2) ---------------------------------------------------------------------

/// A GF(4)-linear map on GF(4)^n as a GF(2)-linear map on GF(2)^{2n}; the
/// coordinate x_i = a + b w of GF(4)^n becomes (a, b) at positions 2i, 2i+1.
inline Matrix restrict_scalars(const Matrix& g) {
  if (g.field().order() != 4) throw precondition_error("restriction of scalars expects GF(4)");
  const std::size_t n = g.rows();
  Matrix out(Field::gf2(), 2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (elem_t t = 0; t < 2; ++t) {
      Vec u(n, 0);
      u[i] = t == 0 ? 1 : 2;
      Vec w = vec_mul(u, g);
      for (std::size_t j = 0; j < n; ++j) {
        out(2 * i + t, 2 * j) = w[j] & 1;
        out(2 * i + t, 2 * j + 1) = w[j] >> 1;
      }
    }
  return out;
}

/// The field automorphism x -> x^2 applied to every coordinate, on GF(2)^{2n}.
inline Matrix frobenius_gf2(std::size_t n) {
  Matrix out(Field::gf2(), 2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out(2 * i, 2 * i) = 1;  // 1 -> 1
    out(2 * i + 1, 2 * i) = out(2 * i + 1, 2 * i + 1) = 1;  // w -> w^2 = 1 + w
  }
  return out;
}

inline Vec gf4_from_gf2(const Vec& x) {
  Vec v(x.size() / 2);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<elem_t>(x[2 * i] | (x[2 * i + 1] << 1));
  return v;
}

/// x -> h(x, x) for a hermitian form h, as a quadratic form over GF(2).
inline Form hermitian_norm_form(const Form& h) {
  const std::size_t n = 2 * h.dim();
  const Field& f2 = Field::gf2();
  auto qv = [&](const Vec& x) {
    Vec y = gf4_from_gf2(x);
    return h.eval(y, y);
  };
  Matrix c(f2, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    c(i, i) = qv(unit_vec(n, i));
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec s = unit_vec(n, i);
      s[j] = 1;
      c(i, j) = f2.add(qv(s), f2.add(qv(unit_vec(n, i)), qv(unit_vec(n, j))));
    }
  }
  return Form::quadratic(c);
}

// ---- registry -------------------------------------------------------------------------

struct NamedGroup {
  std::string name;
  Form form;        // defining form on block 0
  bool similitudes;  // generators preserve the form only up to a scalar
  LinearRep rep;
  std::vector<std::vector<Matrix>> gens;  // gens[k][b]: generator k acting on block b
  PermGroup group;
  std::uint64_t oracle_order;

  Matrix matrix(const Permutation& p, std::size_t b = 0) const { return rep.matrix(p, b); }
  std::vector<Matrix> block_generators(std::size_t b = 0) const {
    std::vector<Matrix> out;
    for (const auto& g : gens) out.push_back(g.at(b));
    return out;
  }
  GModule module(std::size_t b = 0) const {
    const VectorBlock& bl = rep.block(b);
    return GModule(name, *bl.field, bl.dim, block_generators(b));
  }
};

inline const std::vector<std::string>& registry_names() {
  static const std::vector<std::string> names = {"Sp6_2", "SU4_2", "AutSU4_2", "O7_2", "GO4p_3", "GO4m_3", "CO4p_3"};
  return names;
}

namespace detail {

inline NamedGroup assemble(std::string name, Form form, bool similitudes,
                           const std::vector<std::pair<const Field*, std::size_t>>& blocks,
                           std::vector<std::vector<Matrix>> gens, std::uint64_t oracle) {
  LinearRep rep(blocks);
  std::vector<Permutation> perms;
  for (const auto& g : gens) perms.push_back(rep.permutation(g));
  PermGroup group(rep.degree(), perms);
  if (group.generators().size() != gens.size()) throw construction_error(name + ": identity among generators");
  if (group.order() != oracle)
    throw construction_error(name + ": order " + std::to_string(group.order()) + " but oracle gives " +
                             std::to_string(oracle));
  return NamedGroup{std::move(name), std::move(form), similitudes, std::move(rep), std::move(gens), std::move(group),
                    oracle};
}

inline std::vector<std::vector<Matrix>> single_block(const std::vector<Matrix>& mats) {
  std::vector<std::vector<Matrix>> out;
  for (const auto& m : mats) out.push_back({m});
  return out;
}

/// Hermitian transvections of the standard form on GF(4)^4.
inline std::vector<Matrix> unitary_transvections() {
  std::vector<Matrix> out;
  for (const auto& g : isometry_generators(standard_hermitian(4)))
    if (commutator_space(g).dim() == 1) out.push_back(g);
  return out;
}

}  // namespace detail

inline NamedGroup make_named_group(const std::string& name) {
  const Field& f2 = Field::gf2();
  const Field& f3 = Field::gf3();
  if (name == "Sp6_2") {
    Form b = standard_symplectic(f2, 6);
    return detail::assemble(name, b, false, {{&f2, 6}}, detail::single_block(isometry_generators(b)),
                            order_sp(2, 6));
  }
  if (name == "O7_2") {
    Form q = standard_quadratic(f2, 7, WittType::odd);
    return detail::assemble(name, q, false, {{&f2, 7}}, detail::single_block(isometry_generators(q)),
                            order_go(2, 7, WittType::odd));
  }
  if (name == "SU4_2") {
    return detail::assemble(name, standard_hermitian(4), false, {{&Field::gf4(), 4}},
                            detail::single_block(detail::unitary_transvections()), order_su(2, 4));
  }
  if (name == "AutSU4_2") {
    std::vector<Matrix> mats;
    for (const auto& t : detail::unitary_transvections()) mats.push_back(restrict_scalars(t));
    mats.push_back(frobenius_gf2(4));
    return detail::assemble(name, hermitian_norm_form(standard_hermitian(4)), false, {{&f2, 8}},
                            detail::single_block(mats), 2 * order_su(2, 4));
  }
  if (name == "GO4p_3" || name == "GO4m_3") {
    const WittType t = name == "GO4p_3" ? WittType::plus : WittType::minus;
    Form q = standard_quadratic(f3, 4, t);
    return detail::assemble(name, q, false, {{&f3, 4}}, detail::single_block(isometry_generators(q)),
                            order_go(3, 4, t));
  }
  if (name == "CO4p_3") {
    Form q = standard_quadratic(f3, 4, WittType::plus);
    auto mats = isometry_generators(q);
    mats.push_back(diagonal_similitude(q));
    // the scalars of GF(3) are isometries, so the similitude group has index q - 1 = 2 over GO
    return detail::assemble(name, q, true, {{&f3, 4}}, detail::single_block(mats),
                            2 * order_go(3, 4, WittType::plus));
  }
  throw usage_error("unknown group name: " + name);
}

/// Memoized registry entry; construction happens once per name.
inline const NamedGroup& named_group(const std::string& name) {
  struct Slot {
    std::once_flag once;
    std::unique_ptr<NamedGroup> group;
  };
  static std::map<std::string, Slot> slots = [] {
    std::map<std::string, Slot> m;
    for (const auto& n : registry_names()) m[n];
    return m;
  }();
  auto it = slots.find(name);
  if (it == slots.end()) throw usage_error("unknown group name: " + name);
  std::call_once(it->second.once, [&] { it->second.group = std::make_unique<NamedGroup>(make_named_group(name)); });
  return *it->second.group;
}

/// Every generator preserves the defining form (or scales it, for similitude groups).
inline bool generators_preserve_form(const NamedGroup& g) {
  for (const auto& m : g.gens) {
    const Matrix& x = m.at(0);
    if (g.similitudes ? !g.form.similitude_multiplier(x).has_value() : !g.form.preserved_by(x)) return false;
  }
  return true;
}

// ---- involutions ---------------------------------------------------------------------------

/// Suzuki label of an involution from its action on the natural module:
/// l = dim [V, g]; l = 1 -> b1, l = 3 -> b3, and for l = 2 the label is a2
/// exactly when x -> B(x, xg) vanishes (equivalently q vanishes on [V, g]).
inline std::string suzuki_class(const Matrix& g, const Form& form) {
  const Field& f = g.field();
  if (f.order() != 2 || g.is_identity() || !(g * g).is_identity()) throw precondition_error("not an involution");
  const Subspace c = commutator_space(g);
  switch (c.dim()) {
    case 1:
      return "b1";
    case 3:
      return "b3";
    case 2:
      break;
    default:
      throw precondition_error("not an involution class of this group");
  }
  if (form.kind() == FormKind::quadratic) {
    for (const auto& v : c.elements())
      if (form.q(v) != 0) return "c2";
    return "a2";
  }
  // x -> B(x, xg) is additive for an involution g, so a basis check suffices
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Vec e = unit_vec(g.rows(), i);
    if (form.eval(e, vec_mul(e, g)) != 0) return "c2";
  }
  return "a2";
}

inline std::vector<Permutation> involutions_of(const PermGroup& g) {
  std::vector<Permutation> out;
  g.for_each_element([&](const Permutation& e) {
    if (!e.is_identity() && (e * e).is_identity()) out.push_back(e);
  });
  return out;
}

inline std::vector<Permutation> elements_of_order(const PermGroup& g, std::uint64_t n) {
  std::vector<Permutation> out;
  g.for_each_element([&](const Permutation& e) {
    if (e.order() == n) out.push_back(e);
  });
  return out;
}

/// Expected data for one involution class: Suzuki label, dim C_U, dim C_V and
/// the centralizer orders implied by the shapes in Sp6(2) and Aut(SU4(2)).
struct Table1Row {
  const char* name;
  std::size_t dim_cu;
  std::size_t dim_cv;
  std::uint64_t centralizer_x;
  std::uint64_t centralizer_y;
};

inline const std::array<Table1Row, 4>& table1_expected() {
  static const std::array<Table1Row, 4> rows = {{
      {"a2", 6, 4, ipow(2, 1 + 2 + 4) * 6 * 6, ipow(2, 1 + 4) * 6 * 6},
      {"b3", 4, 3, ipow(2, 7) * 3, 2 * (24 * 2)},
      {"b1", 4, 5, ipow(2, 5) * 720, 2 * 720},
      {"c2", 4, 4, ipow(2, 8) * 6, ipow(2, 6) * 3},
  }};
  return rows;
}

struct InvolutionClassRow {
  std::string suzuki_name;
  std::uint64_t class_size = 0;
  std::uint64_t centralizer_order = 0;
  std::size_t dim_cu = 0;
  std::size_t dim_cv = 0;
  bool outside_derived = false;
  Permutation representative;
};

struct CensusReport {
  std::vector<InvolutionClassRow> rows;  // sorted by Suzuki name
  std::string matching;                   // "exact", "label-permuted" or "mismatch"
  bool fusion_ok = true;                  // u^X cap Y is one Y-class (Aut(SU4(2)) only)
  bool realizations_agree = true;         // 8-dim construction census agrees (Aut(SU4(2)) only)
};

// ---- Sp6(2) with its spin module ------------------------------------------------------------

struct Parabolics {
  std::vector<Subspace> flag;  // V1 < V2 < V3, totally isotropic
  PermGroup s;
  PermGroup x1, x2, x3, x12, x13, x23;
  PermGroup o2_12, o2_13, o2_23;
};

/// Minimal parabolics over the stabilizer of the flag <e0> < <e0,e2> < <e0,e2,e4>;
/// X_i is the stabilizer of the flag with V_i removed.
inline Parabolics build_parabolics(const PermGroup& g, const LinearRep& rep) {
  const Field& f = Field::gf2();
  Parabolics p;
  p.flag = {Subspace::span(f, 6, {unit_vec(6, 0)}), Subspace::span(f, 6, {unit_vec(6, 0), unit_vec(6, 2)}),
            Subspace::span(f, 6, {unit_vec(6, 0), unit_vec(6, 2), unit_vec(6, 4)})};
  auto pts = [&](std::size_t i) { return rep.points(p.flag[i], 0); };
  p.s = set_stabilizer(g, {pts(0), pts(1), pts(2)});
  if (p.s.order() != prime_part(g.order(), 2)) throw construction_error("flag stabilizer is not a Sylow 2-subgroup");
  p.x1 = set_stabilizer(g, {pts(1), pts(2)});
  p.x2 = set_stabilizer(g, {pts(0), pts(2)});
  p.x3 = set_stabilizer(g, {pts(0), pts(1)});
  auto join = [&](const PermGroup& a, const PermGroup& b) {
    std::vector<Permutation> gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    return subgroup_generated(g.degree(), gens);
  };
  p.x12 = join(p.x1, p.x2);
  p.x13 = join(p.x1, p.x3);
  p.x23 = join(p.x2, p.x3);
  p.o2_12 = normal_core(p.x12, p.s);
  p.o2_13 = normal_core(p.x13, p.s);
  p.o2_23 = normal_core(p.x23, p.s);
  return p;
}

struct Sp62Context {
  const NamedGroup* x = nullptr;  // Sp6_2 on its 63 vectors
  GModule v, u;                   // generators aligned with x->gens
  std::string spin_source;
  std::vector<std::size_t> spin_source_dims;
  LinearRep rep;  // V (points 0..62) then U (points 63..317)
  PermGroup full;
  Form q_minus;   // minus-type quadratic form polarizing to the symplectic form
  PermGroup y;    // O6-(2): generated by the transvections of q_minus-nonsingular vectors
  PermGroup omega;
  Parabolics par;

  Matrix v_matrix(const Permutation& p) const { return rep.matrix(p, 0); }
  Matrix u_matrix(const Permutation& p) const { return rep.matrix(p, 1); }
};

inline std::unique_ptr<Sp62Context> make_sp62_context(std::uint64_t seed) {
  auto ctx = std::make_unique<Sp62Context>();
  ctx->x = &named_group("Sp6_2");
  ctx->v = ctx->x->module(0);
  std::mt19937_64 rng(seed);
  auto found = find_spin_module(ctx->v, rng);
  if (!found) throw construction_error("no 8-dimensional factor in the search schedule");
  ctx->u = found->module;
  ctx->spin_source = found->source;
  ctx->spin_source_dims = found->source_factor_dims;
  const Field& f2 = Field::gf2();
  ctx->rep = LinearRep({{&f2, 6}, {&f2, 8}});
  std::vector<Permutation> perms;
  for (std::size_t k = 0; k < ctx->v.ngens(); ++k) perms.push_back(ctx->rep.permutation({ctx->v.gens[k], ctx->u.gens[k]}));
  ctx->full = PermGroup(ctx->rep.degree(), perms);
  if (ctx->full.order() != ctx->x->oracle_order) throw construction_error("spin module is not a module for Sp6(2)");

  ctx->q_minus = standard_quadratic(f2, 6, WittType::minus);
  std::vector<Permutation> ygens;
  for (std::size_t k = 0; k < ctx->v.ngens(); ++k) {
    const Vec t = commutator_space(ctx->v.gens[k]).basis().at(0);
    if (ctx->q_minus.q(t) == 1) ygens.push_back(perms[k]);
  }
  ctx->y = subgroup_generated(ctx->rep.degree(), ygens);
  std::vector<Permutation> ogens;
  for (std::size_t k = 1; k < ygens.size(); ++k) ogens.push_back(ygens[0] * ygens[k]);
  ctx->omega = subgroup_generated(ctx->rep.degree(), ogens);
  if (ctx->y.order() != order_go(2, 6, WittType::minus) || 2 * ctx->omega.order() != ctx->y.order())
    throw construction_error("orthogonal minus subgroup has the wrong order");
  ctx->par = build_parabolics(ctx->full, ctx->rep);
  return ctx;
}

/// Memoized per chop seed.
inline const Sp62Context& sp62_context(std::uint64_t seed) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::unique_ptr<Sp62Context>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[seed];
  if (!slot) slot = make_sp62_context(seed);
  return *slot;
}

/// Parabolics of the 63-point registry group (no spin module needed).
inline const Parabolics& natural_parabolics() {
  static const Parabolics p = [] {
    const NamedGroup& x = named_group("Sp6_2");
    return build_parabolics(x.group, x.rep);
  }();
  return p;
}

// ---- involution census ------------------------------------------------------------------------

namespace detail {

/// Row matching against the expected table, allowing a swap of a2 and c2.
inline std::string match_table1(const std::vector<InvolutionClassRow>& rows, bool in_x) {
  auto fits = [&](bool swap) {
    if (rows.size() != 4) return false;
    std::set<std::string> names;
    for (const auto& r : rows) {
      std::string n = r.suzuki_name;
      if (swap && n == "a2") n = "c2";
      else if (swap && n == "c2") n = "a2";
      names.insert(n);
      auto it = std::find_if(table1_expected().begin(), table1_expected().end(),
                             [&](const Table1Row& e) { return n == e.name; });
      if (it == table1_expected().end()) return false;
      if (r.dim_cu != it->dim_cu || r.dim_cv != it->dim_cv) return false;
      if (r.centralizer_order != (in_x ? it->centralizer_x : it->centralizer_y)) return false;
    }
    return names.size() == 4;
  };
  if (fits(false)) return "exact";
  if (fits(true)) return "label-permuted";
  return "mismatch";
}

inline std::vector<InvolutionClassRow> census_rows(const PermGroup& g, const PermGroup& sylow2,
                                                   const std::function<Matrix(const Permutation&)>& on_v,
                                                   const std::function<Matrix(const Permutation&)>& on_u,
                                                   const Form& form, const PermGroup* derived) {
  std::vector<InvolutionClassRow> rows;
  for (const auto& c : class_map(g, involutions_of(sylow2))) {
    InvolutionClassRow r;
    r.representative = c.representative;
    r.class_size = c.size;
    r.centralizer_order = g.order() / c.size;
    const Matrix mv = on_v(c.representative);
    r.suzuki_name = suzuki_class(mv, form);
    r.dim_cv = fixed_space(mv).dim();
    r.dim_cu = fixed_space(on_u(c.representative)).dim();
    if (derived) r.outside_derived = !derived->contains(c.representative);
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end(),
            [](const InvolutionClassRow& a, const InvolutionClassRow& b) { return a.suzuki_name < b.suzuki_name; });
  return rows;
}

/// Map from each element of the given classes to its class index.
inline std::unordered_map<Permutation, std::size_t, PermHash> class_index(
    const PermGroup& g, const std::vector<Permutation>& reps) {
  std::unordered_map<Permutation, std::size_t, PermHash> out;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (const auto& y : conjugation_orbit(g, reps[i]).points) out.emplace(y, i);
  return out;
}

}  // namespace detail

inline CensusReport table1_census(const std::string& name, std::uint64_t seed) {
  const Sp62Context& ctx = sp62_context(seed);
  auto on_v = [&](const Permutation& p) { return ctx.v_matrix(p); };
  auto on_u = [&](const Permutation& p) { return ctx.u_matrix(p); };
  CensusReport rep;
  if (name == "Sp6_2") {
    rep.rows = detail::census_rows(ctx.full, ctx.par.s, on_v, on_u, ctx.x->form, nullptr);
    rep.matching = detail::match_table1(rep.rows, true);
    return rep;
  }
  if (name != "AutSU4_2") throw usage_error("census is defined for Sp6_2 and AutSU4_2");
  const PermGroup ys = sylow_subgroup(ctx.y, 2);
  rep.rows = detail::census_rows(ctx.y, ys, on_v, on_u, ctx.q_minus, &ctx.omega);
  rep.matching = detail::match_table1(rep.rows, false);

  // u^X cap Y is a single Y-class: distinct Y-classes lie in distinct X-classes
  std::vector<InvolutionClassRow> xrows =
      detail::census_rows(ctx.full, ctx.par.s, on_v, on_u, ctx.x->form, nullptr);
  std::vector<Permutation> xreps;
  for (const auto& r : xrows) xreps.push_back(r.representative);
  auto xclass = detail::class_index(ctx.full, xreps);
  std::set<std::size_t> hit;
  for (const auto& r : rep.rows) hit.insert(xclass.at(r.representative));
  rep.fusion_ok = hit.size() == rep.rows.size();

  // the 8-dim semilinear construction: class sizes, fixed-space dims, outside SU4(2)
  const NamedGroup& aut = named_group("AutSU4_2");
  const NamedGroup& su = named_group("SU4_2");
  std::vector<Permutation> su_gens;
  for (std::size_t k = 0; k + 1 < aut.gens.size(); ++k) su_gens.push_back(aut.group.generators()[k]);
  PermGroup su_in_aut = subgroup_generated(aut.group.degree(), su_gens);
  std::multiset<std::tuple<std::uint64_t, std::size_t, bool>> a, b;
  for (const auto& c : class_map(aut.group, involutions_of(sylow_subgroup(aut.group, 2))))
    a.emplace(c.size, fixed_space(aut.matrix(c.representative)).dim(), !su_in_aut.contains(c.representative));
  for (const auto& r : rep.rows) b.emplace(r.class_size, r.dim_cu, r.outside_derived);
  rep.realizations_agree = su_in_aut.order() == su.oracle_order && a == b;
  return rep;
}

/// Involution class sizes of a registry group, from its Sylow 2-subgroup.
inline std::vector<std::uint64_t> involution_class_sizes(const PermGroup& g, const PermGroup& sylow2) {
  std::vector<std::uint64_t> out;
  for (const auto& c : class_map(g, involutions_of(sylow2))) out.push_back(c.size);
  std::sort(out.begin(), out.end());
  return out;
}

// ---- elements of order 3 ---------------------------------------------------------------------------

struct ThreeClassRow {
  std::size_t index;  // i with dim [V, tau_i] = 2i
  std::size_t dim_commutator;
  std::uint64_t class_size;
  Permutation tau;
};

struct ThreeClassReport {
  std::vector<ThreeClassRow> rows;
  std::uint64_t sylow3_order = 0;
  std::uint64_t e_order = 0;              // |<tau_1, tau_2, tau_3>| with tau_i chosen in E
  bool e_elementary_abelian = false;
  bool e_is_thompson = false;             // E is generated by the abelian subgroups of maximal order
  bool e_unique_max_elementary = false;   // the only elementary abelian subgroup of maximal order
  bool e_meets_every_class = false;
};

/// Three-element classes of g, classified by dim [V, tau] through on_v.
inline ThreeClassReport three_classes(const PermGroup& g, const std::function<Matrix(const Permutation&)>& on_v) {
  ThreeClassReport r;
  const PermGroup p = sylow_subgroup(g, 3);
  r.sylow3_order = p.order();
  SmallGroupTable t(p);
  std::vector<Permutation> threes;
  for (std::size_t i = 0; i < t.order(); ++i)
    if (t.element_order(i) == 3) threes.push_back(t.element(i));
  auto classes = class_map(g, threes);
  std::vector<std::size_t> dims;
  for (const auto& c : classes) dims.push_back(commutator_space(on_v(c.representative)).dim());

  // Thompson subgroup of P and its maximal elementary abelian subgroups
  std::size_t best = 0;
  std::vector<BitSet> abelian;
  for (const auto& h : t.subgroups(t.all(), 3))
    if (t.is_abelian(h)) abelian.push_back(h);
  for (const auto& h : abelian) best = std::max(best, h.count());
  std::vector<std::size_t> jgens;
  for (const auto& h : abelian)
    if (h.count() == best)
      for (std::size_t x : t.generators(h)) jgens.push_back(x);
  const BitSet j = t.closure(jgens);
  std::size_t best_ea = 0;
  std::vector<BitSet> top;
  for (const auto& e : t.elementary_abelian_subgroups(t.all(), 3)) {
    if (e.count() > best_ea) {
      best_ea = e.count();
      top.clear();
    }
    if (e.count() == best_ea) top.push_back(e);
  }
  r.e_unique_max_elementary = top.size() == 1 && top[0] == j;

  // tau_i in J, one from each class; E = <tau_1, tau_2, tau_3>
  std::vector<std::vector<std::size_t>> in_j(classes.size());
  std::unordered_map<Permutation, std::size_t, PermHash> cls;
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (const auto& y : conjugation_orbit(g, classes[c].representative).points) cls.emplace(y, c);
  for (std::size_t x : j.indices())
    if (t.element_order(x) == 3) in_j[cls.at(t.element(x))].push_back(x);
  r.e_meets_every_class = std::all_of(in_j.begin(), in_j.end(), [](const auto& v) { return !v.empty(); });

  std::vector<std::size_t> order_by_dim(classes.size());
  std::iota(order_by_dim.begin(), order_by_dim.end(), std::size_t{0});
  std::sort(order_by_dim.begin(), order_by_dim.end(), [&](std::size_t a, std::size_t b) { return dims[a] < dims[b]; });
  std::vector<std::size_t> taus;
  if (r.e_meets_every_class && classes.size() == 3) {
    // first triple (in table order) generating J
    bool found = false;
    for (std::size_t a : in_j[order_by_dim[0]])
      for (std::size_t b : in_j[order_by_dim[1]])
        for (std::size_t c : in_j[order_by_dim[2]])
          if (!found && t.closure({a, b, c}) == j) {
            taus = {a, b, c};
            found = true;
          }
    if (!found) taus = {in_j[order_by_dim[0]][0], in_j[order_by_dim[1]][0], in_j[order_by_dim[2]][0]};
    const BitSet e = t.closure(taus);
    r.e_order = e.count();
    r.e_elementary_abelian = t.is_elementary_abelian(e, 3);
    r.e_is_thompson = e == j;
  }
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const std::size_t c = order_by_dim[k];
    r.rows.push_back({k + 1, dims[c], classes[c].size,
                      taus.size() == classes.size() ? t.element(taus[k]) : classes[c].representative});
  }
  return r;
}

struct B1SylowReport {
  std::uint64_t centralizer_order = 0;
  std::uint64_t sylow3_order = 0;
  std::map<std::size_t, std::size_t> subgroups_by_dim;  // dim [V, z] -> number of order-3 subgroups <z>
};

/// Order-3 subgroups of a Sylow 3-subgroup of C_Y(x) for a b1 involution x of Y.
inline B1SylowReport b1_centralizer_sylow3(std::uint64_t seed) {
  const Sp62Context& ctx = sp62_context(seed);
  B1SylowReport r;
  std::optional<Permutation> x;
  ctx.y.for_each_element([&](const Permutation& e) {
    if (x || e.is_identity() || !(e * e).is_identity()) return;
    if (suzuki_class(ctx.v_matrix(e), ctx.q_minus) == "b1") x = e;
  });
  if (!x) throw construction_error("no b1 involution in Y");
  const PermGroup c = centralizer_by_orbit(ctx.y, *x);
  r.centralizer_order = c.order();
  const PermGroup p = sylow_subgroup(c, 3);
  r.sylow3_order = p.order();
  std::set<std::vector<point_t>> seen;
  p.for_each_element([&](const Permutation& e) {
    if (e.order() != 3) return;
    // the subgroup <e> is identified by its smaller nontrivial element
    const Permutation e2 = e * e;
    const auto& key = std::min(e.images(), e2.images());
    if (!seen.insert(key).second) return;
    ++r.subgroups_by_dim[commutator_space(ctx.v_matrix(e)).dim()];
  });
  return r;
}

// ---- parabolic checks -------------------------------------------------------------------------------

namespace detail {

/// Image of g acting on the given sections of block 0: its order, and whether
/// every listed generator acts trivially on all the sections.
struct SectionImage {
  std::uint64_t order;
  std::vector<std::vector<Matrix>> gens;  // per generator, one matrix per section
};

inline SectionImage section_image(const PermGroup& g, const LinearRep& rep,
                                  const std::vector<std::pair<Subspace, Subspace>>& sections) {
  std::vector<std::pair<const Field*, std::size_t>> blocks;
  for (const auto& [lo, hi] : sections) blocks.emplace_back(&Field::gf2(), hi.dim() - lo.dim());
  LinearRep srep(blocks);
  SectionImage out;
  std::vector<Permutation> perms;
  for (const auto& x : g.generators()) {
    const Matrix m = rep.matrix(x, 0);
    std::vector<Matrix> mats;
    for (const auto& [lo, hi] : sections) mats.push_back(section_action(m, lo, hi));
    perms.push_back(srep.permutation(mats));
    out.gens.push_back(std::move(mats));
  }
  out.order = PermGroup(srep.degree(), perms).order();
  return out;
}

inline bool acts_trivially(const PermGroup& g, const LinearRep& rep, const Subspace& lo, const Subspace& hi) {
  for (const auto& x : g.generators())
    if (!section_action(rep.matrix(x, 0), lo, hi).is_identity()) return false;
  return true;
}

inline Subspace perp(const Form& b, const Subspace& s) {
  Matrix m(b.field(), s.ambient(), s.dim());
  for (std::size_t i = 0; i < s.ambient(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) m(i, j) = b.eval(unit_vec(s.ambient(), i), s.basis()[j]);
  return left_kernel(m);
}

}  // namespace detail

struct NaturalReport {
  std::size_t vector_orbits = 0;
  std::size_t vector_orbit_length = 0;
  std::vector<std::size_t> invariant_subspaces_by_dim;  // S-invariant subspaces of V of each dimension 0..6
  bool flag_is_the_chain = false;                        // the invariant subspaces are V1 < V2 < V3 and their perps
  std::uint64_t s_order = 0;
  bool n_v1_is_x23 = false, n_v2_is_x13 = false, n_v3_is_x12 = false;
  std::uint64_t x23_section_order = 0;  // on V1perp / V1
  bool x23_section_symplectic = false;
  bool o2x3_centralizes_v2 = false, o2x3_centralizes_top = false, o2x1_centralizes_middle = false;
  std::uint64_t x12_on_v3 = 0, x12_on_top = 0;
  std::array<std::uint64_t, 3> o2_orders{};       // O_2(X_12), O_2(X_13), O_2(X_23)
  std::array<std::uint64_t, 3> quotient_orders{};  // |X_ij / O_2(X_ij)| from section images
  std::array<bool, 3> kernels_are_o2{};
};

inline NaturalReport natural_module_report() {
  const NamedGroup& x = named_group("Sp6_2");
  const Parabolics& par = natural_parabolics();
  const LinearRep& rep = x.rep;
  const Form& b = x.form;
  const Field& f = Field::gf2();
  NaturalReport r;
  auto orbs = point_orbits(x.group);
  r.vector_orbits = orbs.size();
  r.vector_orbit_length = orbs.at(0).size();
  r.s_order = par.s.order();

  std::vector<Matrix> smats;
  for (const auto& s : par.s.generators()) smats.push_back(rep.matrix(s, 0));
  const Subspace v1 = par.flag[0], v2 = par.flag[1], v3 = par.flag[2];
  const Subspace v1p = detail::perp(b, v1), v2p = detail::perp(b, v2);
  std::vector<Subspace> chain = {Subspace(f, 6), v1, v2, v3, v2p, v1p, Subspace::full(f, 6)};
  r.flag_is_the_chain = true;
  for (std::size_t k = 0; k <= 6; ++k) {
    std::size_t count = 0;
    for (const auto& w : all_subspaces(f, 6, k)) {
      if (!std::all_of(smats.begin(), smats.end(), [&](const Matrix& m) { return w.is_invariant(m); })) continue;
      ++count;
      if (!(w == chain[k])) r.flag_is_the_chain = false;
    }
    r.invariant_subspaces_by_dim.push_back(count);
  }

  r.n_v1_is_x23 = set_stabilizer(x.group, {rep.points(v1, 0)}).same_as(par.x23);
  r.n_v2_is_x13 = set_stabilizer(x.group, {rep.points(v2, 0)}).same_as(par.x13);
  r.n_v3_is_x12 = set_stabilizer(x.group, {rep.points(v3, 0)}).same_as(par.x12);

  // X_23 on V1perp / V1 preserves the induced nondegenerate alternating form
  auto sec = detail::section_image(par.x23, rep, {{v1, v1p}});
  r.x23_section_order = sec.order;
  {
    std::vector<Vec> low;
    for (const auto& v : v1.basis()) low.push_back(v1p.coordinates(v));
    auto comp = Subspace::span(f, v1p.dim(), low).complement_basis();
    std::vector<Vec> reps;
    for (const auto& c : comp) reps.push_back(detail::lift(v1, v1p, [&] {
      Vec loc(comp.size(), 0);
      loc[reps.size()] = 1;
      return loc;
    }()));
    Matrix gram(f, reps.size(), reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = 0; j < reps.size(); ++j) gram(i, j) = b.eval(reps[i], reps[j]);
    Form induced = Form::bilinear(gram);
    r.x23_section_symplectic = induced.is_alternating() && rank(gram) == reps.size();
    for (const auto& g : sec.gens)
      if (!induced.preserved_by(g[0])) r.x23_section_symplectic = false;
  }

  const PermGroup o2x1 = generated_by_order_prime_to(par.x1, 2);
  const PermGroup o2x3 = generated_by_order_prime_to(par.x3, 2);
  r.o2x3_centralizes_v2 = detail::acts_trivially(o2x3, rep, Subspace(f, 6), v2);
  r.o2x3_centralizes_top = detail::acts_trivially(o2x3, rep, v2p, Subspace::full(f, 6));
  r.o2x1_centralizes_middle = detail::acts_trivially(o2x1, rep, v2, v2p);
  r.x12_on_v3 = detail::section_image(par.x12, rep, {{Subspace(f, 6), v3}}).order;
  r.x12_on_top = detail::section_image(par.x12, rep, {{v3, Subspace::full(f, 6)}}).order;

  // quotients by O_2 through the actions on the flag sections
  const std::array<const PermGroup*, 3> groups = {&par.x12, &par.x13, &par.x23};
  const std::array<const PermGroup*, 3> cores = {&par.o2_12, &par.o2_13, &par.o2_23};
  const std::array<std::vector<std::pair<Subspace, Subspace>>, 3> sections = {{
      {{Subspace(f, 6), v3}},
      {{Subspace(f, 6), v2}, {v2, v2p}},
      {{v1, v1p}},
  }};
  for (std::size_t i = 0; i < 3; ++i) {
    r.o2_orders[i] = cores[i]->order();
    const auto img = detail::section_image(*groups[i], rep, sections[i]);
    r.quotient_orders[i] = img.order;
    bool core_trivial = true;
    for (const auto& [lo, hi] : sections[i])
      core_trivial = core_trivial && detail::acts_trivially(*cores[i], rep, lo, hi);
    r.kernels_are_o2[i] = core_trivial && groups[i]->order() / img.order == cores[i]->order();
  }
  return r;
}

struct SpinReport {
  std::string source;
  std::vector<std::size_t> source_factor_dims;
  std::vector<std::size_t> orbit_lengths;  // on the nonzero vectors of U, descending
  std::size_t dim_cu_s = 0;
  bool n_cus_is_x12 = false;
  bool cus_is_cu_o2x12 = false;
  std::size_t invariant_2spaces = 0;
  bool stabilizers_are_x13 = false;
  bool o2x1_centralizes_u2 = false;
};

inline SpinReport spin_module_report(std::uint64_t seed) {
  const Sp62Context& ctx = sp62_context(seed);
  const Field& f = Field::gf2();
  const Parabolics& par = ctx.par;
  SpinReport r;
  r.source = ctx.spin_source;
  r.source_factor_dims = ctx.spin_source_dims;
  const VectorBlock& ub = ctx.rep.block(1);
  {
    std::vector<bool> seen(ctx.rep.degree(), false);
    for (point_t p = static_cast<point_t>(ub.offset); p < ub.offset + ub.size(); ++p) {
      if (seen[p]) continue;
      auto o = point_orbit(ctx.full, p);
      for (point_t q : o.points) seen[q] = true;
      r.orbit_lengths.push_back(o.size());
    }
    std::sort(r.orbit_lengths.rbegin(), r.orbit_lengths.rend());
  }
  auto u_gens = [&](const PermGroup& h) {
    std::vector<Matrix> m;
    for (const auto& g : h.generators()) m.push_back(ctx.u_matrix(g));
    return m;
  };
  const Subspace cus = fixed_points(f, 8, u_gens(par.s));
  r.dim_cu_s = cus.dim();
  if (cus.dim() == 1) {
    r.n_cus_is_x12 = set_stabilizer(ctx.full, {ctx.rep.points(cus, 1)}).same_as(par.x12);
    r.cus_is_cu_o2x12 = fixed_points(f, 8, u_gens(par.o2_12)) == cus;
  }
  const auto smats = u_gens(par.s);
  const PermGroup o2x1 = generated_by_order_prime_to(par.x1, 2);
  r.stabilizers_are_x13 = true;
  r.o2x1_centralizes_u2 = true;
  for (const auto& w : all_subspaces(f, 8, 2)) {
    if (!std::all_of(smats.begin(), smats.end(), [&](const Matrix& m) { return w.is_invariant(m); })) continue;
    ++r.invariant_2spaces;
    if (!set_stabilizer(ctx.full, {ctx.rep.points(w, 1)}).same_as(par.x13)) r.stabilizers_are_x13 = false;
    for (const auto& g : o2x1.generators())
      if (!restrict_action(ctx.u_matrix(g), w).is_identity()) r.o2x1_centralizes_u2 = false;
  }
  if (r.invariant_2spaces == 0) r.stabilizers_are_x13 = r.o2x1_centralizes_u2 = false;
  return r;
}

struct LineReport {
  std::uint64_t p_order = 0, q_order = 0, p_over_q = 0;
  std::uint64_t center_order = 0, derived_order = 0;
  std::uint64_t t_order = 0;
  std::vector<std::size_t> order3_dims;  // dim [V, z] over the order-3 subgroups of T, sorted
  bool tau3_pair_fused = false;           // in N_P(T)
  std::array<std::uint64_t, 2> cq_orders{};
  std::array<bool, 2> cq_quaternion{};
  bool cq_commute = false;
  bool ct_zq_is_tau1 = false;
  bool cq_tau1_is_zq = false;
  std::size_t t_invariant_order8 = 0;
  bool t_invariant_are_expected = false;
  bool t_class_leaves_zq = false;
};

namespace detail {
inline bool is_quaternion8(const SmallGroupTable& t, const BitSet& h) {
  std::size_t involutions = 0;
  for (std::size_t x : h.indices())
    if (t.element_order(x) == 2) ++involutions;
  return h.count() == 8 && involutions == 1 && !t.is_abelian(h);
}
}  // namespace detail

inline LineReport line_report() {
  const NamedGroup& x = named_group("Sp6_2");
  const Parabolics& par = natural_parabolics();
  LineReport r;
  const PermGroup& p = par.x13;
  const PermGroup& qg = par.o2_13;
  r.p_order = p.order();
  r.q_order = qg.order();
  {
    const Field& f = Field::gf2();
    const Subspace v2 = par.flag[1], v2p = detail::perp(x.form, v2);
    r.p_over_q = detail::section_image(p, x.rep, {{Subspace(f, 6), v2}, {v2, v2p}}).order;
  }
  SmallGroupTable q(qg);
  const BitSet zq = q.center(q.all());
  const BitSet dq = q.derived(q.all());
  r.center_order = zq.count();
  r.derived_order = dq.count();

  const PermGroup t = sylow_subgroup(p, 3);
  r.t_order = t.order();
  // the order-3 subgroups of T, each given by a generator
  std::vector<Permutation> zs;
  std::set<std::vector<point_t>> seen;
  t.for_each_element([&](const Permutation& e) {
    if (e.order() != 3) return;
    const Permutation e2 = e * e;
    if (!seen.insert(std::min(e.images(), e2.images())).second) return;
    zs.push_back(e);
  });
  std::vector<std::size_t> dims;
  for (const auto& z : zs) dims.push_back(commutator_space(x.matrix(z)).dim());
  r.order3_dims = dims;
  std::sort(r.order3_dims.begin(), r.order3_dims.end());
  std::vector<Permutation> tau3;
  std::optional<Permutation> tau1;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (dims[i] == 6) tau3.push_back(zs[i]);
    if (dims[i] == 2) tau1 = zs[i];
  }
  if (tau3.size() != 2 || !tau1) return r;

  const PermGroup npt = normalizer_bruteforce(p, t);
  const PermGroup z2(x.group.degree(), {tau3[1]});
  npt.for_each_element([&](const Permutation& n) {
    if (!r.tau3_pair_fused && z2.contains(tau3[0].conjugate_by(n))) r.tau3_pair_fused = true;
  });

  auto centralizer_in_q = [&](const Permutation& z) {
    BitSet c(q.order());
    for (std::size_t i = 0; i < q.order(); ++i)
      if (commute(q.element(i), z)) c.set(i);
    return c;
  };
  const BitSet c1 = centralizer_in_q(tau3[0]), c2 = centralizer_in_q(tau3[1]);
  r.cq_orders = {c1.count(), c2.count()};
  r.cq_quaternion = {detail::is_quaternion8(q, c1), detail::is_quaternion8(q, c2)};
  r.cq_commute = true;
  for (std::size_t a : c1.indices())
    for (std::size_t b : c2.indices())
      if (q.mul(a, b) != q.mul(b, a)) r.cq_commute = false;

  // C_T(Z(Q)) = <tau1> and C_Q(tau1) = Z(Q)
  {
    std::set<std::vector<point_t>> ct, t1;
    t.for_each_element([&](const Permutation& e) {
      for (std::size_t z : zq.indices())
        if (!commute(e, q.element(z))) return;
      ct.insert(e.images());
    });
    const Permutation one = x.group.identity();
    for (const auto& e : {one, *tau1, *tau1 * *tau1}) t1.insert(e.images());
    r.ct_zq_is_tau1 = ct == t1;
    r.cq_tau1_is_zq = centralizer_in_q(*tau1) == zq;
  }

  // T-invariant subgroups of order 8
  std::set<BitSet> expected = {c1, c2, zq};
  std::set<BitSet> found;
  for (const auto& h : q.subgroups(q.all(), 2, 8)) {
    if (h.count() != 8) continue;
    bool inv = true;
    for (const auto& g : t.generators())
      for (std::size_t y : h.indices())
        if (inv && !h.test(q.index_of(q.element(y).conjugate_by(g)))) inv = false;
    if (inv) found.insert(h);
  }
  r.t_invariant_order8 = found.size();
  r.t_invariant_are_expected = found == expected;

  // Q' = <t>; the X-class of t meets Q outside Z(Q)
  if (dq.count() == 2) {
    std::size_t tq = 0;
    for (std::size_t i : dq.indices())
      if (i != q.identity()) tq = i;
    auto cls = conjugation_orbit(x.group, q.element(tq));
    for (std::size_t i = 0; i < q.order(); ++i)
      if (!zq.test(i) && cls.contains(q.element(i))) r.t_class_leaves_zq = true;
  }
  return r;
}

// ---- subgroup non-existence and offenders ---------------------------------------------------------------

struct SubgroupSearchReport {
  std::size_t examined = 0;
  std::size_t found = 0;
};

/// Elementary abelian subgroups of order 16 of a Sylow 2-subgroup of Sp6(2)
/// whose involutions are all Sp6(2)-conjugate.
inline SubgroupSearchReport conjugate_involution_e16_search() {
  const NamedGroup& x = named_group("Sp6_2");
  const PermGroup& s = natural_parabolics().s;
  SmallGroupTable t(s);
  std::vector<Permutation> reps;
  for (const auto& c : class_map(x.group, involutions_of(s))) reps.push_back(c.representative);
  auto cls = detail::class_index(x.group, reps);
  SubgroupSearchReport r;
  for (const auto& e : t.elementary_abelian_subgroups(t.all(), 2, 16)) {
    if (e.count() != 16) continue;
    ++r.examined;
    std::set<std::size_t> labels;
    for (std::size_t i : e.indices())
      if (i != t.identity()) labels.insert(cls.at(t.element(i)));
    if (labels.size() == 1) ++r.found;
  }
  return r;
}

/// All subgroups of order 16 (any isomorphism type) of S whose involutions are all conjugate.
inline SubgroupSearchReport conjugate_involution_order16_search() {
  const NamedGroup& x = named_group("Sp6_2");
  const PermGroup& s = natural_parabolics().s;
  SmallGroupTable t(s);
  std::vector<Permutation> reps;
  for (const auto& c : class_map(x.group, involutions_of(s))) reps.push_back(c.representative);
  auto cls = detail::class_index(x.group, reps);
  SubgroupSearchReport r;
  for (const auto& h : t.subgroups(t.all(), 2, 16)) {
    if (h.count() != 16) continue;
    ++r.examined;
    std::set<std::size_t> labels;
    for (std::size_t i : h.indices())
      if (t.element_order(i) == 2) labels.insert(cls.at(t.element(i)));
    if (labels.size() == 1) ++r.found;
  }
  return r;
}

inline bool is_extraspecial(const SmallGroupTable& t, const BitSet& h) {
  const BitSet z = t.center(h);
  return z.count() == 2 && t.derived(h) == z && t.frattini(h, 2) == z;
}

/// Extraspecial subgroups of order 2^7 in a Sylow 2-subgroup of Sp6(2).
inline SubgroupSearchReport extraspecial_128_search() {
  SmallGroupTable t(natural_parabolics().s);
  SubgroupSearchReport r;
  for (const auto& h : t.subgroups(t.all(), 2, 128)) {
    if (h.count() != 128) continue;
    ++r.examined;
    if (is_extraspecial(t, h)) ++r.found;
  }
  return r;
}

/// Elementary abelian E of order 8 in a Sylow 2-subgroup of O6-(2) with |V : C_V(E)| <= 4.
inline SubgroupSearchReport noover_search(std::uint64_t seed) {
  const Sp62Context& ctx = sp62_context(seed);
  SmallGroupTable t(sylow_subgroup(ctx.y, 2));
  SubgroupSearchReport r;
  for (const auto& e : t.elementary_abelian_subgroups(t.all(), 2, 8)) {
    if (e.count() != 8) continue;
    ++r.examined;
    std::vector<Matrix> m;
    for (std::size_t g : t.generators(e)) m.push_back(ctx.v_matrix(t.element(g)));
    if (fixed_points(Field::gf2(), 6, m).dim() >= 4) ++r.found;
  }
  return r;
}

struct OffenderReport {
  std::uint64_t sylow_order = 0;
  std::size_t subgroups_examined = 0;
  std::size_t offenders = 0;
  std::size_t transvection_offenders = 0;  // order 2 with |M : C_M(A)| = 2
};

/// Offenders on V, U or V + U for Sp6(2) ("Sp6_2") or O6-(2) ("AutSU4_2").
inline OffenderReport offender_report(const std::string& group, bool with_v, bool with_u, std::uint64_t seed) {
  const Sp62Context& ctx = sp62_context(seed);
  const PermGroup s = group == "Sp6_2" ? ctx.par.s : sylow_subgroup(ctx.y, 2);
  SmallGroupTable t(s);
  const std::size_t n = (with_v ? 6 : 0) + (with_u ? 8 : 0);
  auto act = [&](const Permutation& p) {
    if (with_v && with_u) return block_diagonal(ctx.v_matrix(p), ctx.u_matrix(p));
    return with_v ? ctx.v_matrix(p) : ctx.u_matrix(p);
  };
  OffenderReport r;
  r.sylow_order = s.order();
  r.subgroups_examined = t.elementary_abelian_subgroups(t.all(), 2).size();
  for (const auto& o : offender_search(t, Field::gf2(), n, act)) {
    ++r.offenders;
    if (o.order == 2 && o.codim == 1) ++r.transvection_offenders;
  }
  return r;
}

struct NonsplitReport {
  std::size_t dim_cw_x = 0;
  bool cw_x_is_radical = false;
  std::uint64_t s_order = 0;
  std::size_t dim_cw_s = 0;
  std::vector<std::uint64_t> involution_class_sizes;
};

/// The 7-dimensional orthogonal module: fixed points of O7(2) and of a Sylow
/// 2-subgroup (the stabilizer of a maximal totally singular flag).
inline NonsplitReport nonsplit_report() {
  const NamedGroup& o7 = named_group("O7_2");
  const Field& f = Field::gf2();
  NonsplitReport r;
  const Subspace cx = fixed_points(f, 7, o7.block_generators());
  r.dim_cw_x = cx.dim();
  r.cw_x_is_radical = cx == o7.form.polar_radical();
  std::vector<std::vector<point_t>> flag;
  std::vector<Vec> basis;
  for (std::size_t i : {0u, 2u, 4u}) {
    basis.push_back(unit_vec(7, i));
    flag.push_back(o7.rep.points(Subspace::span(f, 7, basis), 0));
  }
  const PermGroup s = set_stabilizer(o7.group, flag);
  r.s_order = s.order();
  std::vector<Matrix> m;
  for (const auto& g : s.generators()) m.push_back(o7.matrix(g));
  r.dim_cw_s = fixed_points(f, 7, m).dim();
  r.involution_class_sizes = involution_class_sizes(o7.group, s);
  return r;
}

// ---- invariant quadratic forms for pairs of order-3 elements ----------------------------------------------

struct GO4SampleReport {
  WittType seed_plus_type = WittType::odd;   // recovered from the GO4+(3) Sylow pair
  WittType seed_minus_type = WittType::odd;  // recovered from the GO4-(3) Sylow pair
  std::size_t sampled = 0;
  std::size_t recovered = 0;       // nondegenerate invariant form with v singular found
  std::size_t type_matches_source = 0;
  std::set<WittType> outcomes;
};

namespace detail {
/// Generating pairs (a, b) of a Sylow 3-subgroup of the registry group satisfying the hypotheses.
inline std::vector<std::pair<Matrix, Matrix>> go4_pairs(const NamedGroup& g) {
  const PermGroup p = sylow_subgroup(g.group, 3);
  std::vector<Matrix> els;
  p.for_each_element([&](const Permutation& e) {
    if (!e.is_identity()) els.push_back(g.matrix(e));
  });
  std::vector<std::pair<Matrix, Matrix>> out;
  for (const auto& a : els)
    for (const auto& b : els)
      if (invariant_form_pair_hypotheses(a, b)) out.emplace_back(a, b);
  return out;
}

inline Vec outside(const Matrix& a, const Matrix& b, std::mt19937_64& rng) {
  const Subspace va = subspace_sum(commutator_space(a), commutator_space(b));
  const Field& f = a.field();
  while (true) {
    Vec v = vec_decode(f, rng() % space_size(f, 4), 4);
    if (!va.contains(v)) return v;
  }
}
}  // namespace detail

/// Seed pairs from the Sylow 3-subgroups of GO4+(3) and GO4-(3), then a sample of
/// random GL4(3)-conjugates of random valid pairs with random witnesses v.
inline GO4SampleReport go4_sample(std::uint64_t seed, std::size_t count = 100) {
  const Field& f = Field::gf3();
  std::mt19937_64 rng(seed);
  GO4SampleReport r;
  const std::array<const NamedGroup*, 2> src = {&named_group("GO4p_3"), &named_group("GO4m_3")};
  std::array<std::vector<std::pair<Matrix, Matrix>>, 2> pairs = {detail::go4_pairs(*src[0]),
                                                                  detail::go4_pairs(*src[1])};
  for (std::size_t s = 0; s < 2; ++s) {
    if (pairs[s].empty()) return r;
    const auto& [a, b] = pairs[s].front();
    auto rec = recover_invariant_form(a, b, detail::outside(a, b, rng));
    if (rec) (s == 0 ? r.seed_plus_type : r.seed_minus_type) = rec->type;
  }
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t s = rng() % 2;
    const auto& [a0, b0] = pairs[s][rng() % pairs[s].size()];
    Matrix h(f, 4, 4);
    do {
      for (std::size_t k = 0; k < 16; ++k) h(k / 4, k % 4) = static_cast<elem_t>(rng() % 3);
    } while (rank(h) < 4);
    const Matrix hi = inverse(h);
    const Matrix a = hi * a0 * h, b = hi * b0 * h;
    ++r.sampled;
    auto rec = recover_invariant_form(a, b, detail::outside(a, b, rng));
    if (!rec) continue;
    ++r.recovered;
    r.outcomes.insert(rec->type);
    if (rec->type == (s == 0 ? WittType::plus : WittType::minus)) ++r.type_matches_source;
  }
  return r;
}

}  // namespace forge
