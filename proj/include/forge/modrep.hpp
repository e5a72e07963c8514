#pragma once

// Modules given by one matrix per group generator (row vectors, right action):
// functorial constructions, spinning, a MeatAxe-style chopper certified by
// Norton's irreducibility criterion, fixed points and offender searches.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "forge/linalg.hpp"
#include "forge/smallgroup.hpp"

namespace forge {

struct GModule {
  std::string owner;
  const Field* field = nullptr;
  std::size_t dim = 0;
  std::vector<Matrix> gens;

  GModule() = default;
  GModule(std::string owner_name, const Field& f, std::size_t d, std::vector<Matrix> mats)
      : owner(std::move(owner_name)), field(&f), dim(d), gens(std::move(mats)) {
    for (const auto& g : gens)
      if (g.rows() != dim || g.cols() != dim || !(g.field() == f)) throw dimension_error("generator shape mismatch");
  }
  std::size_t ngens() const { return gens.size(); }
};

inline GModule trivial_module(const std::string& owner, const Field& f, std::size_t ngens, std::size_t dim = 1) {
  return GModule(owner, f, dim, std::vector<Matrix>(ngens, Matrix::identity(f, dim)));
}

namespace detail {
inline void check_compatible(const GModule& a, const GModule& b) {
  if (a.owner != b.owner || a.ngens() != b.ngens()) throw precondition_error("modules have different owners");
  if (!(*a.field == *b.field)) throw dimension_error("modules over different fields");
}
}  // namespace detail

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
  const Field& f = a.field();
  Matrix m(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const elem_t x = a(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = f.mul(x, b(k, l));
    }
  return m;
}

inline Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

inline GModule tensor(const GModule& m, const GModule& n) {
  detail::check_compatible(m, n);
  std::vector<Matrix> g;
  for (std::size_t i = 0; i < m.ngens(); ++i) g.push_back(kronecker(m.gens[i], n.gens[i]));
  return GModule(m.owner, *m.field, m.dim * n.dim, std::move(g));
}

inline GModule direct_sum(const GModule& m, const GModule& n) {
  detail::check_compatible(m, n);
  std::vector<Matrix> g;
  for (std::size_t i = 0; i < m.ngens(); ++i) g.push_back(block_diagonal(m.gens[i], n.gens[i]));
  return GModule(m.owner, *m.field, m.dim + n.dim, std::move(g));
}

inline GModule dual(const GModule& m) {
  std::vector<Matrix> g;
  for (const auto& x : m.gens) g.push_back(inverse(x).transpose());
  return GModule(m.owner, *m.field, m.dim, std::move(g));
}

/// k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

/// Lambda^k: e_S -> wedge of the rows of g indexed by S; the coefficient on e_T
/// is the minor det g[S, T].
inline GModule exterior_power(const GModule& m, std::size_t k) {
  if (k == 0 || k > m.dim) throw precondition_error("exterior power degree out of range");
  const Field& f = *m.field;
  const auto subs = k_subsets(m.dim, k);
  std::vector<Matrix> out;
  for (const auto& g : m.gens) {
    Matrix w(f, subs.size(), subs.size());
    Matrix minor(f, k, k);
    for (std::size_t a = 0; a < subs.size(); ++a)
      for (std::size_t b = 0; b < subs.size(); ++b) {
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) minor(i, j) = g(subs[a][i], subs[b][j]);
        w(a, b) = determinant(minor);
      }
    out.push_back(std::move(w));
  }
  return GModule(m.owner, f, subs.size(), std::move(out));
}

// ---- spinning -----------------------------------------------------------------

namespace detail {

/// Incremental echelon basis used while spinning.
class Spinner {
 public:
  Spinner(const Field& f, std::size_t n) : f_(&f), n_(n) {}
  // Adds v if it is new; returns true when the span grew.
  bool add(Vec v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const elem_t c = v[piv_[i]];
      if (c == 0) continue;
      const elem_t m = f_->neg(c);
      for (std::size_t j = 0; j < n_; ++j) v[j] = f_->add(v[j], f_->mul(m, rows_[i][j]));
    }
    auto it = std::find_if(v.begin(), v.end(), [](elem_t x) { return x != 0; });
    if (it == v.end()) return false;
    const std::size_t p = static_cast<std::size_t>(it - v.begin());
    const elem_t s = f_->inv(v[p]);
    for (auto& x : v) x = f_->mul(x, s);
    rows_.push_back(std::move(v));
    piv_.push_back(p);
    return true;
  }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }

 private:
  const Field* f_;
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> piv_;
};

}  // namespace detail

/// Smallest subspace containing the seeds and invariant under every matrix in gens.
inline Subspace spin(const Field& f, std::size_t n, const std::vector<Matrix>& gens, const std::vector<Vec>& seeds) {
  detail::Spinner sp(f, n);
  std::vector<Vec> todo;
  for (const auto& s : seeds)
    if (sp.add(s)) todo.push_back(s);
  while (!todo.empty()) {
    Vec v = std::move(todo.back());
    todo.pop_back();
    for (const auto& g : gens) {
      Vec w = vec_mul(f, v, g);
      if (sp.add(w)) {
        todo.push_back(std::move(w));
        if (sp.dim() == n) return Subspace::full(f, n);
      }
    }
  }
  return Subspace::span(f, n, sp.rows());
}

inline Subspace spin_submodule(const GModule& m, const std::vector<Vec>& seeds) {
  for (const auto& s : seeds)
    if (s.size() != m.dim) throw dimension_error("seed length mismatch");
  return spin(*m.field, m.dim, m.gens, seeds);
}

inline bool is_submodule(const GModule& m, const Subspace& w) {
  return std::all_of(m.gens.begin(), m.gens.end(), [&](const Matrix& g) { return w.is_invariant(g); });
}

// ---- MeatAxe --------------------------------------------------------------------

inline constexpr std::size_t kChopBudget = 2000;

struct CompositionSeries {
  std::vector<Subspace> flag;  // 0 = F_0 < F_1 < ... < F_k = M
  std::vector<GModule> factors;
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& f : factors) d.push_back(f.dim);
    return d;
  }
  std::vector<std::size_t> sorted_dims() const {
    auto d = dims();
    std::sort(d.begin(), d.end());
    return d;
  }
};

namespace detail {

/// Annihilator {v : v . w = 0 for all w in s}.
inline Subspace annihilator(const Subspace& s) {
  if (s.is_zero()) return Subspace::full(s.field(), s.ambient());
  return left_kernel(Matrix::from_rows(s.field(), s.basis(), s.ambient()).transpose());
}

/// Either a proper nonzero invariant subspace, or nullopt once Norton's
/// criterion certifies irreducibility: for a singular algebra element theta,
/// every nonzero vector of ker(theta) spins to the whole module and some
/// nonzero vector of ker(theta^T) spins to the whole transposed module.
inline std::optional<Subspace> split(const Field& f, std::size_t n, const std::vector<Matrix>& gens,
                                     std::mt19937_64& rng, std::size_t budget) {
  if (n <= 1) return std::nullopt;
  std::vector<Matrix> transposed;
  for (const auto& g : gens) transposed.push_back(g.transpose());
  std::vector<Matrix> pool = gens;
  if (pool.empty()) pool.push_back(Matrix::identity(f, n));
  const std::size_t base = pool.size();
  std::uniform_int_distribution<int> coef(0, f.order() - 1);
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    {
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      Matrix a = pool[pick(rng)] * pool[pick(rng)];
      if (pool.size() < base + 24) pool.push_back(std::move(a));
      else pool[base + rng() % 24] = std::move(a);
    }
    Matrix theta(f, n, n);
    for (const auto& a : pool) {
      const elem_t c = static_cast<elem_t>(coef(rng));
      if (c) theta = theta + a.scaled(c);
    }
    const elem_t shift = static_cast<elem_t>(coef(rng));
    if (shift) theta = theta + Matrix::identity(f, n).scaled(shift);
    Subspace ker = left_kernel(theta);
    if (ker.is_zero()) continue;
    // keep the exhaustive Norton pass cheap; late attempts accept larger kernels
    if (ker.dim() > 2 && attempt < budget / 2) {
      Subspace s = spin(f, n, gens, {ker.basis()[0]});
      if (!s.is_full()) return s;
      continue;
    }
    for (const auto& v : projective_points(ker)) {
      Subspace s = spin(f, n, gens, {v});
      if (!s.is_full()) return s;
    }
    Subspace kt = left_kernel(theta.transpose());
    Subspace st = spin(f, n, transposed, {kt.basis()[0]});
    if (!st.is_full()) return annihilator(st);
    return std::nullopt;
  }
  throw resource_error("MeatAxe budget exhausted without a split decision");
}

/// Ambient vector of local coordinates c for the section upper / lower, in the
/// basis used by section_action.
inline Vec lift(const Subspace& lower, const Subspace& upper, const Vec& c) {
  const Field& f = upper.field();
  std::vector<Vec> low;
  for (const auto& v : lower.basis()) low.push_back(upper.coordinates(v));
  auto comp = Subspace::span(f, upper.dim(), std::move(low)).complement_basis();
  Vec y(upper.dim(), 0);
  for (std::size_t i = 0; i < comp.size(); ++i)
    if (c[i]) y = vec_add(f, y, vec_scale(f, c[i], comp[i]));
  Vec out(upper.ambient(), 0);
  for (std::size_t j = 0; j < y.size(); ++j)
    if (y[j]) out = vec_add(f, out, vec_scale(f, y[j], upper.basis()[j]));
  return out;
}

}  // namespace detail

/// Composition series by repeated splitting of the sections of a flag.
inline CompositionSeries chop(const GModule& m, std::mt19937_64& rng, std::size_t budget = kChopBudget) {
  if (m.dim > 64) throw precondition_error("chop supports dimension <= 64");
  const Field& f = *m.field;
  std::vector<Subspace> flag{Subspace(f, m.dim), Subspace::full(f, m.dim)};
  if (m.dim == 0) return {flag, {}};
  std::vector<bool> done{false};
  for (std::size_t i = 0; i + 1 < flag.size();) {
    if (done[i]) {
      ++i;
      continue;
    }
    const Subspace& lo = flag[i];
    const Subspace& hi = flag[i + 1];
    std::vector<Matrix> local;
    for (const auto& g : m.gens) local.push_back(section_action(g, lo, hi));
    auto w = detail::split(f, hi.dim() - lo.dim(), local, rng, budget);
    if (!w) {
      done[i] = true;
      continue;
    }
    std::vector<Vec> gens = lo.basis();
    for (const auto& v : w->basis()) gens.push_back(detail::lift(lo, hi, v));
    Subspace mid = Subspace::span(f, m.dim, std::move(gens));
    if (!is_submodule(m, mid)) throw construction_error("split produced a non-invariant subspace");
    flag.insert(flag.begin() + static_cast<std::ptrdiff_t>(i) + 1, std::move(mid));
    done.insert(done.begin() + static_cast<std::ptrdiff_t>(i), false);
  }
  CompositionSeries out;
  out.flag = flag;
  for (std::size_t i = 0; i + 1 < flag.size(); ++i) {
    std::vector<Matrix> local;
    for (const auto& g : m.gens) local.push_back(section_action(g, flag[i], flag[i + 1]));
    out.factors.emplace_back(m.owner, f, flag[i + 1].dim() - flag[i].dim(), std::move(local));
  }
  return out;
}

/// Norton's criterion applied to the whole module.
inline bool is_irreducible(const GModule& m, std::mt19937_64& rng, std::size_t budget = kChopBudget) {
  return !detail::split(*m.field, m.dim, m.gens, rng, budget).has_value();
}

struct SpinSearch {
  GModule module;
  std::string source;  // which construction produced the factor
  std::vector<std::size_t> source_factor_dims;
};

/// First irreducible factor of the requested dimension among the composition
/// factors of Lambda^3(V), V (x) V and V (x) Lambda^2(V).
inline std::optional<SpinSearch> find_spin_module(const GModule& v, std::mt19937_64& rng, std::size_t target = 8) {
  std::vector<std::pair<std::string, std::function<GModule()>>> schedule = {
      {"exterior3", [&] { return exterior_power(v, 3); }},
      {"tensor2", [&] { return tensor(v, v); }},
      {"tensor_exterior2", [&] { return tensor(v, exterior_power(v, 2)); }},
  };
  for (auto& [name, build] : schedule) {
    if (v.dim < 3 && name == "exterior3") continue;
    GModule m = build();
    CompositionSeries cs = chop(m, rng);
    for (const auto& fac : cs.factors)
      if (fac.dim == target) return SpinSearch{fac, name, cs.sorted_dims()};
  }
  return std::nullopt;
}

// ---- fixed points and offenders ---------------------------------------------------

inline Subspace fixed_points(const Field& f, std::size_t n, const std::vector<Matrix>& mats) {
  Subspace c = Subspace::full(f, n);
  for (const auto& g : mats) {
    c = subspace_intersect(c, fixed_space(g));
    if (c.is_zero()) break;
  }
  return c;
}

inline Subspace fixed_points(const GModule& m, const std::vector<Matrix>& subgroup_gens) {
  return fixed_points(*m.field, m.dim, subgroup_gens);
}

struct Offender {
  BitSet subgroup;
  std::size_t order;
  std::size_t codim;  // dim M - dim C_M(A)
};

/// Offenders among the nontrivial elementary abelian subgroups of the 2-group s,
/// acting on a module of dimension n through act. Offender: |M : C_M(A)| <= |A|.
inline std::vector<Offender> offender_search(const SmallGroupTable& s, const Field& f, std::size_t n,
                                             const std::function<Matrix(const Permutation&)>& act,
                                             std::uint32_t p = 2) {
  std::vector<std::optional<Matrix>> mats(s.order());
  auto mat = [&](std::size_t i) -> const Matrix& {
    if (!mats[i]) mats[i] = act(s.element(i));
    return *mats[i];
  };
  std::vector<Offender> out;
  for (const auto& a : s.elementary_abelian_subgroups(s.all(), p)) {
    std::vector<Matrix> gens;
    for (std::size_t x : s.generators(a)) gens.push_back(mat(x));
    const std::size_t codim = n - fixed_points(f, n, gens).dim();
    std::size_t log_order = 0;
    for (std::size_t o = a.count(); o > 1; o /= p) ++log_order;
    if (codim <= log_order) out.push_back({a, a.count(), codim});
  }
  return out;
}

}  // namespace forge
