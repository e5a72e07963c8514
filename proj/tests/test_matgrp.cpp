#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "forge/matgrp.hpp"

using namespace forge;

namespace {

// Oracle: count the invertible matrices preserving a form by enumeration.
std::uint64_t isometries_by_enumeration(const Form& form, bool det_one = false) {
  const Field& f = form.field();
  const std::size_t n = form.dim();
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < space_size(f, n * n); ++x) {
    const Vec e = vec_decode(f, x, n * n);
    Matrix g(f, n, n);
    for (std::size_t i = 0; i < n * n; ++i) g(i / n, i % n) = e[i];
    if (determinant(g) == 0) continue;
    if (det_one && determinant(g) != 1) continue;
    if (form.preserved_by(g)) ++count;
  }
  return count;
}

const std::map<std::string, std::uint64_t>& known_orders() {
  static const std::map<std::string, std::uint64_t> m = {
      {"Sp6_2", 1451520}, {"SU4_2", 25920}, {"AutSU4_2", 51840}, {"O7_2", 1451520},
      {"GO4p_3", 1152},   {"GO4m_3", 1440}, {"CO4p_3", 2304},
  };
  return m;
}

std::vector<Permutation> sample(const PermGroup& g, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(g.random_element(rng));
  return out;
}

}  // namespace

TEST(OrderFormulas, AgreeWithEnumeration) {
  const Field& f2 = Field::gf2();
  const Field& f3 = Field::gf3();
  EXPECT_EQ(order_sp(2, 2), isometries_by_enumeration(standard_symplectic(f2, 2)));
  EXPECT_EQ(order_sp(2, 4), isometries_by_enumeration(standard_symplectic(f2, 4)));
  EXPECT_EQ(order_sp(3, 2), isometries_by_enumeration(standard_symplectic(f3, 2)));
  EXPECT_EQ(order_go(2, 4, WittType::plus), isometries_by_enumeration(standard_quadratic(f2, 4, WittType::plus)));
  EXPECT_EQ(order_go(2, 4, WittType::minus), isometries_by_enumeration(standard_quadratic(f2, 4, WittType::minus)));
  EXPECT_EQ(order_go(3, 2, WittType::plus), isometries_by_enumeration(standard_quadratic(f3, 2, WittType::plus)));
  EXPECT_EQ(order_go(3, 2, WittType::minus), isometries_by_enumeration(standard_quadratic(f3, 2, WittType::minus)));
  EXPECT_EQ(order_go(3, 3, WittType::odd), isometries_by_enumeration(standard_quadratic(f3, 3, WittType::odd)));
  EXPECT_EQ(order_su(2, 2), isometries_by_enumeration(standard_hermitian(2), true));
}

TEST(Registry, OrdersMatchKnownValues) {
  for (const auto& name : registry_names()) {
    const NamedGroup& g = named_group(name);
    EXPECT_EQ(g.group.order(), known_orders().at(name)) << name;
    EXPECT_EQ(g.group.order(), g.oracle_order) << name;
  }
  EXPECT_THROW(named_group("Sp8_2"), usage_error);
}

TEST(Registry, GeneratorsPreserveForms) {
  for (const auto& name : registry_names()) EXPECT_TRUE(generators_preserve_form(named_group(name))) << name;
  // and so do random elements, read back from the permutation action
  for (const auto& name : {"Sp6_2", "AutSU4_2", "GO4m_3"}) {
    const NamedGroup& g = named_group(name);
    for (const auto& p : sample(g.group, 20, 3)) EXPECT_TRUE(g.form.preserved_by(g.matrix(p))) << name;
  }
  const NamedGroup& co = named_group("CO4p_3");
  bool proper = false;
  for (const auto& x : co.block_generators()) {
    auto lambda = co.form.similitude_multiplier(x);
    ASSERT_TRUE(lambda);
    proper |= *lambda != 1;
  }
  EXPECT_TRUE(proper);
}

TEST(LinearRep, MatrixRoundTrip) {
  for (const auto& name : registry_names()) {
    const NamedGroup& g = named_group(name);
    for (const auto& gen : g.gens) EXPECT_EQ(g.matrix(g.rep.permutation(gen)), gen.at(0)) << name;
    // the action is a right action: p then q corresponds to M_p M_q
    const auto s = sample(g.group, 2, 9);
    EXPECT_EQ(g.matrix(s[0] * s[1]), g.matrix(s[0]) * g.matrix(s[1])) << name;
  }
}

TEST(LinearRep, PointEncoding) {
  LinearRep rep({{&Field::gf2(), 3}, {&Field::gf3(), 2}});
  EXPECT_EQ(rep.degree(), 7u + 8u);
  EXPECT_EQ(rep.block(0).point(unit_vec(3, 0)), 0u);
  EXPECT_EQ(rep.block(0).point(Vec{1, 1, 1}), 6u);
  EXPECT_EQ(rep.block(1).point(Vec{0, 1}), 7u + 2u);
  for (point_t p = 7; p < 15; ++p) EXPECT_EQ(rep.block(1).point(rep.block(1).vector(p)), p);
}

TEST(Gf4Helpers, RestrictionOfScalarsIsAHomomorphism) {
  const Field& f4 = Field::gf4();
  const auto& su = named_group("SU4_2");
  const auto s = sample(su.group, 6, 4);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const Matrix a = su.matrix(s[i]), b = su.matrix(s[i + 1]);
    EXPECT_EQ(restrict_scalars(a * b), restrict_scalars(a) * restrict_scalars(b));
    // conjugation by the Frobenius map applies the field automorphism entrywise
    const Matrix fr = frobenius_gf2(4);
    EXPECT_EQ(fr * restrict_scalars(a) * fr, restrict_scalars(a.conjugate()));
  }
  // scalar multiplication by w is GF(2)-linear of order 3
  Matrix w = Matrix::identity(f4, 2).scaled(2);
  const Matrix r = restrict_scalars(w);
  EXPECT_FALSE(r.is_identity());
  EXPECT_TRUE((r * r * r).is_identity());
}

TEST(Gf4Helpers, HermitianNormFormEvaluatesTheForm) {
  const Form h = standard_hermitian(4);
  const Form q = hermitian_norm_form(h);
  const Field& f2 = Field::gf2();
  std::uint64_t isotropic = 0;
  for (std::uint64_t x = 0; x < 256; ++x) {
    const Vec v = vec_decode(f2, x, 8);
    const Vec y = gf4_from_gf2(v);
    EXPECT_EQ(q.q(v), h.eval(y, y));
    isotropic += x != 0 && h.eval(y, y) == 0;
  }
  EXPECT_EQ(witt_type(q).singular_count, isotropic);
  EXPECT_EQ(witt_type(q).type, isotropic == singular_vector_count(2, 8, WittType::plus) ? WittType::plus : WittType::minus);
}

TEST(Involutions, SuzukiLabelIsAClassInvariant) {
  const NamedGroup& x = named_group("Sp6_2");
  std::mt19937_64 rng(21);
  std::set<std::string> labels;
  std::size_t found = 0;
  while (found < 40) {
    const Permutation g = x.group.random_element(rng);
    const std::uint64_t o = g.order();
    if (o % 2) continue;
    const Permutation t = g.pow(o / 2);
    const Permutation c = x.group.random_element(rng);
    const std::string l = suzuki_class(x.matrix(t), x.form);
    EXPECT_EQ(l, suzuki_class(x.matrix(t.conjugate_by(c)), x.form));
    labels.insert(l);
    ++found;
  }
  EXPECT_GE(labels.size(), 3u);
  EXPECT_THROW(suzuki_class(Matrix::identity(Field::gf2(), 6), x.form), precondition_error);
}

TEST(Census, CentralizerOrdersAgreeWithOrbitComputation) {
  const NamedGroup& x = named_group("Sp6_2");
  const Sp62Context& ctx = sp62_context(1);
  const CensusReport r = table1_census("Sp6_2", 1);
  ASSERT_EQ(r.rows.size(), 4u);
  std::uint64_t total = 0;
  for (const auto& row : r.rows) {
    const PermGroup c = centralizer_by_orbit(ctx.full, row.representative);
    EXPECT_EQ(c.order(), row.centralizer_order) << row.suzuki_name;
    EXPECT_EQ(row.class_size * row.centralizer_order, x.group.order());
    const Permutation on_v = restrict_perm(row.representative, 63);
    EXPECT_EQ(row.suzuki_name, suzuki_class(x.matrix(on_v), x.form));
    // dim C_V from the fixed points of the permutation on the 63 nonzero vectors
    EXPECT_EQ(std::uint64_t{1} << row.dim_cv, on_v.fixed_point_count() + 1);
    total += row.class_size;
  }
  // oracle: the number of involutions is the number of square roots of 1 minus one
  std::uint64_t involutions = 0;
  x.group.for_each_element([&](const Permutation& e) { involutions += !e.is_identity() && (e * e).is_identity(); });
  EXPECT_EQ(total, involutions);
}

TEST(Census, AutSu42ClassSizesSumToInvolutionCount) {
  const PermGroup& y = sp62_context(1).y;
  const CensusReport r = table1_census("AutSU4_2", 1);
  std::uint64_t total = 0;
  for (const auto& row : r.rows) {
    total += row.class_size;
    EXPECT_EQ(centralizer_bruteforce(y, row.representative).order(), row.centralizer_order);
  }
  EXPECT_EQ(total, involutions_of(y).size());
  EXPECT_TRUE(r.realizations_agree);
}

TEST(GroupTools, SetStabilizerAgreesWithFilter) {
  const NamedGroup& g = named_group("GO4p_3");
  const std::vector<point_t> set = {0, 1, 5, 9};
  const PermGroup s = set_stabilizer(g.group, {set});
  std::uint64_t brute = 0;
  const std::set<point_t> target(set.begin(), set.end());
  g.group.for_each_element([&](const Permutation& e) {
    std::set<point_t> img;
    for (point_t p : set) img.insert(e[p]);
    brute += img == target;
  });
  EXPECT_EQ(s.order(), brute);
  for (const auto& h : s.generators()) {
    std::set<point_t> img;
    for (point_t p : set) img.insert(h[p]);
    EXPECT_EQ(img, target);
  }
}

TEST(GroupTools, NormalCoreIsNormalAndContained) {
  const NamedGroup& g = named_group("GO4m_3");
  const PermGroup h = point_stabilizer(g.group, 0);
  const PermGroup k = normal_core(g.group, h);
  EXPECT_TRUE(h.contains(k));
  for (const auto& x : g.group.generators()) EXPECT_TRUE(k.same_as(conjugate_group(k, x)));
  // oracle: intersection of all conjugates of the stabilizer
  PermGroup core = h;
  for (const auto& orbit : point_orbits(g.group))
    if (std::find(orbit.begin(), orbit.end(), point_t{0}) != orbit.end())
      for (point_t p : orbit) core = intersection(core, point_stabilizer(g.group, p));
  EXPECT_EQ(core.order(), k.order());
}

TEST(Parabolics, OrdersAndContainments) {
  const Parabolics& p = natural_parabolics();
  EXPECT_EQ(p.s.order(), 512u);
  for (const PermGroup* x : {&p.x1, &p.x2, &p.x3}) {
    EXPECT_EQ(x->order(), 1536u);
    EXPECT_TRUE(x->contains(p.s));
  }
  EXPECT_TRUE(p.x12.contains(p.x1) && p.x12.contains(p.x2));
  EXPECT_TRUE(p.x13.contains(p.x1) && p.x13.contains(p.x3));
  EXPECT_TRUE(p.x23.contains(p.x2) && p.x23.contains(p.x3));
  // maximal parabolics are the stabilizers of the totally isotropic 3-, 2- and 1-spaces
  const std::uint64_t x = order_sp(2, 6);
  EXPECT_EQ(p.x12.order(), x / 135);
  EXPECT_EQ(p.x13.order(), x / 315);
  EXPECT_EQ(p.x23.order(), x / 63);
}

TEST(Sp62, ContextCombinesBothModules) {
  const Sp62Context& c = sp62_context(1);
  EXPECT_EQ(c.full.order(), order_sp(2, 6));
  EXPECT_EQ(c.u.dim, 8u);
  EXPECT_EQ(c.y.order(), 2 * order_su(2, 4));
  EXPECT_EQ(c.omega.order(), order_su(2, 4));
  for (const auto& g : sample(c.full, 5, 2)) EXPECT_TRUE(c.x->form.preserved_by(c.v_matrix(g)));
  for (const auto& g : c.y.generators()) EXPECT_TRUE(c.q_minus.preserved_by(c.v_matrix(g)));
}

TEST(ThreeElements, ClassSizesSumToElementCount) {
  const Sp62Context& c = sp62_context(1);
  const ThreeClassReport r = three_classes(c.y, [&](const Permutation& p) { return c.v_matrix(p); });
  std::uint64_t total = 0;
  for (const auto& row : r.rows) total += row.class_size;
  EXPECT_EQ(total, elements_of_order(c.y, 3).size());
  EXPECT_EQ(r.sylow3_order, prime_part(c.y.order(), 3));
}

TEST(Go4, SampleIsSeedDeterministic) {
  const GO4SampleReport a = go4_sample(5, 20), b = go4_sample(5, 20);
  EXPECT_EQ(a.sampled, 20u);
  EXPECT_EQ(a.recovered, b.recovered);
  EXPECT_EQ(a.type_matches_source, b.type_matches_source);
  EXPECT_EQ(a.recovered, a.sampled);
}
