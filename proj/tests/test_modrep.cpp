#include <gtest/gtest.h>

#include <random>
#include <set>

#include "forge/matgrp.hpp"
#include "forge/modrep.hpp"

using namespace forge;

namespace {

const Field& F2 = Field::gf2();

GModule natural_sp6() { return named_group("Sp6_2").module(); }

// Oracle: fixed vectors by enumeration.
std::size_t fixed_count(const Field& f, std::size_t n, const std::vector<Matrix>& mats) {
  std::size_t c = 0;
  for (std::uint64_t x = 0; x < space_size(f, n); ++x) {
    Vec v = vec_decode(f, x, n);
    bool fixed = true;
    for (const auto& g : mats)
      if (vec_mul(v, g) != v) fixed = false;
    c += fixed;
  }
  return c;
}

// Sym(3) permuting the coordinates of GF(2)^3.
GModule sym3_permutation_module() {
  Matrix a = Matrix::from_rows(F2, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, 3);
  Matrix b = Matrix::from_rows(F2, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, 3);
  return GModule("S3", F2, 3, {a, b});
}

}  // namespace

TEST(ModRep, ConstructionsHaveExpectedDimensions) {
  const GModule v = natural_sp6();
  EXPECT_EQ(exterior_power(v, 2).dim, 15u);
  EXPECT_EQ(exterior_power(v, 3).dim, 20u);
  EXPECT_EQ(tensor(v, v).dim, 36u);
  EXPECT_EQ(direct_sum(v, v).dim, 12u);
  EXPECT_EQ(k_subsets(6, 3).size(), 20u);
  EXPECT_THROW(exterior_power(v, 7), precondition_error);
}

TEST(ModRep, ConstructionsAreFunctorial) {
  // the construction of a product is the product of the constructions
  const GModule v = natural_sp6();
  const Matrix &g = v.gens[0], &h = v.gens[5];
  GModule pair("pair", F2, 6, {g, h, g * h});
  for (const GModule& m : {exterior_power(pair, 2), exterior_power(pair, 3), tensor(pair, pair), dual(pair)})
    EXPECT_EQ(m.gens[0] * m.gens[1], m.gens[2]);
}

TEST(ModRep, TrivialAndDualIdentities) {
  const GModule v = natural_sp6();
  const GModule t = tensor(v, trivial_module(v.owner, F2, v.ngens()));
  EXPECT_EQ(t.gens, v.gens);
  EXPECT_EQ(dual(dual(v)).gens, v.gens);
  EXPECT_THROW(tensor(v, trivial_module("other", F2, v.ngens())), precondition_error);
}

TEST(ModRep, SpinningNaturalAndOrthogonalModules) {
  const GModule v = natural_sp6();
  EXPECT_TRUE(spin_submodule(v, {unit_vec(6, 0)}).is_full());
  const GModule w = named_group("O7_2").module();
  const Subspace s = spin_submodule(w, {unit_vec(7, 6)});
  EXPECT_EQ(s.dim(), 1u);
  EXPECT_TRUE(is_submodule(w, s));
  EXPECT_EQ(spin_submodule(w, {unit_vec(7, 0)}).dim(), 7u);
}

TEST(ModRep, ChopSmallPermutationModule) {
  std::mt19937_64 rng(5);
  const auto cs = chop(sym3_permutation_module(), rng);
  EXPECT_EQ(cs.sorted_dims(), (std::vector<std::size_t>{1, 2}));
  for (const auto& f : cs.factors) EXPECT_TRUE(is_irreducible(f, rng));
}

TEST(ModRep, ChopDirectSumAndExteriorCube) {
  const GModule v = natural_sp6();
  std::mt19937_64 rng(1);
  EXPECT_TRUE(is_irreducible(v, rng));
  EXPECT_FALSE(is_irreducible(direct_sum(v, v), rng));
  EXPECT_EQ(chop(direct_sum(v, v), rng).sorted_dims(), (std::vector<std::size_t>{6, 6}));
  const GModule e3 = exterior_power(v, 3);
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    std::mt19937_64 r(seed);
    const auto cs = chop(e3, r);
    EXPECT_EQ(cs.sorted_dims(), (std::vector<std::size_t>{6, 6, 8})) << "seed " << seed;
    // every flag member is a submodule
    for (const auto& w : cs.flag) EXPECT_TRUE(is_submodule(e3, w));
  }
}

TEST(ModRep, SpinModuleSearch) {
  std::mt19937_64 rng(11);
  const auto found = find_spin_module(natural_sp6(), rng);
  ASSERT_TRUE(found);
  EXPECT_EQ(found->module.dim, 8u);
  std::mt19937_64 r2(12);
  EXPECT_TRUE(is_irreducible(found->module, r2));
  std::size_t total = 0;
  for (auto d : found->source_factor_dims) total += d;
  EXPECT_GT(total, 8u);
}

TEST(ModRep, FixedPointsAgreeWithEnumeration) {
  const GModule v = natural_sp6();
  EXPECT_EQ(fixed_points(v, v.gens).dim(), 0u);
  const std::vector<Matrix> some(v.gens.begin(), v.gens.begin() + 3);
  EXPECT_EQ(std::size_t{1} << fixed_points(F2, 6, some).dim(), fixed_count(F2, 6, some));
  const GModule w = named_group("O7_2").module();
  EXPECT_EQ(fixed_points(w, w.gens), Subspace::span(F2, 7, {unit_vec(7, 6)}));
  EXPECT_EQ(fixed_count(F2, 7, w.gens), 2u);
}

TEST(ModRep, OffendersAgreeWithBruteForce) {
  // upper unitriangular subgroup of GL3(2) on its natural module
  LinearRep rep({{&F2, 3}});
  const Matrix a = Matrix::from_rows(F2, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, 3);
  const Matrix b = Matrix::from_rows(F2, {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}, 3);
  const PermGroup u(7, {rep.permutation({a}), rep.permutation({b})});
  ASSERT_EQ(u.order(), 8u);
  const SmallGroupTable t(u);
  auto act = [&](const Permutation& p) { return rep.matrix(p, 0); };
  const auto offenders = offender_search(t, F2, 3, act);
  std::size_t expected = 0;
  for (const auto& e : t.elementary_abelian_subgroups(t.all(), 2)) {
    if (e.count() == 1) continue;
    std::vector<Matrix> m;
    for (std::size_t x : e.indices()) m.push_back(act(t.element(x)));
    const std::size_t index = 8 / fixed_count(F2, 3, m);
    if (index <= e.count()) ++expected;
  }
  EXPECT_EQ(offenders.size(), expected);
  EXPECT_GT(expected, 0u);
  for (const auto& o : offenders) EXPECT_LE(o.codim, static_cast<std::size_t>(std::countr_zero(o.order)));
}
