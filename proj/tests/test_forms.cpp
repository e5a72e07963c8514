#include <gtest/gtest.h>

#include <map>
#include <random>

#include "forge/forms.hpp"

using namespace forge;

namespace {

const Field& F2 = Field::gf2();
const Field& F3 = Field::gf3();

Form quad(const Field& f, std::size_t n, std::vector<std::tuple<std::size_t, std::size_t, int>> terms) {
  Matrix c(f, n, n);
  for (auto [i, j, a] : terms) c(i, j) = static_cast<elem_t>(a);
  return Form::quadratic(c);
}

// Oracle: direct evaluation of the polarization identity.
elem_t polar_by_definition(const Form& q, const Vec& x, const Vec& y) {
  const Field& f = q.field();
  return f.sub(f.sub(q.q(vec_add(f, x, y)), q.q(x)), q.q(y));
}

std::uint64_t count_singular(const Form& q) {
  std::uint64_t c = 0;
  for (std::uint64_t x = 1; x < space_size(q.field(), q.dim()); ++x)
    c += q.q(vec_decode(q.field(), x, q.dim())) == 0;
  return c;
}

}  // namespace

TEST(Forms, PolarizationExamples) {
  Form q = quad(F2, 2, {{0, 1, 1}});
  EXPECT_EQ(polarize(q).eval({1, 0}, {0, 1}), 1);
  Form sq = quad(F2, 1, {{0, 0, 1}});
  EXPECT_EQ(polarize(sq).eval({1}, {1}), 0);
  Form g3 = quad(F3, 2, {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  EXPECT_EQ(polarize(g3).eval({1, 0}, {0, 1}), 1);
  EXPECT_THROW(polarize(standard_symplectic(F2, 2)), precondition_error);
}

TEST(Forms, PolarizationIdentityExhaustive) {
  std::mt19937_64 rng(17);
  for (const Field* f : {&F2, &F3, &Field::gf4()}) {
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = 1 + rng() % 4;
      Matrix c(*f, n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c(i, j) = static_cast<elem_t>(rng() % f->order());
      Form q = Form::quadratic(c);
      Form b = polarize(q);
      if (f->characteristic() == 2) {
        EXPECT_TRUE(b.is_alternating());
      }
      EXPECT_EQ(b.gram(), b.gram().transpose());
      const std::uint64_t total = space_size(*f, n);
      for (std::uint64_t x = 0; x < total; ++x)
        for (std::uint64_t y = 0; y < total; ++y) {
          Vec vx = vec_decode(*f, x, n), vy = vec_decode(*f, y, n);
          ASSERT_EQ(b.eval(vx, vy), polar_by_definition(q, vx, vy));
        }
    }
  }
}

TEST(Forms, WittTypeExamples) {
  auto plus = witt_type(quad(F2, 4, {{0, 1, 1}, {2, 3, 1}}));
  EXPECT_EQ(plus.type, WittType::plus);
  EXPECT_EQ(plus.singular_count, 9u);
  auto minus = witt_type(quad(F2, 4, {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}, {2, 3, 1}}));
  EXPECT_EQ(minus.type, WittType::minus);
  EXPECT_EQ(minus.singular_count, 5u);
  auto h3 = witt_type(standard_quadratic(F3, 4, WittType::plus));
  EXPECT_EQ(h3.type, WittType::plus);
  EXPECT_EQ(h3.singular_count, 32u);
  auto o7 = witt_type(standard_quadratic(F2, 7, WittType::odd));
  EXPECT_EQ(o7.type, WittType::odd);
  EXPECT_TRUE(o7.radical.is_zero());
  // x0 x1 on GF(2)^3 has radical <e2> and nondegenerate quotient of plus type
  auto deg = witt_type(quad(F2, 3, {{0, 1, 1}}));
  EXPECT_EQ(deg.type, WittType::plus);
  EXPECT_EQ(deg.radical.dim(), 1u);
  // x0^2 on GF(2)^3: the polar radical is everything, its singular part is x0 = 0
  auto sq = witt_type(quad(F2, 3, {{0, 0, 1}}));
  EXPECT_EQ(sq.type, WittType::odd);
  EXPECT_EQ(sq.radical.dim(), 2u);
  EXPECT_THROW(witt_type(Form::bilinear(Matrix::identity(F2, 2))), precondition_error);
}

TEST(Forms, StandardFormsHaveDeclaredType) {
  for (const Field* f : {&F2, &F3, &Field::gf4()}) {
    for (std::size_t n : {2u, 4u, 6u}) {
      if (f->order() == 4 && n > 4) continue;
      for (WittType t : {WittType::plus, WittType::minus}) {
        Form q = standard_quadratic(*f, n, t);
        EXPECT_TRUE(q.is_nondegenerate());
        auto w = witt_type(q);
        EXPECT_EQ(w.type, t);
        EXPECT_EQ(w.singular_count, count_singular(q));
      }
    }
  }
}

TEST(Forms, WittTypeInvariantUnderIsometries) {
  std::mt19937_64 rng(23);
  for (WittType t : {WittType::plus, WittType::minus}) {
    Form q = standard_quadratic(F3, 4, t);
    auto gens = isometry_generators(q);
    for (int k = 0; k < 100; ++k) {
      Matrix g = Matrix::identity(F3, 4);
      for (int s = 0; s < 12; ++s) g = g * gens[rng() % gens.size()];
      Form moved = q.transformed(g);
      EXPECT_TRUE(moved.same_as(q));
      EXPECT_EQ(witt_type(moved).type, t);
    }
  }
}

TEST(Forms, Gf3PointCensus) {
  Form q = standard_quadratic(F3, 4, WittType::plus);
  EXPECT_EQ(point_type(q, unit_vec(4, 0)), PointType::singular);
  EXPECT_EQ(point_type(q, {1, 1, 0, 0}), PointType::plus);
  EXPECT_THROW(point_type(q, {0, 0, 0, 0}), precondition_error);
  auto c = point_census(q, Subspace::full(F3, 4));
  EXPECT_EQ(c.n_singular, 16u);
  EXPECT_EQ(c.n_plus, 12u);
  EXPECT_EQ(c.n_minus, 12u);
  EXPECT_EQ(c.total(), 40u);
}

TEST(Forms, TwoSpaceTaxonomy) {
  Form q = standard_quadratic(F3, 4, WittType::plus);
  EXPECT_EQ(subspace_type_2dim(q, Subspace::span(F3, 4, {unit_vec(4, 0), unit_vec(4, 2)})), TwoSpaceType::S);
  EXPECT_THROW(subspace_type_2dim(q, Subspace::full(F3, 4)), dimension_error);
  auto twos = all_subspaces(F3, 4, 2);
  ASSERT_EQ(twos.size(), 130u);
  std::map<TwoSpaceType, int> counts;
  std::optional<Subspace> first_nminus;
  for (const auto& e : twos) {
    TwoSpaceType t = subspace_type_2dim(q, e);
    ++counts[t];
    if (t == TwoSpaceType::Nminus && !first_nminus) first_nminus = e;
  }
  int sum = 0;
  for (auto& [t, n] : counts) sum += n;
  EXPECT_EQ(sum, 130);
  ASSERT_TRUE(first_nminus.has_value());
  // regression fixture: the first N- 2-space in enumeration order
  EXPECT_EQ(first_nminus->basis(), (std::vector<Vec>{{1, 0, 1, 1}, {0, 1, 1, 1}}));
  for (const auto& v : projective_points(*first_nminus)) EXPECT_NE(q.q(v), 0);

  // type counts are preserved by the isometry group
  auto gens = isometry_generators(q);
  for (const auto& g : gens) {
    std::map<TwoSpaceType, int> moved;
    for (const auto& e : twos) ++moved[subspace_type_2dim(q, e.image(g))];
    EXPECT_EQ(moved, counts);
  }
}

TEST(Forms, EveryHyperplaneHasSingularPoint) {
  Form q = standard_quadratic(F3, 4, WittType::plus);
  auto v = singular_point_in_hyperplane(q, Subspace::span(F3, 4, {unit_vec(4, 0), unit_vec(4, 1), unit_vec(4, 2)}));
  ASSERT_TRUE(v);
  EXPECT_EQ(*v, unit_vec(4, 0));
  auto threes = all_subspaces(F3, 4, 3);
  ASSERT_EQ(threes.size(), 40u);
  for (const auto& x : threes) {
    auto s = singular_point_in_hyperplane(q, x);
    ASSERT_TRUE(s);
    EXPECT_TRUE(x.contains(*s));
    EXPECT_EQ(q.q(*s), 0);
  }
}

TEST(Forms, IsometryGeneratorsPreserveForms) {
  std::vector<Form> forms = {standard_symplectic(F2, 6), standard_quadratic(F3, 4, WittType::plus),
                             standard_quadratic(F3, 4, WittType::minus), standard_quadratic(F2, 6, WittType::minus),
                             standard_quadratic(F2, 7, WittType::odd), standard_hermitian(4)};
  for (const auto& f : forms) {
    auto gens = isometry_generators(f);
    EXPECT_FALSE(gens.empty());
    for (const auto& g : gens) EXPECT_TRUE(f.preserved_by(g));
  }
  Matrix deg(F2, 2, 2);
  EXPECT_THROW(isometry_generators(Form::bilinear(deg)), precondition_error);
}

TEST(Forms, SimilitudeHasNonSquareMultiplier) {
  Form q = standard_quadratic(F3, 4, WittType::plus);
  Matrix d = diagonal_similitude(q);
  auto lam = q.similitude_multiplier(d);
  ASSERT_TRUE(lam);
  EXPECT_EQ(*lam, 2);
  EXPECT_FALSE(q.preserved_by(d));
}

TEST(Forms, HermitianForm) {
  Form h = standard_hermitian(4);
  const Field& f = Field::gf4();
  for (std::uint64_t x = 0; x < 256; x += 7)
    for (std::uint64_t y = 0; y < 256; y += 5) {
      Vec vx = vec_decode(f, x, 4), vy = vec_decode(f, y, 4);
      EXPECT_EQ(h.eval(vx, vy), f.frob(h.eval(vy, vx)));
    }
  Matrix bad = Matrix::identity(f, 2);
  bad(0, 1) = 2;
  EXPECT_THROW(Form::hermitian(bad), precondition_error);
}

TEST(Forms, RecoverInvariantFormRejectsBadPairs) {
  Matrix one = Matrix::identity(F3, 4);
  EXPECT_THROW(recover_invariant_form(one, one, unit_vec(4, 0)), precondition_error);
  EXPECT_EQ(quadratic_monomials(4).size(), 10u);
  // the pullback along the identity is the identity
  EXPECT_TRUE(pullback_matrix(one).is_identity());
}
