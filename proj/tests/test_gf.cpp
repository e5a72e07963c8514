#include <gtest/gtest.h>

#include "forge/gf.hpp"

using namespace forge;

namespace {

const Field* all_fields[] = {&Field::gf2(), &Field::gf3(), &Field::gf4()};

// GF(4) oracle: polynomials over GF(2) modulo x^2+x+1, with a+bx encoded as a+2b.
int poly_mul_mod(int a, int b) {
  int prod = 0;
  for (int i = 0; i < 2; ++i)
    if ((b >> i) & 1) prod ^= a << i;
  if (prod & 4) prod ^= 0b111;
  return prod;
}

}  // namespace

TEST(Gf, AxiomsHoldExhaustively) {
  for (const Field* f : all_fields) {
    const int q = f->order();
    for (int a = 0; a < q; ++a) {
      EXPECT_EQ(f->add(a, 0), a);
      EXPECT_EQ(f->mul(a, 1), a);
      EXPECT_EQ(f->add(a, f->neg(a)), 0);
      if (a) EXPECT_EQ(f->mul(a, f->inv(a)), 1);
      for (int b = 0; b < q; ++b) {
        EXPECT_EQ(f->add(a, b), f->add(b, a));
        EXPECT_EQ(f->mul(a, b), f->mul(b, a));
        for (int c = 0; c < q; ++c) {
          EXPECT_EQ(f->add(f->add(a, b), c), f->add(a, f->add(b, c)));
          EXPECT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
          EXPECT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
        }
      }
    }
  }
}

TEST(Gf, Gf4MatchesPolynomialOracle) {
  const Field& f = Field::gf4();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      EXPECT_EQ(f.mul(a, b), poly_mul_mod(a, b));
      EXPECT_EQ(f.add(a, b), a ^ b);
    }
  // w^2 = w + 1
  EXPECT_EQ(f.mul(2, 2), 3);
}

TEST(Gf, Inverses) {
  EXPECT_EQ(field_inv(FieldElement(Field::gf3(), 2)).value, 2);
  EXPECT_EQ(field_inv(FieldElement(Field::gf2(), 1)).value, 1);
  EXPECT_EQ(field_inv(FieldElement(Field::gf4(), 2)).value, 3);
  EXPECT_THROW(field_inv(FieldElement(Field::gf3(), 0)), precondition_error);
  try {
    field_inv(FieldElement(Field::gf4(), 0));
  } catch (const error& e) {
    EXPECT_STREQ(e.what(), "division by zero in field");
  }
}

TEST(Gf, Frobenius) {
  for (int x = 0; x < 2; ++x) EXPECT_EQ(frobenius(FieldElement(Field::gf2(), x)).value, x);
  EXPECT_EQ(frobenius(FieldElement(Field::gf4(), 2)).value, 3);
  for (const Field* f : all_fields) {
    EXPECT_EQ(f->frob(0), 0);
    for (int a = 0; a < f->order(); ++a) {
      for (int b = 0; b < f->order(); ++b) {
        EXPECT_EQ(f->frob(f->add(a, b)), f->add(f->frob(a), f->frob(b)));
        EXPECT_EQ(f->frob(f->mul(a, b)), f->mul(f->frob(a), f->frob(b)));
      }
    }
  }
  for (int a = 0; a < 4; ++a) EXPECT_EQ(Field::gf4().frob(Field::gf4().frob(a)), a);
}

TEST(Gf, ElementOperatorsAndOrdering) {
  const Field& f = Field::gf4();
  FieldElement w(f, 2), one(f, 1);
  EXPECT_EQ((w * w).value, (w + one).value);
  EXPECT_EQ((w / w).value, 1);
  EXPECT_EQ((-w).value, 2);
  EXPECT_LT(one, w);
  EXPECT_THROW(FieldElement(f, 4), precondition_error);
  EXPECT_THROW(FieldElement(Field::gf2(), 1) + FieldElement(Field::gf3(), 1), dimension_error);
  EXPECT_THROW(Field::of_order(5), precondition_error);
}
