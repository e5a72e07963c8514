#pragma once

// Arithmetic in GF(2), GF(3) and GF(4).
//
// Elements are stored as small integers 0..q-1. For GF(4) = GF(2)[w]/(w^2+w+1)
// the element a + b*w is encoded as a + 2b, so w = 2 and w^2 = w + 1 = 3.

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "forge/error.hpp"

namespace forge {

using elem_t = std::uint8_t;

class Field {
 public:
  static const Field& gf2() {
    static const Field f(2, 1);
    return f;
  }
  static const Field& gf3() {
    static const Field f(3, 1);
    return f;
  }
  static const Field& gf4() {
    static const Field f(2, 2);
    return f;
  }
  static const Field& of_order(int q) {
    switch (q) {
      case 2: return gf2();
      case 3: return gf3();
      case 4: return gf4();
      default: throw precondition_error("unsupported field order " + std::to_string(q));
    }
  }

  int characteristic() const { return p_; }
  int degree() const { return k_; }
  int order() const { return q_; }
  std::string name() const { return "GF(" + std::to_string(q_) + ")"; }

  elem_t add(elem_t a, elem_t b) const { return add_[a * 4 + b]; }
  elem_t mul(elem_t a, elem_t b) const { return mul_[a * 4 + b]; }
  elem_t neg(elem_t a) const { return neg_[a]; }
  elem_t sub(elem_t a, elem_t b) const { return add(a, neg(b)); }
  elem_t frob(elem_t a) const { return frob_[a]; }
  elem_t inv(elem_t a) const {
    if (a == 0) throw precondition_error("division by zero in field");
    return inv_[a];
  }
  elem_t div(elem_t a, elem_t b) const { return mul(a, inv(b)); }

  /// Generator of the multiplicative group (w for GF(4), -1 for GF(3)).
  elem_t primitive() const { return q_ == 2 ? 1 : 2; }

  bool operator==(const Field& o) const { return q_ == o.q_; }

 private:
  Field(int p, int k) : p_(p), k_(k), q_(k == 1 ? p : p * p) {
    for (int a = 0; a < q_; ++a) {
      for (int b = 0; b < q_; ++b) {
        if (k_ == 1) {
          add_[a * 4 + b] = static_cast<elem_t>((a + b) % p_);
          mul_[a * 4 + b] = static_cast<elem_t>((a * b) % p_);
        } else {
          // coefficient vectors (a0, a1) over GF(2), reduce with w^2 = w + 1
          int a0 = a & 1, a1 = a >> 1, b0 = b & 1, b1 = b >> 1;
          add_[a * 4 + b] = static_cast<elem_t>(a ^ b);
          int c0 = (a0 & b0) ^ (a1 & b1);
          int c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
          mul_[a * 4 + b] = static_cast<elem_t>(c0 | (c1 << 1));
        }
      }
    }
    for (int a = 0; a < q_; ++a) {
      for (int b = 0; b < q_; ++b) {
        if (add(a, b) == 0) neg_[a] = static_cast<elem_t>(b);
        if (mul(a, b) == 1) inv_[a] = static_cast<elem_t>(b);
      }
      elem_t x = 1;
      for (int i = 0; i < p_; ++i) x = mul(x, a);
      frob_[a] = a == 0 ? 0 : x;
    }
  }

  int p_, k_, q_;
  std::array<elem_t, 16> add_{}, mul_{};
  std::array<elem_t, 4> neg_{}, inv_{}, frob_{};
};

/// A field element bundled with its field; ordered by encoding.
struct FieldElement {
  const Field* field;
  elem_t value;

  FieldElement(const Field& f, int v) : field(&f), value(static_cast<elem_t>(v)) {
    if (v < 0 || v >= f.order()) throw precondition_error("element encoding out of range");
  }

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    check_same(a, b);
    return {*a.field, a.field->add(a.value, b.value)};
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    check_same(a, b);
    return {*a.field, a.field->sub(a.value, b.value)};
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    check_same(a, b);
    return {*a.field, a.field->mul(a.value, b.value)};
  }
  friend FieldElement operator/(FieldElement a, FieldElement b) {
    check_same(a, b);
    return {*a.field, a.field->div(a.value, b.value)};
  }
  FieldElement operator-() const { return {*field, field->neg(value)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field->order() == b.field->order() && a.value == b.value;
  }
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
    if (auto c = a.field->order() <=> b.field->order(); c != 0) return c;
    return a.value <=> b.value;
  }

 private:
  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (!(*a.field == *b.field)) throw dimension_error("field mismatch");
  }
};

inline FieldElement field_inv(FieldElement x) { return {*x.field, x.field->inv(x.value)}; }

/// x -> x^p. An involution on GF(4), the identity on prime fields.
inline FieldElement frobenius(FieldElement x) { return {*x.field, x.field->frob(x.value)}; }

}  // namespace forge
