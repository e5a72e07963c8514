#include <gtest/gtest.h>

#include <map>

#include "forge/smallgroup.hpp"

using namespace forge;

namespace {

Permutation from_cycles(std::size_t n, const std::vector<std::vector<point_t>>& cycles) {
  std::vector<point_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<point_t>(i);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) img[c[i]] = c[(i + 1) % c.size()];
  return Permutation(img);
}

PermGroup dihedral8() { return PermGroup(4, {from_cycles(4, {{0, 1, 2, 3}}), from_cycles(4, {{1, 3}})}); }

PermGroup quaternion8() {
  return PermGroup(8, {from_cycles(8, {{0, 1, 3, 6}, {2, 5, 7, 4}}), from_cycles(8, {{0, 2, 3, 7}, {1, 4, 6, 5}})});
}

PermGroup symmetric(std::size_t n) {
  std::vector<point_t> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<point_t>(i);
  return PermGroup(n, {from_cycles(n, {{0, 1}}), from_cycles(n, {c})});
}

// Oracle: every subset closed under multiplication, for groups of order <= 16
// via generation by pairs (every subgroup of these groups is 2-generated).
std::set<BitSet> subgroups_by_pairs(const SmallGroupTable& t) {
  std::set<BitSet> out;
  for (std::size_t a = 0; a < t.order(); ++a)
    for (std::size_t b = a; b < t.order(); ++b) out.insert(t.closure({a, b}));
  return out;
}

}  // namespace

TEST(SmallGroup, TableIsAGroup) {
  SmallGroupTable t(dihedral8());
  EXPECT_EQ(t.order(), 8u);
  EXPECT_TRUE(t.is_subgroup(t.all()));
  for (std::size_t a = 0; a < 8; ++a) {
    EXPECT_EQ(t.mul(a, t.inv(a)), t.identity());
    for (std::size_t b = 0; b < 8; ++b)
      for (std::size_t c = 0; c < 8; ++c) EXPECT_EQ(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
  }
}

TEST(SmallGroup, Dihedral8Lattice) {
  SmallGroupTable t(dihedral8());
  auto subs = t.subgroups(t.all(), 2);
  EXPECT_EQ(subs.size(), 10u);
  auto oracle = subgroups_by_pairs(t);
  EXPECT_EQ(std::set<BitSet>(subs.begin(), subs.end()), oracle);
  EXPECT_EQ(t.center(t.all()).count(), 2u);
  EXPECT_EQ(t.derived(t.all()).count(), 2u);
  EXPECT_EQ(t.frattini(t.all(), 2).count(), 2u);
  EXPECT_EQ(t.exponent(t.all()), 4u);
  EXPECT_EQ(t.maximal_subgroups(t.all(), 2).size(), 3u);
  auto ea = t.elementary_abelian_subgroups(t.all(), 2);
  std::map<std::size_t, int> by_order;
  for (const auto& e : ea) ++by_order[e.count()];
  EXPECT_EQ(by_order[2], 5);
  EXPECT_EQ(by_order[4], 2);
}

TEST(SmallGroup, QuaternionHasOneElementaryAbelian) {
  SmallGroupTable t(quaternion8());
  auto ea = t.elementary_abelian_subgroups(t.all(), 2);
  ASSERT_EQ(ea.size(), 1u);
  EXPECT_EQ(ea[0], t.center(t.all()));
  auto subs = t.subgroups(t.all(), 2);
  EXPECT_EQ(subs.size(), 6u);
  EXPECT_EQ(std::set<BitSet>(subs.begin(), subs.end()), subgroups_by_pairs(t));
}

TEST(SmallGroup, SubgroupCountsAreOneModP) {
  // in a p-group the number of subgroups of each order p^k is 1 mod p
  for (std::uint32_t p : {2u, 3u}) {
    PermGroup syl = sylow_subgroup(symmetric(p == 2 ? 8 : 9), p);
    SmallGroupTable t(syl);
    auto subs = t.subgroups(t.all(), p);
    std::map<std::size_t, std::size_t> by_order;
    for (const auto& s : subs) {
      EXPECT_TRUE(t.is_subgroup(s));
      ++by_order[s.count()];
    }
    for (auto [o, c] : by_order) EXPECT_EQ(c % p, 1u) << "order " << o;
    auto ea = t.elementary_abelian_subgroups(t.all(), p);
    std::map<std::size_t, std::size_t> ea_by_order;
    for (const auto& e : ea) {
      EXPECT_TRUE(t.is_elementary_abelian(e, p));
      ++ea_by_order[e.count()];
    }
    EXPECT_EQ(ea_by_order[p], by_order[p]);
    // cross-check: filter of the full lattice
    std::size_t filtered = 0;
    for (const auto& s : subs)
      if (s.count() > 1 && t.is_elementary_abelian(s, p)) ++filtered;
    EXPECT_EQ(filtered, ea.size());
  }
}

TEST(SmallGroup, ConversionRoundTrip) {
  PermGroup d = dihedral8();
  SmallGroupTable t(d);
  BitSet all = t.from_group(d);
  EXPECT_EQ(all.count(), 8u);
  EXPECT_EQ(t.to_group(t.center(all)).order(), 2u);
  EXPECT_THROW(SmallGroupTable(symmetric(7)), resource_error);
}
