#include <gtest/gtest.h>

#include <random>
#include <set>

#include "forge/perm.hpp"

using namespace forge;

namespace {

Permutation cycle(std::size_t n, std::vector<point_t> c) {
  std::vector<point_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<point_t>(i);
  for (std::size_t i = 0; i < c.size(); ++i) img[c[i]] = c[(i + 1) % c.size()];
  return Permutation(img);
}

PermGroup symmetric(std::size_t n) {
  std::vector<point_t> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<point_t>(i);
  return PermGroup(n, {cycle(n, {0, 1}), cycle(n, c)});
}

// Oracle: closure of the generators by breadth-first multiplication.
std::set<Permutation> closure(std::size_t n, const std::vector<Permutation>& gens) {
  std::set<Permutation> seen{Permutation(n)};
  std::vector<Permutation> todo{Permutation(n)};
  while (!todo.empty()) {
    Permutation x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      Permutation y = x * g;
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

std::uint64_t factorial(std::uint64_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST(Perm, CompositionAppliesLeftFirst) {
  Permutation a = cycle(3, {0, 1}), b = cycle(3, {1, 2});
  // 0 -a-> 1 -b-> 2
  EXPECT_EQ((a * b)[0], 2u);
  EXPECT_TRUE((a * a.inverse()).is_identity());
  EXPECT_EQ(cycle(5, {0, 1, 2}).order(), 3u);
  EXPECT_EQ((cycle(5, {0, 1}) * cycle(5, {2, 3, 4})).order(), 6u);
  EXPECT_THROW(Permutation(std::vector<point_t>{0, 0}), precondition_error);
}

TEST(Perm, SymmetricGroupOrders) {
  EXPECT_EQ(PermGroup(3, {cycle(3, {0, 1}), cycle(3, {0, 1, 2})}).order(), 6u);
  for (std::size_t n = 2; n <= 9; ++n) EXPECT_EQ(symmetric(n).order(), factorial(n));
  EXPECT_EQ(PermGroup::trivial(4).order(), 1u);
  EXPECT_THROW(PermGroup(3, {Permutation(4)}), dimension_error);
}

TEST(Perm, MembershipAgreesWithClosure) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 4 + rng() % 4;
    std::vector<Permutation> gens;
    for (int k = 0; k < 2; ++k) {
      std::vector<point_t> img(n);
      for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<point_t>(i);
      std::shuffle(img.begin(), img.end(), rng);
      gens.emplace_back(img);
    }
    PermGroup g(n, gens);
    auto all = closure(n, gens);
    EXPECT_EQ(g.order(), all.size());
    // every permutation of S_n: member iff in the closure
    std::vector<point_t> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<point_t>(i);
    do {
      Permutation p(img);
      ASSERT_EQ(g.contains(p), all.count(p) > 0);
    } while (std::next_permutation(img.begin(), img.end()));
    auto els = g.elements();
    EXPECT_EQ(std::set<Permutation>(els.begin(), els.end()), all);
  }
}

TEST(Perm, OrbitsAndStabilizers) {
  PermGroup s5 = symmetric(5);
  auto o = point_orbit(s5, 2);
  EXPECT_EQ(o.size(), 5u);
  for (std::size_t i = 0; i < o.size(); ++i) EXPECT_EQ(o.witness(i, s5.generators(), 5)[2], o.points[i]);
  PermGroup st = point_stabilizer(s5, 0);
  EXPECT_EQ(st.order(), 24u);
  for (const auto& g : st.generators()) EXPECT_EQ(g[0], 0u);

  PermGroup triv = PermGroup::trivial(4);
  EXPECT_EQ(point_orbit(triv, 3).size(), 1u);

  // intransitive group: <(0 1), (2 3 4)>
  PermGroup h(6, {cycle(6, {0, 1}), cycle(6, {2, 3, 4})});
  auto orbs = point_orbits(h);
  EXPECT_EQ(orbs.size(), 3u);
  EXPECT_EQ(orbs[1], (std::vector<point_t>{2, 3, 4}));

  // stabilizer of a set key under the induced action
  const auto& gens = s5.generators();
  using Key = std::uint32_t;  // bitmask of a subset of {0..4}
  auto act = [&](Key k, std::size_t i) {
    Key r = 0;
    for (point_t x = 0; x < 5; ++x)
      if ((k >> x) & 1) r |= Key{1} << gens[i][x];
    return r;
  };
  PermGroup setstab = stabilizer<Key>(s5, Key{0b00011}, act);
  EXPECT_EQ(setstab.order(), 12u);
}

TEST(Perm, ConjugacyClassesOfS5) {
  PermGroup s5 = symmetric(5);
  auto els = s5.elements();
  auto classes = class_map(s5, els);
  EXPECT_EQ(classes.size(), 7u);
  std::multiset<std::uint64_t> sizes;
  std::uint64_t sum = 0;
  for (const auto& c : classes) {
    sizes.insert(c.size);
    sum += c.size;
    EXPECT_EQ(c.members.size(), c.size);
    EXPECT_EQ(centralizer_bruteforce(s5, c.representative).order() * c.size, 120u);
    EXPECT_EQ(centralizer_by_orbit(s5, c.representative).order() * c.size, 120u);
  }
  EXPECT_EQ(sum, 120u);
  EXPECT_EQ(sizes, (std::multiset<std::uint64_t>{1, 10, 15, 20, 20, 24, 30}));
  EXPECT_EQ(conjugation_orbit(s5, s5.identity()).size(), 1u);
  EXPECT_EQ(centralizer_bruteforce(s5, s5.identity()).order(), 120u);
}

TEST(Perm, NormalizerAndSylow) {
  PermGroup s5 = symmetric(5);
  PermGroup c5(5, {cycle(5, {0, 1, 2, 3, 4})});
  EXPECT_EQ(normalizer_bruteforce(s5, c5).order(), 20u);
  EXPECT_EQ(sylow_subgroup(s5, 2).order(), 8u);
  EXPECT_EQ(sylow_subgroup(s5, 3).order(), 3u);
  EXPECT_EQ(sylow_subgroup(s5, 5).order(), 5u);
  EXPECT_EQ(sylow_subgroup(PermGroup::trivial(3), 2).order(), 1u);
  PermGroup s6 = symmetric(6);
  PermGroup p = sylow_subgroup(s6, 3);
  EXPECT_EQ(p.order(), 9u);
  EXPECT_EQ(generated_by_order_prime_to(s5, 2).order(), 60u);
  EXPECT_EQ(intersection(s5, point_stabilizer(s5, 1)).order(), 24u);
}

TEST(Perm, BsgsRoundTripAndExtension) {
  PermGroup s6 = symmetric(6);
  PermGroup again = PermGroup::from_bsgs(6, s6.base(), s6.strong_generators());
  EXPECT_EQ(again.order(), 720u);
  EXPECT_EQ(again.base(), s6.base());

  SubgroupBuilder b(6);
  EXPECT_TRUE(b.add(cycle(6, {0, 1})));
  EXPECT_FALSE(b.add(cycle(6, {0, 1})));
  EXPECT_TRUE(b.add(cycle(6, {1, 2})));
  EXPECT_EQ(b.group().order(), 6u);
  EXPECT_TRUE(b.add(cycle(6, {3, 4, 5})));
  EXPECT_EQ(b.group().order(), 18u);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) EXPECT_TRUE(s6.contains(s6.random_element(rng)));
}
