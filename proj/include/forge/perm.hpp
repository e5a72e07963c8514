#pragma once

// Permutation groups: deterministic Schreier-Sims, orbits with Schreier
// vectors, stabilizers, conjugacy-class orbits, brute-force centralizers and
// normalizers, and Sylow subgroups by normalizer climbing.
//
// Permutations act on the right: (a * b)[x] = b[a[x]], i.e. apply a then b.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forge/error.hpp"

namespace forge {

using point_t = std::uint32_t;

/// Largest group the brute-force element traversals will walk.
inline constexpr std::uint64_t kEnumerationBudget = 2'000'000;
/// Largest orbit the orbit/stabilizer routines will build.
inline constexpr std::size_t kOrbitBudget = 1'000'000;

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree) : img_(degree) { std::iota(img_.begin(), img_.end(), point_t{0}); }
  explicit Permutation(std::vector<point_t> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (point_t x : img_) {
      if (x >= img_.size() || seen[x]) throw precondition_error("image array is not a bijection");
      seen[x] = true;
    }
  }

  std::size_t degree() const { return img_.size(); }
  point_t operator[](std::size_t i) const { return img_[i]; }
  const std::vector<point_t>& images() const { return img_; }

  Permutation operator*(const Permutation& o) const {
    if (degree() != o.degree()) throw dimension_error("permutation degree mismatch");
    Permutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[i] = o.img_[img_[i]];
    return r;
  }
  Permutation inverse() const {
    Permutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<point_t>(i);
    return r;
  }
  /// this^g = g^-1 * this * g
  Permutation conjugate_by(const Permutation& g) const { return g.inverse() * *this * g; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }
  Permutation pow(std::uint64_t k) const {
    Permutation r(degree()), b = *this;
    while (k) {
      if (k & 1) r = r * b;
      b = b * b;
      k >>= 1;
    }
    return r;
  }
  std::uint64_t order() const {
    std::uint64_t o = 1;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      for (std::size_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        ++len;
      }
      o = std::lcm(o, len);
    }
    return o;
  }
  std::size_t fixed_point_count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < img_.size(); ++i) c += img_[i] == i;
    return c;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<point_t> img_;
};

struct PermHash {
  std::size_t operator()(const Permutation& p) const {
    std::uint64_t h = 1469598103934665603ull;
    for (point_t x : p.images()) h = (h ^ x) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

/// Permutation group with a base and strong generating set.
class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(std::size_t degree, std::vector<Permutation> gens) : degree_(degree) {
    for (auto& g : gens) {
      if (g.degree() != degree) throw dimension_error("generator degree mismatch");
      if (!g.is_identity()) gens_.push_back(std::move(g));
    }
    schreier_sims({}, gens_);
  }

  /// Rebuild from a stored base and strong generating set (the algorithm re-verifies it).
  static PermGroup from_bsgs(std::size_t degree, const std::vector<point_t>& base, std::vector<Permutation> sgs) {
    PermGroup g;
    g.degree_ = degree;
    for (auto& s : sgs) {
      if (s.degree() != degree) throw dimension_error("generator degree mismatch");
      if (!s.is_identity()) g.gens_.push_back(s);
    }
    g.schreier_sims(base, g.gens_);
    return g;
  }

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  const std::vector<Permutation>& strong_generators() const { return sgs_; }
  std::vector<point_t> base() const {
    std::vector<point_t> b;
    for (const auto& l : levels_) b.push_back(l.point);
    return b;
  }
  std::size_t base_length() const { return levels_.size(); }
  const std::vector<point_t>& fundamental_orbit(std::size_t level) const { return levels_[level].orbit; }
  /// transversal(l)[i] maps the l-th base point to fundamental_orbit(l)[i].
  const std::vector<Permutation>& transversal(std::size_t level) const { return levels_[level].reps; }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& l : levels_) o *= l.orbit.size();
    return o;
  }
  bool is_trivial() const { return levels_.empty(); }
  Permutation identity() const { return Permutation(degree_); }

  /// Sift g through the chain; returns the residue and the level where it stopped.
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from = 0) const {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      const Level& lv = levels_[l];
      point_t b = g[lv.point];
      if (lv.where[b] < 0) return {std::move(g), l};
      g = g * lv.inv_reps[static_cast<std::size_t>(lv.where[b])];
    }
    return {std::move(g), levels_.size()};
  }
  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) return false;
    auto [r, l] = sift(g);
    return l == levels_.size() && r.is_identity();
  }
  bool contains(const PermGroup& h) const {
    return std::all_of(h.gens_.begin(), h.gens_.end(), [&](const Permutation& g) { return contains(g); });
  }
  bool same_as(const PermGroup& h) const { return order() == h.order() && contains(h); }

  /// Adds g to the generators if it is not already a member. Returns true if the group grew.
  bool extend(const Permutation& g) {
    if (g.degree() != degree_) throw dimension_error("generator degree mismatch");
    if (contains(g)) return false;
    gens_.push_back(g);
    std::vector<point_t> b = base();
    std::vector<Permutation> s = sgs_;
    s.push_back(g);
    schreier_sims(b, s);
    return true;
  }

  /// Visit every element exactly once, in a deterministic order.
  template <class F>
  void for_each_element(F&& visit) const {
    if (order() > kEnumerationBudget) throw resource_error("group order exceeds enumeration budget");
    if (levels_.empty()) {
      visit(identity());
      return;
    }
    walk(levels_.size(), identity(), visit);
  }
  std::vector<Permutation> elements() const {
    std::vector<Permutation> out;
    out.reserve(order());
    for_each_element([&](const Permutation& g) { out.push_back(g); });
    return out;
  }

  template <class Rng>
  Permutation random_element(Rng& rng) const {
    Permutation g = identity();
    for (std::size_t l = levels_.size(); l-- > 0;) {
      std::uniform_int_distribution<std::size_t> d(0, levels_[l].reps.size() - 1);
      g = g * levels_[l].reps[d(rng)];
    }
    return g;
  }

 private:
  struct Level {
    point_t point;
    std::vector<std::size_t> gens;     // indices into sgs_
    std::vector<point_t> orbit;
    std::vector<std::int32_t> where;   // point -> index into reps, -1 if outside orbit
    std::vector<Permutation> reps;     // reps[i] maps point to orbit[i]
    std::vector<Permutation> inv_reps;
  };

  template <class F>
  void walk(std::size_t level, const Permutation& prefix, F& visit) const {
    const Level& lv = levels_[level - 1];
    for (const auto& u : lv.reps) {
      Permutation g = prefix * u;
      if (level == 1)
        visit(g);
      else
        walk(level - 1, g, visit);
    }
  }

  static point_t pick_point(const Permutation& g) {
    // smallest point of the longest cycle
    std::vector<bool> seen(g.degree(), false);
    std::size_t best_len = 0;
    point_t best = 0;
    for (std::size_t i = 0; i < g.degree(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = g[j]) {
        seen[j] = true;
        ++len;
      }
      if (len > best_len) {
        best_len = len;
        best = static_cast<point_t>(i);
      }
    }
    return best;
  }

  point_t largest_orbit_point(const std::vector<Permutation>& gens) const {
    std::vector<bool> seen(degree_, false);
    std::size_t best_len = 0;
    point_t best = 0;
    for (std::size_t i = 0; i < degree_; ++i) {
      if (seen[i]) continue;
      std::vector<point_t> orb{static_cast<point_t>(i)};
      seen[i] = true;
      for (std::size_t k = 0; k < orb.size(); ++k)
        for (const auto& g : gens) {
          point_t y = g[orb[k]];
          if (!seen[y]) {
            seen[y] = true;
            orb.push_back(y);
          }
        }
      if (orb.size() > best_len) {
        best_len = orb.size();
        best = static_cast<point_t>(i);
      }
    }
    return best;
  }

  void add_level(point_t p) {
    Level lv;
    lv.point = p;
    levels_.push_back(std::move(lv));
  }

  void rebuild_orbit(std::size_t l) {
    Level& lv = levels_[l];
    lv.orbit.assign(1, lv.point);
    lv.where.assign(degree_, -1);
    lv.reps.assign(1, identity());
    lv.inv_reps.assign(1, identity());
    lv.where[lv.point] = 0;
    for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
      for (std::size_t gi : lv.gens) {
        const Permutation& s = sgs_[gi];
        point_t y = s[lv.orbit[k]];
        if (lv.where[y] >= 0) continue;
        lv.where[y] = static_cast<std::int32_t>(lv.orbit.size());
        lv.orbit.push_back(y);
        Permutation u = lv.reps[k] * s;
        lv.inv_reps.push_back(u.inverse());
        lv.reps.push_back(std::move(u));
      }
    }
  }

  bool fixes_base_prefix(const Permutation& s, std::size_t l) const {
    for (std::size_t i = 0; i < l; ++i)
      if (s[levels_[i].point] != levels_[i].point) return false;
    return true;
  }

  void schreier_sims(const std::vector<point_t>& initial_base, const std::vector<Permutation>& initial_sgs) {
    levels_.clear();
    sgs_.clear();
    for (const auto& s : initial_sgs)
      if (!s.is_identity()) sgs_.push_back(s);
    if (sgs_.empty()) return;
    for (point_t b : initial_base) add_level(b);
    if (levels_.empty()) add_level(largest_orbit_point(sgs_));
    for (const auto& s : sgs_)
      if (fixes_base_prefix(s, levels_.size())) add_level(pick_point(s));
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      for (std::size_t i = 0; i < sgs_.size(); ++i)
        if (fixes_base_prefix(sgs_[i], l)) levels_[l].gens.push_back(i);
      rebuild_orbit(l);
    }
    std::size_t i = levels_.size();
    while (i-- > 0) {
      bool complete = true;
      for (std::size_t k = 0; k < levels_[i].orbit.size() && complete; ++k) {
        for (std::size_t gi = 0; gi < levels_[i].gens.size(); ++gi) {
          const Level& lv = levels_[i];
          const Permutation& s = sgs_[lv.gens[gi]];
          point_t y = s[lv.orbit[k]];
          Permutation h = lv.reps[k] * s * lv.inv_reps[static_cast<std::size_t>(lv.where[y])];
          if (h.is_identity()) continue;
          auto [r, j] = sift(std::move(h), i + 1);
          if (j == levels_.size() && r.is_identity()) continue;
          complete = false;
          if (j == levels_.size()) add_level(pick_point(r));
          sgs_.push_back(r);
          for (std::size_t l = i + 1; l <= j; ++l) {
            levels_[l].gens.push_back(sgs_.size() - 1);
            rebuild_orbit(l);
          }
          i = j + 1;  // the loop decrement resumes at level j
          break;
        }
      }
    }
  }

  std::size_t degree_ = 0;
  std::vector<Permutation> gens_;
  std::vector<Permutation> sgs_;
  std::vector<Level> levels_;
};

/// Smallest subgroup containing the generators added so far; members are skipped.
class SubgroupBuilder {
 public:
  explicit SubgroupBuilder(std::size_t degree) : group_(PermGroup::trivial(degree)) {}
  bool add(const Permutation& g) { return group_.extend(g); }
  const PermGroup& group() const { return group_; }
  PermGroup take() { return std::move(group_); }

 private:
  PermGroup group_;
};

inline PermGroup subgroup_generated(std::size_t degree, const std::vector<Permutation>& gens) {
  SubgroupBuilder b(degree);
  for (const auto& g : gens) b.add(g);
  return b.take();
}

// ---- orbits -----------------------------------------------------------------

/// Orbit of a point under an action, with a Schreier vector for witnesses.
template <class Key, class Hash = std::hash<Key>>
struct Orbit {
  std::vector<Key> points;
  std::unordered_map<Key, std::size_t, Hash> index;
  std::vector<std::int64_t> parent;     // index of predecessor, -1 at the root
  std::vector<std::int32_t> via;        // generator applied to the predecessor

  std::size_t size() const { return points.size(); }
  bool contains(const Key& k) const { return index.count(k) > 0; }

  /// Generator word w (indices) with root^w = points[i].
  std::vector<std::size_t> word(std::size_t i) const {
    std::vector<std::size_t> w;
    while (parent[i] >= 0) {
      w.push_back(static_cast<std::size_t>(via[i]));
      i = static_cast<std::size_t>(parent[i]);
    }
    std::reverse(w.begin(), w.end());
    return w;
  }
  Permutation witness(std::size_t i, const std::vector<Permutation>& gens, std::size_t degree) const {
    Permutation g(degree);
    for (std::size_t k : word(i)) g = g * gens[k];
    return g;
  }
};

/// act(key, generator_index) -> key
template <class Key, class Hash = std::hash<Key>, class Act>
Orbit<Key, Hash> orbit(const Key& start, std::size_t ngens, Act&& act, std::size_t budget = kOrbitBudget) {
  Orbit<Key, Hash> o;
  o.points.push_back(start);
  o.index.emplace(start, 0);
  o.parent.push_back(-1);
  o.via.push_back(-1);
  for (std::size_t k = 0; k < o.points.size(); ++k) {
    for (std::size_t g = 0; g < ngens; ++g) {
      Key y = act(o.points[k], g);
      if (o.index.count(y)) continue;
      if (o.points.size() >= budget) throw resource_error("orbit exceeds budget");
      o.index.emplace(y, o.points.size());
      o.points.push_back(std::move(y));
      o.parent.push_back(static_cast<std::int64_t>(k));
      o.via.push_back(static_cast<std::int32_t>(g));
    }
  }
  return o;
}

/// Point orbit of a permutation group's generators.
inline Orbit<point_t> point_orbit(const PermGroup& g, point_t x) {
  const auto& gens = g.generators();
  return orbit<point_t>(x, gens.size(), [&](point_t p, std::size_t i) { return gens[i][p]; });
}

/// All orbits of the group on {0..degree-1}, each sorted, ordered by smallest point.
inline std::vector<std::vector<point_t>> point_orbits(const PermGroup& g) {
  std::vector<bool> seen(g.degree(), false);
  std::vector<std::vector<point_t>> out;
  for (point_t x = 0; x < g.degree(); ++x) {
    if (seen[x]) continue;
    auto o = point_orbit(g, x);
    for (point_t y : o.points) seen[y] = true;
    std::sort(o.points.begin(), o.points.end());
    out.push_back(std::move(o.points));
  }
  return out;
}

/// Stabilizer of `start` under an action of G (given per generator), by
/// Schreier's lemma. Verifies |orbit| * |stabilizer| = |G|.
template <class Key, class Hash = std::hash<Key>, class Act>
PermGroup stabilizer(const PermGroup& g, const Key& start, Act&& act) {
  const auto& gens = g.generators();
  auto o = orbit<Key, Hash>(start, gens.size(), act);
  std::vector<Permutation> reps(o.size());
  reps[0] = g.identity();
  for (std::size_t i = 1; i < o.size(); ++i)
    reps[i] = reps[static_cast<std::size_t>(o.parent[i])] * gens[static_cast<std::size_t>(o.via[i])];
  SubgroupBuilder b(g.degree());
  const std::uint64_t target = g.order() / o.size();
  if (g.order() % o.size() != 0) throw construction_error("orbit length does not divide the group order");
  for (std::size_t i = 0; i < o.size() && b.group().order() < target; ++i) {
    for (std::size_t s = 0; s < gens.size() && b.group().order() < target; ++s) {
      const std::size_t j = o.index.at(act(o.points[i], s));
      b.add(reps[i] * gens[s] * reps[j].inverse());
    }
  }
  if (b.group().order() != target) throw construction_error("orbit-stabilizer identity failed");
  return b.take();
}

inline PermGroup point_stabilizer(const PermGroup& g, point_t x) {
  const auto& gens = g.generators();
  return stabilizer<point_t>(g, x, [&](point_t p, std::size_t i) { return gens[i][p]; });
}

// ---- conjugacy ----------------------------------------------------------------

inline Orbit<Permutation, PermHash> conjugation_orbit(const PermGroup& g, const Permutation& x,
                                                      std::size_t budget = kOrbitBudget) {
  const auto& gens = g.generators();
  std::vector<Permutation> inv;
  for (const auto& s : gens) inv.push_back(s.inverse());
  return orbit<Permutation, PermHash>(
      x, gens.size(), [&](const Permutation& p, std::size_t i) { return inv[i] * p * gens[i]; }, budget);
}

/// C_G(x) as the stabilizer of x under conjugation.
inline PermGroup centralizer_by_orbit(const PermGroup& g, const Permutation& x) {
  const auto& gens = g.generators();
  std::vector<Permutation> inv;
  for (const auto& s : gens) inv.push_back(s.inverse());
  return stabilizer<Permutation, PermHash>(
      g, x, [&](const Permutation& p, std::size_t i) { return inv[i] * p * gens[i]; });
}

struct ConjugacyClass {
  Permutation representative;
  std::uint64_t size;
  std::vector<Permutation> members;  // those of the input list lying in this class
};

/// Partition `elements` into G-conjugacy classes (classes ordered by first occurrence).
inline std::vector<ConjugacyClass> class_map(const PermGroup& g, const std::vector<Permutation>& elements) {
  std::vector<ConjugacyClass> out;
  std::unordered_map<Permutation, std::size_t, PermHash> seen;
  for (const auto& x : elements) {
    auto it = seen.find(x);
    if (it != seen.end()) {
      out[it->second].members.push_back(x);
      continue;
    }
    auto o = conjugation_orbit(g, x);
    const std::size_t id = out.size();
    for (const auto& y : o.points) seen.emplace(y, id);
    out.push_back({x, o.size(), {x}});
  }
  return out;
}

inline bool commute(const Permutation& a, const Permutation& b) { return a * b == b * a; }

/// C_G(x) by walking every element of G.
inline PermGroup centralizer_bruteforce(const PermGroup& g, const Permutation& x) {
  SubgroupBuilder b(g.degree());
  g.for_each_element([&](const Permutation& e) {
    if (commute(e, x)) b.add(e);
  });
  return b.take();
}

/// C_G(H) by walking every element of G.
inline PermGroup centralizer_bruteforce(const PermGroup& g, const PermGroup& h) {
  SubgroupBuilder b(g.degree());
  g.for_each_element([&](const Permutation& e) {
    for (const auto& y : h.generators())
      if (!commute(e, y)) return;
    b.add(e);
  });
  return b.take();
}

inline bool normalizes(const Permutation& e, const PermGroup& h) {
  const Permutation ei = e.inverse();
  for (const auto& y : h.generators())
    if (!h.contains(ei * y * e)) return false;
  return true;
}

/// N_G(H) by walking every element of G.
inline PermGroup normalizer_bruteforce(const PermGroup& g, const PermGroup& h) {
  SubgroupBuilder b(g.degree());
  g.for_each_element([&](const Permutation& e) {
    if (normalizes(e, h)) b.add(e);
  });
  return b.take();
}

inline PermGroup conjugate_group(const PermGroup& h, const Permutation& g) {
  std::vector<Permutation> gens;
  for (const auto& y : h.generators()) gens.push_back(y.conjugate_by(g));
  return subgroup_generated(h.degree(), gens);
}

/// Intersection by testing each element of the smaller group.
inline PermGroup intersection(const PermGroup& a, const PermGroup& b) {
  const PermGroup& small = a.order() <= b.order() ? a : b;
  const PermGroup& big = a.order() <= b.order() ? b : a;
  SubgroupBuilder out(a.degree());
  small.for_each_element([&](const Permutation& e) {
    if (big.contains(e)) out.add(e);
  });
  return out.take();
}

inline std::uint64_t prime_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

/// Sylow p-subgroup by climbing: starting from an element of order p, repeatedly
/// adjoin a p-element that normalizes the current p-subgroup but lies outside it.
inline PermGroup sylow_subgroup(const PermGroup& g, std::uint64_t p) {
  const std::uint64_t target = prime_part(g.order(), p);
  SubgroupBuilder b(g.degree());
  if (target == 1) return b.take();
  auto p_element = [&](const Permutation& e) -> std::optional<Permutation> {
    const std::uint64_t o = e.order();
    const std::uint64_t pp = prime_part(o, p);
    if (pp == 1) return std::nullopt;
    return e.pow(o / pp);
  };
  while (b.group().order() < target) {
    bool grown = false;
    g.for_each_element([&](const Permutation& e) {
      if (grown || b.group().contains(e)) return;
      auto x = p_element(e);
      if (!x || b.group().contains(*x)) return;
      if (!b.group().is_trivial() && !normalizes(*x, b.group())) return;
      b.add(*x);
      grown = true;
    });
    if (!grown) throw construction_error("Sylow climb stalled");
  }
  return b.take();
}

/// O^p'-style helper: subgroup generated by the elements of G whose order is prime to p.
inline PermGroup generated_by_order_prime_to(const PermGroup& g, std::uint64_t p) {
  SubgroupBuilder b(g.degree());
  g.for_each_element([&](const Permutation& e) {
    if (e.order() % p != 0) b.add(e);
  });
  return b.take();
}

}  // namespace forge
