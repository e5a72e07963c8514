#pragma once

// Small groups as explicit multiplication tables, with subgroups stored as
// bitsets over element indices. Used for exhaustive searches inside p-groups.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "forge/error.hpp"
#include "forge/perm.hpp"

namespace forge {

/// Largest group turned into an explicit table.
inline constexpr std::size_t kTableBudget = 2048;

class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  bool subset_of(const BitSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  BitSet operator&(const BitSet& o) const {
    BitSet r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
    return r;
  }
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t x = w_[i];
      while (x) {
        out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
    return out;
  }
  const std::vector<std::uint64_t>& words() const { return w_; }

  friend bool operator==(const BitSet&, const BitSet&) = default;
  friend auto operator<=>(const BitSet&, const BitSet&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitSetHash {
  std::size_t operator()(const BitSet& b) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : b.words()) h = (h ^ x) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

class SmallGroupTable {
 public:
  explicit SmallGroupTable(const PermGroup& g) : degree_(g.degree()) {
    if (g.order() > kTableBudget) throw resource_error("group too large for an explicit table");
    elems_ = g.elements();
    n_ = elems_.size();
    for (std::size_t i = 0; i < n_; ++i) index_.emplace(elems_[i], static_cast<std::uint32_t>(i));
    mul_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) mul_[i * n_ + j] = index_.at(elems_[i] * elems_[j]);
    id_ = index_.at(g.identity());
    inv_.resize(n_);
    order_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      inv_[i] = index_.at(elems_[i].inverse());
      order_[i] = static_cast<std::uint32_t>(elems_[i].order());
    }
  }

  std::size_t order() const { return n_; }
  std::size_t degree() const { return degree_; }
  std::size_t identity() const { return id_; }
  const Permutation& element(std::size_t i) const { return elems_[i]; }
  std::size_t index_of(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw precondition_error("permutation is not in the table");
    return it->second;
  }
  std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a * n_ + b]; }
  std::size_t inv(std::size_t a) const { return inv_[a]; }
  std::uint32_t element_order(std::size_t a) const { return order_[a]; }
  std::size_t power(std::size_t a, std::uint64_t k) const {
    std::size_t r = id_;
    while (k--) r = mul(r, a);
    return r;
  }
  /// a^-1 b^-1 a b
  std::size_t commutator(std::size_t a, std::size_t b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  /// b^-1 a b
  std::size_t conj(std::size_t a, std::size_t b) const { return mul(mul(inv(b), a), b); }

  BitSet all() const {
    BitSet s(n_);
    for (std::size_t i = 0; i < n_; ++i) s.set(i);
    return s;
  }
  BitSet trivial() const {
    BitSet s(n_);
    s.set(id_);
    return s;
  }

  BitSet closure(const std::vector<std::size_t>& gens) const {
    BitSet s(n_);
    std::vector<std::size_t> list{id_};
    s.set(id_);
    for (std::size_t k = 0; k < list.size(); ++k)
      for (std::size_t g : gens) {
        std::size_t y = mul(list[k], g);
        if (!s.test(y)) {
          s.set(y);
          list.push_back(y);
        }
      }
    return s;
  }
  BitSet closure(const BitSet& a, const std::vector<std::size_t>& extra) const {
    std::vector<std::size_t> g = generators(a);
    g.insert(g.end(), extra.begin(), extra.end());
    return closure(g);
  }

  /// A small generating set, chosen greedily in index order.
  std::vector<std::size_t> generators(const BitSet& h) const {
    std::vector<std::size_t> gens;
    BitSet cur = trivial();
    for (std::size_t x : h.indices()) {
      if (cur.test(x)) continue;
      gens.push_back(x);
      cur = closure(gens);
      if (cur == h) break;
    }
    return gens;
  }

  bool is_subgroup(const BitSet& h) const {
    if (!h.test(id_)) return false;
    auto idx = h.indices();
    for (std::size_t a : idx)
      for (std::size_t b : idx)
        if (!h.test(mul(a, b))) return false;
    return true;
  }

  bool is_abelian(const BitSet& h) const {
    auto g = generators(h);
    for (std::size_t a : g)
      for (std::size_t b : g)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }
  bool is_elementary_abelian(const BitSet& h, std::uint32_t p) const {
    if (!is_abelian(h)) return false;
    for (std::size_t x : h.indices())
      if (x != id_ && order_[x] != p) return false;
    return true;
  }
  std::uint64_t exponent(const BitSet& h) const {
    std::uint64_t e = 1;
    for (std::size_t x : h.indices()) e = std::lcm(e, std::uint64_t{order_[x]});
    return e;
  }

  /// Elements of h commuting with every element of x.
  BitSet centralizer(const BitSet& h, const BitSet& x) const {
    auto xg = generators(x);
    BitSet c(n_);
    for (std::size_t a : h.indices()) {
      bool ok = true;
      for (std::size_t b : xg)
        if (mul(a, b) != mul(b, a)) {
          ok = false;
          break;
        }
      if (ok) c.set(a);
    }
    return c;
  }
  BitSet center(const BitSet& h) const { return centralizer(h, h); }

  BitSet commutator_subgroup(const BitSet& a, const BitSet& b) const {
    std::vector<std::size_t> comms;
    BitSet seen(n_);
    for (std::size_t x : a.indices())
      for (std::size_t y : b.indices()) {
        std::size_t c = commutator(x, y);
        if (!seen.test(c)) {
          seen.set(c);
          comms.push_back(c);
        }
      }
    return closure(comms);
  }
  BitSet derived(const BitSet& h) const { return commutator_subgroup(h, h); }

  /// Frattini subgroup of a p-group: generated by p-th powers and commutators.
  BitSet frattini(const BitSet& h, std::uint32_t p) const {
    std::vector<std::size_t> gens;
    for (std::size_t x : h.indices()) gens.push_back(power(x, p));
    for (std::size_t x : derived(h).indices()) gens.push_back(x);
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return closure(gens);
  }

  BitSet conjugate(const BitSet& h, std::size_t g) const {
    BitSet r(n_);
    for (std::size_t x : h.indices()) r.set(conj(x, g));
    return r;
  }
  bool is_normal(const BitSet& h, const BitSet& in) const {
    for (std::size_t g : generators(in))
      if (!(conjugate(h, g) == h)) return false;
    return true;
  }

  /// Maximal subgroups of a p-group h, as kernels of the nonzero functionals on h / Phi(h).
  std::vector<BitSet> maximal_subgroups(const BitSet& h, std::uint32_t p) const {
    if (h.count() == 1) return {};
    const BitSet phi = frattini(h, p);
    std::vector<std::size_t> basis;
    BitSet cur = phi;
    for (std::size_t x : h.indices()) {
      if (cur.test(x)) continue;
      basis.push_back(x);
      cur = closure(phi, basis);
    }
    const std::size_t d = basis.size();
    // coordinates in h / Phi, by breadth-first search from Phi
    std::vector<std::int32_t> coord(n_, -1);
    std::vector<std::size_t> list;
    for (std::size_t x : phi.indices()) {
      coord[x] = 0;
      list.push_back(x);
    }
    std::vector<std::int32_t> unit(d);
    for (std::size_t i = 0, u = 1; i < d; ++i, u *= p) unit[i] = static_cast<std::int32_t>(u);
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::size_t x = list[k];
      for (std::size_t i = 0; i < d; ++i) {
        const std::size_t y = mul(x, basis[i]);
        if (coord[y] >= 0) continue;
        std::int32_t c = coord[x];
        const std::int32_t digit = (c / unit[i]) % static_cast<std::int32_t>(p);
        c += (digit == static_cast<std::int32_t>(p) - 1 ? -digit : 1) * unit[i];
        coord[y] = c;
        list.push_back(y);
      }
    }
    std::vector<BitSet> out;
    const std::size_t total = static_cast<std::size_t>(unit.empty() ? 1 : unit.back() * static_cast<std::int32_t>(p));
    for (std::size_t f = 1; f < total; ++f) {
      // functional with first nonzero digit equal to 1
      std::size_t t = f;
      std::uint32_t first = 0;
      while (t && !first) {
        first = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      if (first != 1) continue;
      BitSet m(n_);
      for (std::size_t x : h.indices()) {
        std::size_t c = static_cast<std::size_t>(coord[x]), ff = f, s = 0;
        while (c || ff) {
          s += (c % p) * (ff % p);
          c /= p;
          ff /= p;
        }
        if (s % p == 0) m.set(x);
      }
      out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Every subgroup of the p-group h of order at least min_order, by descent
  /// through maximal subgroups. Sorted by decreasing order, then bit pattern.
  std::vector<BitSet> subgroups(const BitSet& h, std::uint32_t p, std::size_t min_order = 1) const {
    std::unordered_set<BitSet, BitSetHash> seen{h};
    std::vector<BitSet> layer{h}, out{h};
    while (!layer.empty()) {
      std::vector<BitSet> next;
      for (const auto& k : layer) {
        if (k.count() / p < min_order) continue;
        for (auto& m : maximal_subgroups(k, p))
          if (seen.insert(m).second) next.push_back(std::move(m));
      }
      std::sort(next.begin(), next.end());
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    std::stable_sort(out.begin(), out.end(), [](const BitSet& a, const BitSet& b) { return a.count() > b.count(); });
    return out;
  }

  /// Nontrivial elementary abelian p-subgroups of h, layer by layer by adjoining
  /// commuting elements of order p. Sorted by order, then bit pattern.
  std::vector<BitSet> elementary_abelian_subgroups(const BitSet& h, std::uint32_t p,
                                                   std::size_t max_order = SIZE_MAX) const {
    std::vector<std::size_t> pel;
    for (std::size_t x : h.indices())
      if (order_[x] == p) pel.push_back(x);
    std::unordered_set<BitSet, BitSetHash> seen;
    std::vector<BitSet> layer, out;
    for (std::size_t x : pel) {
      BitSet e = closure({x});
      if (seen.insert(e).second) layer.push_back(std::move(e));
    }
    while (!layer.empty()) {
      std::sort(layer.begin(), layer.end());
      out.insert(out.end(), layer.begin(), layer.end());
      if (layer.front().count() * p > max_order) break;
      std::vector<BitSet> next;
      for (const auto& e : layer) {
        const auto idx = e.indices();
        const auto eg = generators(e);
        for (std::size_t x : pel) {
          if (e.test(x)) continue;
          bool commutes = true;
          for (std::size_t g : eg)
            if (mul(g, x) != mul(x, g)) {
              commutes = false;
              break;
            }
          if (!commutes) continue;
          BitSet f(n_);
          std::size_t xp = id_;
          for (std::uint32_t k = 0; k < p; ++k, xp = mul(xp, x))
            for (std::size_t y : idx) f.set(mul(y, xp));
          if (seen.insert(f).second) next.push_back(std::move(f));
        }
      }
      layer = std::move(next);
    }
    return out;
  }

  std::vector<Permutation> permutations(const BitSet& h) const {
    std::vector<Permutation> out;
    for (std::size_t x : generators(h)) out.push_back(elems_[x]);
    return out;
  }
  PermGroup to_group(const BitSet& h) const { return subgroup_generated(degree_, permutations(h)); }
  BitSet from_group(const PermGroup& g) const {
    std::vector<std::size_t> gens;
    for (const auto& x : g.generators()) gens.push_back(index_of(x));
    return closure(gens);
  }

 private:
  std::size_t degree_ = 0, n_ = 0, id_ = 0;
  std::vector<Permutation> elems_;
  std::unordered_map<Permutation, std::uint32_t, PermHash> index_;
  std::vector<std::uint32_t> mul_, inv_, order_;
};

}  // namespace forge
