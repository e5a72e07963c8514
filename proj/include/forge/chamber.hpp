#pragma once

// Coset chamber systems: chambers are the right cosets Tg, and Tg, Th are
// k-adjacent when h g^-1 lies in the parabolic P_k. Rank-2 residues are
// classified through their point-line incidence graphs.

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "forge/error.hpp"
#include "forge/perm.hpp"

namespace forge {

inline constexpr std::size_t kChamberBudget = 100000;

/// Canonical key of the right coset Tg: the images of its unique element whose
/// images of T's base points are lexicographically least.
inline std::vector<point_t> coset_key(const PermGroup& t, Permutation g, Permutation* canonical = nullptr) {
  for (std::size_t l = 0; l < t.base_length(); ++l) {
    const auto& orbit = t.fundamental_orbit(l);
    std::size_t best = 0;
    for (std::size_t i = 1; i < orbit.size(); ++i)
      if (g[orbit[i]] < g[orbit[best]]) best = i;
    g = t.transversal(l)[best] * g;
  }
  std::vector<point_t> key(g.images().begin(), g.images().end());
  if (canonical) *canonical = std::move(g);
  return key;
}

struct ChamberSystem {
  PermGroup group, t;
  std::vector<PermGroup> parabolics;
  std::vector<Permutation> chambers;                           // canonical coset elements
  std::map<std::vector<point_t>, std::size_t> index;           // coset key -> chamber
  std::vector<std::vector<std::size_t>> panel_of;              // panel_of[k][chamber]
  std::vector<std::vector<std::vector<std::size_t>>> panels;   // panels[k][panel] -> chambers (sorted)

  std::size_t size() const { return chambers.size(); }
  std::size_t colours() const { return parabolics.size(); }
  std::size_t chamber_of(const Permutation& g) const { return index.at(coset_key(t, g)); }
  /// Image of a chamber under right multiplication by x.
  std::size_t act(std::size_t c, const Permutation& x) const { return chamber_of(chambers[c] * x); }
  bool adjacent(std::size_t a, std::size_t b, std::size_t k) const { return panel_of.at(k)[a] == panel_of.at(k)[b]; }
};

inline ChamberSystem build_coset_chambers(const PermGroup& g, const PermGroup& t, const std::vector<PermGroup>& parabolics) {
  for (const auto& p : parabolics)
    if (!p.contains(t) || !g.contains(p)) throw precondition_error("parabolics must lie between T and G");
  if (!g.contains(t)) throw precondition_error("T is not a subgroup of G");
  if (g.order() / t.order() > kChamberBudget) throw resource_error("too many chambers");
  ChamberSystem cs;
  cs.group = g;
  cs.t = t;
  cs.parabolics = parabolics;
  auto add = [&](const Permutation& x) {
    Permutation c;
    auto key = coset_key(t, x, &c);
    auto [it, fresh] = cs.index.emplace(std::move(key), cs.chambers.size());
    if (fresh) cs.chambers.push_back(std::move(c));
    return std::pair{it->second, fresh};
  };
  add(g.identity());
  for (std::size_t i = 0; i < cs.chambers.size(); ++i)
    for (const auto& s : g.generators()) add(cs.chambers[i] * s);
  if (cs.chambers.size() * t.order() != g.order()) throw construction_error("chamber count does not match the index");

  for (const auto& p : parabolics) {
    // right transversal of T in P_k
    std::map<std::vector<point_t>, Permutation> reps;
    p.for_each_element([&](const Permutation& r) { reps.emplace(coset_key(t, r), r); });
    std::vector<std::size_t> owner(cs.size(), SIZE_MAX);
    std::vector<std::vector<std::size_t>> list;
    for (std::size_t c = 0; c < cs.size(); ++c) {
      if (owner[c] != SIZE_MAX) continue;
      std::vector<std::size_t> panel;
      for (const auto& [key, r] : reps) panel.push_back(cs.chamber_of(r * cs.chambers[c]));
      std::sort(panel.begin(), panel.end());
      for (std::size_t d : panel) owner[d] = list.size();
      list.push_back(std::move(panel));
    }
    cs.panel_of.push_back(std::move(owner));
    cs.panels.push_back(std::move(list));
  }
  return cs;
}

// ---- rank-2 geometry -----------------------------------------------------------------

enum class Rank2Type { digon, projective_plane, generalized_quadrangle, other };

inline std::string to_string(Rank2Type t) {
  switch (t) {
    case Rank2Type::digon: return "digon";
    case Rank2Type::projective_plane: return "PG(2,2)";
    case Rank2Type::generalized_quadrangle: return "GQ(2,2)";
    default: return "other";
  }
}

/// Points, lines and flags (point, line) of a rank-2 incidence structure.
struct IncidenceStructure {
  std::size_t points = 0, lines = 0;
  std::vector<std::pair<std::size_t, std::size_t>> flags;
};

/// Girth of the bipartite incidence graph (0 if acyclic).
inline std::size_t incidence_girth(const IncidenceStructure& s) {
  const std::size_t n = s.points + s.lines;
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [p, l] : s.flags) {
    adj[p].push_back(s.points + l);
    adj[s.points + l].push_back(p);
  }
  std::size_t girth = 0;
  for (std::size_t root = 0; root < n; ++root) {
    std::vector<std::size_t> dist(n, SIZE_MAX), parent(n, SIZE_MAX);
    std::deque<std::size_t> q{root};
    dist[root] = 0;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop_front();
      for (std::size_t w : adj[v]) {
        if (dist[w] == SIZE_MAX) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          q.push_back(w);
        } else if (parent[v] != w) {
          const std::size_t cyc = dist[v] + dist[w] + 1;
          if (girth == 0 || cyc < girth) girth = cyc;
        }
      }
    }
  }
  return girth;
}

/// Digon if every point is on every line; otherwise a generalized polygon of
/// order 2 (three points per line, three lines per point) by girth.
inline Rank2Type classify_rank2(const IncidenceStructure& s) {
  if (s.flags.size() == s.points * s.lines) return Rank2Type::digon;
  std::vector<std::size_t> pdeg(s.points, 0), ldeg(s.lines, 0);
  for (auto [p, l] : s.flags) {
    ++pdeg[p];
    ++ldeg[l];
  }
  const bool order2 = std::all_of(pdeg.begin(), pdeg.end(), [](std::size_t d) { return d == 3; }) &&
                      std::all_of(ldeg.begin(), ldeg.end(), [](std::size_t d) { return d == 3; });
  if (!order2) return Rank2Type::other;
  switch (incidence_girth(s)) {
    case 6: return Rank2Type::projective_plane;
    case 8: return Rank2Type::generalized_quadrangle;
    default: return Rank2Type::other;
  }
}

struct ResidueReport {
  std::vector<std::size_t> colours;
  std::vector<std::size_t> chambers;  // sorted
  std::vector<std::size_t> panel_sizes;  // chambers per panel, one entry per colour (0 if not constant)
  Rank2Type classification = Rank2Type::other;  // for two colours only
};

/// J-connected component of chamber c; rank-2 residues are classified with the
/// panels of the first colour as points and those of the second as lines.
inline ResidueReport residue(const ChamberSystem& cs, std::size_t c, const std::vector<std::size_t>& j) {
  for (std::size_t k : j)
    if (k >= cs.colours()) throw precondition_error("colour outside the colour set");
  ResidueReport r;
  r.colours = j;
  std::vector<bool> seen(cs.size(), false);
  std::deque<std::size_t> q{c};
  seen[c] = true;
  while (!q.empty()) {
    const std::size_t x = q.front();
    q.pop_front();
    r.chambers.push_back(x);
    for (std::size_t k : j)
      for (std::size_t y : cs.panels[k][cs.panel_of[k][x]])
        if (!seen[y]) {
          seen[y] = true;
          q.push_back(y);
        }
  }
  std::sort(r.chambers.begin(), r.chambers.end());
  for (std::size_t k : j) {
    std::size_t sz = cs.panels[k][cs.panel_of[k][c]].size();
    for (std::size_t x : r.chambers)
      if (cs.panels[k][cs.panel_of[k][x]].size() != sz) sz = 0;
    r.panel_sizes.push_back(sz);
  }
  if (j.size() == 2) {
    std::map<std::size_t, std::size_t> pts, lns;
    IncidenceStructure s;
    for (std::size_t x : r.chambers) {
      const std::size_t p = pts.emplace(cs.panel_of[j[0]][x], pts.size()).first->second;
      const std::size_t l = lns.emplace(cs.panel_of[j[1]][x], lns.size()).first->second;
      s.flags.emplace_back(p, l);
    }
    s.points = pts.size();
    s.lines = lns.size();
    r.classification = classify_rank2(s);
  }
  return r;
}

}  // namespace forge
