#pragma once

// Check registry, dependency-ordered parallel runner, JSON/Markdown reports
// and the on-disk BSGS cache.

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "forge/chamber.hpp"
#include "forge/error.hpp"
#include "forge/extra.hpp"
#include "forge/forms.hpp"
#include "forge/matgrp.hpp"

namespace forge {

using json = nlohmann::ordered_json;

enum class CheckStatus { pass, fail, skip };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "skip";
  }
}

struct CheckResult {
  std::string check_id;
  std::string claim;
  std::string paper_ref;
  CheckStatus status = CheckStatus::skip;
  json computed;
  json expected;
  double runtime_ms = 0;
};

struct RunOptions {
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::string cache_dir;
};

struct CheckOutcome {
  json computed;
  json expected;
};

struct CheckDescriptor {
  std::string id;
  std::string claim;
  std::string paper_ref;  // lemma label and part
  std::vector<std::string> deps;
  std::function<CheckOutcome(const RunOptions&)> run;
};

// ---- BSGS cache -----------------------------------------------------------------------------

inline constexpr const char* kBsgsHeader = "FORGE-BSGS 1";

inline std::string format_bsgs(const PermGroup& g) {
  std::ostringstream out;
  out << kBsgsHeader << "\n" << g.degree() << "\n";
  const auto base = g.base();
  for (std::size_t i = 0; i < base.size(); ++i) out << (i ? " " : "") << base[i];
  out << "\n";
  for (const auto& s : g.strong_generators()) {
    for (std::size_t i = 0; i < s.degree(); ++i) out << (i ? " " : "") << s[static_cast<point_t>(i)];
    out << "\n";
  }
  out << "order " << g.order() << "\n";
  return out.str();
}

/// Parses a cache file and rebuilds the group; the recorded order is checked
/// against the rebuilt chain.
inline PermGroup parse_bsgs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kBsgsHeader) throw format_error("missing FORGE-BSGS header");
  std::size_t degree = 0;
  if (!std::getline(in, line) || !(std::istringstream(line) >> degree)) throw format_error("bad degree line");
  std::vector<point_t> base;
  if (!std::getline(in, line)) throw format_error("missing base line");
  {
    std::istringstream b(line);
    point_t x;
    while (b >> x) base.push_back(x);
  }
  std::vector<Permutation> sgs;
  std::optional<std::uint64_t> recorded;
  while (std::getline(in, line)) {
    if (line.rfind("order ", 0) == 0) {
      recorded = std::stoull(line.substr(6));
      break;
    }
    std::istringstream s(line);
    std::vector<point_t> img;
    point_t x;
    while (s >> x) img.push_back(x);
    if (img.size() != degree) throw format_error("generator line has the wrong length");
    sgs.emplace_back(std::move(img));
  }
  if (!recorded) throw format_error("missing order line");
  for (point_t b : base)
    if (b >= degree) throw format_error("base point out of range");
  PermGroup g = PermGroup::from_bsgs(degree, base, std::move(sgs));
  if (g.order() != *recorded) throw format_error("recorded order does not match the rebuilt group");
  return g;
}

/// Write-temp-then-rename.
inline void write_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ostringstream tmpname;
  tmpname << path.string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id());
  const std::filesystem::path tmp = tmpname.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw resource_error("cannot write " + tmp.string());
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

/// Cached chains of the registry groups: an existing file is loaded and
/// compared with the group built from generators; a missing or stale file is rewritten.
struct CacheReport {
  std::size_t loaded = 0, written = 0, stale = 0;
};

inline CacheReport sync_bsgs_cache(const std::string& dir) {
  CacheReport r;
  if (dir.empty()) return r;
  for (const auto& name : registry_names()) {
    const PermGroup& g = named_group(name).group;
    const std::filesystem::path path = std::filesystem::path(dir) / (name + ".bsgs");
    bool fresh = false;
    if (std::filesystem::exists(path)) {
      std::ifstream in(path, std::ios::binary);
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        fresh = parse_bsgs(buf.str()).same_as(g);
      } catch (const error&) {
        fresh = false;
      }
      if (fresh) ++r.loaded;
      else ++r.stale;
    }
    if (!fresh) {
      write_atomic(path, format_bsgs(g));
      ++r.written;
    }
  }
  return r;
}

// ---- helpers ---------------------------------------------------------------------------------

namespace detail {

inline json census_json(const CensusReport& c) {
  json rows = json::array();
  for (const auto& r : c.rows)
    rows.push_back({{"class", r.suzuki_name},
                    {"size", r.class_size},
                    {"centralizer", r.centralizer_order},
                    {"dim_cu", r.dim_cu},
                    {"dim_cv", r.dim_cv}});
  return rows;
}

inline json expected_census(bool in_x, std::uint64_t group_order) {
  std::vector<Table1Row> sorted(table1_expected().begin(), table1_expected().end());
  std::sort(sorted.begin(), sorted.end(), [](const Table1Row& a, const Table1Row& b) { return std::string(a.name) < b.name; });
  json rows = json::array();
  for (const auto& e : sorted) {
    const std::uint64_t c = in_x ? e.centralizer_x : e.centralizer_y;
    rows.push_back({{"class", e.name}, {"size", group_order / c}, {"centralizer", c}, {"dim_cu", e.dim_cu}, {"dim_cv", e.dim_cv}});
  }
  return rows;
}

inline const ChamberSystem& sp62_chambers() {
  static const ChamberSystem cs = [] {
    const Parabolics& p = natural_parabolics();
    return build_coset_chambers(named_group("Sp6_2").group, p.s, {p.x1, p.x2, p.x3});
  }();
  return cs;
}

inline json offender_json(const OffenderReport& r) {
  return {{"offenders", r.offenders}};
}

}  // namespace detail

// ---- registry ---------------------------------------------------------------------------------

inline std::vector<CheckDescriptor> build_check_registry() {
  std::vector<CheckDescriptor> c;
  auto add = [&](std::string id, std::string claim, std::string ref, std::vector<std::string> deps,
                 std::function<CheckOutcome(const RunOptions&)> run) {
    c.push_back({std::move(id), std::move(claim), std::move(ref), std::move(deps), std::move(run)});
  };

  // -- group orders
  add("sp62.order", "Sp6(2) built from its 63 transvections has the classical order", "registry",
      {}, [](const RunOptions&) {
        return CheckOutcome{named_group("Sp6_2").group.order(), order_sp(2, 6)};
      });
  add("registry.orders", "every registry group has the order given by its classical formula", "registry",
      {}, [](const RunOptions&) {
        json got, want;
        for (const auto& n : registry_names()) {
          got[n] = named_group(n).group.order();
          want[n] = named_group(n).oracle_order;
        }
        return CheckOutcome{got, want};
      });
  add("registry.forms", "every registry generator preserves its defining form (similitudes for CO4+(3))", "registry",
      {"registry.orders"}, [](const RunOptions&) {
        json got, want;
        for (const auto& n : registry_names()) {
          got[n] = generators_preserve_form(named_group(n));
          want[n] = true;
        }
        return CheckOutcome{got, want};
      });

  // -- natural module
  add("natural.transitive", "Sp6(2) is transitive on the 63 nonzero vectors of V", "sp62natural(i)",
      {"sp62.order"}, [](const RunOptions&) {
        const auto r = natural_module_report();
        return CheckOutcome{{{"orbits", r.vector_orbits}, {"length", r.vector_orbit_length}}, {{"orbits", 1}, {"length", 63}}};
      });
  add("natural.uniserial", "V is uniserial for S: one S-invariant subspace per dimension, forming the flag V1 < V2 < V3 < V2perp < V1perp",
      "sp62natural(ii)", {"sp62.order"}, [](const RunOptions&) {
        const auto r = natural_module_report();
        return CheckOutcome{{{"per_dimension", r.invariant_subspaces_by_dim}, {"flag", r.flag_is_the_chain}},
                            {{"per_dimension", std::vector<int>(7, 1)}, {"flag", true}}};
      });
  add("natural.normalizers", "N_X(V1) = X23, N_X(V2) = X13, N_X(V3) = X12", "sp62natural(iii)",
      {"sp62.order"}, [](const RunOptions&) {
        const auto r = natural_module_report();
        return CheckOutcome{{{"V1", r.n_v1_is_x23}, {"V2", r.n_v2_is_x13}, {"V3", r.n_v3_is_x12}},
                            {{"V1", true}, {"V2", true}, {"V3", true}}};
      });
  add("natural.sections", "X23 induces Sp4(2) on V1perp/V1; X12 induces SL3(2) on V3 and on V/V3; O^2(X3) centralizes V2 and V/V2perp; O^2(X1) centralizes V2perp/V2",
      "sp62natural(iii)", {"sp62.order"}, [](const RunOptions&) {
        const auto r = natural_module_report();
        return CheckOutcome{{{"X23_on_V1perp/V1", r.x23_section_order},
                             {"X23_form_preserved", r.x23_section_symplectic},
                             {"X12_on_V3", r.x12_on_v3},
                             {"X12_on_V/V3", r.x12_on_top},
                             {"O2X3_on_V2", r.o2x3_centralizes_v2},
                             {"O2X3_on_V/V2perp", r.o2x3_centralizes_top},
                             {"O2X1_on_V2perp/V2", r.o2x1_centralizes_middle}},
                            {{"X23_on_V1perp/V1", order_sp(2, 4)},
                             {"X23_form_preserved", true},
                             {"X12_on_V3", 168},
                             {"X12_on_V/V3", 168},
                             {"O2X3_on_V2", true},
                             {"O2X3_on_V/V2perp", true},
                             {"O2X1_on_V2perp/V2", true}}};
      });
  add("natural.parabolics", "X12/O2 = SL3(2), X13/O2 = SL2(2) x SL2(2), X23/O2 = Sp4(2), with O2 the kernel on the flag sections",
      "sp62natural(iii); chamber system parabolics", {"sp62.order"}, [](const RunOptions&) {
        const auto r = natural_module_report();
        json got, want;
        const char* names[3] = {"X12", "X13", "X23"};
        const std::uint64_t quot[3] = {168, 36, order_sp(2, 4)};
        // |N_X(V_i)| = |X| / #(totally isotropic i-spaces): 135, 315, 63
        const std::uint64_t stab[3] = {order_sp(2, 6) / 135, order_sp(2, 6) / 315, order_sp(2, 6) / 63};
        for (int i = 0; i < 3; ++i) {
          got[names[i]] = {{"O2", r.o2_orders[i]}, {"quotient", r.quotient_orders[i]}, {"kernel_is_O2", r.kernels_are_o2[i]}};
          want[names[i]] = {{"O2", stab[i] / quot[i]}, {"quotient", quot[i]}, {"kernel_is_O2", true}};
        }
        return CheckOutcome{got, want};
      });

  // -- spin module
  add("spin.orbits", "the 8-dimensional spin module splits the 255 nonzero vectors into orbits of lengths 135 and 120",
      "sp62spin(i)", {"sp62.order"}, [](const RunOptions& o) {
        const auto r = spin_module_report(o.seed);
        return CheckOutcome{r.orbit_lengths, json::array({135, 120})};
      });
  add("spin.irreducible", "the spin module is irreducible of dimension 8", "modfacts", {"spin.orbits"},
      [](const RunOptions& o) {
        const auto& ctx = sp62_context(o.seed);
        std::mt19937_64 rng(o.seed);
        return CheckOutcome{{{"dim", ctx.u.dim}, {"irreducible", is_irreducible(ctx.u, rng)}},
                            {{"dim", 8}, {"irreducible", true}}};
      });
  add("spin.fixed", "C_U(S) is a point, N_X(C_U(S)) = X12 and C_U(S) = C_U(O2(X12))", "sp62spin(ii)",
      {"spin.orbits"}, [](const RunOptions& o) {
        const auto r = spin_module_report(o.seed);
        return CheckOutcome{{{"dim", r.dim_cu_s}, {"normalizer_is_X12", r.n_cus_is_x12}, {"equals_C_U(O2(X12))", r.cus_is_cu_o2x12}},
                            {{"dim", 1}, {"normalizer_is_X12", true}, {"equals_C_U(O2(X12))", true}}};
      });
  add("spin.two_space", "the S-invariant 2-spaces U2 of U have N_X(U2) = X13 and are centralized by O^2(X1)",
      "sp62spin(iii)", {"spin.orbits"}, [](const RunOptions& o) {
        const auto r = spin_module_report(o.seed);
        return CheckOutcome{{{"invariant_2spaces", r.invariant_2spaces}, {"normalizer_is_X13", r.stabilizers_are_x13}, {"O2X1_centralizes", r.o2x1_centralizes_u2}},
                            {{"invariant_2spaces", 1}, {"normalizer_is_X13", true}, {"O2X1_centralizes", true}}};
      });

  // -- involution census
  add("table1.sp62.classes", "Sp6(2) has four involution classes with the tabulated Suzuki names, sizes, centralizer orders and fixed-space dimensions",
      "Table1; sp62facts(i)-(iii)", {"spin.orbits"}, [](const RunOptions& o) {
        const auto r = table1_census("Sp6_2", o.seed);
        return CheckOutcome{detail::census_json(r), detail::expected_census(true, order_sp(2, 6))};
      });
  add("table1.sp62.matching", "Sp6(2) census rows match the table under the Suzuki labels (no relabelling)",
      "Table1", {"table1.sp62.classes"}, [](const RunOptions& o) {
        return CheckOutcome{table1_census("Sp6_2", o.seed).matching, "exact"};
      });
  add("table1.autsu42.classes", "Aut(SU4(2)) has four involution classes with the tabulated Suzuki names, sizes, centralizer orders and fixed-space dimensions",
      "Table1; sp62facts(i)-(iii)", {"spin.orbits"}, [](const RunOptions& o) {
        const auto r = table1_census("AutSU4_2", o.seed);
        return CheckOutcome{detail::census_json(r), detail::expected_census(false, 2 * order_su(2, 4))};
      });
  add("table1.autsu42.outside", "the b-classes of Aut(SU4(2)) lie outside SU4(2)", "Table1",
      {"table1.autsu42.classes"}, [](const RunOptions& o) {
        json got = json::array();
        for (const auto& r : table1_census("AutSU4_2", o.seed).rows)
          if (r.outside_derived) got.push_back(r.suzuki_name);
        return CheckOutcome{got, json::array({"b1", "b3"})};
      });
  add("table1.fusion", "each X-class of involutions meets Y in a single Y-class; the 8-dimensional semilinear model of Aut(SU4(2)) gives the same census",
      "sp62facts(i)", {"table1.autsu42.classes"}, [](const RunOptions& o) {
        const auto r = table1_census("AutSU4_2", o.seed);
        return CheckOutcome{{{"fusion", r.fusion_ok}, {"models_agree", r.realizations_agree}},
                            {{"fusion", true}, {"models_agree", true}}};
      });

  // -- line lemma
  add("line.quotient", "P = X13 has |P| = 4608, |Q| = 128 and P/Q = SL2(2) x SL2(2) acting on V2 and V2perp/V2",
      "sp62line(i)", {"sp62.order"}, [](const RunOptions&) {
        const auto r = line_report();
        return CheckOutcome{{{"P", r.p_order}, {"Q", r.q_order}, {"P/Q", r.p_over_q}},
                            {{"P", order_sp(2, 6) / 315}, {"Q", 128}, {"P/Q", 36}}};
      });
  add("line.order3", "T has four subgroups of order 3: two of type tau3 (fused in N_P(T)), one of type tau1, one of type tau2",
      "sp62line(ii)", {"line.quotient"}, [](const RunOptions&) {
        const auto r = line_report();
        return CheckOutcome{{{"T", r.t_order}, {"dim_[V,z]", r.order3_dims}, {"tau3_fused", r.tau3_pair_fused}},
                            {{"T", 9}, {"dim_[V,z]", json::array({2, 4, 6, 6})}, {"tau3_fused", true}}};
      });
  add("line.quaternion", "C_Q(Z1) and C_Q(Z2) are quaternion of order 8 and commute", "sp62line(iii)",
      {"line.order3"}, [](const RunOptions&) {
        const auto r = line_report();
        return CheckOutcome{{{"orders", r.cq_orders}, {"Q8", r.cq_quaternion}, {"commute", r.cq_commute}},
                            {{"orders", json::array({8, 8})}, {"Q8", json::array({true, true})}, {"commute", true}}};
      });
  add("line.center", "|Z(Q)| = 8, |Q'| = 2, C_T(Z(Q)) = <tau1> and C_Q(tau1) = Z(Q)", "sp62line(iv)",
      {"line.order3"}, [](const RunOptions&) {
        const auto r = line_report();
        return CheckOutcome{{{"Z(Q)", r.center_order}, {"Q'", r.derived_order}, {"C_T(Z(Q))=<tau1>", r.ct_zq_is_tau1}, {"C_Q(tau1)=Z(Q)", r.cq_tau1_is_zq}},
                            {{"Z(Q)", 8}, {"Q'", 2}, {"C_T(Z(Q))=<tau1>", true}, {"C_Q(tau1)=Z(Q)", true}}};
      });
  add("line.invariant8", "the T-invariant subgroups of order 8 in Q are exactly C_Q(Z1), C_Q(Z2) and Z(Q)",
      "sp62line(v)", {"line.quaternion"}, [](const RunOptions&) {
        const auto r = line_report();
        return CheckOutcome{{{"count", r.t_invariant_order8}, {"exactly_these", r.t_invariant_are_expected}},
                            {{"count", 3}, {"exactly_these", true}}};
      });
  add("line.fusion", "with Q' = <t>, the X-class of t meets Q outside Z(Q)", "sp62line(vi)", {"line.center"},
      [](const RunOptions&) { return CheckOutcome{line_report().t_class_leaves_zq, true}; });

  // -- further facts on Sp6(2)
  add("facts.e16", "no subgroup of order 16 of Sp6(2) has all its nontrivial elements conjugate", "sp62facts(iv)",
      {"table1.sp62.classes"}, [](const RunOptions&) {
        return CheckOutcome{conjugate_involution_e16_search().found, 0};
      });
  add("facts.extraspecial128", "Sp6(2) has no extraspecial subgroup of order 2^7", "sp62facts(v)",
      {"sp62.order"}, [](const RunOptions&) { return CheckOutcome{extraspecial_128_search().found, 0}; });
  add("facts.b1_sylow3", "a Sylow 3-subgroup of C_Y(x), x of type b1, holds two conjugates of <tau1> and two of <tau2>",
      "sp62facts(vi)", {"table1.autsu42.classes"}, [](const RunOptions& o) {
        const auto r = b1_centralizer_sylow3(o.seed);
        json by;
        for (auto [d, n] : r.subgroups_by_dim) by["dim " + std::to_string(d)] = n;
        return CheckOutcome{by, {{"dim 2", 2}, {"dim 4", 2}}};
      });
  add("facts.order3", "Sp6(2) has three classes of elements of order 3 with dim [V, tau_i] = 2i; E = <tau1, tau2, tau3> has order 27, is the Thompson subgroup of a Sylow 3-subgroup and meets every class",
      "sp62facts(vii)", {"spin.orbits"}, [](const RunOptions& o) {
        const auto& ctx = sp62_context(o.seed);
        const auto r = three_classes(ctx.full, [&](const Permutation& p) { return ctx.v_matrix(p); });
        json dims = json::array();
        for (const auto& row : r.rows) dims.push_back(row.dim_commutator);
        return CheckOutcome{{{"dims", dims}, {"E", r.e_order}, {"elementary", r.e_elementary_abelian}, {"thompson", r.e_is_thompson}, {"meets_every_class", r.e_meets_every_class}},
                            {{"dims", json::array({2, 4, 6})}, {"E", 27}, {"elementary", true}, {"thompson", true}, {"meets_every_class", true}}};
      });
  add("facts.order3_y", "every element of order 3 of Aut(SU4(2)) is Y-conjugate into E", "sp62facts(vii)",
      {"spin.orbits"}, [](const RunOptions& o) {
        const auto& ctx = sp62_context(o.seed);
        const auto r = three_classes(ctx.y, [&](const Permutation& p) { return ctx.v_matrix(p); });
        json dims = json::array();
        for (const auto& row : r.rows) dims.push_back(row.dim_commutator);
        return CheckOutcome{{{"dims", dims}, {"E", r.e_order}, {"thompson", r.e_is_thompson}, {"meets_every_class", r.e_meets_every_class}},
                            {{"dims", json::array({2, 4, 6})}, {"E", 27}, {"thompson", true}, {"meets_every_class", true}}};
      });
  add("noover.e8", "no elementary abelian E of order 8 in O6-(2) has |V : C_V(E)| <= 4 on the orthogonal module",
      "Noover", {"table1.autsu42.classes"}, [](const RunOptions& o) {
        return CheckOutcome{noover_search(o.seed).found, 0};
      });

  // -- F-modules
  add("notf.sp62", "V + U is not an F-module for Sp6(2)", "NotF", {"spin.orbits"}, [](const RunOptions& o) {
    return CheckOutcome{detail::offender_json(offender_report("Sp6_2", true, true, o.seed)), {{"offenders", 0}}};
  });
  add("notf.autsu42", "V + U restricted to Aut(SU4(2)) is not an F-module", "NotF", {"spin.orbits"},
      [](const RunOptions& o) {
        return CheckOutcome{detail::offender_json(offender_report("AutSU4_2", true, true, o.seed)), {{"offenders", 0}}};
      });
  add("notf.control", "the natural module alone is an F-module: a transvection subgroup is an offender", "F-module definition",
      {"sp62.order"}, [](const RunOptions& o) {
        return CheckOutcome{offender_report("Sp6_2", true, false, o.seed).transvection_offenders > 0, true};
      });

  // -- nonsplit module
  add("nonsplit.fixed", "on the 7-dimensional orthogonal module, C_W(X) is the 1-dimensional radical and C_W(S) > C_W(X)",
      "nonsplitmods", {}, [](const RunOptions&) {
        const auto r = nonsplit_report();
        return CheckOutcome{{{"dim C_W(X)", r.dim_cw_x}, {"is_radical", r.cw_x_is_radical}, {"|S|", r.s_order}, {"C_W(S)>C_W(X)", r.dim_cw_s > r.dim_cw_x}},
                            {{"dim C_W(X)", 1}, {"is_radical", true}, {"|S|", 512}, {"C_W(S)>C_W(X)", true}}};
      });

  // -- orthogonal GF(3) geometry
  add("forms.o4.singular", "the O4+(3) space has 32 nonzero singular vectors", "o4 notation", {},
      [](const RunOptions&) {
        const Form q = standard_quadratic(Field::gf3(), 4, WittType::plus);
        std::uint64_t n = 0;
        for (std::uint64_t x = 1; x < 81; ++x)
          if (q.q(vec_decode(Field::gf3(), x, 4)) == 0) ++n;
        return CheckOutcome{n, singular_vector_count(3, 4, WittType::plus)};
      });
  add("forms.o4.points", "1-spaces: 16 singular, 12 plus, 12 minus", "o4 notation", {}, [](const RunOptions&) {
    const auto c = point_census(standard_quadratic(Field::gf3(), 4, WittType::plus), Subspace::full(Field::gf3(), 4));
    return CheckOutcome{{{"singular", c.n_singular}, {"plus", c.n_plus}, {"minus", c.n_minus}},
                        {{"singular", 16}, {"plus", 12}, {"minus", 12}}};
  });
  add("forms.o4.two_spaces", "every 2-space of the O4+(3) space is of type S, DP, DM, N+ or N-, all five occurring",
      "types; type notation", {}, [](const RunOptions&) {
        const Form q = standard_quadratic(Field::gf3(), 4, WittType::plus);
        std::size_t total = 0, classified = 0;
        std::set<std::string> seen;
        for (const auto& e : all_subspaces(Field::gf3(), 4, 2)) {
          ++total;
          try {
            seen.insert(to_string(subspace_type_2dim(q, e)));
            ++classified;
          } catch (const precondition_error&) {
          }
        }
        return CheckOutcome{{{"two_spaces", total}, {"classified", classified}, {"types", seen}},
                            {{"two_spaces", 130}, {"classified", 130}, {"types", std::set<std::string>{"S", "DP", "DM", "N+", "N-"}}}};
      });
  add("forms.o4.hyper", "every 3-space of the O4+(3) space contains a singular point", "hyper", {},
      [](const RunOptions&) {
        const Form q = standard_quadratic(Field::gf3(), 4, WittType::plus);
        std::size_t total = 0, hit = 0;
        for (const auto& x : all_subspaces(Field::gf3(), 4, 3)) {
          ++total;
          if (singular_point_in_hyperplane(q, x)) ++hit;
        }
        return CheckOutcome{{{"three_spaces", total}, {"with_singular_point", hit}}, {{"three_spaces", 40}, {"with_singular_point", 40}}};
      });
  add("forms.o4.groups", "GO4+(3) has order 1152 and its similitude group CO4+(3) has order 2304", "o4 counts",
      {"registry.orders"}, [](const RunOptions&) {
        return CheckOutcome{{{"GO4+(3)", named_group("GO4p_3").group.order()}, {"CO4+(3)", named_group("CO4p_3").group.order()}},
                            {{"GO4+(3)", order_go(3, 4, WittType::plus)}, {"CO4+(3)", 2 * order_go(3, 4, WittType::plus)}}};
      });

  // -- GO4 solver
  add("go4.seeds", "Sylow 3 pairs of GO4+(3) and GO4-(3) satisfying the hypotheses leave invariant a form of the matching type",
      "GO4", {"registry.orders"}, [](const RunOptions& o) {
        const auto r = go4_sample(o.seed, 0);
        return CheckOutcome{{{"GO4+(3)", to_string(r.seed_plus_type)}, {"GO4-(3)", to_string(r.seed_minus_type)}},
                            {{"GO4+(3)", "plus"}, {"GO4-(3)", "minus"}}};
      });
  add("go4.sample", "for 100 random conjugated pairs and witnesses v outside [V,A], a nondegenerate invariant form with v singular is recovered; two outcome classes",
      "GO4", {"go4.seeds"}, [](const RunOptions& o) {
        const auto r = go4_sample(o.seed, 100);
        json outcomes = json::array();
        for (auto t : r.outcomes) outcomes.push_back(to_string(t));
        return CheckOutcome{{{"sampled", r.sampled}, {"recovered", r.recovered}, {"type_matches_source", r.type_matches_source}, {"outcomes", outcomes}},
                            {{"sampled", 100}, {"recovered", 100}, {"type_matches_source", 100}, {"outcomes", json::array({"plus", "minus"})}}};
      });

  // -- extraspecial groups
  add("extraspec.types", "for 2^{1+2} and 2^{1+4}, the type read from the largest elementary abelian subgroup equals the Witt type of the squaring form",
      "extraspecial notation", {}, [](const RunOptions&) {
        json got, want;
        for (std::size_t n : {1, 2})
          for (WittType t : {WittType::plus, WittType::minus}) {
            const ExtraspecialGroup e(2, n, t);
            const std::string key = "2^{1+" + std::to_string(2 * n) + "}_" + (t == WittType::plus ? "+" : "-");
            got[key] = {{"max_elementary_abelian", e.max_elementary_abelian_order()},
                        {"by_subgroups", to_string(e.classify_type())},
                        {"squaring_form", to_string(witt_type(*e.squaring_form()).type)}};
            want[key] = {{"max_elementary_abelian", ipow(2, t == WittType::plus ? n + 1 : n)},
                         {"by_subgroups", to_string(t)},
                         {"squaring_form", to_string(t)}};
          }
        return CheckOutcome{got, want};
      });
  add("extraspec.involutions", "for every involutory automorphism of 2^{1+4}_+- lifted from the orthogonal group: if z is not a commutator [w, x] then [E, x] <= C_E(x) and [E, x] is elementary abelian",
      "involutionsonexspec", {"extraspec.types"}, [](const RunOptions&) {
        json got, want;
        for (WittType t : {WittType::plus, WittType::minus}) {
          const auto r = involution_harness(ExtraspecialGroup(2, 2, t));
          const std::string key = std::string("2^{1+4}_") + (t == WittType::plus ? "+" : "-");
          got[key] = {{"failures", r.fails}, {"tested", r.automorphisms > 0}};
          want[key] = {{"failures", 0}, {"tested", true}};
        }
        return CheckOutcome{got, want};
      });
  add("extraspec.q3", "3^{1+4}_+ has order 243, exponent 3 and centre of order 3", "large subgroup definition",
      {}, [](const RunOptions&) {
        const ExtraspecialGroup e(3, 2, WittType::plus);
        std::uint64_t exponent = 1, centre = 0;
        for (xelem_t x = 0; x < e.order(); ++x) {
          exponent = std::max(exponent, e.element_order(x));
          if (e.is_central(x)) ++centre;
        }
        return CheckOutcome{{{"order", e.order()}, {"exponent", exponent}, {"centre", centre}},
                            {{"order", 243}, {"exponent", 3}, {"centre", 3}}};
      });
  add("extraspec.automorphisms", "automorphisms of 3^{1+4}_+ act on E/Z as similitudes of the commutator form: an involution inverting Z has multiplier -1",
      "Out(Q) in GSp4(3)", {"extraspec.q3"}, [](const RunOptions&) {
        const ExtraspecialGroup e(3, 2, WittType::plus);
        const auto a = inverting_involution(e);
        const auto v = automorphism_symplectic_check(e, a);
        const auto inner = automorphism_symplectic_check(e, inner_automorphism(e, e.generator(0)));
        return CheckOutcome{{{"multiplier", static_cast<int>(v.multiplier)},
                             {"similitude", v.preserves_form},
                             {"involution", compose(a, a).is_identity()},
                             {"inner_trivial_on_quotient", inner.quotient_action.is_identity()}},
                            {{"multiplier", 2}, {"similitude", true}, {"involution", true}, {"inner_trivial_on_quotient", true}}};
      });

  // -- chamber system
  add("chamber.count", "the Sp6(2) coset chamber system over a Sylow 2-subgroup has |X : S| chambers", "chamber system",
      {"natural.parabolics"}, [](const RunOptions&) {
        return CheckOutcome{detail::sp62_chambers().size(), order_sp(2, 6) / 512};
      });
  add("chamber.panels", "all panels have 3 chambers", "chamber system", {"chamber.count"}, [](const RunOptions&) {
    const auto& cs = detail::sp62_chambers();
    json got = json::array(), want = json::array();
    for (std::size_t k = 0; k < cs.colours(); ++k) {
      std::set<std::size_t> sizes;
      for (const auto& p : cs.panels[k]) sizes.insert(p.size());
      got.push_back(sizes);
      want.push_back(std::set<std::size_t>{3});
    }
    return CheckOutcome{got, want};
  });
  add("chamber.residues", "rank-2 residues: {1,2} is PG(2,2) with 21 chambers, {2,3} is GQ(2,2) with 45, {1,3} is a digon with 9; all residues of a type have equal size",
      "chamber system", {"chamber.panels"}, [](const RunOptions&) {
        const auto& cs = detail::sp62_chambers();
        json got;
        for (std::vector<std::size_t> j : {std::vector<std::size_t>{0, 1}, {1, 2}, {0, 2}}) {
          const auto r = residue(cs, 0, j);
          std::set<std::size_t> sizes;
          for (std::size_t c = 0; c < cs.size(); ++c) sizes.insert(residue(cs, c, j).chambers.size());
          got[std::to_string(j[0] + 1) + std::to_string(j[1] + 1)] = {
              {"type", to_string(r.classification)}, {"chambers", r.chambers.size()}, {"homogeneous", sizes.size() == 1}};
        }
        json want = {{"12", {{"type", "PG(2,2)"}, {"chambers", 7 * 3}, {"homogeneous", true}}},
                     {"23", {{"type", "GQ(2,2)"}, {"chambers", 15 * 3}, {"homogeneous", true}}},
                     {"13", {{"type", "digon"}, {"chambers", 3 * 3}, {"homogeneous", true}}}};
        return CheckOutcome{got, want};
      });
  return c;
}

inline const std::vector<CheckDescriptor>& check_registry() {
  static const std::vector<CheckDescriptor> r = [] {
    auto c = build_check_registry();
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!pos.emplace(c[i].id, i).second) throw construction_error("duplicate check id " + c[i].id);
      for (const auto& d : c[i].deps) {
        auto it = pos.find(d);
        // dependencies precede their dependents, so the graph is acyclic
        if (it == pos.end()) throw construction_error(c[i].id + " depends on a later or unknown check " + d);
      }
    }
    return c;
  }();
  return r;
}

// ---- runner ----------------------------------------------------------------------------------

/// Runs the requested checks (all if ids is empty) and their dependencies.
/// Results are returned in registry order; a check whose dependency did not
/// pass is skipped.
inline std::vector<CheckResult> run_checks(const std::vector<std::string>& ids, const RunOptions& opt) {
  const auto& reg = check_registry();
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < reg.size(); ++i) pos[reg[i].id] = i;
  std::vector<bool> wanted(reg.size(), ids.empty());
  for (const auto& id : ids) {
    auto it = pos.find(id);
    if (it == pos.end()) throw usage_error("unknown check id: " + id);
    wanted[it->second] = true;
  }
  for (std::size_t i = reg.size(); i-- > 0;)
    if (wanted[i])
      for (const auto& d : reg[i].deps) wanted[pos.at(d)] = true;

  sync_bsgs_cache(opt.cache_dir);

  std::vector<CheckResult> results(reg.size());
  std::vector<int> state(reg.size(), 0);  // 0 waiting, 1 running, 2 done
  std::mutex mu;
  std::condition_variable cv;
  auto ready = [&](std::size_t i) {
    for (const auto& d : reg[i].deps)
      if (state[pos.at(d)] != 2) return false;
    return true;
  };
  auto worker = [&] {
    std::unique_lock<std::mutex> lock(mu);
    while (true) {
      std::optional<std::size_t> next;
      bool remaining = false;
      for (std::size_t i = 0; i < reg.size(); ++i) {
        if (!wanted[i] || state[i] != 0) continue;
        remaining = true;
        if (ready(i)) {
          next = i;
          break;
        }
      }
      if (!remaining) {
        cv.notify_all();
        return;
      }
      if (!next) {
        cv.wait(lock);
        continue;
      }
      const std::size_t i = *next;
      state[i] = 1;
      bool deps_ok = true;
      for (const auto& d : reg[i].deps)
        if (results[pos.at(d)].status != CheckStatus::pass) deps_ok = false;
      lock.unlock();
      CheckResult r;
      r.check_id = reg[i].id;
      r.claim = reg[i].claim;
      r.paper_ref = reg[i].paper_ref;
      const auto t0 = std::chrono::steady_clock::now();
      if (!deps_ok) {
        r.status = CheckStatus::skip;
        r.computed = nullptr;
        r.expected = nullptr;
      } else {
        try {
          CheckOutcome o = reg[i].run(opt);
          r.status = o.computed == o.expected ? CheckStatus::pass : CheckStatus::fail;
          r.computed = std::move(o.computed);
          r.expected = std::move(o.expected);
        } catch (const std::exception& e) {
          r.status = CheckStatus::fail;
          r.computed = {{"error", e.what()}};
          r.expected = nullptr;
        }
      }
      r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      lock.lock();
      results[i] = std::move(r);
      state[i] = 2;
      cv.notify_all();
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, opt.jobs);
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<CheckResult> out;
  for (std::size_t i = 0; i < reg.size(); ++i)
    if (wanted[i]) out.push_back(std::move(results[i]));
  return out;
}

// ---- reports ---------------------------------------------------------------------------------

inline json to_json(const CheckResult& r, bool with_runtime = true) {
  json j = {{"check_id", r.check_id}, {"claim", r.claim}, {"paper_ref", r.paper_ref},
            {"status", to_string(r.status)}, {"computed", r.computed}, {"expected", r.expected}};
  if (with_runtime) j["runtime_ms"] = static_cast<std::int64_t>(r.runtime_ms);
  return j;
}

inline json to_json(const std::vector<CheckResult>& rs, bool with_runtime = true) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(to_json(r, with_runtime));
  return a;
}

inline std::string to_markdown(const std::vector<CheckResult>& rs) {
  std::map<std::string, std::vector<const CheckResult*>> groups;
  std::vector<std::string> order;
  for (const auto& r : rs) {
    const std::string g = r.check_id.substr(0, r.check_id.find('.'));
    if (!groups.count(g)) order.push_back(g);
    groups[g].push_back(&r);
  }
  std::ostringstream out;
  std::size_t pass = 0;
  for (const auto& r : rs) pass += r.status == CheckStatus::pass;
  out << "# forge check report\n\n" << pass << " of " << rs.size() << " checks pass.\n";
  for (const auto& g : order) {
    out << "\n## " << g << "\n\n| check | status | reference | computed | expected |\n|---|---|---|---|---|\n";
    for (const auto* r : groups[g])
      out << "| " << r->check_id << " | " << to_string(r->status) << " | " << r->paper_ref << " | `" << r->computed.dump()
          << "` | `" << r->expected.dump() << "` |\n";
  }
  return out.str();
}

}  // namespace forge
