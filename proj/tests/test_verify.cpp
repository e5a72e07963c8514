#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "forge/verify.hpp"

using namespace forge;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("forge-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FORGE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

const std::vector<std::string> kCheap = {"sp62.order", "registry.orders", "forms.o4.singular", "forms.o4.points",
                                         "extraspec.types", "chamber.count"};

}  // namespace

TEST(Registry, IdsAreUniqueAndWellFormed) {
  const auto& reg = check_registry();
  EXPECT_GE(reg.size(), 25u);
  const std::regex id_pattern("[a-z0-9_]+(\\.[a-z0-9_]+)+");
  std::set<std::string> ids;
  for (const auto& c : reg) {
    EXPECT_TRUE(ids.insert(c.id).second) << c.id;
    EXPECT_TRUE(std::regex_match(c.id, id_pattern)) << c.id;
    EXPECT_FALSE(c.claim.empty()) << c.id;
    EXPECT_FALSE(c.paper_ref.empty()) << c.id;
    for (const auto& d : c.deps) EXPECT_TRUE(ids.count(d)) << c.id << " -> " << d;
  }
}

TEST(Runner, UnknownIdIsAUsageError) {
  EXPECT_THROW(run_checks({"no.such.check"}, {}), usage_error);
}

TEST(Runner, SingleCheckAndDependencies) {
  const auto rs = run_checks({"sp62.order"}, {});
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].status, CheckStatus::pass);
  EXPECT_EQ(rs[0].computed, rs[0].expected);
  // dependencies of a requested check are run first and reported
  const auto& reg = check_registry();
  for (const auto& c : reg)
    if (!c.deps.empty()) {
      const auto with = run_checks({c.deps.front()}, {});
      EXPECT_FALSE(with.empty());
      break;
    }
}

TEST(Reports, JsonShape) {
  EXPECT_EQ(to_json(std::vector<CheckResult>{}).dump(), "[]");
  const auto rs = run_checks({"registry.orders"}, {});
  const json j = to_json(rs);
  ASSERT_TRUE(j.is_array());
  const json& first = j.back();
  std::vector<std::string> keys;
  for (auto it = first.begin(); it != first.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"check_id", "claim", "paper_ref", "status", "computed", "expected",
                                             "runtime_ms"}));
  EXPECT_EQ(first["status"], "pass");
  EXPECT_TRUE(first["runtime_ms"].is_number_integer());
  EXPECT_FALSE(to_json(rs, false).back().contains("runtime_ms"));
  const std::string md = to_markdown(rs);
  EXPECT_NE(md.find("## registry"), std::string::npos);
  EXPECT_NE(md.find("| registry.orders | pass |"), std::string::npos);
}

TEST(Reports, DeterministicAcrossJobsAndSeeds) {
  RunOptions a, b;
  a.jobs = 1;
  a.seed = 1;
  b.jobs = 3;
  b.seed = 17;
  const auto ra = run_checks(kCheap, a), rb = run_checks(kCheap, b);
  EXPECT_EQ(to_json(ra, false).dump(), to_json(rb, false).dump());
  for (const auto& r : ra) EXPECT_EQ(r.status, CheckStatus::pass) << r.check_id;
}

TEST(Cache, BsgsRoundTrip) {
  const PermGroup& g = named_group("GO4m_3").group;
  const std::string text = format_bsgs(g);
  EXPECT_EQ(text.rfind("FORGE-BSGS 1\n", 0), 0u);
  const PermGroup h = parse_bsgs(text);
  EXPECT_TRUE(h.same_as(g));
  EXPECT_EQ(h.base(), g.base());
}

TEST(Cache, CorruptFilesAreRejected) {
  const std::string text = format_bsgs(named_group("GO4p_3").group);
  EXPECT_THROW(parse_bsgs("garbage\n"), format_error);
  EXPECT_THROW(parse_bsgs(text.substr(0, text.find("order"))), format_error);
  std::string wrong = text;
  wrong.replace(wrong.find("order"), std::string::npos, "order 7\n");
  EXPECT_THROW(parse_bsgs(wrong), format_error);
  std::string shortline = text;
  const auto third = shortline.find('\n', shortline.find('\n', shortline.find('\n') + 1) + 1);
  shortline.insert(third + 1, "0 1 2\n");
  EXPECT_THROW(parse_bsgs(shortline), format_error);
}

TEST(Cache, SyncWritesThenLoadsAndRepairs) {
  const auto dir = scratch_dir("cache");
  const CacheReport first = sync_bsgs_cache(dir.string());
  EXPECT_EQ(first.written, registry_names().size());
  EXPECT_EQ(first.loaded, 0u);
  const CacheReport second = sync_bsgs_cache(dir.string());
  EXPECT_EQ(second.loaded, registry_names().size());
  EXPECT_EQ(second.written, 0u);
  {
    std::ofstream out(dir / "Sp6_2.bsgs", std::ios::trunc);
    out << "FORGE-BSGS 1\n63\n0\norder 2\n";
  }
  const CacheReport third = sync_bsgs_cache(dir.string());
  EXPECT_EQ(third.stale, 1u);
  EXPECT_EQ(third.written, 1u);
  EXPECT_TRUE(parse_bsgs(slurp(dir / "Sp6_2.bsgs")).same_as(named_group("Sp6_2").group));
  for (const auto& e : std::filesystem::directory_iterator(dir))
    EXPECT_EQ(e.path().string().find(".tmp."), std::string::npos) << e.path();
  std::filesystem::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  const auto dir = scratch_dir("cli");
  EXPECT_EQ(run_cli("list"), 0);
  EXPECT_EQ(run_cli("check"), 2);
  EXPECT_EQ(run_cli("check no.such.check"), 2);
  EXPECT_EQ(run_cli("check --all sp62.order"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("check sp62.order --jobs 0"), 2);
  const auto out = dir / "r.json";
  const auto md = dir / "r.md";
  EXPECT_EQ(run_cli("check sp62.order registry.orders --jobs 2 --json " + out.string() + " --md " + md.string() +
                    " --cache-dir " + (dir / "cache").string()),
            0);
  const json j = json::parse(slurp(out));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["check_id"], "sp62.order");
  EXPECT_TRUE(std::filesystem::exists(dir / "cache" / "Sp6_2.bsgs"));
  EXPECT_NE(slurp(md).find("sp62.order"), std::string::npos);
  std::filesystem::remove_all(dir);
}
