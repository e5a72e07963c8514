// forge: list and run the verification checks.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "forge/verify.hpp"

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw forge::usage_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: computational checks for Sp6(2), Aut(SU4(2)) and friends"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "print the check registry");

  auto* check = app.add_subcommand("check", "run checks");
  std::vector<std::string> ids;
  bool all = false;
  std::string json_path, md_path;
  forge::RunOptions opt;
  if (const char* env = std::getenv("FORGE_CACHE_DIR")) opt.cache_dir = env;
  check->add_option("ids", ids, "check ids");
  check->add_flag("--all", all, "run every check");
  check->add_option("--json", json_path, "write the JSON report here");
  check->add_option("--md", md_path, "write the Markdown report here");
  check->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
  check->add_option("--cache-dir", opt.cache_dir, "BSGS cache directory (default $FORGE_CACHE_DIR)");
  check->add_option("--seed", opt.seed, "seed for the MeatAxe and random sampling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      for (const auto& c : forge::check_registry()) std::cout << c.id << "\t" << c.paper_ref << "\t" << c.claim << "\n";
      return 0;
    }
    if (all == !ids.empty()) throw forge::usage_error("give check ids or --all (not both)");
    const auto results = forge::run_checks(all ? std::vector<std::string>{} : ids, opt);
    std::size_t failed = 0;
    for (const auto& r : results) {
      std::cout << forge::to_string(r.status) << "  " << r.check_id << "  (" << static_cast<long>(r.runtime_ms) << " ms)\n";
      if (r.status != forge::CheckStatus::pass) ++failed;
    }
    std::cout << results.size() - failed << "/" << results.size() << " passed\n";
    if (!json_path.empty()) write_file(json_path, forge::to_json(results).dump(2) + "\n");
    if (!md_path.empty()) write_file(md_path, forge::to_markdown(results));
    return failed ? 1 : 0;
  } catch (const forge::usage_error& e) {
    std::cerr << "forge: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "forge: internal error: " << e.what() << "\n";
    return 2;
  }
}
